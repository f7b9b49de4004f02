#pragma once

#include "gpm/core_model.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace gpm {

enum class DcSymbol : std::uint8_t { Zero = 0, One = 1, DontCare = 2 };

/// String over {0, 1, ?}; ? matches everything.
class BinaryDcString {
public:
    BinaryDcString() = default;
    explicit BinaryDcString(std::vector<DcSymbol> symbols) : symbols_(std::move(symbols)) {}
    BinaryDcString(std::size_t length, DcSymbol fill) : symbols_(length, fill) {}

    /// Parses "01?" style text; any other character is an input error.
    static BinaryDcString parse(std::string_view text);

    [[nodiscard]] std::size_t size() const { return symbols_.size(); }
    [[nodiscard]] DcSymbol operator[](std::size_t i) const { return symbols_[i]; }
    DcSymbol& operator[](std::size_t i) { return symbols_[i]; }
    [[nodiscard]] std::span<const DcSymbol> symbols() const { return symbols_; }

    /// 0/1 indicator of positions holding s.
    [[nodiscard]] std::vector<std::uint8_t> indicator(DcSymbol s) const;

private:
    std::vector<DcSymbol> symbols_;
};

enum class TransformBackend {
    Auto,   // direct for tiny inputs, FFT otherwise, NTT when m > 2^24
    Direct, // O(nm) dot products
    Fft,    // complex double FFT with rounding
    Ntt,    // exact transform modulo 2^64 - 2^32 + 1
};

/// out[i] = sum_j x[i+j] y[j] for i in [0, n-m]; integer exact. Empty when m > n or m == 0.
[[nodiscard]] std::vector<std::uint64_t> cross_correlate(std::span<const std::uint8_t> x,
                                                         std::span<const std::uint8_t> y,
                                                         TransformBackend backend = TransformBackend::Auto);

/// out[i] += corr(x0, y1)[i] + corr(x1, y0)[i]. All four inputs are 0/1;
/// x0, x1 have the text length and y0, y1 the pattern length; out has n-m+1 entries.
void mismatch_accumulate(std::span<const std::uint8_t> x0, std::span<const std::uint8_t> x1,
                         std::span<const std::uint8_t> y0, std::span<const std::uint8_t> y1,
                         std::span<std::uint64_t> out,
                         TransformBackend backend = TransformBackend::Auto);

/// out[i] += corr(x, y)[i].
void correlate_accumulate(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                          std::span<std::uint64_t> out,
                          TransformBackend backend = TransformBackend::Auto);

/// Exact don't-care mismatch counts: (0,1) and (1,0) pairs per alignment.
[[nodiscard]] MismatchTable dc_mismatch_count(const BinaryDcString& text, const BinaryDcString& pattern,
                                              TransformBackend backend = TransformBackend::Auto);

/// Accumulating variant used by the matching algorithms.
void dc_mismatch_accumulate(const BinaryDcString& text, const BinaryDcString& pattern,
                            std::span<std::uint64_t> out,
                            TransformBackend backend = TransformBackend::Auto);

/// O(nm) reference.
[[nodiscard]] std::vector<std::uint64_t> naive_dc_mismatch(const BinaryDcString& text,
                                                           const BinaryDcString& pattern);

} // namespace gpm

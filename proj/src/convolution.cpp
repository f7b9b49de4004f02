#include "gpm/convolution.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>

namespace gpm {

BinaryDcString BinaryDcString::parse(std::string_view text)
{
    std::vector<DcSymbol> out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '0': out.push_back(DcSymbol::Zero); break;
        case '1': out.push_back(DcSymbol::One); break;
        case '?': out.push_back(DcSymbol::DontCare); break;
        default: throw InputError(std::string("not a {0,1,?} symbol: '") + c + "'");
        }
    }
    return BinaryDcString(std::move(out));
}

std::vector<std::uint8_t> BinaryDcString::indicator(DcSymbol s) const
{
    std::vector<std::uint8_t> out(symbols_.size());
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        out[i] = symbols_[i] == s;
    return out;
}

namespace {

using cplx = std::complex<double>;

constexpr std::size_t kNttThreshold = std::size_t{1} << 24;

std::size_t block_size(std::size_t m) { return 2 * std::bit_ceil(m); }

// ---- FFT backend (FFTW, in-place plans cached per size) ----

struct Plans {
    fftw_plan forward;
    fftw_plan inverse;
};

const Plans& plans_for(std::size_t n)
{
    static std::mutex mu;
    static std::map<std::size_t, Plans> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;
    std::vector<cplx> scratch(n);
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    const int size = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    Plans plans{fftw_plan_dft_1d(size, p, p, FFTW_FORWARD, flags),
                fftw_plan_dft_1d(size, p, p, FFTW_BACKWARD, flags)};
    return cache.emplace(n, plans).first->second;
}

void run(fftw_plan plan, std::vector<cplx>& buf)
{
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(plan, p, p);
}

// Rounded value, or nullopt-like failure flag when the transform error is suspicious.
bool round_exact(double v, std::uint64_t& out)
{
    const double r = std::nearbyint(v);
    if (std::abs(v - r) > 0.25 || r < -0.5)
        return false;
    out = static_cast<std::uint64_t>(r);
    return true;
}

// Linear correlation of complex text u against complex pattern v via overlapping blocks.
// emit(i, value) receives corr(u, v)[i] for i in [0, n-m]. Returns false when a rounding
// check failed; the caller then recomputes exactly.
template <class FillText, class Emit>
bool fft_blocks(std::size_t n, std::size_t m, const std::vector<cplx>& pattern, FillText fill,
                Emit emit)
{
    const std::size_t N = block_size(m);
    const Plans& plans = plans_for(N);
    const double scale = 1.0 / static_cast<double>(N);

    std::vector<cplx> spec(N, cplx{});
    for (std::size_t k = 0; k < m; ++k)
        spec[k] = pattern[m - 1 - k];
    run(plans.forward, spec);

    std::vector<cplx> buf(N);
    const std::size_t step = N - m + 1;
    const std::size_t outputs = n - m + 1;
    for (std::size_t start = 0; start < outputs; start += step) {
        const std::size_t len = std::min(N, n - start);
        std::fill(buf.begin(), buf.end(), cplx{});
        fill(start, len, buf);
        run(plans.forward, buf);
        for (std::size_t k = 0; k < N; ++k)
            buf[k] *= spec[k];
        run(plans.inverse, buf);
        const std::size_t count = std::min(step, outputs - start);
        for (std::size_t i = 0; i < count; ++i)
            if (!emit(start + i, buf[i + m - 1] * scale))
                return false;
    }
    return true;
}

// ---- NTT backend: p = 2^64 - 2^32 + 1, primitive root 7 ----

constexpr std::uint64_t kP = 0xFFFFFFFF00000001ULL;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kP);
}
std::uint64_t addmod(std::uint64_t a, std::uint64_t b)
{
    const std::uint64_t s = a + b;
    return (s < a || s >= kP) ? s - kP : s;
}
std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + (kP - b); }
std::uint64_t powmod(std::uint64_t a, std::uint64_t e)
{
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mulmod(a, a))
        if (e & 1)
            r = mulmod(r, a);
    return r;
}

void ntt(std::vector<std::uint64_t>& a, bool inverse)
{
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::uint64_t w = powmod(7, (kP - 1) / len);
        if (inverse)
            w = powmod(w, kP - 2);
        for (std::size_t i = 0; i < n; i += len) {
            std::uint64_t wk = 1;
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::uint64_t u = a[i + k];
                const std::uint64_t v = mulmod(a[i + k + len / 2], wk);
                a[i + k] = addmod(u, v);
                a[i + k + len / 2] = submod(u, v);
                wk = mulmod(wk, w);
            }
        }
    }
    if (inverse) {
        const std::uint64_t inv_n = powmod(n, kP - 2);
        for (auto& x : a)
            x = mulmod(x, inv_n);
    }
}

void ntt_accumulate(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                    std::span<std::uint64_t> out)
{
    const std::size_t n = x.size(), m = y.size();
    const std::size_t N = block_size(m);
    std::vector<std::uint64_t> spec(N, 0), buf(N);
    for (std::size_t k = 0; k < m; ++k)
        spec[k] = y[m - 1 - k];
    ntt(spec, false);
    const std::size_t step = N - m + 1;
    const std::size_t outputs = n - m + 1;
    for (std::size_t start = 0; start < outputs; start += step) {
        const std::size_t len = std::min(N, n - start);
        std::fill(buf.begin(), buf.end(), 0);
        std::copy_n(x.begin() + static_cast<std::ptrdiff_t>(start), len, buf.begin());
        ntt(buf, false);
        for (std::size_t k = 0; k < N; ++k)
            buf[k] = mulmod(buf[k], spec[k]);
        ntt(buf, true);
        const std::size_t count = std::min(step, outputs - start);
        for (std::size_t i = 0; i < count; ++i)
            out[start + i] += buf[i + m - 1];
    }
}

// ---- direct backend ----

void direct_accumulate(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                       std::span<std::uint64_t> out)
{
    const std::size_t m = y.size();
    std::vector<std::size_t> ones;
    for (std::size_t j = 0; j < m; ++j)
        if (y[j])
            ones.push_back(j);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint64_t s = 0;
        for (std::size_t j : ones)
            s += x[i + j];
        out[i] += s;
    }
}

TransformBackend resolve(TransformBackend b, std::size_t n, std::size_t m)
{
    if (b != TransformBackend::Auto)
        return b;
    if (m > kNttThreshold)
        return TransformBackend::Ntt;
    if (m <= 24 || (n - m + 1) * m <= (std::size_t{1} << 14))
        return TransformBackend::Direct;
    return TransformBackend::Fft;
}

void check_shapes(std::size_t n, std::size_t m, std::size_t out)
{
    if (m == 0 || m > n || out != n - m + 1)
        throw PreconditionError("correlation shape mismatch");
}

// Two correlations against the same pattern, packed into real and imaginary parts.
bool fft_correlate_pair(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                        std::span<std::uint64_t> out)
{
    const std::size_t n = x.size(), m = y.size();
    std::vector<cplx> pattern(m);
    for (std::size_t j = 0; j < m; ++j)
        pattern[j] = y[j];
    // Split the output range in half; half A goes to Re, half B to Im.
    const std::size_t outputs = n - m + 1;
    const std::size_t half = (outputs + 1) / 2;
    const std::size_t span_len = half + m - 1; // text positions for one half
    auto fill = [&](std::size_t start, std::size_t len, std::vector<cplx>& buf) {
        for (std::size_t k = 0; k < len; ++k) {
            const double re = x[start + k];
            const std::size_t jb = half + start + k;
            const double im = jb < n ? x[jb] : 0.0;
            buf[k] = {re, im};
        }
    };
    std::vector<std::uint64_t> second(outputs - half);
    auto emit = [&](std::size_t i, cplx v) {
        std::uint64_t a, b;
        if (!round_exact(v.real(), a) || !round_exact(v.imag(), b))
            return false;
        out[i] += a;
        if (i < second.size())
            second[i] = b;
        return true;
    };
    if (!fft_blocks(span_len, m, pattern, fill, emit))
        return false;
    for (std::size_t i = 0; i < second.size(); ++i)
        out[half + i] += second[i];
    return true;
}

} // namespace

void correlate_accumulate(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                          std::span<std::uint64_t> out, TransformBackend backend)
{
    const std::size_t n = x.size(), m = y.size();
    check_shapes(n, m, out.size());
    switch (resolve(backend, n, m)) {
    case TransformBackend::Direct: direct_accumulate(x, y, out); return;
    case TransformBackend::Ntt: ntt_accumulate(x, y, out); return;
    default: break;
    }
    std::vector<std::uint64_t> tmp(out.size(), 0);
    if (fft_correlate_pair(x, y, tmp)) {
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += tmp[i];
        return;
    }
    ntt_accumulate(x, y, out);
}

std::vector<std::uint64_t> cross_correlate(std::span<const std::uint8_t> x,
                                           std::span<const std::uint8_t> y, TransformBackend backend)
{
    const std::size_t outputs = alignment_count(x.size(), y.size());
    std::vector<std::uint64_t> out(outputs, 0);
    if (outputs)
        correlate_accumulate(x, y, out, backend);
    return out;
}

void mismatch_accumulate(std::span<const std::uint8_t> x0, std::span<const std::uint8_t> x1,
                         std::span<const std::uint8_t> y0, std::span<const std::uint8_t> y1,
                         std::span<std::uint64_t> out, TransformBackend backend)
{
    const std::size_t n = x0.size(), m = y0.size();
    if (x1.size() != n || y1.size() != m)
        throw PreconditionError("indicator lengths differ");
    check_shapes(n, m, out.size());
    const TransformBackend b = resolve(backend, n, m);
    if (b == TransformBackend::Fft) {
        // u = x0 + i x1, v = y1 - i y0: Re(corr(u, v)) = corr(x0, y1) + corr(x1, y0).
        std::vector<cplx> pattern(m);
        for (std::size_t j = 0; j < m; ++j)
            pattern[j] = {static_cast<double>(y1[j]), -static_cast<double>(y0[j])};
        auto fill = [&](std::size_t start, std::size_t len, std::vector<cplx>& buf) {
            for (std::size_t k = 0; k < len; ++k)
                buf[k] = {static_cast<double>(x0[start + k]), static_cast<double>(x1[start + k])};
        };
        std::vector<std::uint64_t> tmp(out.size(), 0);
        auto emit = [&](std::size_t i, cplx v) { return round_exact(v.real(), tmp[i]); };
        if (fft_blocks(n, m, pattern, fill, emit)) {
            for (std::size_t i = 0; i < out.size(); ++i)
                out[i] += tmp[i];
            return;
        }
        ntt_accumulate(x0, y1, out);
        ntt_accumulate(x1, y0, out);
        return;
    }
    correlate_accumulate(x0, y1, out, b);
    correlate_accumulate(x1, y0, out, b);
}

void dc_mismatch_accumulate(const BinaryDcString& text, const BinaryDcString& pattern,
                            std::span<std::uint64_t> out, TransformBackend backend)
{
    mismatch_accumulate(text.indicator(DcSymbol::Zero), text.indicator(DcSymbol::One),
                        pattern.indicator(DcSymbol::Zero), pattern.indicator(DcSymbol::One), out,
                        backend);
}

MismatchTable dc_mismatch_count(const BinaryDcString& text, const BinaryDcString& pattern,
                                TransformBackend backend)
{
    MismatchTable table;
    table.kind = TableKind::Exact;
    table.values.assign(alignment_count(text.size(), pattern.size()), 0);
    if (!table.values.empty())
        dc_mismatch_accumulate(text, pattern, table.values, backend);
    return table;
}

std::vector<std::uint64_t> naive_dc_mismatch(const BinaryDcString& text, const BinaryDcString& pattern)
{
    const std::size_t n = text.size(), m = pattern.size();
    std::vector<std::uint64_t> out(alignment_count(n, m), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const DcSymbol a = text[i + j], b = pattern[j];
            out[i] += (a == DcSymbol::Zero && b == DcSymbol::One) ||
                      (a == DcSymbol::One && b == DcSymbol::Zero);
        }
    return out;
}

} // namespace gpm

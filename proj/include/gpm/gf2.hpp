#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace gpm {

/// Polynomial over GF(2) of degree <= 63; bit i holds the coefficient of x^i.
struct Gf2Poly {
    std::uint64_t mask = 0;

    /// -1 for the zero polynomial.
    [[nodiscard]] int degree() const { return mask ? 63 - std::countl_zero(mask) : -1; }
    bool operator==(const Gf2Poly&) const = default;
    auto operator<=>(const Gf2Poly&) const = default;
};

[[nodiscard]] Gf2Poly gf2_mod(Gf2Poly q, Gf2Poly p);
/// Carry-less product; the caller keeps deg(a) + deg(b) <= 63.
[[nodiscard]] Gf2Poly gf2_mul(Gf2Poly a, Gf2Poly b);

/// All irreducible polynomials of degree d (1 <= d <= 26) in ascending mask order.
[[nodiscard]] std::vector<Gf2Poly> irreducible_polys(int d);

/// Number of irreducible polynomials of degree d, (1/d) sum_{e | d} mu(e) 2^(d/e). d <= 63.
[[nodiscard]] std::uint64_t irreducible_count(int d);

/// Irreducibles of every degree 1..max_degree, grouped by degree: result[d] lists degree d.
/// Sieve over all polynomials of degree <= max_degree, so max_degree is limited to 26.
[[nodiscard]] std::vector<std::vector<Gf2Poly>> irreducible_polys_up_to(int max_degree);

/// Table of q mod p for every polynomial q of degree <= t, indexed by q's mask.
/// Filled by Mod[q] = Mod[q - p x^(deg q - deg p)], each entry in O(1).
[[nodiscard]] std::vector<std::uint64_t> mod_table(Gf2Poly p, int t);

} // namespace gpm

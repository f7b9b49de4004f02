#include "gpm/gf2.hpp"

#include "gpm/core_model.hpp"

#include <string>

namespace gpm {

namespace {
constexpr int kMaxSieveDegree = 26;
}

Gf2Poly gf2_mod(Gf2Poly q, Gf2Poly p)
{
    const int dp = p.degree();
    if (dp < 0)
        throw InputError("division by the zero polynomial");
    for (int dq = q.degree(); dq >= dp; dq = q.degree())
        q.mask ^= p.mask << (dq - dp);
    return q;
}

Gf2Poly gf2_mul(Gf2Poly a, Gf2Poly b)
{
    std::uint64_t r = 0;
    for (std::uint64_t m = b.mask; m; m &= m - 1)
        r ^= a.mask << std::countr_zero(m);
    return {r};
}

std::vector<std::vector<Gf2Poly>> irreducible_polys_up_to(int max_degree)
{
    if (max_degree < 1 || max_degree > kMaxSieveDegree)
        throw InputError("irreducible sieve supports degrees 1.." + std::to_string(kMaxSieveDegree));
    const std::uint64_t limit = std::uint64_t{1} << (max_degree + 1);
    // composite[q] set once q is found divisible by a smaller irreducible.
    std::vector<bool> composite(limit, false);
    std::vector<std::vector<Gf2Poly>> out(max_degree + 1);
    for (std::uint64_t p = 2; p < limit; ++p) {
        if (composite[p])
            continue;
        const Gf2Poly poly{p};
        const int dp = poly.degree();
        out[dp].push_back(poly);
        if (2 * dp > max_degree)
            continue;
        // Every multiple p*q with deg q >= 1 stays within the table when q < 2^(max-dp+1).
        const std::uint64_t qlimit = std::uint64_t{1} << (max_degree - dp + 1);
        for (std::uint64_t q = 2; q < qlimit; ++q)
            composite[gf2_mul(poly, Gf2Poly{q}).mask] = true;
    }
    return out;
}

std::vector<Gf2Poly> irreducible_polys(int d)
{
    return std::move(irreducible_polys_up_to(d)[d]);
}

std::uint64_t irreducible_count(int d)
{
    if (d < 1 || d > 63)
        throw InputError("degree must be in [1, 63]");
    auto mobius = [](int e) {
        int sign = 1;
        for (int f = 2; f * f <= e; ++f) {
            if (e % f)
                continue;
            e /= f;
            if (e % f == 0)
                return 0;
            sign = -sign;
        }
        return e > 1 ? -sign : sign;
    };
    // Signed sum stays within int128 and is divisible by d.
    __int128 sum = 0;
    for (int e = 1; e <= d; ++e)
        if (d % e == 0)
            sum += mobius(e) * (static_cast<__int128>(1) << (d / e));
    return static_cast<std::uint64_t>(sum / d);
}

std::vector<std::uint64_t> mod_table(Gf2Poly p, int t)
{
    const int dp = p.degree();
    if (dp < 0 || dp > t || t > kMaxSieveDegree + 4)
        throw PreconditionError("mod_table requires deg(p) <= t <= 30");
    const std::uint64_t size = std::uint64_t{1} << (t + 1);
    std::vector<std::uint64_t> table(size);
    const std::uint64_t low = std::uint64_t{1} << dp;
    for (std::uint64_t q = 0; q < size; ++q) {
        if (q < low) {
            table[q] = q;
        } else {
            const int dq = Gf2Poly{q}.degree();
            table[q] = table[q ^ (p.mask << (dq - dp))];
        }
    }
    return table;
}

} // namespace gpm

#include "gpm/superimposed.hpp"

#include "gpm/gf2.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace gpm {

namespace {

int floor_log2(std::uint64_t x) { return 63 - std::countl_zero(x); }

} // namespace

CodeFamily build_code(const SetSystem& sys, double epsilon, const CodeBuildOptions& options)
{
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InputError("code epsilon must lie in (0, 1)");

    CodeFamily code;
    code.epsilon = epsilon;
    const std::uint64_t base = sys.universe_size();
    code.sentinel = static_cast<std::uint32_t>(base);
    const std::uint64_t size = base + 1; // U ∪ {$}

    // $ belongs to no set; partition the extended universe.
    const SetSystem extended(size, sys.sets(), sys.max_set_size());
    code.partition = build_partition(extended, options.partition_target);
    const std::uint64_t bound = code.partition.achieved_bound;

    code.max_degree = floor_log2(size);
    const int t = code.max_degree;

    // Smallest d <= t with t / #irr(d) <= eps / B.
    int chosen = 0;
    for (int d = 1; d <= t; ++d) {
        const double irr = static_cast<double>(irreducible_count(d));
        if (static_cast<double>(t) * static_cast<double>(bound) <= epsilon * irr) {
            chosen = d;
            break;
        }
    }

    const std::uint64_t labels = code.partition.label_count;
    if (chosen != 0 && (2 * chosen + floor_log2(labels) + 1 >= 64 || t > 26))
        chosen = 0; // beyond the sieve, or code positions would not fit a machine word

    code.codes.assign(size, {});
    if (chosen == 0) {
        code.degenerate = true;
        code.degree = 0;
        code.weight = 1;
        code.length = size;
        for (std::uint64_t q = 0; q < size; ++q)
            code.codes[q] = {q};
        return code;
    }

    const int d = chosen;
    code.degree = d;
    const auto polys = irreducible_polys(d);
    code.weight = polys.size();
    code.length = (std::uint64_t{1} << (2 * d)) * labels;
    for (auto& c : code.codes)
        c.reserve(code.weight);

    for (const Gf2Poly& p : polys) {
        const auto table = mod_table(p, t);
        const std::uint64_t num_p = p.mask ^ (std::uint64_t{1} << d); // leading 1 implicit
        for (std::uint64_t u = 0; u < size; ++u) {
            const std::uint64_t q = u + 1; // pol(u_q) is q's binary expansion
            const std::uint64_t h = table[q];
            const std::uint64_t c = code.partition.label[u];
            code.codes[u].push_back(h + (num_p << d) + (c << (2 * d)));
        }
    }
    for (auto& c : code.codes)
        std::sort(c.begin(), c.end());
    return code;
}

CodeReport verify_code(const CodeFamily& code, const SetSystem& sys, std::optional<double> tau)
{
    CodeReport r;
    r.threshold = tau.value_or((1.0 - code.epsilon) * static_cast<double>(code.weight));
    r.min_surviving = code.weight;
    const std::uint64_t size = code.codes.size();
    std::vector<bool> member(size, false);
    std::vector<std::uint64_t> cover;
    for (std::size_t i = 0; i < sys.set_count(); ++i) {
        cover.clear();
        for (auto v : sys.set(i)) {
            member[v] = true;
            const auto& cv = code.codes[v];
            cover.insert(cover.end(), cv.begin(), cv.end());
        }
        std::sort(cover.begin(), cover.end());
        cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
        for (std::uint64_t u = 0; u < size; ++u) {
            if (member[u])
                continue;
            std::uint64_t surviving = 0;
            for (auto e : code.codes[u])
                surviving += !std::binary_search(cover.begin(), cover.end(), e);
            ++r.pairs_checked;
            if (surviving < r.min_surviving || (r.pairs_checked == 1 && surviving == r.min_surviving)) {
                r.min_surviving = surviving;
                r.worst_set = i;
                r.worst_element = u;
            }
        }
        for (auto v : sys.set(i))
            member[v] = false;
    }
    r.ok = static_cast<double>(r.min_surviving) >= r.threshold - 1e-9;
    return r;
}

} // namespace gpm

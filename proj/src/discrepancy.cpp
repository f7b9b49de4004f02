#include "gpm/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>
#include <gmpxx.h>

namespace gpm {

namespace mp = boost::multiprecision;

SetSystem::SetSystem(std::uint64_t universe_size, std::vector<std::vector<std::uint32_t>> sets,
                     std::optional<std::uint64_t> declared_k)
    : universe_size_(universe_size), sets_(std::move(sets))
{
    if (sets_.empty())
        throw InputError("set system needs at least one set");
    std::uint64_t largest = 0;
    std::vector<std::uint64_t> counts(universe_size_ + 1, 0);
    for (auto& s : sets_) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (!s.empty() && s.back() >= universe_size_)
            throw InputError("set element outside universe");
        largest = std::max<std::uint64_t>(largest, s.size());
        for (auto u : s)
            ++counts[u + 1];
    }
    if (declared_k && *declared_k < largest)
        throw InputError("declared k smaller than the largest set");
    k_ = std::max<std::uint64_t>(1, declared_k.value_or(largest));

    offsets_.assign(universe_size_ + 1, 0);
    for (std::uint64_t u = 0; u < universe_size_; ++u)
        offsets_[u + 1] = offsets_[u] + counts[u + 1];
    incidence_.resize(offsets_.back());
    std::vector<std::uint64_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::uint32_t i = 0; i < sets_.size(); ++i)
        for (auto u : sets_[i])
            incidence_[fill[u]++] = i;
}

std::span<const std::uint32_t> SetSystem::sets_containing(std::uint32_t u) const
{
    return std::span<const std::uint32_t>(incidence_).subspan(offsets_[u],
                                                              offsets_[u + 1] - offsets_[u]);
}

namespace {

bool exceeds_log_3z(std::uint64_t k, std::uint64_t z)
{
    // k > log2(3z)  <=>  2^k > 3z
    return k >= 64 || (std::uint64_t{1} << k) > 3 * z;
}

double log2_3z(std::uint64_t z) { return std::log2(3.0 * static_cast<double>(z)); }

} // namespace

EpsilonChoice compute_epsilon(std::uint64_t z, std::uint64_t k)
{
    if (z == 0 || !exceeds_log_3z(k, z))
        throw PreconditionError("compute_epsilon requires k > log2(3z)");
    EpsilonChoice e;
    while ((std::uint64_t{1} << e.ceil_log_3z) < 3 * z)
        ++e.ceil_log_3z;
    // Largest t2 with 2^-t2 >= t1/k, so t1/k <= 2^-t2 < 2 t1/k.
    const std::uint64_t t1 = e.ceil_log_3z;
    while (e.halving_exponent < 62 && k >= (t1 << (e.halving_exponent + 1)))
        ++e.halving_exponent;
    // alpha3 = 16 sqrt(2) * 2^(-t2/2)
    const long double alpha3 = std::exp2((9.0L - e.halving_exponent) / 2.0L);
    const long double eps = alpha3 / (2.0L + alpha3);
    const long double scale = std::ldexp(1.0L, EpsilonChoice::kFractionBits);
    e.numerator = static_cast<std::uint64_t>(std::llround(eps * scale));
    e.numerator = std::clamp<std::uint64_t>(e.numerator, 1,
                                            (std::uint64_t{1} << EpsilonChoice::kFractionBits) - 1);
    e.epsilon = std::ldexp(static_cast<double>(e.numerator), -int(EpsilonChoice::kFractionBits));
    e.one_minus_epsilon = 1.0 - e.epsilon;
    e.alpha = std::log2((1.0 + e.epsilon) / e.one_minus_epsilon) /
              std::sqrt(log2_3z(z) / static_cast<double>(k));
    return e;
}

namespace {

template <unsigned Bits>
using UInt = mp::number<mp::cpp_int_backend<Bits, Bits, mp::unsigned_magnitude, mp::unchecked, void>>;

/// Greedy colouring with leaf values held as fixed point numbers scaled by 2^Frac.
/// Additions are exact; each multiplication truncates to a multiple of 2^-Frac.
template <unsigned Bits, unsigned Frac>
class FixedPointColourer {
    using Word = UInt<Bits>;
    using Wide = UInt<2 * Bits>;

    struct Leaf {
        Word value;
        std::uint32_t pending = 0; // deferred (1 - eps) factors
    };

public:
    FixedPointColourer(const SetSystem& sys, const EpsilonChoice& eps) : sys_(sys)
    {
        static_assert(Frac >= EpsilonChoice::kFractionBits);
        one_ = Word(1) << Frac;
        const Word e = Word(eps.numerator) << (Frac - EpsilonChoice::kFractionBits);
        one_plus_ = one_ + e;
        one_minus_ = one_ - e;

        const std::uint64_t z = sys.set_count();
        leaves_ = 1;
        while (leaves_ < 2 * z)
            leaves_ <<= 1;
        leaf_.assign(2 * z, Leaf{one_, 0});
        tree_.assign(2 * leaves_, Word(0));
        for (std::uint64_t i = 0; i < 2 * z; ++i)
            tree_[leaves_ + i] = one_;
        for (std::uint64_t v = leaves_ - 1; v >= 1; --v)
            tree_[v] = tree_[2 * v] + tree_[2 * v + 1];
    }

    void run(Colouring& out)
    {
        const std::uint64_t z = sys_.set_count();
        out.colour.assign(sys_.universe_size(), 1);
        out.plus_count.assign(z, 0);
        out.minus_count.assign(z, 0);

        std::vector<Leaf> plus_a, plus_b, minus_a, minus_b;
        for (std::uint32_t u = 0; u < sys_.universe_size(); ++u) {
            auto in = sys_.sets_containing(u);
            if (in.empty())
                continue;
            plus_a.clear(), plus_b.clear(), minus_a.clear(), minus_b.clear();
            Word old_sum = 0, plus_sum = 0, minus_sum = 0;
            for (auto i : in) {
                const Leaf& a = leaf_[2 * i];
                const Leaf& b = leaf_[2 * i + 1];
                old_sum += contribution(a) + contribution(b);
                plus_a.push_back(times_plus(a));
                plus_b.push_back(times_minus(b));
                minus_a.push_back(times_minus(a));
                minus_b.push_back(times_plus(b));
                plus_sum += contribution(plus_a.back()) + contribution(plus_b.back());
                minus_sum += contribution(minus_a.back()) + contribution(minus_b.back());
            }
            // G+ = root - old + plus_sum and G- = root - old + minus_sum; ties go to +1.
            const bool positive = plus_sum <= minus_sum;
            out.colour[u] = positive ? 1 : -1;
            for (std::size_t j = 0; j < in.size(); ++j) {
                const auto i = in[j];
                set_leaf(2 * i, positive ? plus_a[j] : minus_a[j]);
                set_leaf(2 * i + 1, positive ? plus_b[j] : minus_b[j]);
                (positive ? out.plus_count : out.minus_count)[i] += 1;
            }
        }

        out.objective = to_double(tree_[1]);
        out.set_objective.resize(z);
        out.pending_underflow.resize(2 * z);
        for (std::uint64_t i = 0; i < z; ++i) {
            out.set_objective[i] =
                to_double(contribution(leaf_[2 * i]) + contribution(leaf_[2 * i + 1]));
            out.pending_underflow[2 * i] = leaf_[2 * i].pending;
            out.pending_underflow[2 * i + 1] = leaf_[2 * i + 1].pending;
        }
        out.precision_bits = Frac;
    }

private:
    Word multiply(const Word& v, const Word& factor) const
    {
        Wide p = Wide(v) * Wide(factor);
        p >>= Frac;
        return static_cast<Word>(p);
    }

    // A leaf with deferred factors is below Delta and counts as zero.
    Word contribution(const Leaf& l) const { return l.pending ? Word(0) : l.value; }

    Leaf times_minus(const Leaf& l) const
    {
        if (l.pending)
            return Leaf{l.value, l.pending + 1};
        Word next = multiply(l.value, one_minus_);
        if (next < 1)
            return Leaf{l.value, 1};
        return Leaf{next, 0};
    }

    Leaf times_plus(const Leaf& l) const
    {
        Leaf r{multiply(l.value, one_plus_), l.pending};
        while (r.pending) {
            Word next = multiply(r.value, one_minus_);
            if (next < 1)
                break;
            r.value = next;
            --r.pending;
        }
        return r;
    }

    void set_leaf(std::uint64_t idx, const Leaf& l)
    {
        leaf_[idx] = l;
        std::uint64_t v = leaves_ + idx;
        tree_[v] = contribution(l);
        for (v >>= 1; v >= 1; v >>= 1)
            tree_[v] = tree_[2 * v] + tree_[2 * v + 1];
    }

    static double to_double(const Word& w)
    {
        return std::ldexp(w.template convert_to<double>(), -static_cast<int>(Frac));
    }

    const SetSystem& sys_;
    Word one_, one_plus_, one_minus_;
    std::uint64_t leaves_ = 1;
    std::vector<Leaf> leaf_;
    std::vector<Word> tree_;
};

void finish_bound(const SetSystem& sys, Colouring& c)
{
    const double k = static_cast<double>(sys.max_set_size());
    c.bound = c.alpha * std::sqrt(k * log2_3z(sys.set_count()));
    c.max_discrepancy = 0;
    for (std::size_t i = 0; i < sys.set_count(); ++i)
        c.max_discrepancy = std::max<std::uint64_t>(
            c.max_discrepancy, static_cast<std::uint64_t>(std::llabs(c.set_discrepancy(i))));
}

} // namespace

bool exact_objective_audit(const SetSystem& sys, const Colouring& col)
{
    if (!col.step)
        return true;
    const unsigned f = EpsilonChoice::kFractionBits;
    const mpz_class scale = mpz_class(1) << f;
    const mpz_class num(std::to_string(col.step->numerator));
    const mpz_class up = scale + num, down = scale - num;
    const mpz_class limit = 3 * mpz_class(std::to_string(sys.set_count()));

    std::unordered_map<std::uint64_t, bool> seen; // (p, n) -> within bound
    for (std::size_t i = 0; i < sys.set_count(); ++i) {
        const std::uint64_t p = col.plus_count[i], n = col.minus_count[i];
        const std::uint64_t key = (p << 32) | n;
        auto it = seen.find(key);
        if (it == seen.end()) {
            mpz_class a, b, c, d, rhs;
            mpz_pow_ui(a.get_mpz_t(), up.get_mpz_t(), p);
            mpz_pow_ui(b.get_mpz_t(), down.get_mpz_t(), n);
            mpz_pow_ui(c.get_mpz_t(), up.get_mpz_t(), n);
            mpz_pow_ui(d.get_mpz_t(), down.get_mpz_t(), p);
            rhs = limit << static_cast<mp_bitcnt_t>(f * (p + n));
            it = seen.emplace(key, a * b + c * d <= rhs).first;
        }
        if (!it->second)
            return false;
    }
    return true;
}

Colouring colour(const SetSystem& sys)
{
    Colouring c;
    const std::uint64_t z = sys.set_count();
    if (!exceeds_log_3z(sys.max_set_size(), z)) {
        // Any colouring has |chi(S_i)| <= k <= sqrt(k log2 3z).
        c.colour.assign(sys.universe_size(), 1);
        c.plus_count.resize(z);
        c.minus_count.assign(z, 0);
        for (std::size_t i = 0; i < z; ++i)
            c.plus_count[i] = sys.set(i).size();
        c.alpha = 1.0;
        c.audit_passed = true;
        finish_bound(sys, c);
        return c;
    }

    c.step = compute_epsilon(z, sys.max_set_size());
    c.alpha = c.step->alpha;

    // Delta = 2^-200 first; each failed audit squares Delta.
    for (unsigned attempt = 1;; ++attempt) {
        c.attempts = attempt;
        if (attempt == 1)
            FixedPointColourer<256, 200>(sys, *c.step).run(c);
        else if (attempt == 2)
            FixedPointColourer<512, 400>(sys, *c.step).run(c);
        else if (attempt == 3)
            FixedPointColourer<1024, 800>(sys, *c.step).run(c);
        else
            throw InvariantViolation("colouring objective exceeds 3z at every supported precision");
        c.audit_passed = exact_objective_audit(sys, c);
        if (c.audit_passed)
            break;
    }
    finish_bound(sys, c);
    if (static_cast<double>(c.max_discrepancy) > c.bound)
        throw InvariantViolation("colouring discrepancy " + std::to_string(c.max_discrepancy) +
                                 " exceeds bound " + std::to_string(c.bound));
    return c;
}

std::uint64_t max_part_intersection(const SetSystem& sys, std::span<const std::uint32_t> label,
                                    std::uint64_t label_count)
{
    std::vector<std::uint64_t> count(label_count, 0);
    std::vector<std::uint32_t> touched;
    std::uint64_t best = 0;
    for (const auto& s : sys.sets()) {
        for (auto u : s) {
            if (count[label[u]]++ == 0)
                touched.push_back(label[u]);
            best = std::max(best, count[label[u]]);
        }
        for (auto c : touched)
            count[c] = 0;
        touched.clear();
    }
    return best;
}

PartitionFn build_partition(const SetSystem& sys, std::optional<double> target_override)
{
    PartitionFn f;
    const std::uint64_t z = sys.set_count();
    f.alpha = exceeds_log_3z(sys.max_set_size(), z)
                  ? compute_epsilon(z, sys.max_set_size()).alpha
                  : 1.0;
    f.target = target_override.value_or(4.0 * f.alpha * f.alpha * log2_3z(z));
    f.label.assign(sys.universe_size(), 0);
    f.achieved_bound = max_part_intersection(sys, f.label, 1);

    while (static_cast<double>(f.achieved_bound) > f.target && f.levels < 40) {
        // Members of each part, ascending.
        std::vector<std::vector<std::uint32_t>> members(f.label_count);
        for (std::uint32_t u = 0; u < sys.universe_size(); ++u)
            members[f.label[u]].push_back(u);

        std::vector<std::uint32_t> local(sys.universe_size(), 0);
        for (const auto& xs : members)
            for (std::uint32_t j = 0; j < xs.size(); ++j)
                local[xs[j]] = j;
        // Restrict every set to every part; z stays fixed.
        std::vector<std::vector<std::vector<std::uint32_t>>> restricted(
            f.label_count, std::vector<std::vector<std::uint32_t>>(z));
        for (std::size_t i = 0; i < z; ++i)
            for (auto u : sys.set(i))
                restricted[f.label[u]][i].push_back(local[u]);

        std::vector<std::uint32_t> next(sys.universe_size(), 0);
        for (std::uint64_t c = 0; c < f.label_count; ++c) {
            const auto& xs = members[c];
            if (xs.empty())
                continue;
            SetSystem sub(xs.size(), std::move(restricted[c]));
            const Colouring col = colour(sub);
            for (std::uint32_t j = 0; j < xs.size(); ++j)
                next[xs[j]] = static_cast<std::uint32_t>(2 * c + (col.colour[j] > 0 ? 1 : 0));
        }
        const std::uint64_t bound = max_part_intersection(sys, next, 2 * f.label_count);
        if (bound >= f.achieved_bound)
            break;
        f.label = std::move(next);
        f.label_count *= 2;
        f.achieved_bound = bound;
        ++f.levels;
    }
    return f;
}

std::vector<std::uint64_t> halving_process(std::uint64_t x)
{
    std::vector<std::uint64_t> trace{x};
    while (x > 4) {
        // Largest y with 2y <= x + sqrt(4x), i.e. (2y - x) <= 0 or (2y - x)^2 <= 4x.
        std::uint64_t y = x / 2;
        while (true) {
            const std::uint64_t d = 2 * (y + 1) - x;
            if (d * d > 4 * x)
                break;
            ++y;
        }
        x = y;
        trace.push_back(x);
    }
    return trace;
}

} // namespace gpm

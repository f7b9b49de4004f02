#include "gpm/harness.hpp"

#include "gpm/deterministic.hpp"
#include "gpm/intervals.hpp"
#include "gpm/io.hpp"
#include "gpm/randomized.hpp"

#include <json.hpp>

#include <algorithm>
#include <ostream>

namespace gpm {

namespace {

const std::vector<std::pair<std::string, Algo>>& algo_table()
{
    static const std::vector<std::pair<std::string, Algo>> table{
        {"brute", Algo::Brute},   {"rand-d", Algo::RandD},       {"rand-s", Algo::RandS},
        {"rand-count", Algo::RandCount}, {"det-d", Algo::DetD}, {"det-s", Algo::DetS},
        {"interval", Algo::Interval}, {"threshold", Algo::Threshold},
    };
    return table;
}

MonteCarloConfig mc_config(const RunOptions& opt)
{
    MonteCarloConfig cfg;
    cfg.c = opt.c;
    cfg.seed = opt.seed;
    cfg.threads = opt.threads;
    return cfg;
}

IntervalRelation interval_form(const Instance& inst)
{
    return inst.intervals ? *inst.intervals : IntervalRelation::from_relation(inst.rel);
}

std::vector<std::uint64_t> table_zeros(const MismatchTable& t)
{
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t.values[i] == 0 && t.exact_at(i) == 0)
            out.push_back(i + 1);
    return out;
}

} // namespace

Algo parse_algo(const std::string& name)
{
    for (const auto& [n, a] : algo_table())
        if (n == name)
            return a;
    throw InputError("unknown algorithm '" + name + "'");
}

std::string algo_name(Algo algo)
{
    for (const auto& [n, a] : algo_table())
        if (a == algo)
            return n;
    return "?";
}

const std::vector<std::string>& algo_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& entry : algo_table())
            v.push_back(entry.first);
        return v;
    }();
    return names;
}

bool reporting_is_exact(Algo algo)
{
    return algo != Algo::RandD && algo != Algo::RandS && algo != Algo::RandCount;
}

void validate(const RunOptions& opt, const Instance& inst)
{
    const bool needs_eps = opt.algo == Algo::RandCount || opt.algo == Algo::DetD || opt.algo == Algo::DetS;
    if (needs_eps && !(opt.epsilon > 0.0 && opt.epsilon < 1.0))
        throw InputError("--eps must lie in (0, 1) for " + algo_name(opt.algo));
    if (opt.algo == Algo::Threshold && opt.delta < 1)
        throw InputError("--delta must be at least 1");
    if (opt.c < 1)
        throw InputError("--c must be a positive integer");
    if (opt.algo != Algo::Threshold && (inst.text.alphabet_size() > inst.rel.text_alphabet() ||
                                        inst.pattern.alphabet_size() > inst.rel.pattern_alphabet()))
        throw InputError("string alphabets exceed the relation's alphabets");
}

std::vector<std::uint64_t> run_match(const Instance& inst, const RunOptions& opt)
{
    validate(opt, inst);
    const Text& t = inst.text;
    const Pattern& p = inst.pattern;
    const MatchRelation& rel = inst.rel;
    switch (opt.algo) {
    case Algo::Brute: return brute_report(t, p, rel);
    case Algo::RandD: return report_d(t, p, rel, mc_config(opt));
    case Algo::RandS: return report_s(t, p, rel, mc_config(opt));
    case Algo::RandCount: return table_zeros(count_approx(t, p, rel, opt.epsilon, mc_config(opt)));
    case Algo::DetD: return table_zeros(count_det_d(t, p, rel, 0.5));
    case Algo::DetS: return table_zeros(count_det_s(t, p, rel, 0.5));
    case Algo::Interval: return table_zeros(count_exact_i(t, p, interval_form(inst)));
    case Algo::Threshold: return table_zeros(threshold_count(t, p, opt.delta));
    }
    return {};
}

MismatchTable run_count(const Instance& inst, const RunOptions& opt)
{
    validate(opt, inst);
    const Text& t = inst.text;
    const Pattern& p = inst.pattern;
    const MatchRelation& rel = inst.rel;
    switch (opt.algo) {
    case Algo::Brute: return brute_count(t, p, rel);
    case Algo::RandD:
    case Algo::RandS: throw InputError(algo_name(opt.algo) + " only reports occurrences; use match");
    case Algo::RandCount: return count_approx(t, p, rel, opt.epsilon, mc_config(opt));
    case Algo::DetD: return count_det_d(t, p, rel, opt.epsilon);
    case Algo::DetS: return count_det_s(t, p, rel, opt.epsilon);
    case Algo::Interval: return count_exact_i(t, p, interval_form(inst));
    case Algo::Threshold: return threshold_count(t, p, opt.delta);
    }
    return {};
}

MismatchTable oracle_count(const Instance& inst, const RunOptions& opt)
{
    if (opt.algo == Algo::Threshold)
        return brute_count(inst.text, inst.pattern,
                           IntervalRelation::threshold(inst.text.alphabet_size(), inst.pattern.alphabet_size(),
                                                       opt.delta));
    return brute_count(inst.text, inst.pattern, inst.rel);
}

ContractResult check_count(const MismatchTable& got, const MismatchTable& truth)
{
    ContractResult r;
    if (got.size() != truth.size()) {
        r.hard_ok = false;
        r.violations = std::max(got.size(), truth.size());
        r.first_violation = 1;
        return r;
    }
    for (std::size_t i = 0; i < got.size(); ++i) {
        const std::uint64_t h = truth.values[i];
        if (!got.consistent_with(i, h)) {
            ++r.violations;
            if (!r.first_violation)
                r.first_violation = i + 1;
        }
        if (got.kind == TableKind::LowerEstimate &&
            static_cast<double>(got.values[i]) < (1.0 - got.epsilon) * static_cast<double>(h) - 1e-9)
            ++r.soft_misses;
    }
    r.hard_ok = r.violations == 0;
    r.soft_ok = r.soft_misses == 0;
    return r;
}

ContractResult check_match(Algo algo, const std::vector<std::uint64_t>& got,
                           const std::vector<std::uint64_t>& truth)
{
    ContractResult r;
    std::vector<std::uint64_t> missing, extra;
    std::set_difference(truth.begin(), truth.end(), got.begin(), got.end(), std::back_inserter(missing));
    std::set_difference(got.begin(), got.end(), truth.begin(), truth.end(), std::back_inserter(extra));
    if (reporting_is_exact(algo)) {
        r.violations = missing.size() + extra.size();
    } else {
        r.violations = missing.size();
        r.soft_misses = extra.size();
    }
    r.hard_ok = r.violations == 0;
    r.soft_ok = r.soft_misses == 0;
    if (!missing.empty())
        r.first_violation = missing.front();
    else if (reporting_is_exact(algo) && !extra.empty())
        r.first_violation = extra.front();
    return r;
}

void dump_instance(std::ostream& out, const Instance& inst, std::uint64_t seed)
{
    out << "# counterexample seed " << seed << '\n';
    out << "# text alphabet " << inst.text.alphabet_size() << '\n';
    write_symbols(out, inst.text.symbols());
    out << "# pattern alphabet " << inst.pattern.alphabet_size() << '\n';
    write_symbols(out, inst.pattern.symbols());
    out << "# relation\n";
    write_relation(out, inst.rel);
    if (inst.intervals) {
        out << "# intervals\n";
        write_intervals(out, *inst.intervals);
    }
}

void print_table(std::ostream& out, const MismatchTable& table, bool json, bool zero_index)
{
    const std::uint64_t base = zero_index ? 0 : 1;
    for (std::size_t i = 0; i < table.size(); ++i) {
        const std::uint64_t idx = i + base;
        if (table.kind == TableKind::ScaledBand) {
            const auto [lo, hi] = table.certified_band(i);
            if (json) {
                nlohmann::json j{{"i", idx}, {"count", table.point_estimate(i)}, {"h_prime", table.values[i]},
                                 {"lo", lo}, {"hi", hi}, {"weight", table.weight}};
                if (!table.exact_part.empty())
                    j["exact_part"] = table.exact_part[i];
                out << j.dump() << '\n';
            } else {
                out << idx << ' ' << table.values[i] << ' ' << lo << ' ' << hi << '\n';
            }
        } else if (json) {
            out << nlohmann::json{{"i", idx}, {"count", table.values[i]}}.dump() << '\n';
        } else {
            out << idx << ' ' << table.values[i] << '\n';
        }
    }
}

void print_matches(std::ostream& out, const std::vector<std::uint64_t>& matches, bool json, bool zero_index)
{
    for (auto i : matches) {
        const std::uint64_t idx = zero_index ? i - 1 : i;
        if (json)
            out << nlohmann::json{{"i", idx}}.dump() << '\n';
        else
            out << idx << '\n';
    }
}

} // namespace gpm

// gpm: generate instances, run matchers, verify against the brute oracle, benchmark.

#include "gpm/discrepancy.hpp"
#include "gpm/generators.hpp"
#include "gpm/harness.hpp"
#include "gpm/io.hpp"
#include "gpm/superimposed.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace gpm;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInternalError = 3;

struct Common {
    std::string algo = "brute";
    double eps = 0.25;
    std::uint64_t c = 2;
    std::uint64_t seed = 1;
    std::uint64_t delta = 1;
    std::string format = "text";
    bool zero_index = false;
    unsigned threads = 1;

    [[nodiscard]] bool json() const { return format == "json"; }

    [[nodiscard]] RunOptions run_options() const
    {
        RunOptions opt;
        opt.algo = parse_algo(algo);
        opt.epsilon = eps;
        opt.c = c;
        opt.seed = seed;
        opt.delta = delta;
        opt.threads = std::max(1u, threads);
        return opt;
    }
};

void add_common(CLI::App* app, Common& common)
{
    app->add_option("--algo", common.algo, "Algorithm")->check(CLI::IsMember(algo_names()));
    app->add_option("--eps", common.eps, "Approximation parameter in (0, 1)");
    app->add_option("--c", common.c, "Round multiplier for the randomized algorithms");
    app->add_option("--seed", common.seed, "Random seed");
    app->add_option("--delta", common.delta, "Threshold for --algo threshold");
    app->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app->add_flag("--zero-index", common.zero_index, "Report alignments from 0");
    app->add_option("--threads", common.threads, "Worker threads");
}

struct InstanceFiles {
    std::string text, pattern, relation, intervals;
};

void add_instance_files(CLI::App* app, InstanceFiles& files, bool required)
{
    auto* t = app->add_option("--text", files.text, "Text symbols file");
    auto* p = app->add_option("--pattern", files.pattern, "Pattern symbols file");
    auto* r = app->add_option("--rel", files.relation, "Relation file");
    auto* i = app->add_option("--ivl", files.intervals, "Interval relation file");
    r->excludes(i);
    if (required) {
        t->required();
        p->required();
    }
}

std::uint64_t alphabet_of(const std::vector<Symbol>& symbols)
{
    return symbols.empty() ? 1 : *std::max_element(symbols.begin(), symbols.end()) + 1;
}

Instance load_instance(const InstanceFiles& files, Algo algo)
{
    auto t = load_symbols(files.text);
    auto p = load_symbols(files.pattern);
    if (!files.intervals.empty()) {
        auto ir = load_intervals(files.intervals);
        auto rel = ir.to_relation();
        return {Text(std::move(t), ir.text_alphabet()), Pattern(std::move(p), ir.pattern_alphabet()),
                std::move(rel), std::move(ir)};
    }
    if (!files.relation.empty()) {
        auto rel = load_relation(files.relation);
        return {Text(std::move(t), rel.text_alphabet()), Pattern(std::move(p), rel.pattern_alphabet()),
                std::move(rel), std::nullopt};
    }
    if (algo != Algo::Threshold)
        throw InputError("a relation (--rel or --ivl) is required unless --algo threshold");
    const std::uint64_t st = alphabet_of(t), sp = alphabet_of(p);
    return {Text(std::move(t), st), Pattern(std::move(p), sp), MatchRelation::empty(st, sp), std::nullopt};
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body)
{
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write " + path);
    body(out);
}

void print_params(const AchievedParams& params, bool json, const nlohmann::json& extra = {})
{
    if (json) {
        nlohmann::json j{{"D", params.D}, {"S", params.S}, {"I", params.I}};
        if (extra.is_object())
            j.update(extra);
        std::cout << j.dump() << '\n';
        return;
    }
    std::cout << "D " << params.D << "\nS " << params.S << "\nI " << params.I << '\n';
    if (extra.is_object())
        for (const auto& [key, value] : extra.items())
            std::cout << key << ' ' << value.dump() << '\n';
}

void save_instance(const std::string& prefix, const Instance& inst)
{
    write_file(prefix + ".text", [&](std::ostream& o) { write_symbols(o, inst.text.symbols()); });
    write_file(prefix + ".pattern", [&](std::ostream& o) { write_symbols(o, inst.pattern.symbols()); });
    write_file(prefix + ".rel", [&](std::ostream& o) { write_relation(o, inst.rel); });
    if (inst.intervals)
        write_file(prefix + ".ivl", [&](std::ostream& o) { write_intervals(o, *inst.intervals); });
}

BoolMatrix load_matrix(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read " + path);
    BoolMatrix m;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::vector<std::uint8_t> r;
        for (std::string cell; row >> cell;) {
            if (cell != "0" && cell != "1")
                throw InputError("matrix entries must be 0 or 1 in " + path);
            r.push_back(cell == "1");
        }
        if (r.empty())
            continue;
        if (!m.empty() && r.size() != m.front().size())
            throw InputError("ragged matrix in " + path);
        m.push_back(std::move(r));
    }
    if (m.empty())
        throw InputError("empty matrix in " + path);
    return m;
}

// Regime flags shared by gen, verify and bench.
struct RegimeFlags {
    std::optional<double> density;
    std::optional<std::uint64_t> degree_cap;
    std::optional<std::uint64_t> intervals;

    void add(CLI::App* app)
    {
        auto* d = app->add_option("--density", density, "Edge probability in (0, 1]");
        auto* k = app->add_option("--degree-cap", degree_cap, "Maximum degree");
        auto* i = app->add_option("--intervals-per-char", intervals, "Intervals per pattern character");
        d->excludes(k)->excludes(i);
        k->excludes(i);
    }

    [[nodiscard]] Regime regime(Regime fallback) const
    {
        if (density)
            return Density{*density};
        if (degree_cap)
            return DegreeCap{*degree_cap};
        if (intervals)
            return IntervalsPerChar{*intervals};
        return fallback;
    }
};

struct SizeFlags {
    std::size_t n = 1000;
    std::size_t m = 16;
    std::uint64_t sigma_t = 16;
    std::uint64_t sigma_p = 16;
    std::uint64_t planted = 0;

    void add(CLI::App* app)
    {
        app->add_option("--n", n, "Text length");
        app->add_option("--m", m, "Pattern length");
        app->add_option("--sigma-t", sigma_t, "Text alphabet size");
        app->add_option("--sigma-p", sigma_p, "Pattern alphabet size");
        app->add_option("--planted", planted, "Occurrences to plant");
    }

    [[nodiscard]] RandomSpec spec(const Regime& regime, std::uint64_t seed) const
    {
        RandomSpec s;
        s.n = n;
        s.m = m;
        s.sigma_t = sigma_t;
        s.sigma_p = sigma_p;
        s.regime = regime;
        s.seed = seed;
        s.planted = planted;
        return s;
    }
};

// gen -------------------------------------------------------------------------

struct GenArgs {
    std::string kind = "random";
    std::string out;
    SizeFlags size;
    RegimeFlags regime;
    bool grant = false;
    std::string a, b;
    std::size_t x = 4, y = 4, z = 4;
    double matrix_density = 0.3;
};

int cmd_gen(const GenArgs& args, const Common& common)
{
    if (args.kind == "random") {
        const auto inst = gen_random(args.size.spec(args.regime.regime(Density{}), common.seed));
        if (!args.out.empty())
            save_instance(args.out, inst);
        print_params(achieved_params(inst), common.json());
        return 0;
    }
    if (args.kind == "diagonal") {
        DiagonalInfo info;
        const auto inst = gen_adversarial_diagonal(args.size.n, args.size.m, args.grant, &info);
        if (!args.out.empty())
            save_instance(args.out, inst);
        print_params(achieved_params(inst), common.json(),
                     {{"granted_diagonal", info.granted_diagonal},
                      {"edges_full", info.edges_full},
                      {"edges_used", info.edges_used}});
        return 0;
    }
    // matrix
    const BoolMatrix a = args.a.empty() ? random_bool_matrix(args.x, args.y, args.matrix_density, common.seed)
                                        : load_matrix(args.a);
    const BoolMatrix b = args.b.empty()
                             ? random_bool_matrix(a.front().size(), args.z, args.matrix_density, common.seed + 1)
                             : load_matrix(args.b);
    const auto red = gen_matrix_reduction(a, b);
    if (!args.out.empty()) {
        save_instance(args.out, red.instance);
        write_file(args.out + ".cells", [&](std::ostream& o) {
            for (std::size_t i = 0; i < red.designated.size(); ++i)
                for (std::size_t j = 0; j < red.designated[i].size(); ++j)
                    o << i << ' ' << j << ' ' << red.designated[i][j] << '\n';
        });
    }
    const auto product = bool_product(a, b);
    std::uint64_t ones = 0;
    for (const auto& row : product)
        ones += static_cast<std::uint64_t>(std::count(row.begin(), row.end(), 1));
    print_params(achieved_params(red.instance), common.json(),
                 {{"rows", a.size()}, {"inner", a.front().size()}, {"cols", b.front().size()}, {"product_ones", ones}});
    return 0;
}

// match / count -----------------------------------------------------------------

int cmd_match(const InstanceFiles& files, const Common& common)
{
    const auto opt = common.run_options();
    const auto inst = load_instance(files, opt.algo);
    const auto matches = run_match(inst, opt);
    print_matches(std::cout, matches, common.json(), common.zero_index);
    return 0;
}

int cmd_count(const InstanceFiles& files, const Common& common)
{
    const auto opt = common.run_options();
    const auto inst = load_instance(files, opt.algo);
    print_table(std::cout, run_count(inst, opt), common.json(), common.zero_index);
    return 0;
}

// verify ----------------------------------------------------------------------------

struct VerifyArgs {
    InstanceFiles files;
    std::string table;
    std::string dump;
    std::uint64_t instances = 100;
    std::uint64_t runs = 1;
    std::string mode = "count";
    SizeFlags size;
    RegimeFlags regime;
};

// Reads "i count" or "i h' lo hi" lines; returns per-alignment [lo, hi].
std::vector<std::pair<std::uint64_t, std::uint64_t>> load_table(const std::string& path, bool zero_index)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read " + path);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;
    std::string line;
    const std::uint64_t base = zero_index ? 0 : 1;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::vector<std::uint64_t> cells;
        for (std::uint64_t v; row >> v;)
            cells.push_back(v);
        if (!row.eof())
            throw InputError("malformed table line: " + line);
        if (cells.empty())
            continue;
        if (cells.size() != 2 && cells.size() != 4)
            throw InputError("table lines need 2 or 4 columns: " + line);
        if (cells[0] != rows.size() + base)
            throw InputError("table alignments must be consecutive: " + line);
        if (cells.size() == 2)
            rows.emplace_back(cells[1], cells[1]);
        else
            rows.emplace_back(cells[2], cells[3]);
    }
    return rows;
}

struct Verdict {
    VerifySummary summary;
    std::uint64_t runs = 0;
    std::uint64_t first_alignment = 0;
    std::optional<Instance> counterexample;
};

void record_failure(Verdict& v, const Instance& inst, std::uint64_t index, std::uint64_t seed, std::uint64_t alignment)
{
    ++v.summary.hard_failures;
    if (!v.counterexample) {
        v.counterexample = inst;
        v.summary.failing_instance = index;
        v.summary.failing_seed = seed;
        v.first_alignment = alignment;
    }
}

void verify_one(Verdict& v, const Instance& inst, std::uint64_t index, const VerifyArgs& args, RunOptions opt,
                bool zero_index)
{
    ++v.summary.instances;
    if (!args.table.empty()) {
        const auto truth = oracle_count(inst, opt);
        const auto rows = load_table(args.table, zero_index);
        ++v.runs;
        if (rows.size() != truth.size()) {
            record_failure(v, inst, index, opt.seed, 1);
            return;
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            ++v.summary.alignments_checked;
            if (truth.values[i] < rows[i].first || truth.values[i] > rows[i].second) {
                record_failure(v, inst, index, opt.seed, i + 1);
                return;
            }
        }
        return;
    }
    const bool randomized = !reporting_is_exact(opt.algo);
    const std::uint64_t runs = randomized ? std::max<std::uint64_t>(1, args.runs) : 1;
    const auto base_seed = opt.seed;
    for (std::uint64_t r = 0; r < runs; ++r) {
        opt.seed = base_seed + r;
        ++v.runs;
        ContractResult res;
        const bool report_only = opt.algo == Algo::RandD || opt.algo == Algo::RandS;
        if (args.mode == "match" || report_only) {
            auto truth = zero_alignments(oracle_count(inst, opt).values);
            const auto got = run_match(inst, opt);
            res = check_match(opt.algo, got, truth);
            v.summary.alignments_checked += inst.text.size() >= inst.pattern.size()
                                                ? inst.text.size() - inst.pattern.size() + 1
                                                : 0;
        } else {
            const auto truth = oracle_count(inst, opt);
            res = check_count(run_count(inst, opt), truth);
            v.summary.alignments_checked += truth.size();
        }
        if (!res.hard_ok)
            record_failure(v, inst, index, opt.seed, res.first_violation);
        if (!res.soft_ok)
            ++v.summary.soft_failures;
    }
}

int cmd_verify(const VerifyArgs& args, const Common& common)
{
    const auto opt = common.run_options();
    Verdict v;
    if (!args.files.text.empty() || !args.files.pattern.empty()) {
        if (args.files.text.empty() || args.files.pattern.empty())
            throw InputError("--text and --pattern must be given together");
        const auto inst = load_instance(args.files, opt.algo);
        validate(opt, inst);
        verify_one(v, inst, 0, args, opt, common.zero_index);
    } else {
        if (!args.table.empty())
            throw InputError("--table needs an instance given by --text and --pattern");
        const Regime fallback = opt.algo == Algo::Interval ? Regime{IntervalsPerChar{2}} : Regime{DegreeCap{2}};
        for (std::uint64_t k = 0; k < args.instances; ++k) {
            auto inst = gen_random(args.size.spec(args.regime.regime(fallback), common.seed + k));
            RunOptions o = opt;
            o.seed = common.seed + k;
            validate(o, inst);
            verify_one(v, inst, k, args, o, common.zero_index);
        }
    }
    auto& s = v.summary;
    const double soft_rate = v.runs ? 1.0 - static_cast<double>(s.soft_failures) / static_cast<double>(v.runs) : 1.0;
    s.pass = s.hard_failures == 0 && soft_rate >= kSoftPassRate;
    const std::string subject = args.table.empty() ? common.algo : "table";
    if (common.json()) {
        nlohmann::json j{{"verdict", s.pass ? "PASS" : "FAIL"}, {"algo", subject},
                         {"instances", s.instances}, {"runs", v.runs},
                         {"alignments", s.alignments_checked}, {"hard_failures", s.hard_failures},
                         {"soft_failures", s.soft_failures}};
        if (s.failing_instance) {
            j["failing_instance"] = *s.failing_instance;
            j["failing_seed"] = *s.failing_seed;
            j["first_alignment"] = v.first_alignment - (common.zero_index ? 1 : 0);
        }
        std::cout << j.dump() << '\n';
    } else {
        std::cout << (s.pass ? "PASS" : "FAIL") << ' ' << subject << ": " << s.instances << " instances, "
                  << v.runs << " runs, " << s.alignments_checked << " alignments, " << s.hard_failures
                  << " contract violations, " << s.soft_failures << " runs outside the probabilistic guarantee\n";
    }
    if (s.pass)
        return 0;
    if (v.counterexample) {
        std::ostringstream dump;
        dump << "# first violating alignment " << v.first_alignment - (common.zero_index ? 1 : 0) << '\n';
        dump_instance(dump, *v.counterexample, *s.failing_seed);
        if (args.dump.empty())
            std::cerr << dump.str();
        else
            write_file(args.dump, [&](std::ostream& o) { o << dump.str(); });
    }
    return kExitVerifyFailed;
}

// bench -------------------------------------------------------------------------------

struct BenchArgs {
    std::vector<std::string> algos{"brute"};
    std::vector<std::size_t> ns;
    std::size_t n_min = 4096, n_max = 65536;
    std::uint64_t reps = 3;
    std::string out;
    SizeFlags size;
    RegimeFlags regime;
};

int cmd_bench(const BenchArgs& args, const Common& common)
{
    std::vector<std::size_t> ns = args.ns;
    if (ns.empty()) {
        if (args.n_min < 1 || args.n_max < args.n_min)
            throw InputError("need 1 <= --n-min <= --n-max");
        for (std::size_t n = args.n_min; n <= args.n_max; n *= 2)
            ns.push_back(n);
    }
    std::vector<Algo> algos;
    for (const auto& name : args.algos)
        algos.push_back(parse_algo(name));
    if (args.reps < 1)
        throw InputError("--reps must be positive");

    std::ofstream file;
    if (!args.out.empty()) {
        file.open(args.out);
        if (!file)
            throw InputError("cannot write " + args.out);
    }
    std::ostream& out = args.out.empty() ? std::cout : file;
    out << "algo,n,m,D,S,I,eps,threads,median_ms\n";

    const bool wants_intervals = std::any_of(algos.begin(), algos.end(), [](Algo a) { return a == Algo::Interval; });
    const Regime fallback = wants_intervals ? Regime{IntervalsPerChar{2}} : Regime{DegreeCap{2}};
    for (auto n : ns) {
        auto spec = args.size.spec(args.regime.regime(fallback), common.seed);
        spec.n = n;
        spec.m = std::min(spec.m, n);
        const auto inst = gen_random(spec);
        const auto params = achieved_params(inst);
        for (auto algo : algos) {
            RunOptions opt = common.run_options();
            opt.algo = algo;
            validate(opt, inst);
            const bool report_only = algo == Algo::RandD || algo == Algo::RandS;
            std::vector<double> ms;
            for (std::uint64_t r = 0; r < args.reps; ++r) {
                const auto start = std::chrono::steady_clock::now();
                if (report_only)
                    (void)run_match(inst, opt);
                else
                    (void)run_count(inst, opt);
                ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
            }
            std::sort(ms.begin(), ms.end());
            const double median = ms.size() % 2 ? ms[ms.size() / 2] : (ms[ms.size() / 2 - 1] + ms[ms.size() / 2]) / 2;
            char cell[32];
            std::snprintf(cell, sizeof cell, "%.3f", median);
            out << algo_name(algo) << ',' << n << ',' << spec.m << ',' << params.D << ',' << params.S << ','
                << params.I << ',' << opt.epsilon << ',' << opt.threads << ',' << cell << '\n';
        }
    }
    return 0;
}

// discrepancy / codes ------------------------------------------------------------------

int cmd_discrepancy(const std::string& path, const Common& common)
{
    const auto sys = load_set_system(path);
    const auto col = colour(sys);
    const bool audit = exact_objective_audit(sys, col);
    const bool within = static_cast<double>(col.max_discrepancy) <= col.bound;
    if (common.json()) {
        std::cout << nlohmann::json{{"max_discrepancy", col.max_discrepancy}, {"alpha", col.alpha},
                                    {"bound", col.bound}, {"audit", audit ? "PASS" : "FAIL"},
                                    {"within_bound", within}}
                         .dump()
                  << '\n';
    } else {
        std::cout << "max_discrepancy " << col.max_discrepancy << "\nalpha " << col.alpha << "\nbound " << col.bound
                  << "\naudit " << (audit ? "PASS" : "FAIL") << '\n';
    }
    return audit && within ? 0 : kExitVerifyFailed;
}

int cmd_codes(const std::string& path, const Common& common)
{
    if (!(common.eps > 0.0 && common.eps < 1.0))
        throw InputError("--eps must lie in (0, 1)");
    const auto sys = load_set_system(path);
    const auto code = build_code(sys, common.eps);
    const auto report = verify_code(code, sys);
    if (common.json()) {
        std::cout << nlohmann::json{{"d", code.degree}, {"w", code.weight}, {"l", code.length},
                                    {"B", code.partition.achieved_bound}, {"degenerate", code.degenerate},
                                    {"min_surviving", report.min_surviving}, {"tau", report.threshold},
                                    {"verdict", report.ok ? "PASS" : "FAIL"}}
                         .dump()
                  << '\n';
    } else {
        std::cout << code.degree << ' ' << code.weight << ' ' << code.length << ' ' << code.partition.achieved_bound
                  << ' ' << (report.ok ? "PASS" : "FAIL") << '\n';
    }
    return report.ok ? 0 : kExitVerifyFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Generalised pattern matching: run, verify and benchmark mismatch counting"};
    app.require_subcommand(1);
    Common common;

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate an instance and print its D, S, I");
    add_common(gen_cmd, common);
    gen_cmd->add_option("--kind", gen.kind, "random | diagonal | matrix")
        ->check(CLI::IsMember({"random", "diagonal", "matrix"}));
    gen_cmd->add_option("--out", gen.out, "Output prefix for .text .pattern .rel [.ivl] [.cells]");
    gen.size.add(gen_cmd);
    gen.regime.add(gen_cmd);
    gen_cmd->add_flag("--grant", gen.grant, "Diagonal: make one diagonal all ones");
    gen_cmd->add_option("--a", gen.a, "Matrix: file for A");
    gen_cmd->add_option("--b", gen.b, "Matrix: file for B");
    gen_cmd->add_option("--x", gen.x, "Matrix: rows of a random A");
    gen_cmd->add_option("--y", gen.y, "Matrix: columns of a random A");
    gen_cmd->add_option("--z", gen.z, "Matrix: columns of a random B");
    gen_cmd->add_option("--matrix-density", gen.matrix_density, "Matrix: probability of a one");

    InstanceFiles match_files, count_files;
    auto* match_cmd = app.add_subcommand("match", "Report occurrences");
    add_common(match_cmd, common);
    add_instance_files(match_cmd, match_files, true);
    auto* count_cmd = app.add_subcommand("count", "Count mismatches at every alignment");
    add_common(count_cmd, common);
    add_instance_files(count_cmd, count_files, true);

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Check an algorithm's contract against the brute oracle");
    add_common(verify_cmd, common);
    add_instance_files(verify_cmd, verify.files, false);
    verify_cmd->add_option("--table", verify.table, "Check this count table instead of running --algo");
    verify_cmd->add_option("--dump", verify.dump, "Write the counterexample here instead of stderr");
    verify_cmd->add_option("--instances", verify.instances, "Random instances when no files are given");
    verify_cmd->add_option("--runs", verify.runs, "Seeds per instance for randomized algorithms");
    verify_cmd->add_option("--mode", verify.mode, "count | match")->check(CLI::IsMember({"count", "match"}));
    verify.size.add(verify_cmd);
    verify.regime.add(verify_cmd);

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Median wall-clock times as CSV");
    add_common(bench_cmd, common);
    bench_cmd->add_option("--algos", bench.algos, "Algorithms to time")->delimiter(',');
    bench_cmd->add_option("--ns", bench.ns, "Explicit text lengths")->delimiter(',');
    bench_cmd->add_option("--n-min", bench.n_min, "Smallest text length of a doubling sweep");
    bench_cmd->add_option("--n-max", bench.n_max, "Largest text length of a doubling sweep");
    bench_cmd->add_option("--reps", bench.reps, "Repetitions per cell");
    bench_cmd->add_option("--out", bench.out, "CSV path, stdout if absent");
    bench_cmd->add_option("--m", bench.size.m, "Pattern length");
    bench_cmd->add_option("--sigma-t", bench.size.sigma_t, "Text alphabet size");
    bench_cmd->add_option("--sigma-p", bench.size.sigma_p, "Pattern alphabet size");
    bench_cmd->add_option("--planted", bench.size.planted, "Occurrences to plant");
    bench.regime.add(bench_cmd);

    std::string disc_sets, code_sets;
    auto* disc_cmd = app.add_subcommand("discrepancy", "Colour a set system and audit it");
    add_common(disc_cmd, common);
    disc_cmd->add_option("sets", disc_sets, "Set-system file")->required();
    auto* codes_cmd = app.add_subcommand("codes", "Build and verify a superimposed code: d w l B verdict");
    add_common(codes_cmd, common);
    codes_cmd->add_option("sets", code_sets, "Set-system file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);
        std::cerr << app.help();
        return kExitInputError;
    }

    try {
        if (gen_cmd->parsed())
            return cmd_gen(gen, common);
        if (match_cmd->parsed())
            return cmd_match(match_files, common);
        if (count_cmd->parsed())
            return cmd_count(count_files, common);
        if (verify_cmd->parsed())
            return cmd_verify(verify, common);
        if (bench_cmd->parsed())
            return cmd_bench(bench, common);
        if (disc_cmd->parsed())
            return cmd_discrepancy(disc_sets, common);
        if (codes_cmd->parsed())
            return cmd_codes(code_sets, common);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternalError;
    }
    return kExitInputError;
}

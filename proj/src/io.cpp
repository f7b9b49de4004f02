#include "gpm/io.hpp"

#include "gpm/discrepancy.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace gpm {

namespace {

std::uint64_t parse_u64(const std::string& token, const char* what)
{
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
        throw InputError(std::string("expected a non-negative integer for ") + what + ", got '" + token + "'");
    try {
        return std::stoull(token);
    } catch (const std::out_of_range&) {
        throw InputError(std::string(what) + " out of range: " + token);
    }
}

std::vector<std::uint64_t> parse_line(const std::string& line, const char* what)
{
    std::istringstream in(line);
    std::vector<std::uint64_t> out;
    for (std::string tok; in >> tok;)
        out.push_back(parse_u64(tok, what));
    return out;
}

Symbol to_symbol(std::uint64_t v)
{
    if (v > std::numeric_limits<Symbol>::max())
        throw InputError("character code exceeds 32 bits: " + std::to_string(v));
    return static_cast<Symbol>(v);
}

bool is_comment(const std::string& line)
{
    const auto pos = line.find_first_not_of(" \t\r");
    return pos != std::string::npos && line[pos] == '#';
}

bool skippable(const std::string& line)
{
    const auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

// Header "<tag> v1 v2 ..." on the first meaningful line.
std::vector<std::uint64_t> read_header(std::istream& in, const std::string& tag, std::size_t fields)
{
    std::string line;
    while (std::getline(in, line)) {
        if (skippable(line))
            continue;
        std::istringstream hs(line);
        std::string word;
        hs >> word;
        if (word != tag)
            throw InputError("expected '" + tag + "' header, got '" + line + "'");
        std::vector<std::uint64_t> values;
        for (std::string tok; hs >> tok;)
            values.push_back(parse_u64(tok, "header field"));
        if (values.size() != fields)
            throw InputError("'" + tag + "' header needs " + std::to_string(fields) + " fields");
        return values;
    }
    throw InputError("missing '" + tag + "' header");
}

std::ifstream open(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    return in;
}

} // namespace

MatchRelation read_relation(std::istream& in)
{
    const auto header = read_header(in, "rel", 2);
    std::vector<std::pair<Symbol, Symbol>> edges;
    for (std::string line; std::getline(in, line);) {
        if (skippable(line))
            continue;
        const auto v = parse_line(line, "edge");
        if (v.size() != 2)
            throw InputError("edge line needs exactly two codes: '" + line + "'");
        edges.emplace_back(to_symbol(v[0]), to_symbol(v[1]));
    }
    return MatchRelation(header[0], header[1], edges);
}

IntervalRelation read_intervals(std::istream& in)
{
    const auto header = read_header(in, "ivl", 2);
    if (header[1] == 0 || header[1] > (std::uint64_t{1} << 32))
        throw InputError("pattern alphabet size must be in [1, 2^32]");
    std::vector<std::vector<Interval>> lists(header[1]);
    for (std::string line; std::getline(in, line);) {
        if (skippable(line))
            continue;
        const auto v = parse_line(line, "interval");
        if (v.size() % 2 != 1)
            throw InputError("interval line needs a character and lo/hi pairs: '" + line + "'");
        if (v[0] >= header[1])
            throw InputError("pattern character out of range: " + std::to_string(v[0]));
        for (std::size_t k = 1; k < v.size(); k += 2)
            lists[v[0]].push_back({to_symbol(v[k]), to_symbol(v[k + 1])});
    }
    return IntervalRelation(header[0], std::move(lists));
}

std::vector<Symbol> read_symbols(std::istream& in)
{
    std::vector<Symbol> out;
    for (std::string tok; in >> tok;)
        out.push_back(to_symbol(parse_u64(tok, "symbol")));
    return out;
}

SetSystem read_set_system(std::istream& in)
{
    const auto header = read_header(in, "sys", 3);
    const std::uint64_t z = header[0];
    std::vector<std::vector<std::uint32_t>> sets;
    // Exactly z set lines follow; an empty line is an empty set.
    for (std::string line; sets.size() < z && std::getline(in, line);) {
        if (is_comment(line))
            continue;
        std::vector<std::uint32_t> set;
        for (auto v : parse_line(line, "set element"))
            set.push_back(to_symbol(v));
        sets.push_back(std::move(set));
    }
    if (sets.size() != z)
        throw InputError("set system declares " + std::to_string(z) + " sets but lists " +
                         std::to_string(sets.size()));
    for (std::string line; std::getline(in, line);)
        if (!skippable(line))
            throw InputError("trailing data after the declared sets");
    return SetSystem(header[2], std::move(sets), header[1]);
}

void write_relation(std::ostream& out, const MatchRelation& rel)
{
    out << "rel " << rel.text_alphabet() << ' ' << rel.pattern_alphabet() << '\n';
    for (const auto& [a, b] : rel.edges())
        out << a << ' ' << b << '\n';
}

void write_intervals(std::ostream& out, const IntervalRelation& ir)
{
    out << "ivl " << ir.text_alphabet() << ' ' << ir.pattern_alphabet() << '\n';
    for (std::uint64_t b = 0; b < ir.pattern_alphabet(); ++b) {
        const auto list = ir.intervals(static_cast<Symbol>(b));
        if (list.empty())
            continue;
        out << b;
        for (const auto& iv : list)
            out << ' ' << iv.lo << ' ' << iv.hi;
        out << '\n';
    }
}

void write_symbols(std::ostream& out, std::span<const Symbol> symbols)
{
    for (std::size_t i = 0; i < symbols.size(); ++i)
        out << (i ? " " : "") << symbols[i];
    out << '\n';
}

void write_set_system(std::ostream& out, const SetSystem& sys)
{
    out << "sys " << sys.set_count() << ' ' << sys.max_set_size() << ' ' << sys.universe_size() << '\n';
    for (const auto& s : sys.sets()) {
        for (std::size_t i = 0; i < s.size(); ++i)
            out << (i ? " " : "") << s[i];
        out << '\n';
    }
}

MatchRelation load_relation(const std::string& path)
{
    auto in = open(path);
    return read_relation(in);
}

IntervalRelation load_intervals(const std::string& path)
{
    auto in = open(path);
    return read_intervals(in);
}

std::vector<Symbol> load_symbols(const std::string& path)
{
    auto in = open(path);
    return read_symbols(in);
}

SetSystem load_set_system(const std::string& path)
{
    auto in = open(path);
    return read_set_system(in);
}

} // namespace gpm

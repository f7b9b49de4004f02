#pragma once

// Plain-text instance formats.
//
//   relation:  "rel <|Sigma_T|> <|Sigma_P|>" then one "a b" pair per line
//   intervals: "ivl <|Sigma_T|> <|Sigma_P|>" then "b lo1 hi1 lo2 hi2 ..." per line
//   strings:   whitespace-separated decimal codes
//   sets:      "sys <z> <k> <|U|>" then one whitespace-separated set per line

#include "gpm/core_model.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace gpm {

class SetSystem;

[[nodiscard]] MatchRelation read_relation(std::istream& in);
[[nodiscard]] IntervalRelation read_intervals(std::istream& in);
[[nodiscard]] std::vector<Symbol> read_symbols(std::istream& in);
[[nodiscard]] SetSystem read_set_system(std::istream& in);

void write_relation(std::ostream& out, const MatchRelation& rel);
void write_intervals(std::ostream& out, const IntervalRelation& ir);
void write_symbols(std::ostream& out, std::span<const Symbol> symbols);
void write_set_system(std::ostream& out, const SetSystem& sys);

[[nodiscard]] MatchRelation load_relation(const std::string& path);
[[nodiscard]] IntervalRelation load_intervals(const std::string& path);
[[nodiscard]] std::vector<Symbol> load_symbols(const std::string& path);
[[nodiscard]] SetSystem load_set_system(const std::string& path);

} // namespace gpm

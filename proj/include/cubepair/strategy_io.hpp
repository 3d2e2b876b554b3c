#pragma once

// Strategy files. Each section is a header line
//   #bps n=<int> k=<int> name=<rest of line>
// followed by one edge per line in compact form ("10v1"), sorted canonically.
// A family file may open with "#family <provenance>" and holds one section
// per member.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cubepair/strategy.hpp"

namespace cubepair {

std::string render_strategy(const PairingStrategy& ps);
std::string render_family(const StrategyFamily& fam);

// Throws ParseError with the offending line number.
std::vector<PairingStrategy> parse_strategies(std::string_view text);
PairingStrategy parse_strategy(std::string_view text);
StrategyFamily parse_family(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace cubepair

#include "cubepair/strategy_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "cubepair/errors.hpp"

namespace cubepair {

namespace {

constexpr std::string_view kHeader = "#bps ";
constexpr std::string_view kFamily = "#family";

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

int read_int_field(std::string_view& rest, std::string_view key, std::size_t line) {
  if (rest.substr(0, key.size()) != key) fail(line, "expected '" + std::string(key) + "'");
  rest.remove_prefix(key.size());
  int value = 0;
  const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
  if (ec != std::errc{}) fail(line, "bad integer after '" + std::string(key) + "'");
  rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
  if (rest.empty() || rest.front() != ' ') fail(line, "expected a space after '" + std::string(key) + "'");
  rest.remove_prefix(1);
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

struct Section {
  int n = 0;
  int k = 0;
  std::string name;
  std::size_t line = 0;
  std::vector<Edge> edges;
};

std::vector<PairingStrategy> parse_all(std::string_view text, std::string* provenance) {
  std::vector<Section> sections;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line.substr(0, kHeader.size()) == kHeader) {
      std::string_view rest = line.substr(kHeader.size());
      Section s;
      s.line = line_no;
      s.n = read_int_field(rest, "n=", line_no);
      s.k = read_int_field(rest, "k=", line_no);
      if (rest.substr(0, 5) != "name=") fail(line_no, "expected 'name='");
      s.name = std::string(rest.substr(5));
      if (s.n < 1 || s.n > kMaxDimension) fail(line_no, "n must lie in [1, 63]");
      if (s.k < 0 || s.k > s.n) fail(line_no, "k must lie in [0, n]");
      sections.push_back(std::move(s));
      continue;
    }
    if (line.substr(0, kFamily.size()) == kFamily) {
      if (!sections.empty()) fail(line_no, "#family must precede every section");
      if (provenance) *provenance = std::string(trim(line.substr(kFamily.size())));
      continue;
    }
    if (line.front() == '#') fail(line_no, "unknown directive");
    if (sections.empty()) fail(line_no, "edge before any #bps header");
    Section& s = sections.back();
    if (line.size() != static_cast<std::size_t>(s.n)) {
      fail(line_no, "edge '" + std::string(line) + "' has length " + std::to_string(line.size()) + ", expected " +
                        std::to_string(s.n));
    }
    try {
      s.edges.push_back(parse_edge(line));
    } catch (const Error& e) {
      fail(line_no, e.what());
    }
  }
  std::vector<PairingStrategy> out;
  out.reserve(sections.size());
  for (Section& s : sections) out.emplace_back(s.n, s.k, std::move(s.name), std::move(s.edges));
  return out;
}

}  // namespace

std::string render_strategy(const PairingStrategy& ps) {
  std::string out = "#bps n=" + std::to_string(ps.n) + " k=" + std::to_string(ps.k) + " name=" + ps.name + "\n";
  out.reserve(out.size() + ps.edges.size() * static_cast<std::size_t>(ps.n + 1));
  for (const Edge& e : ps.edges) {
    out += to_string(e);
    out += '\n';
  }
  return out;
}

std::string render_family(const StrategyFamily& fam) {
  std::string out;
  if (!fam.provenance.empty()) out = std::string(kFamily) + " " + fam.provenance + "\n";
  for (const PairingStrategy& ps : fam.members) out += render_strategy(ps);
  return out;
}

std::vector<PairingStrategy> parse_strategies(std::string_view text) { return parse_all(text, nullptr); }

PairingStrategy parse_strategy(std::string_view text) {
  auto all = parse_all(text, nullptr);
  if (all.size() != 1) throw ParseError("expected exactly one strategy section, found " + std::to_string(all.size()));
  return std::move(all.front());
}

StrategyFamily parse_family(std::string_view text) {
  StrategyFamily fam;
  fam.members = parse_all(text, &fam.provenance);
  return fam;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write to " + path.string() + " failed");
}

}  // namespace cubepair

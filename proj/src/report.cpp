#include "cubepair/report.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "cubepair/errors.hpp"
#include "cubepair/verifier.hpp"

namespace cubepair {

std::string to_string(Check c) {
  switch (c) {
    case Check::matching: return "matching";
    case Check::coverage: return "coverage";
    case Check::partition: return "partition";
    case Check::polychromatic: return "polychromatic";
  }
  return "?";
}

Check parse_check(std::string_view name) {
  for (Check c : {Check::matching, Check::coverage, Check::partition, Check::polychromatic}) {
    if (name == to_string(c)) return c;
  }
  throw ParseError("unknown check '" + std::string(name) + "'");
}

std::vector<Check> parse_checks(std::string_view list) {
  std::vector<Check> out;
  while (!list.empty()) {
    const std::size_t comma = list.find(',');
    const std::string_view item = list.substr(0, comma);
    if (item.empty()) throw ParseError("empty entry in check list");
    out.push_back(parse_check(item));
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ParseError("no checks requested");
  return out;
}

bool VerificationReport::passed() const {
  for (const CheckOutcome& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  out << "subject=" << subject << '\n' << "n=" << n << '\n' << "k=" << k << '\n' << "members=" << members << '\n';
  for (const CheckOutcome& c : checks) {
    const std::string key = "check." + to_string(c.check);
    out << key << '=' << (c.passed ? "pass" : "fail") << '\n';
    if (c.member) out << key << ".member=" << *c.member << '\n';
    if (c.counterexample) out << key << ".counterexample=" << *c.counterexample << '\n';
    if (c.subcubes) {
      out << key << ".subcubes=" << c.subcubes << '\n';
      if (c.seconds > 0) out << key << ".subcubes_per_second=" << std::fixed << std::setprecision(0) << c.subcubes / c.seconds << '\n';
    }
    out << key << ".seconds=" << std::fixed << std::setprecision(6) << c.seconds << '\n';
  }
  out << "result=" << (passed() ? "pass" : "fail") << '\n';
  return out.str();
}

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["subject"] = subject;
  j["n"] = n;
  j["k"] = k;
  j["members"] = members;
  j["passed"] = passed();
  j["checks"] = nlohmann::json::array();
  for (const CheckOutcome& c : checks) {
    nlohmann::json e{{"check", to_string(c.check)}, {"passed", c.passed}, {"subcubes", c.subcubes}, {"seconds", c.seconds}};
    e["counterexample"] = c.counterexample ? nlohmann::json(*c.counterexample) : nlohmann::json(nullptr);
    e["member"] = c.member ? nlohmann::json(*c.member) : nlohmann::json(nullptr);
    j["checks"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

namespace {

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

VerificationReport verify_family(const StrategyFamily& fam, const std::vector<Check>& checks, int k, int jobs) {
  if (fam.members.empty()) throw PreconditionError("nothing to verify");
  VerificationReport rep;
  rep.subject = fam.members.size() == 1 ? fam.members.front().name
                                        : (fam.provenance.empty() ? fam.members.front().name : fam.provenance);
  rep.n = fam.members.front().n;
  rep.k = k;
  rep.members = fam.members.size();
  for (Check check : checks) {
    CheckOutcome out;
    out.check = check;
    const auto t0 = std::chrono::steady_clock::now();
    switch (check) {
      case Check::matching:
        for (std::size_t i = 0; i < fam.members.size() && out.passed; ++i) {
          if (const auto c = find_matching_conflict(fam.members[i])) {
            out.passed = false;
            out.member = i;
            out.counterexample = to_string(c->first) + " " + to_string(c->second) + " share " + to_string(c->shared);
          }
        }
        break;
      case Check::coverage:
        for (std::size_t i = 0; i < fam.members.size() && out.passed; ++i) {
          const CoverageResult r = check_coverage(fam.members[i], k, jobs);
          out.subcubes += r.subcubes_checked;
          if (!r.covered) {
            out.passed = false;
            out.member = i;
            out.counterexample = to_string(*r.counterexample);
          }
        }
        break;
      case Check::partition:
        if (const auto d = find_partition_defect(fam)) {
          out.passed = false;
          out.counterexample = d->describe();
        }
        break;
      case Check::polychromatic: {
        const PolychromaticResult r = polychromatic_proper_check(fam, k, jobs);
        if (!r.ok) {
          out.passed = false;
          out.member = r.member;
          out.counterexample = r.reason;
        }
        break;
      }
    }
    out.seconds = since(t0);
    rep.checks.push_back(std::move(out));
  }
  return rep;
}

}  // namespace cubepair

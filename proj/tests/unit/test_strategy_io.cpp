#include <gtest/gtest.h>

#include <filesystem>

#include "cubepair/constructions.hpp"
#include "cubepair/errors.hpp"
#include "cubepair/strategy_io.hpp"

using namespace cubepair;

TEST(StrategyIO, RenderFormat) {
  const std::string text = render_strategy(bv_3());
  EXPECT_EQ(text.substr(0, text.find('\n')), "#bps n=3 k=2 name=" + bv_3().name);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  EXPECT_NE(text.find("\n01v\n"), std::string::npos);
}

TEST(StrategyIO, RoundTrip) {
  for (const PairingStrategy& ps : {ps_4_2(), bv_3(), q6_3(), q9_demo(), bin_ps(bv_3())}) {
    EXPECT_EQ(parse_strategy(render_strategy(ps)), ps) << ps.name;
  }
  const PairingStrategy empty(5, 1, "nothing at all", {});
  EXPECT_EQ(parse_strategy(render_strategy(empty)), empty);
}

TEST(StrategyIO, FamilyRoundTrip) {
  const StrategyFamily fam = q3_family(1);
  const std::string text = render_family(fam);
  EXPECT_EQ(text.substr(0, text.find('\n')), "#family " + fam.provenance);
  const StrategyFamily back = parse_family(text);
  EXPECT_EQ(back.provenance, fam.provenance);
  EXPECT_EQ(back.members, fam.members);
  EXPECT_EQ(parse_strategies(text).size(), 16u);
  EXPECT_THROW(parse_strategy(text), ParseError);
}

TEST(StrategyIO, ParseErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) {
    try {
      parse_strategies(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(line_of("#bps n=3 k=2 name=x\nv00\n0v\n").find("line 3"), std::string::npos);
  EXPECT_NE(line_of("v00\n").find("line 1"), std::string::npos);
  EXPECT_NE(line_of("#bps n=3 k=9 name=x\n").find("line 1"), std::string::npos);
  EXPECT_NE(line_of("#bps n=3 k=2 name=x\nv00\n#other\n").find("line 3"), std::string::npos);
  EXPECT_NE(line_of("#bps n=3 k=2 name=x\n0x0\n").find("line 2"), std::string::npos);
  EXPECT_THROW(parse_strategy(""), ParseError);
}

TEST(StrategyIO, Files) {
  const auto dir = std::filesystem::temp_directory_path() / "cubepair_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "q63.bps";
  write_text_file(path, render_strategy(q6_3()));
  EXPECT_EQ(parse_strategy(read_text_file(path)), q6_3());
  std::filesystem::remove_all(dir);
  EXPECT_THROW(read_text_file(dir / "missing.bps"), Error);
}

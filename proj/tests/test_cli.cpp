#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "theta/cli.hpp"

using namespace theta;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(RunConfig c) {
  std::ostringstream out, err;
  const int code = run_to(c, out, err);
  return {code, out.str(), err.str()};
}

RunConfig cfg(Command cmd, std::optional<std::string> t, std::optional<std::string> n, Format f = Format::Default) {
  RunConfig c;
  c.command = cmd;
  c.t = std::move(t);
  c.n = std::move(n);
  c.format = f;
  return c;
}

}  // namespace

TEST(ParseRange, Forms) {
  EXPECT_EQ(parse_range("7").lo, 7u);
  EXPECT_EQ(parse_range("7").hi, 7u);
  const Range r = parse_range("3..12");
  EXPECT_EQ(r.lo, 3u);
  EXPECT_EQ(r.hi, 12u);
  for (const char* bad : {"", "..", "3..", "..4", "a", "4..2", "3...5", "-1", "2x"})
    EXPECT_THROW(parse_range(bad), std::invalid_argument) << bad;
}

TEST(Run, ExitCodes) {
  EXPECT_EQ(call(cfg(Command::VerifyStructure, "1..6", {})).code, 0);
  EXPECT_EQ(call(cfg(Command::VerifyDickson, {}, "1..5")).code, 0);
  EXPECT_EQ(call(cfg(Command::VerifyOrders, {}, "1")).code, 0);

  auto faulty = cfg(Command::VerifyOrders, {}, "1");
  faulty.flip_traces = true;
  const auto f = call(faulty);
  EXPECT_EQ(f.code, 1);
  EXPECT_NE(f.out.find("FAIL"), std::string::npos);

  for (auto c : {cfg(Command::VerifyStructure, "9..3", {}), cfg(Command::Graph, "25", {}), cfg(Command::Graph, "0", {}),
                 cfg(Command::Graph, "3..4", {}), cfg(Command::VerifyOrders, {}, "7"),
                 cfg(Command::VerifyDickson, {}, "13"), cfg(Command::Graph, {}, {}),
                 cfg(Command::Sweep, {}, "1..3", Format::Dot), cfg(Command::VerifyStructure, "3", {}, Format::Csv)}) {
    const auto o = call(c);
    EXPECT_EQ(o.code, 2);
    EXPECT_TRUE(o.out.empty());
    EXPECT_EQ(o.err.rfind("error: ", 0), 0u);
  }
}

TEST(Run, RaisedCapAdmitsLargerInputs) {
  auto c = cfg(Command::VerifyDickson, {}, "13", Format::Csv);
  EXPECT_EQ(call(c).code, 2);
  c.max_degree = 26;
  const auto o = call(c);
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("13,8192,8193,"), std::string::npos);
}

TEST(Run, OutputIndependentOfWorkerCount) {
  for (auto c : {cfg(Command::Graph, "9", {}, Format::Json), cfg(Command::VerifyStructure, "1..8", {}),
                 cfg(Command::VerifyOrders, {}, "3", Format::Json), cfg(Command::Sweep, {}, "1..8")}) {
    const auto one = call(c);
    c.workers = 4;
    const auto four = call(c);
    EXPECT_EQ(one.code, four.code);
    EXPECT_EQ(one.out, four.out);
  }
}

TEST(Run, JsonShapes) {
  const auto g = nlohmann::json::parse(call(cfg(Command::Graph, "6", {}, Format::Json)).out);
  for (const char* k : {"t", "modulus", "generator", "components"}) EXPECT_TRUE(g.contains(k)) << k;
  std::size_t vertices = 0;
  for (const auto& comp : g["components"]) {
    vertices += comp["cycle"].size();
    for (const auto& [k, lv] : comp["levels"].items()) vertices += lv.size();
  }
  EXPECT_EQ(vertices, 65u);

  const auto o = nlohmann::json::parse(call(cfg(Command::VerifyOrders, {}, "2", Format::Json)).out);
  for (const char* k : {"n", "l", "m", "q", "counts", "profiles", "checks"}) EXPECT_TRUE(o.contains(k)) << k;
  EXPECT_EQ(o["counts"]["H1"].get<int>() + o["counts"]["H2"].get<int>() + o["counts"]["H3"].get<int>(), 16);

  const auto d = nlohmann::json::parse(call(cfg(Command::Sweep, {}, "1..3", Format::Json)).out);
  ASSERT_TRUE(d.is_array());
  EXPECT_EQ(d.size(), 3u);
  EXPECT_EQ(d[2]["T_size"], 3);

  const auto s = nlohmann::json::parse(call(cfg(Command::VerifyStructure, "2..4", {}, Format::Json)).out);
  ASSERT_EQ(s.size(), 3u);
  for (const auto& row : s) EXPECT_TRUE(row["pass"].get<bool>());
}

TEST(Run, TextAndCsv) {
  const auto sw = call(cfg(Command::Sweep, {}, "1..4")).out;
  EXPECT_EQ(sw.substr(0, sw.find('\n')), kDicksonCsvHeader);
  EXPECT_NE(sw.find("\n4,16,17,-1,4,4,4,16,true\n"), std::string::npos);
  const auto text = call(cfg(Command::Graph, "6", {}, Format::Text)).out;
  EXPECT_NE(text.find("t=6 modulus=5b generator=2"), std::string::npos);
  const auto dot = call(cfg(Command::Graph, "3", {})).out;
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
}

TEST(Run, WritesOutFile) {
  const auto path = std::filesystem::temp_directory_path() / "theta_cli_test.csv";
  auto c = cfg(Command::Sweep, {}, "1..2");
  c.out = path.string();
  const auto o = call(c);
  EXPECT_EQ(o.code, 0);
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, kDicksonCsvHeader);
  std::filesystem::remove(path);

  c.out = "/nonexistent/dir/x.csv";
  EXPECT_EQ(call(c).code, 2);
}

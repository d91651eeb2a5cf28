#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "exk/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "exk");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = exk::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

exk::io::json parsed(const Run& r) { return exk::io::json::parse(r.out); }

}  // namespace

TEST(Cli, Count) {
  const auto r = run({"count", "--levels", "1,2,1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"count\":\"2\"}\n");
  const auto all = parsed(run({"count", "--total", "3"}));
  EXPECT_EQ(all["classes"].size(), 2u);
  EXPECT_EQ(run({"count", "--levels", "1,3,3,3"}).out, "{\"count\":\"100\"}\n");
}

TEST(Cli, CountCsv) {
  const auto r = run({"--format", "csv", "count", "--total", "3"});
  EXPECT_EQ(r.out, "levels,count\n\"1,1,1\",1\n\"1,2\",1\n");
}

TEST(Cli, Height) {
  EXPECT_EQ(run({"height", "--law", "homog:0.5", "--s", "4", "--kind", "tail"}).out, "{\"value\":\"1/4\"}\n");
  EXPECT_EQ(run({"height", "--law", "homog:1/2", "--s", "3", "--kind", "unique"}).out, "{\"value\":\"1/18\"}\n");
  const auto f = parsed(run({"height", "--law", R"({"K":0,"p":{"0":0.5},"p_plus":0.5,"p_minus":0.5,"mode":"float"})",
                             "--s", "4"}));
  EXPECT_DOUBLE_EQ(f["value"].get<double>(), 0.25);
  const auto bad = run({"height", "--law", "homog:0.5", "--s", "0"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(exk::io::json::parse(bad.err)["error"], "OutOfDomain");
}

TEST(Cli, ValidateErrors) {
  const auto r = run({"validate", "--jumps", "1,-1,1,-1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("interior-zero"), std::string::npos);
  const auto ok = parsed(run({"validate", "--values", "0,-1,-2,-1,0"}));
  EXPECT_EQ(ok["sign"], "negative");
  EXPECT_EQ(ok["height"], -2);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"nope"}).code, 2);
  EXPECT_EQ(run({"count"}).code, 2);
  EXPECT_EQ(run({"height", "--s", "2"}).code, 2);
  EXPECT_EQ(run({"--format", "xml", "count", "--levels", "1"}).code, 2);
}

TEST(Cli, LevelsTreeAndTransforms) {
  const auto lv = parsed(run({"levels", "--values", "0,1,2,3,2,1,2,1,0"}));
  EXPECT_EQ(lv["levels"], (std::vector<long>{1, 2, 1}));
  const auto tr = parsed(run({"tree", "--values", "0,1,2,3,2,1,2,1,0"}));
  EXPECT_EQ(tr["tree"].dump(), "[[[]],[]]");
  EXPECT_EQ(run({"tree", "--tree", "[[],[]]"}).out, "{\"jumps\":[1,1,-1,1,-1,-1]}\n");
  EXPECT_EQ(run({"transform", "--values", "0,1,2,1,0", "--op", "vervaat"}).out, "{\"jumps\":[-1,-1,1,1]}\n");
  EXPECT_EQ(run({"transform", "--values", "0,1,2,1,2,1,0", "--op", "vervaat"}).code, 1);
  const auto sh = parsed(run({"transform", "--values", "0,1,2,3,2,1,2,1,0", "--op", "shift", "--shift",
                              R"({"a":1,"b":5,"c":7,"h":1})"}));
  EXPECT_EQ(sh["jumps"], (std::vector<int>{1, 1, -1, 1, 1, -1, -1, -1}));
}

TEST(Cli, ShiftSequenceReachesTarget) {
  const auto r = parsed(run({"shift-seq", "--values", "0,1,2,3,2,1,2,1,0", "--to-values", "0,1,2,1,2,3,2,1,0"}));
  ASSERT_TRUE(r["ops"].is_array());
  const auto applied = parsed(run({"transform", "--values", "0,1,2,3,2,1,2,1,0", "--op", "shift", "--shift",
                                   r["ops"].dump()}));
  EXPECT_EQ(applied["jumps"], (std::vector<int>{1, 1, -1, 1, 1, -1, -1, -1}));
}

TEST(Cli, Prob) {
  EXPECT_EQ(run({"prob", "--law", "homog:1/2", "--values", "0,1,0"}).out, "{\"value\":\"1/2\"}\n");
  EXPECT_EQ(run({"prob", "--law", "homog:1/2", "--kind", "class", "--levels", "1,2,1"}).out,
            "{\"value\":\"1/64\"}\n");
  EXPECT_EQ(run({"prob", "--law", "homog:1/2", "--kind", "path", "--values", "0,1,0"}).out, "{\"value\":\"1/4\"}\n");
  EXPECT_EQ(run({"prob", "--law", "homog:1/2", "--kind", "class"}).code, 2);
}

TEST(Cli, Doob) {
  const auto d = parsed(run({"doob", "--law", "homog:3/5"}));
  EXPECT_EQ(d["beta"]["1"], "2/3");
  EXPECT_EQ(d["law"]["p_plus"], "2/5");
}

TEST(Cli, SampleIsReproducible) {
  const std::vector<std::string> args{"sample", "--law", "homog:0.3", "--seed", "7", "--n", "2000", "--event", "tail:2"};
  const auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = exk::io::json::parse(a.out);
  EXPECT_EQ(j["event"], "H>=2");
  const auto h1 = run({"sample", "--law", "homog:0.3", "--seed", "7", "--n", "500", "--histogram", "all"});
  const auto h2 = run({"sample", "--law", "homog:0.3", "--seed", "7", "--n", "500", "--histogram", "all"});
  EXPECT_EQ(h1.out, h2.out);
  EXPECT_EQ(parsed(h1)["samples"].get<int>() + parsed(h1)["capped"].get<int>(), 500);
  EXPECT_EQ(run({"sample", "--law", "homog:0.3", "--n", "5", "--event", "bad:2"}).code, 2);
}

TEST(Cli, BinaryOutputIsByteIdentical) {
  const char* bin = std::getenv("EXK_CLI");
  if (!bin) GTEST_SKIP() << "EXK_CLI not set";
  auto capture = [&](const std::string& cmd) {
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    std::array<char, 256> buf{};
    while (p && std::fgets(buf.data(), buf.size(), p)) out += buf.data();
    EXPECT_EQ(p ? pclose(p) : -1, 0);
    return out;
  };
  const std::string cmd = std::string(bin) + " sample --law homog:0.4 --seed 99 --n 3000 --workers 2 --event unique:2";
  const auto a = capture(cmd);
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, capture(cmd));
  EXPECT_EQ(capture("EXK_SEED=99 " + std::string(bin) +
                    " sample --law homog:0.4 --n 3000 --workers 2 --event unique:2"),
            a);
}

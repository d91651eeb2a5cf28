#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "exk/io.hpp"
#include "exk/verify/oracles.hpp"

using namespace exk;

TEST(ExcursionJson, RoundTrip) {
  for (const auto& x : oracle::all_excursions_up_to(8))
    ASSERT_EQ(io::excursion_from_json(io::to_json(x)), x);
  EXPECT_EQ(io::to_json(Excursion::parse_values("0 1 2 1 0")).dump(), R"({"jumps":[1,1,-1,-1]})");
  EXPECT_EQ(io::excursion_from_json(io::json::parse(R"({"values":[0,-1,0]})")).str(), "0 -1 0");
  EXPECT_THROW(io::excursion_from_json(io::json::parse("{}")), NotAnExcursion);
  EXPECT_THROW(io::excursion_from_json(io::json::parse(R"({"jumps":[1,-1,1,-1]})")), NotAnExcursion);
}

TEST(ShiftJson, RoundTrip) {
  const std::vector<ShiftOp> ops{{1, 5, 7, 1, ShiftKind::bridge}, {2, 4, 0, 2, ShiftKind::excursion}};
  const auto back = io::shifts_from_json(io::to_json(ops));
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back[i].a, ops[i].a);
    EXPECT_EQ(back[i].b, ops[i].b);
    EXPECT_EQ(back[i].c, ops[i].c);
    EXPECT_EQ(back[i].h, ops[i].h);
    EXPECT_EQ(back[i].kind, ops[i].kind);
  }
  const auto one = io::shifts_from_json(io::json::parse(R"({"a":1,"b":5,"c":7,"h":1})"));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].kind, ShiftKind::bridge);
  EXPECT_THROW(io::shift_from_json(io::json::parse(R"({"a":1,"b":5,"c":7,"h":1,"kind":"x"})")),
               std::invalid_argument);
}

TEST(RationalJson, Forms) {
  EXPECT_EQ(io::rational_from_json(io::json::parse(R"("2/5")")), Rational(2, 5));
  EXPECT_EQ(io::rational_from_json(io::json::parse(R"("0.4")")), Rational(2, 5));
  EXPECT_EQ(io::rational_from_json(io::json::parse("0.25")), Rational(1, 4));
  EXPECT_EQ(io::rational_from_json(io::json::parse("1")), Rational(1));
  EXPECT_EQ(parse_rational("0.375"), Rational(3, 8));
  EXPECT_EQ(parse_rational("007/08"), Rational(7, 8));
  EXPECT_EQ(parse_rational("-0.5"), Rational(-1, 2));
  EXPECT_EQ(io::value_json(Rational(3, 7)).dump(), R"("3/7")");
  EXPECT_EQ(io::value_json(0.5).dump(), "0.5");
  EXPECT_THROW(io::rational_from_json(io::json::parse("null")), InvalidLaw);
}

TEST(LawJson, ParseAndRoundTrip) {
  const auto cfg = io::law_from_json(io::json::parse(
      R"({"K":1,"p":{"-1":"1/2","0":0.4,"1":"3/5"},"p_plus":"2/5","p_minus":"1/2"})"));
  EXPECT_EQ(cfg.mode, io::Mode::rational);
  EXPECT_EQ(cfg.law.k(), 1);
  EXPECT_EQ(cfg.law.p(0), Rational(2, 5));
  EXPECT_EQ(cfg.law.p(1), Rational(3, 5));
  EXPECT_EQ(cfg.law.p(5), Rational(2, 5));
  const auto back = io::law_from_json(io::to_json(cfg.law));
  EXPECT_EQ(back.law, cfg.law);
  EXPECT_EQ(io::to_json(cfg.law, io::Mode::floating)["p"]["1"].get<double>(), 0.6);
  EXPECT_EQ(io::law_from_json(io::to_json(cfg.law, io::Mode::floating)).mode, io::Mode::floating);
}

TEST(LawJson, Rejections) {
  EXPECT_THROW(io::law_from_json(io::json::parse(R"({"K":1,"p":{"0":"1/2"},"p_plus":"1/2","p_minus":"1/2"})")),
               InvalidLaw);
  EXPECT_THROW(io::law_from_json(io::json::parse(R"({"K":0,"p":{"0":"1/2"},"p_plus":"1/2"})")), InvalidLaw);
  EXPECT_THROW(io::law_from_json(io::json::parse(R"({"K":0,"p":{"0":"3/2"},"p_plus":"1/2","p_minus":"1/2"})")),
               InvalidLaw);
  EXPECT_THROW(
      io::law_from_json(io::json::parse(R"({"K":0,"p":{"0":"1/2"},"p_plus":"1/2","p_minus":"1/2","mode":"x"})")),
      InvalidLaw);
}

TEST(LawArg, ShorthandInlineAndFile) {
  const auto h = io::parse_law_arg("homog:1/3");
  EXPECT_TRUE(h.law.is_homogeneous());
  EXPECT_EQ(h.law.p(-4), Rational(1, 3));
  EXPECT_EQ(io::parse_law_arg("homog:0.5").law.p(0), Rational(1, 2));
  const std::string text = R"({"K":0,"p":{"0":"1/2"},"p_plus":"1/3","p_minus":"2/3","mode":"float"})";
  EXPECT_EQ(io::parse_law_arg(text).mode, io::Mode::floating);
  const std::string path = ::testing::TempDir() + "exk_law.json";
  std::ofstream(path) << text;
  EXPECT_EQ(io::parse_law_arg(path).law.p(3), Rational(1, 3));
  std::remove(path.c_str());
  EXPECT_THROW(io::parse_law_arg("/nonexistent/law.json"), InvalidLaw);
  EXPECT_THROW(io::parse_law_arg("{not json"), InvalidLaw);
}

TEST(ReportJson, Keys) {
  SampleReport r;
  r.event = "H>=2";
  r.n = 10;
  r.estimate = 0.5;
  r.std_error = 0.1;
  r.exact = 0.4;
  r.z = 1.0;
  r.capped = 2;
  const auto j = io::to_json(r);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"event", "n", "estimate", "stderr", "exact", "z", "capped"}));
  r.exact.reset();
  r.z.reset();
  EXPECT_TRUE(io::to_json(r)["exact"].is_null());
  EXPECT_TRUE(io::to_json(r)["z"].is_null());
}

TEST(ErrorJson, CodeAndDetail) {
  EXPECT_EQ(io::error_json(NotAnExcursion("interior-zero")).dump(),
            R"({"error":"NotAnExcursion","detail":"interior-zero"})");
}

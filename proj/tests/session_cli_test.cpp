#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "folres/error.hpp"
#include "folres/session.hpp"
#include "test_util.hpp"

using namespace folres;
using namespace folres::testing;
using folres::session::parse_session;
using folres::session::print_session;
using folres::session::run_session;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kSessions = FOLRES_SOURCE_DIR "/sessions/";
const std::string kGolden = FOLRES_SOURCE_DIR "/tests/golden/";

void expect_error_at(const std::string& text, std::size_t line, std::size_t column, const std::string& fragment) {
  try {
    parse_session(text);
    ADD_FAILURE() << "no error for: " << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), column) << e.what();
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

}  // namespace

TEST(Parse, MinimalScript) {
  auto s = parse_session(R"(space 2 vars x y ring Z; distribution theta gens "d/dx"; ideal I gens "y"; report)");
  ASSERT_EQ(s.statements.size(), 4u);
  EXPECT_EQ(s.statements[0].keyword, "space");
  EXPECT_EQ(s.statements[3].keyword, "report");
}

TEST(Parse, BundledSessions) {
  EXPECT_EQ(parse_session(slurp(kSessions + "good.fol")).statements.size(), 12u);
  EXPECT_EQ(parse_session(slurp(kSessions + "bad.fol")).statements.size(), 10u);
}

TEST(Parse, PositionedErrors) {
  const std::string head = "space 3 vars x y z ring Z\ndistribution t gens \"d/dx\"\nideal I gens \"x\"\n";
  expect_error_at(head + "blowup center=\"x,w\" chart=x\n", 4, 18, "undeclared identifier 'w'");
  expect_error_at(head + "blowup center=\"x,y\" chart=z\n", 4, 27, "not in the center");
  expect_error_at("space 2 vars x y z ring Z\n", 1, 7, "dimension mismatch");
  expect_error_at("space 2 vars x y ring R\n", 1, 23, "ring");
  expect_error_at(head + "frobnicate\n", 4, 1, "unknown statement");
  expect_error_at(head + "report colour=red\n", 4, 15, "unknown parameter");
  expect_error_at("report\n", 1, 1, "before space");
  expect_error_at("space 2 vars x y ring Z\nreport\n", 2, 1, "needs a distribution");
  expect_error_at(head + "report\nideal J gens \"y\"\n", 5, 1, "precede");
  expect_error_at("space 2 vars x y ring Z\nideal I gens \"x +\"\n", 2, 18, "unexpected end");
  expect_error_at("space 2 vars x y ring Z\nideal I gens \"x\n", 2, 14, "unterminated");
  // Names introduced by a blowup are in scope afterwards; the old ones are not.
  expect_error_at(head + "blowup center=\"x,y\" chart=x\nassert-monomial at=\"0,0,0\"\ncheck-admissible center=\"x\"\n", 6, 26,
                  "undeclared identifier 'x'");
  EXPECT_NO_THROW(parse_session(head + "blowup center=\"x,y\" chart=x\ncheck-admissible center=\"x'\"\n"));
  EXPECT_NO_THROW(parse_session(head + "blowup center=\"x,y\" chart=x preview=true\ncheck-admissible center=\"x\"\n"));
}

TEST(Parse, PrintRoundTrip) {
  for (const char* name : {"good.fol", "bad.fol"}) {
    auto s = parse_session(slurp(kSessions + name));
    EXPECT_EQ(parse_session(print_session(s)), s) << name;
  }
  auto s = parse_session("space 1 vars t ring Q # comment\ndistribution a gens \"t*d/dt\"; ideal b gens \"t^2\"\nchain at=\"1/2\" max-steps=4");
  EXPECT_EQ(parse_session(print_session(s)), s);
}

TEST(Run, EmptyScript) {
  auto r = run_session(session::Script{});
  EXPECT_TRUE(r.steps.empty());
  EXPECT_TRUE(r.asserts_passed);
  EXPECT_EQ(session::to_json(r).dump(), "[]");
}

TEST(Run, GoodSession) {
  auto r = run_session(parse_session(slurp(kSessions + "good.fol")));
  ASSERT_FALSE(r.error) << *r.error;
  EXPECT_TRUE(r.asserts_passed);
  auto j = session::to_json(r);
  const auto& step1 = j[5]["outputs"];
  EXPECT_EQ(step1["total"], (nlohmann::ordered_json{"x'*z'", "y'*z'"}));
  EXPECT_EQ(step1["controlled"], (nlohmann::ordered_json{"x'", "y'"}));
  EXPECT_EQ(step1["transformed"][0], "(-x' + z')*d/dx' - y'*d/dy' + z'*d/dz'");
  EXPECT_EQ(j[6]["outputs"]["transformed"][0], "-x'*d/dx' - y'*d/dy' + z'*d/dz'");
  EXPECT_EQ(j[7]["outputs"]["transformed"][0], "(-2*x'' + 1)*d/dx'' - 2*y''*d/dy'' + z''*d/dz''");
  EXPECT_EQ(j[8]["outputs"]["controlled_unit"], true);
  for (std::size_t i : {5u, 7u, 8u}) EXPECT_EQ(j[i]["outputs"]["monomiality"]["monomial"], true) << i;
}

TEST(Run, BadSession) {
  auto r = run_session(parse_session(slurp(kSessions + "bad.fol")));
  ASSERT_FALSE(r.error);
  EXPECT_TRUE(r.asserts_passed);
  auto j = session::to_json(r);
  for (std::size_t i : {5u, 8u}) {
    EXPECT_EQ(j[i]["outputs"]["admissibility"]["admissible"], false);
    EXPECT_EQ(j[i]["outputs"]["monomiality"]["diagnosis"], "nilpotent linear part");
  }
}

TEST(Run, HardStopOnError) {
  auto s = parse_session("space 3 vars x y z ring Z; distribution t gens \"d/dx\"; ideal I gens \"x + 1\"\n"
                         "blowup center=\"x,y,z\" chart=x\nreport");
  auto r = run_session(s);
  ASSERT_EQ(r.steps.size(), 4u);
  EXPECT_EQ(r.steps.back().verdict, "error");
  EXPECT_TRUE(r.error.has_value());
  EXPECT_FALSE(r.asserts_passed);
}

TEST(Run, FailedAssertion) {
  auto r = run_session(parse_session("space 2 vars x y ring Z; distribution t gens \"d/dx\"; ideal I gens \"x\"\nassert-unit\nassert-invariant expect=false"));
  ASSERT_EQ(r.steps.size(), 5u);
  EXPECT_EQ(r.steps[3].verdict, "fail");
  EXPECT_EQ(r.steps[4].verdict, "pass");
  EXPECT_FALSE(r.asserts_passed);
}

TEST(Run, ChainAndAppliedChange) {
  auto r = run_session(parse_session("space 3 vars x y z ring Z; distribution t gens \"d/dz + z*d/dx\"; ideal I gens \"x, y\"\n"
                                     "chain\nlinear-change \"z, y, x\" apply=true names=\"a,b,c\"\nreport"));
  ASSERT_FALSE(r.error);
  EXPECT_EQ(r.steps[3].outputs["nu"], 2);
  EXPECT_EQ(r.steps[3].outputs["type"], 1);
  EXPECT_EQ(r.steps[5].outputs["distribution"][0], "d/da + a*d/dc");
}

TEST(Golden, MatchesCommittedReports) {
  for (const char* name : {"good", "bad"}) {
    auto r = run_session(parse_session(slurp(kSessions + name + ".fol")));
    EXPECT_EQ(session::to_json(r).dump(2) + "\n", slurp(kGolden + name + ".json")) << name;
  }
}

TEST(Golden, Deterministic) {
  auto s = parse_session(slurp(kSessions + "good.fol"));
  auto a = session::to_json(run_session(s)).dump();
  auto b = session::to_json(run_session(s)).dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(session::render_text(run_session(s)), session::render_text(run_session(s)));
}

TEST(Suggest, Examples) {
  auto a = session::suggest_center(I("x, y", kXY), Theta("d/dx, d/dy", 2, kXY));
  ASSERT_TRUE(a.center);
  EXPECT_EQ(a.center->variables, (std::vector<std::size_t>{0, 1}));
  auto b = session::suggest_center(I("x^2, y^2", kXY), Theta("d/dx, d/dy", 2, kXY));
  ASSERT_TRUE(b.center);
  EXPECT_EQ(b.center->variables, (std::vector<std::size_t>{0, 1}));
  auto c = session::suggest_center(I("x^2 - z, y"), Theta("d/dx, d/dy", 2));
  EXPECT_FALSE(c.center);
  EXPECT_EQ(c.reason, "ideal is not monomial");
  // (x, y*z) has order 1 on V(x, y) and V(x, z); the lexicographic choice wins.
  auto d = session::suggest_center(I("x, y*z"), Theta("d/dz", 1));
  ASSERT_TRUE(d.center);
  EXPECT_EQ(d.center->variables, (std::vector<std::size_t>{0, 1}));
  // V(x, y) is not admissible for d/dz + z*d/dx; V(x, z) is.
  auto e = session::suggest_center(I("x, y*z"), Theta("d/dz + z*d/dx", 1));
  ASSERT_TRUE(e.center);
  EXPECT_EQ(e.center->variables, (std::vector<std::size_t>{0, 2}));
  EXPECT_FALSE(session::suggest_center(I("1"), Theta("d/dz", 1)).center);
}

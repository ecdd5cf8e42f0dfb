#include <algorithm>

#include <gtest/gtest.h>

#include "generators.h"
#include "mtpi/errors.h"
#include "mtpi/oracle.h"
#include "mtpi/semantics.h"

namespace mtpi {
namespace {

constexpr System kK = System::kK;
constexpr System kT = System::kT;

bool Contains(const std::vector<Formula>& fs, const char* text) {
  return std::find(fs.begin(), fs.end(), Parse(text)) != fs.end();
}

TEST(OracleTest, Contradiction) {
  const OracleResult r = SatByEnumeration(Parse("p & ~p"), kK, {0, 0, {"p"}});
  EXPECT_EQ(r.verdict, OracleVerdict::kUnsatWithinBounds);
  EXPECT_TRUE(r.definitive);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(OracleTest, DiamondNeedsASuccessor) {
  const Formula f = Parse("<>p");
  const OracleResult flat = SatByEnumeration(f, kK, {0, 0, {"p"}});
  EXPECT_EQ(flat.verdict, OracleVerdict::kUnsatWithinBounds);
  EXPECT_FALSE(flat.definitive);

  const OracleResult r = SatByEnumeration(f, kK, {1, 1, {"p"}});
  ASSERT_EQ(r.verdict, OracleVerdict::kSat);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->model.num_worlds(), 2u);
  EXPECT_TRUE(Eval(r.witness->model, r.witness->world, f));
}

TEST(OracleTest, ReflexivityInT) {
  // Sat in K with a single world, never in T.
  const Formula f = Parse("[]p & ~p");
  EXPECT_EQ(SatByEnumeration(f, kK, {0, 0, {"p"}}).verdict, OracleVerdict::kSat);
  const OracleResult t = SatByEnumeration(f, kT, SufficientBounds(f));
  EXPECT_EQ(t.verdict, OracleVerdict::kUnsatWithinBounds);
  EXPECT_TRUE(t.definitive);
  // <>p holds at a single reflexive world.
  const OracleResult d = SatByEnumeration(Parse("<>p & []p"), kT, {0, 0, {"p"}});
  ASSERT_EQ(d.verdict, OracleVerdict::kSat);
  EXPECT_EQ(d.witness->model.num_worlds(), 1u);
  EXPECT_TRUE(d.witness->model.IsReflexive());
}

TEST(OracleTest, SufficientBounds) {
  const OracleBounds b = SufficientBounds(Parse("(p1 | p2) & <>[]~p3 & []<>p2 & <>p2"));
  EXPECT_EQ(b.max_depth, 2);
  EXPECT_EQ(b.max_branching, 2);
  EXPECT_EQ(b.variables, (std::vector<std::string>{"p1", "p2", "p3"}));
}

TEST(OracleTest, BudgetIsReported) {
  OracleBounds b = SufficientBounds(Parse("<>(a | b) & <>(c | d) & <>(e | f)"));
  b.budget = 3;
  EXPECT_THROW(SatByEnumeration(Parse("<>(a | b) & <>(c | d) & <>(e | f) & []~a"), kK, b),
               ResourceLimitError);
}

class OracleProperty : public ::testing::TestWithParam<System> {};

TEST_P(OracleProperty, AgreesWithTableau) {
  const System sys = GetParam();
  testing::FormulaGen gen(sys == kK ? 61 : 62, 3);
  Reasoner r(sys);
  int sat = 0;
  for (int i = 0; i < 500; ++i) {
    const Formula f = gen.Any(2, gen.Uniform(3, 14));
    const OracleResult o = SatByEnumeration(f, sys, SufficientBounds(f));
    const bool tableau = r.IsSatisfiable(f);
    sat += tableau;
    ASSERT_TRUE(o.definitive || o.verdict == OracleVerdict::kSat) << f;
    EXPECT_EQ(o.verdict == OracleVerdict::kSat, tableau) << f;
    if (o.witness) EXPECT_TRUE(Eval(o.witness->model, o.witness->world, f, sys)) << f;
  }
  EXPECT_GT(sat, 100);
  EXPECT_LT(sat, 480);
}

INSTANTIATE_TEST_SUITE_P(Systems, OracleProperty, ::testing::Values(kK, kT),
                         [](const auto& info) { return std::string(ToString(info.param)); });

TEST(VocabularyTest, ClauseCount) {
  const ClauseVocabulary vocab{{"p1", "p2", "p3"}, 2, 1};
  EXPECT_EQ(VocabularyLiterals(vocab).size(), 18u);
  // 18 single literals plus 153 unordered pairs.
  EXPECT_EQ(EnumerateClauses(vocab).size(), 171u);
  EXPECT_EQ(EnumerateClauses({{"p"}, 1, 0}).size(), 2u);
}

TEST(ImplicatesTest, Examples) {
  const auto pq = EnumerateImplicates(Parse("p & q"), Formula::True(), kK, {{"p", "q"}, 2, 0});
  EXPECT_TRUE(Contains(pq, "p"));
  EXPECT_TRUE(Contains(pq, "q"));
  EXPECT_TRUE(Contains(pq, "p | ~q"));
  EXPECT_FALSE(Contains(pq, "~p"));

  const auto dia = EnumerateImplicates(Parse("<>a"), Formula::True(), kK, {{"a"}, 1, 1});
  EXPECT_EQ(dia, std::vector<Formula>{Parse("<>a")});

  const Formula x = Parse("(p1 | p2) & <>[]~p3 & []<>p2");
  const Formula box_y = Parse("[](p1 | p2)");
  const ClauseVocabulary vocab{{"p1", "p2", "p3"}, 2, 1};
  const auto k = EnumerateImplicates(x, box_y, kK, vocab);
  EXPECT_TRUE(Contains(k, "p1 | p2"));
  EXPECT_FALSE(Contains(k, "p1"));
  // <>p2 only holds one step down in K; reflexivity brings it to the root.
  EXPECT_FALSE(Contains(k, "<>p2"));
  const auto t = EnumerateImplicates(x, box_y, kT, vocab);
  EXPECT_TRUE(Contains(t, "<>p2"));
  EXPECT_TRUE(Contains(t, "<>~p3"));
  EXPECT_GE(t.size(), k.size());
}

TEST(DecompositionTest, PropositionalClash) {
  DecompositionInstance inst;
  inst.alpha = {Parse("p")};
  inst.psi = {Parse("~p")};
  inst.y = Formula::True();
  const DecompositionReport rep = CheckDecomposition(inst);
  EXPECT_TRUE(rep.lhs_inconsistent);
  EXPECT_TRUE(rep.conditions[0]);
  EXPECT_TRUE(rep.holds());
}

TEST(DecompositionTest, ConsistentInstance) {
  DecompositionInstance inst;
  inst.alpha = {Parse("p")};
  inst.beta = {Parse("q")};
  inst.gamma = {Parse("r")};
  inst.y = Formula::True();
  const DecompositionReport rep = CheckDecomposition(inst);
  EXPECT_FALSE(rep.lhs_inconsistent);
  EXPECT_FALSE(rep.any_condition());
  EXPECT_TRUE(rep.holds());
}

// <>q & []~q is inconsistent, but none of the seven conditions mentions a
// <> head together with a [] head, so the decomposition misses it.
TEST(DecompositionTest, DiamondAgainstBoxIsNotCovered) {
  DecompositionInstance inst;
  inst.alpha = {Parse("p")};
  inst.beta = {Parse("q")};
  inst.gamma = {Parse("~q")};
  inst.y = Formula::True();
  for (System sys : {kK, kT}) {
    const DecompositionReport rep = CheckDecomposition(inst, sys);
    EXPECT_TRUE(rep.lhs_inconsistent);
    EXPECT_FALSE(rep.any_condition());
    EXPECT_FALSE(rep.holds());
  }
}

TEST(DecompositionTest, RejectsModalAlpha) {
  DecompositionInstance inst;
  inst.alpha = {Parse("[]p")};
  inst.y = Formula::True();
  EXPECT_THROW(CheckDecomposition(inst), ShapeError);
}

}  // namespace
}  // namespace mtpi

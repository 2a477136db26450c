#include <gtest/gtest.h>

#include <optional>
#include <string>
#include <vector>

#include "solvcover/solvcover.hpp"

using namespace solvcover;

namespace {

struct Golden {
  GroupSpec spec;
  std::size_t alpha;
  std::optional<std::size_t> alpha_inv;  // empty for infinity
};

std::string golden_name(const testing::TestParamInfo<Golden>& info) {
  std::string s;
  for (char c : info.param.spec.to_string())
    if (std::isalnum(static_cast<unsigned char>(c))) s += c;
  return s;
}

class GoldenTable : public testing::TestWithParam<Golden> {};

void expect_cover(const GroupTable& t, const CoverOutcome& o, Mode mode) {
  ASSERT_TRUE(o.certificate);
  ASSERT_EQ(o.certificate->size(), *o.upper);
  EXPECT_TRUE(verify_elements(t, *o.certificate, mode).valid);
}

}  // namespace

TEST_P(GoldenTable, AlphaAndInvolutionAlpha) {
  const Golden& g = GetParam();
  const GroupTable t = build(g.spec);
  const CoverOutcome a = solve_alpha(t, Mode::All);
  ASSERT_EQ(a.status, CoverOutcome::Status::Exact);
  EXPECT_EQ(a.lower, g.alpha);
  expect_cover(t, a, Mode::All);

  const CoverOutcome b = solve_alpha(t, Mode::Involutions);
  if (g.alpha_inv) {
    ASSERT_EQ(b.status, CoverOutcome::Status::Exact);
    EXPECT_EQ(b.lower, *g.alpha_inv);
    expect_cover(t, b, Mode::Involutions);
  } else {
    EXPECT_EQ(b.status, CoverOutcome::Status::Infeasible);
    EXPECT_FALSE(b.upper);
  }
}

INSTANTIATE_TEST_SUITE_P(
    Appendix, GoldenTable,
    testing::Values(Golden{GroupSpec::alternating(5), 3, 3}, Golden{GroupSpec::symmetric(5), 5, 5},
                    Golden{GroupSpec::psl2(7), 5, std::nullopt}, Golden{GroupSpec::pgl2(7), 7, 7},
                    Golden{GroupSpec::alternating(6), 9, 9}, Golden{GroupSpec::psl2(8), 7, 7},
                    Golden{GroupSpec::psl2(11), 15, std::nullopt}, Golden{GroupSpec::m10(), 9, 9},
                    Golden{GroupSpec::pgl2(9), 8, 8}, Golden{GroupSpec::symmetric(6), 9, 9},
                    Golden{GroupSpec::psl2(13), 13, 13}, Golden{GroupSpec::pgl2(11), 11, 11},
                    Golden{GroupSpec::pgammal2(9), 9, 9}, Golden{GroupSpec::pgammal2(8), 7, 7}),
    golden_name);

TEST(Solver, SolvableGroupIsRejected) {
  EXPECT_THROW(solve_alpha(build(GroupSpec::symmetric(4)), Mode::All), GroupSolvable);
  EXPECT_THROW(solve_spec(GroupSpec::symmetric(4), Mode::All), GroupSolvable);
}

TEST(Solver, GreedyGivesACover) {
  const GroupTable t = build(GroupSpec::psl2(8));
  const auto inst = reduce_instance(sol_incidence(t), false);
  const auto chosen = greedy_cover(inst);
  EXPECT_TRUE(verify_elements(t, candidate_elements(inst, chosen), Mode::All).valid);
  EXPECT_LE(lower_bound(inst), chosen.size());
  EXPECT_LE(packing_bound(inst), 7u);
  EXPECT_LE(density_bound(inst), 7u);
}

TEST(Solver, QuotientAgreesWithDirectSolve) {
  const GroupTable t = build(GroupSpec::sl2(5));
  const CoverOutcome q = solve_alpha(t, Mode::All);
  EXPECT_TRUE(q.via_quotient);
  const CoverOutcome d = solve_alpha(t, Mode::All, {}, {}, false);
  EXPECT_FALSE(d.via_quotient);
  EXPECT_EQ(q.status, CoverOutcome::Status::Exact);
  EXPECT_EQ(d.status, CoverOutcome::Status::Exact);
  EXPECT_EQ(q.lower, 3u);
  EXPECT_EQ(d.lower, 3u);
  expect_cover(t, q, Mode::All);
  expect_cover(t, d, Mode::All);
  // The only involution of SL(2,5) is central.
  EXPECT_EQ(solve_alpha(t, Mode::Involutions).status, CoverOutcome::Status::Infeasible);
}

TEST(Solver, ProductTakesTheMinimum) {
  const GroupTable a = build(GroupSpec::psl2(7)), b = build(GroupSpec::psl2(9));
  const CoverOutcome all = solve_product({&a, &b}, Mode::All);
  EXPECT_EQ(all.status, CoverOutcome::Status::Exact);
  EXPECT_EQ(all.lower, 5u);
  const CoverOutcome inv = solve_product({&a, &b}, Mode::Involutions);
  EXPECT_EQ(inv.status, CoverOutcome::Status::Exact);
  EXPECT_EQ(inv.lower, 9u);
  EXPECT_EQ(inv.elements.size(), 9u);
  for (const auto& p : inv.elements) EXPECT_EQ(p.order(), 2u);
}

TEST(Solver, ProductDropsSolvableFactors) {
  const GroupTable a = build(GroupSpec::psl2(4)), s4 = build(GroupSpec::symmetric(4));
  const CoverOutcome o = solve_product({&a, &s4}, Mode::All);
  EXPECT_EQ(o.status, CoverOutcome::Status::Exact);
  EXPECT_EQ(o.lower, 3u);
  EXPECT_THROW(solve_product({&s4}, Mode::All), GroupSolvable);
}

TEST(Solver, ProductAgreesWithMaterializedProduct) {
  const GroupSpec spec = GroupSpec::product({GroupSpec::psl2(4), GroupSpec::symmetric(3)});
  const GroupTable whole = build(spec);
  ASSERT_EQ(whole.order(), 360u);
  for (Mode m : {Mode::All, Mode::Involutions}) {
    const SpecOutcome factored = solve_spec(spec, m);
    const CoverOutcome direct = solve_alpha(whole, m);
    EXPECT_EQ(factored.order, 360u);
    EXPECT_EQ(factored.outcome.status, direct.status);
    EXPECT_EQ(factored.outcome.lower, direct.lower);
    EXPECT_EQ(factored.outcome.upper, direct.upper);
    const auto located = locate_elements(whole, factored.outcome.elements);
    EXPECT_TRUE(verify_elements(whole, located, m).valid);
  }
}

TEST(Solver, WreathUsesTheBaseCover) {
  const GroupSpec spec = GroupSpec::wreath(GroupSpec::psl2(4), 2, "cycle");
  const SpecOutcome o = solve_spec(spec, Mode::All);
  EXPECT_EQ(o.order, 7200u);
  EXPECT_EQ(o.outcome.status, CoverOutcome::Status::Exact);
  EXPECT_EQ(o.outcome.lower, 3u);
  EXPECT_EQ(o.outcome.elements.size(), 3u);
  const GroupTable t = build(spec);
  EXPECT_TRUE(verify_elements(t, locate_elements(t, o.outcome.elements), Mode::All).valid);
}

TEST(Solver, DiagonalCopiesOfABaseCoverNeedNotCover) {
  const GroupSpec spec = GroupSpec::wreath(GroupSpec::psl2(4), 2, "cycle");
  const GroupTable base = build(GroupSpec::psl2(4));
  const GroupTable t = build(spec);
  for (Mode m : {Mode::All, Mode::Involutions}) {
    const CoverOutcome b = solve_alpha(base, m);
    std::vector<Permutation> diag;
    for (const auto& x : b.elements) diag.push_back(detail::diagonal(x, 2));
    EXPECT_FALSE(verify_elements(t, locate_elements(t, diag), m).valid) << mode_name(m);
  }
}

TEST(Solver, WreathAboveTheCapUsesTheBound) {
  const GroupSpec spec = GroupSpec::wreath(GroupSpec::psl2(4), 3, "cycle");
  const SpecOutcome o = solve_spec(spec, Mode::All, {}, {}, 20000);
  EXPECT_EQ(o.order, 648000u);
  EXPECT_EQ(render_cell(o.outcome), "3");
  EXPECT_TRUE(o.outcome.elements.empty());
}

TEST(Solver, WreathCoverVerifiesOnSmallCase) {
  const GroupSpec spec = GroupSpec::wreath(GroupSpec::psl2(4), 2, "swap");
  const SpecOutcome o = solve_spec(spec, Mode::Involutions);
  const GroupTable t = build(spec, 20000);
  EXPECT_TRUE(verify_elements(t, locate_elements(t, o.outcome.elements), Mode::Involutions).valid);
}

TEST(Solver, TinyBudgetGivesInterval) {
  const GroupTable t = build(GroupSpec::psl2(13));
  SolveBudget budget;
  budget.node_limit = 1;
  const CoverOutcome o = solve_alpha(t, Mode::All, budget);
  ASSERT_EQ(o.status, CoverOutcome::Status::Interval);
  ASSERT_TRUE(o.upper);
  EXPECT_LE(o.lower, 13u);
  EXPECT_GE(*o.upper, 13u);
  EXPECT_LT(o.lower, *o.upper);
  expect_cover(t, o, Mode::All);
}

TEST(Solver, ParallelMatchesSerial) {
  for (const auto& spec : {GroupSpec::symmetric(5), GroupSpec::pgl2(7), GroupSpec::psl2(11)}) {
    const GroupTable t = build(spec);
    SolverOptions par;
    par.jobs = 4;
    for (Mode m : {Mode::All, Mode::Involutions}) {
      const CoverOutcome a = solve_alpha(t, m), b = solve_alpha(t, m, {}, par);
      EXPECT_EQ(a.status, b.status) << spec.to_string();
      EXPECT_EQ(a.lower, b.lower) << spec.to_string();
      EXPECT_EQ(a.upper, b.upper) << spec.to_string();
      if (b.certificate) EXPECT_TRUE(verify_elements(t, *b.certificate, m).valid);
    }
  }
}

TEST(Solver, DeterministicCertificates) {
  const GroupTable t = build(GroupSpec::pgl2(9));
  const CoverOutcome a = solve_alpha(t, Mode::All), b = solve_alpha(t, Mode::All);
  EXPECT_EQ(a.certificate, b.certificate);
}

TEST(Solver, TargetStopsEarly) {
  const GroupTable t = build(GroupSpec::psl2(11));
  SolveBudget budget;
  budget.target = 100;
  const CoverOutcome o = solve_alpha(t, Mode::All, budget);
  ASSERT_TRUE(o.upper);
  EXPECT_LE(o.lower, 15u);
  EXPECT_GE(*o.upper, 15u);
}

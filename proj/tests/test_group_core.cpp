#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "oracle.hpp"
#include "solvcover/constructions.hpp"
#include "solvcover/error.hpp"
#include "solvcover/group_core.hpp"

using namespace solvcover;

namespace {

std::vector<std::size_t> sorted_class_sizes(const GroupTable& t) {
  auto sizes = conjugacy_classes(t).sizes;
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace

TEST(Permutation, ParseAndPrintCycles) {
  const Permutation p = parse_cycles("(1,2,3)(4,5)");
  EXPECT_EQ(p.degree(), 5u);
  EXPECT_EQ(p(0), 1u);
  EXPECT_EQ(p(2), 0u);
  EXPECT_EQ(p.order(), 6u);
  EXPECT_EQ(to_cycle_string(p), "(1,2,3)(4,5)");
  EXPECT_EQ(to_cycle_string(parse_cycles("()", 4)), "()");
  EXPECT_EQ(parse_cycles("(1 2 3)"), parse_cycles("(1,2,3)"));
}

TEST(Permutation, ProductIsRightAction) {
  const Permutation a = parse_cycles("(1,2)", 3), b = parse_cycles("(2,3)", 3);
  // 1 -a-> 2 -b-> 3
  EXPECT_EQ((a * b)(0), 2u);
  EXPECT_EQ(to_cycle_string(a * b), "(1,3,2)");
  EXPECT_TRUE((a * a.inverse()).is_identity());
}

TEST(Permutation, RejectsMalformedCycles) {
  EXPECT_THROW(parse_cycles("(1,1)"), ParseError);
  EXPECT_THROW(parse_cycles("(1,2"), ParseError);
  EXPECT_THROW(parse_cycles("(0,2)"), ParseError);
}

TEST(GroupTable, EnumeratesAndMultiplies) {
  const GroupTable t = build(GroupSpec::symmetric(4));
  ASSERT_EQ(t.order(), 24u);
  EXPECT_TRUE(t.element(0).is_identity());
  for (Index a = 0; a < t.order(); ++a) {
    EXPECT_EQ(t.multiply(a, t.inverse(a)), 0u);
    for (Index b = 0; b < t.order(); ++b) EXPECT_EQ(t.element(t.multiply(a, b)), t.element(a) * t.element(b));
  }
}

TEST(GroupTable, EnforcesCap) {
  EXPECT_THROW(build(GroupSpec::symmetric(6), 100), CapExceeded);
  EXPECT_THROW(enumerate_group({}), EmptyGenerators);
}

TEST(GroupCore, KleinFourClosure) {
  const GroupTable t = build(GroupSpec::symmetric(4));
  const Index a = *t.find(parse_cycles("(1,2)(3,4)", 4));
  const Index b = *t.find(parse_cycles("(1,3)(2,4)", 4));
  const std::vector<Index> seeds{a, b};
  const ElementSet v = subgroup_closure(t, seeds);
  EXPECT_EQ(v.count(), 4u);
  EXPECT_TRUE(is_normal(t, v));
}

TEST(GroupCore, DerivedSubgroupOfS4IsA4) {
  const GroupTable t = build(GroupSpec::symmetric(4));
  const ElementSet d = derived_subgroup(t, t.full_set());
  EXPECT_EQ(d.count(), 12u);
  d.for_each([&](std::size_t i) {
    const auto& p = t.element(static_cast<Index>(i));
    std::size_t transpositions = 0;
    for (const auto& c : p.cycles()) transpositions += c.size() - 1;
    EXPECT_EQ(transpositions % 2, 0u);
  });
  EXPECT_TRUE(group_is_solvable(t));
}

TEST(GroupCore, A5ClassSizes) {
  const GroupTable t = build(GroupSpec::alternating(5));
  EXPECT_EQ(sorted_class_sizes(t), (std::vector<std::size_t>{1, 12, 12, 15, 20}));
  EXPECT_FALSE(group_is_solvable(t));
}

TEST(GroupCore, ConjugatorsReproduceClasses) {
  const GroupTable t = build(GroupSpec::symmetric(5));
  const ClassPartition cp = conjugacy_classes(t);
  for (Index x = 0; x < t.order(); ++x) EXPECT_EQ(t.conjugate(cp.representative_of(x), cp.conjugator[x]), x);
}

TEST(GroupCore, SolvabilityMatchesBruteForce) {
  for (const auto& spec : {GroupSpec::symmetric(4), GroupSpec::alternating(5), GroupSpec::dihedral(6)}) {
    const GroupTable t = build(spec);
    std::vector<oracle::Perm> gens;
    for (const auto& p : t.elements()) gens.push_back(oracle::images(p));
    EXPECT_EQ(group_is_solvable(t), oracle::solvable({gens.begin(), gens.end()}, t.degree())) << spec.to_string();
  }
}

TEST(GroupCore, RadicalOfSl25) {
  const GroupTable t = build(GroupSpec::sl2(5));
  ASSERT_EQ(t.order(), 120u);
  const ElementSet r = solvable_radical(t);
  EXPECT_EQ(r.count(), 2u);
  const GroupTable q = quotient_by(t, r);
  EXPECT_EQ(q.order(), 60u);
  EXPECT_FALSE(group_is_solvable(q));
  const auto image = quotient_map(t, r, q);
  for (Index a = 0; a < t.order(); a += 7)
    for (Index b = 0; b < t.order(); b += 5) EXPECT_EQ(image[t.multiply(a, b)], q.multiply(image[a], image[b]));
}

TEST(GroupCore, RadicalOfSimpleGroupIsTrivial) {
  EXPECT_EQ(solvable_radical(build(GroupSpec::psl2(7))).count(), 1u);
  EXPECT_EQ(solvable_radical(build(GroupSpec::gl2(5))).count(), 4u);
}

TEST(GroupCore, PairSolvabilityOnInvolutions) {
  const GroupTable t = build(GroupSpec::alternating(5));
  PairSolvability pairs(t);
  const Index three = *t.find(parse_cycles("(1,2,3)", 5));
  const Index five = *t.find(parse_cycles("(1,2,3,4,5)", 5));
  EXPECT_FALSE(pairs.solvable(three, five));
  EXPECT_TRUE(pairs.solvable(three, t.multiply(three, three)));
}

TEST(Constructions, FamilyOrders) {
  EXPECT_EQ(build(GroupSpec::psl2(7)).order(), 168u);
  EXPECT_EQ(build(GroupSpec::psl2(8)).order(), 504u);
  EXPECT_EQ(build(GroupSpec::psl2(9)).order(), 360u);
  EXPECT_EQ(build(GroupSpec::pgl2(7)).order(), 336u);
  EXPECT_EQ(build(GroupSpec::pgl2(9)).order(), 720u);
  EXPECT_EQ(build(GroupSpec::pgammal2(8)).order(), 1512u);
  EXPECT_EQ(build(GroupSpec::pgammal2(9)).order(), 1440u);
  EXPECT_EQ(build(GroupSpec::m10()).order(), 720u);
  EXPECT_EQ(build(GroupSpec::gl2(5)).order(), 480u);
  EXPECT_EQ(build(GroupSpec::sl2(5)).order(), 120u);
  EXPECT_EQ(build(GroupSpec::dihedral(5)).order(), 10u);
  EXPECT_EQ(psl2_order(13), 1092u);
  EXPECT_EQ(pgammal2_order(9), 1440u);
}

TEST(Constructions, ProductAndWreath) {
  EXPECT_EQ(build(GroupSpec::product({GroupSpec::psl2(4), GroupSpec::symmetric(3)})).order(), 360u);
  EXPECT_EQ(build(GroupSpec::wreath(GroupSpec::symmetric(3), 2, "cycle")).order(), 72u);
}

TEST(Constructions, RejectsBadParameters) {
  EXPECT_THROW(build(GroupSpec::psl2(6)), NotAPrimePower);
  EXPECT_THROW(build(GroupSpec::pgl2(1)), NotAPrimePower);
  EXPECT_THROW(build(GroupSpec::suzuki(8)), BadParameter);
}

TEST(Constructions, M10IsNotS6OrPgl29) {
  const GroupTable m = build(GroupSpec::m10());
  auto count_involutions = [](const GroupTable& t) {
    std::size_t n = 0;
    for (Index i = 0; i < t.order(); ++i) n += t.order_of(i) == 2;
    return n;
  };
  // M10 has one class of 45 involutions, S6 has 75 and PGL(2,9) has 81.
  EXPECT_EQ(count_involutions(m), 45u);
  EXPECT_EQ(count_involutions(build(GroupSpec::symmetric(6))), 75u);
  EXPECT_EQ(count_involutions(build(GroupSpec::pgl2(9))), 81u);
}

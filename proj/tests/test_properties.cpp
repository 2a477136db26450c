#include <gtest/gtest.h>

#include <limits>
#include <map>
#include <numeric>
#include <memory>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "solvcover/solvcover.hpp"

using namespace solvcover;

namespace {

constexpr int kCases = 200;
constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max();

struct Fixture {
  GroupSpec spec;
  std::unique_ptr<GroupTable> table;
  std::unique_ptr<SolvabilizerIncidence> inc;
};

// Nonsolvable groups of order at most 720, built once.
const std::vector<Fixture>& groups() {
  static const std::vector<Fixture> all = [] {
    std::vector<Fixture> out;
    for (const auto& s : {GroupSpec::alternating(5), GroupSpec::symmetric(5), GroupSpec::sl2(5), GroupSpec::psl2(7),
                          GroupSpec::pgl2(7), GroupSpec::alternating(6), GroupSpec::psl2(8), GroupSpec::psl2(11),
                          GroupSpec::m10(), GroupSpec::pgl2(9), GroupSpec::symmetric(6)}) {
      Fixture f{s, std::make_unique<GroupTable>(build(s)), nullptr};
      f.inc = std::make_unique<SolvabilizerIncidence>(sol_incidence(*f.table));
      out.push_back(std::move(f));
    }
    return out;
  }();
  return all;
}

template <class T>
std::size_t pick(std::mt19937& rng, const T& range) {
  return std::uniform_int_distribution<std::size_t>(0, range.size() - 1)(rng);
}

Index random_element(std::mt19937& rng, const GroupTable& t) {
  return static_cast<Index>(std::uniform_int_distribution<std::size_t>(0, t.order() - 1)(rng));
}

// Instance on a subset of the rows and columns of `base`, with every
// candidate and target in an orbit of its own.
CoverInstance restrict(const CoverInstance& base, const std::vector<std::size_t>& cands,
                       const std::vector<std::size_t>& targets) {
  CoverInstance inst;
  inst.involutions_only = base.involutions_only;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    inst.universe.push_back(base.universe[targets[j]]);
    inst.target_orbit.push_back(static_cast<std::uint32_t>(j));
  }
  for (std::size_t k = 0; k < cands.size(); ++k) {
    CoverCandidate c = base.candidates[cands[k]];
    DynamicBitset row(targets.size());
    for (std::size_t j = 0; j < targets.size(); ++j)
      if (c.row.contains(targets[j])) row.insert(j);
    c.row = std::move(row);
    c.orbit = static_cast<std::uint32_t>(k);
    inst.candidates.push_back(std::move(c));
  }
  return inst;
}

std::size_t brute_force(const CoverInstance& inst) {
  std::vector<std::vector<bool>> rows;
  for (const auto& c : inst.candidates) {
    std::vector<bool> r(inst.universe.size());
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = c.row.contains(j);
    rows.push_back(std::move(r));
  }
  const std::size_t best = oracle::min_cover(rows, inst.universe.size());
  return best > inst.candidates.size() ? kInfinite : best;
}

std::size_t solved(const CoverInstance& inst, const SolverOptions& opts = {}) {
  const CoverOutcome o = solve_exact(inst, {}, opts);
  if (o.status == CoverOutcome::Status::Infeasible) return kInfinite;
  EXPECT_EQ(o.status, CoverOutcome::Status::Exact);
  return o.lower;
}

struct BaseInstance {
  const Fixture* group;
  CoverInstance inst;
};

const std::vector<BaseInstance>& base_instances() {
  static const std::vector<BaseInstance> all = [] {
    std::vector<BaseInstance> out;
    for (const auto& g : groups())
      for (bool inv : {false, true}) {
        try {
          out.push_back({&g, reduce_instance(*g.inc, inv, false)});
        } catch (const InfeasibleUniverse&) {
        }
      }
    return out;
  }();
  return all;
}

// A random sub-instance with at most 14 candidates.
CoverInstance random_subinstance(std::mt19937& rng, const CoverInstance& base) {
  std::vector<std::size_t> cands(base.candidates.size()), targets;
  std::iota(cands.begin(), cands.end(), 0);
  std::shuffle(cands.begin(), cands.end(), rng);
  cands.resize(std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(14, cands.size()))(rng));
  const double keep = std::uniform_real_distribution<double>(0.2, 1.0)(rng);
  std::bernoulli_distribution coin(keep);
  for (std::size_t j = 0; j < base.universe.size(); ++j)
    if (coin(rng)) targets.push_back(j);
  if (targets.empty()) targets.push_back(0);
  return restrict(base, cands, targets);
}

}  // namespace

TEST(Property, SolIsConjugationEquivariant) {
  std::mt19937 rng(11);
  for (int i = 0; i < kCases; ++i) {
    const Fixture& f = groups()[pick(rng, groups())];
    const GroupTable& t = *f.table;
    const Index x = random_element(rng, t), g = random_element(rng, t);
    const ElementSet sx = f.inc->sol(x);
    const ElementSet sy = sol_of(t, t.conjugate(x, g));
    ASSERT_EQ(sx.count(), sy.count());
    sx.for_each([&](std::size_t y) { ASSERT_TRUE(sy.contains(t.conjugate(static_cast<Index>(y), g))); });
  }
}

TEST(Property, SolGrowsUnderPowers) {
  std::mt19937 rng(12);
  for (int i = 0; i < kCases; ++i) {
    const Fixture& f = groups()[pick(rng, groups())];
    const GroupTable& t = *f.table;
    const Index x = random_element(rng, t);
    const auto k = std::uniform_int_distribution<long long>(2, 12)(rng);
    EXPECT_TRUE(f.inc->sol(x).is_subset_of(f.inc->sol(t.power(x, k))));
  }
}

TEST(Property, InvolutionsAreMutuallySolvable) {
  std::mt19937 rng(13);
  for (int i = 0; i < kCases; ++i) {
    const Fixture& f = groups()[pick(rng, groups())];
    const GroupTable& t = *f.table;
    std::vector<Index> invs;
    for (Index x = 0; x < t.order(); ++x)
      if (t.order_of(x) == 2) invs.push_back(x);
    const Index a = invs[pick(rng, invs)], b = invs[pick(rng, invs)];
    EXPECT_TRUE(f.inc->contains(a, b));
    EXPECT_TRUE(oracle::pair_solvable(oracle::images(t.element(a)), oracle::images(t.element(b))));
  }
}

TEST(Property, SolIsUnionOfMaximalSolvableSubgroups) {
  std::mt19937 rng(14);
  std::map<const Fixture*, MaximalSolvableCensus> census;
  const auto& gs = groups();
  std::vector<const Fixture*> small;
  for (const auto& g : gs)
    if (g.table->order() <= 360) small.push_back(&g);
  for (int i = 0; i < kCases; ++i) {
    const Fixture* f = small[pick(rng, small)];
    auto it = census.find(f);
    if (it == census.end()) it = census.emplace(f, maximal_solvable_subgroups(*f->table)).first;
    const Index x = random_element(rng, *f->table);
    ElementSet u = f->table->empty_set();
    for (auto k : it->second.containing(x)) u |= it->second.subgroups[k];
    EXPECT_EQ(u, f->inc->sol(x)) << f->spec.to_string() << " " << to_cycle_string(f->table->element(x));
  }
}

TEST(Property, SolverMatchesBruteForce) {
  std::mt19937 rng(15);
  const auto& bases = base_instances();
  // Reduced instances that are already small enough are checked as they are.
  for (const auto& b : bases) {
    const auto inst = reduce_instance(*b.group->inc, b.inst.involutions_only);
    if (inst.candidates.size() <= 14) EXPECT_EQ(solved(inst), brute_force(inst)) << b.group->spec.to_string();
  }
  SolverOptions parallel;
  parallel.jobs = 3;
  for (int i = 0; i < kCases; ++i) {
    const auto& b = bases[pick(rng, bases)];
    const CoverInstance inst = random_subinstance(rng, b.inst);
    const std::size_t expected = brute_force(inst);
    EXPECT_EQ(solved(inst), expected) << "case " << i;
    EXPECT_EQ(solved(inst, parallel), expected) << "case " << i;
  }
}

TEST(Property, MonotonicityProbes) {
  std::mt19937 rng(16);
  const auto& bases = base_instances();
  for (int i = 0; i < kCases; ++i) {
    const auto& b = bases[pick(rng, bases)];
    const CoverInstance inst = random_subinstance(rng, b.inst);
    const std::size_t opt = solved(inst);

    // One more candidate from the base instance.
    CoverInstance more = inst;
    CoverCandidate extra = b.inst.candidates[pick(rng, b.inst.candidates)];
    DynamicBitset row(inst.universe.size());
    for (std::size_t j = 0; j < inst.universe.size(); ++j) {
      const auto pos = std::find(b.inst.universe.begin(), b.inst.universe.end(), inst.universe[j]) - b.inst.universe.begin();
      if (extra.row.contains(static_cast<std::size_t>(pos))) row.insert(j);
    }
    extra.row = std::move(row);
    extra.orbit = static_cast<std::uint32_t>(more.candidates.size());
    more.candidates.push_back(std::move(extra));
    EXPECT_LE(solved(more), opt) << "case " << i;

    // One target fewer.
    if (inst.universe.size() > 1) {
      std::vector<std::size_t> keep(inst.universe.size()), all(inst.candidates.size());
      std::iota(keep.begin(), keep.end(), 0);
      std::iota(all.begin(), all.end(), 0);
      keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(pick(rng, keep)));
      EXPECT_LE(solved(restrict(inst, all, keep)), opt) << "case " << i;
    }
  }
}

TEST(Property, ReductionIsSound) {
  std::mt19937 rng(17);
  std::vector<const Fixture*> fs = {&groups()[0], &groups()[1]};
  std::map<const Fixture*, CoverInstance> instances;
  for (auto* f : fs) instances.emplace(f, reduce_instance(*f->inc, false));
  for (int i = 0; i < kCases; ++i) {
    const Fixture* f = fs[pick(rng, fs)];
    const GroupTable& t = *f->table;
    const CoverInstance& inst = instances.at(f);
    std::vector<Index> xs;
    const auto n = std::uniform_int_distribution<int>(1, 6)(rng);
    while (static_cast<int>(xs.size()) < n) {
      const Index x = random_element(rng, t);
      if (!f->inc->radical().contains(x)) xs.push_back(x);
    }
    ElementSet whole = t.empty_set(), primes = t.empty_set();
    DynamicBitset rows(inst.universe.size());
    for (Index x : xs) {
      whole |= f->inc->sol(x);
      const unsigned k = t.order_of(x);
      unsigned p = 2;
      while (k % p) ++p;
      const Index y = t.power(x, k / p);
      primes |= f->inc->sol(y);
      rows |= inst.candidates[inst.represented_by.at(y)].row;
    }
    bool universe_covered = true;
    for (Index u : inst.universe) universe_covered = universe_covered && whole.contains(u);
    EXPECT_EQ(whole.count() == t.order(), universe_covered);
    EXPECT_TRUE(whole.is_subset_of(primes));
    if (whole.count() == t.order()) EXPECT_EQ(rows.count(), inst.universe.size());
  }
}

TEST(Property, RootSymmetryPreservesOptimum) {
  SolverOptions off;
  off.root_symmetry = false;
  for (std::size_t g = 0; g < 5; ++g) {
    const Fixture& f = groups()[g];
    for (bool inv : {false, true}) {
      CoverInstance inst;
      try {
        inst = reduce_instance(*f.inc, inv);
      } catch (const InfeasibleUniverse&) {
        continue;
      }
      const CoverOutcome a = solve_exact(inst), b = solve_exact(inst, {}, off);
      EXPECT_EQ(a.status, CoverOutcome::Status::Exact);
      EXPECT_EQ(a.status, b.status);
      EXPECT_EQ(a.lower, b.lower) << f.spec.to_string();
    }
  }
}

TEST(Property, ExactCertificatesAreIrredundant) {
  for (std::size_t g = 0; g < 7; ++g) {
    const Fixture& f = groups()[g];
    const CoverOutcome o = solve_alpha(*f.table, Mode::All, {}, {}, false);
    ASSERT_TRUE(o.certificate);
    EXPECT_TRUE(verify_elements(*f.table, *o.certificate, Mode::All).valid);
    for (std::size_t i = 0; i < o.certificate->size(); ++i) {
      auto xs = *o.certificate;
      xs.erase(xs.begin() + static_cast<std::ptrdiff_t>(i));
      EXPECT_FALSE(verify_elements(*f.table, xs, Mode::All).valid) << f.spec.to_string();
    }
  }
}

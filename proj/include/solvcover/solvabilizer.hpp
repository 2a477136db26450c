#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "solvcover/error.hpp"
#include "solvcover/group_core.hpp"
#include "solvcover/group_table.hpp"

namespace solvcover {

namespace detail {

/// Generators of <x>, i.e. x^k with gcd(k, |x|) = 1.
inline std::vector<Index> cyclic_generators(const GroupTable& t, Index x) {
  std::vector<Index> out;
  const unsigned n = t.order_of(x);
  Index p = x;
  for (unsigned k = 1; k <= n; ++k, p = t.multiply(p, x))
    if (std::gcd(k, n) == 1) out.push_back(p);
  return out;
}

}  // namespace detail

/// Sol_G(x) = { y : <x, y> is solvable }.
///
/// Elements are decided in ascending order. A solvable <x, y> puts all of its
/// elements, and their conjugates under C_G(x), into Sol_G(x); a nonsolvable
/// one excludes y together with its C_G(x)-conjugates and the other
/// generators of <y>.
inline ElementSet sol_of(const GroupTable& t, Index x, PairSolvability& pairs) {
  if (x >= t.order()) throw BadParameter("element index out of range");
  const std::size_t n = t.order();
  if (pairs.group_solvable()) return t.full_set();
  ElementSet in = t.empty_set(), out = t.empty_set();
  const std::vector<Index> cent = centralizer(t, x).to_vector<Index>();
  std::optional<Subgroup> k;
  for (Index y = 0; y < n; ++y) {
    if (in.contains(y) || out.contains(y)) continue;
    if (pairs.solvable(x, y, &k)) {
      for (Index c : cent)
        for (Index e : k->elements) in.insert(t.conjugate(e, c));
    } else {
      for (Index c : cent)
        for (Index z : detail::cyclic_generators(t, t.conjugate(y, c))) out.insert(z);
    }
  }
  return in;
}

inline ElementSet sol_of(const GroupTable& t, Index x) {
  PairSolvability pairs(t);
  return sol_of(t, x, pairs);
}

/// Sol_G(x) for every x, stored once per conjugacy class and expanded through
/// Sol_G(g^-1 x g) = g^-1 Sol_G(x) g.
class SolvabilizerIncidence {
 public:
  SolvabilizerIncidence(const GroupTable& t, ClassPartition classes, std::vector<ElementSet> rep_sols, ElementSet radical)
      : t_(&t), classes_(std::move(classes)), rep_sols_(std::move(rep_sols)), radical_(std::move(radical)) {}

  const GroupTable& table() const noexcept { return *t_; }
  const ClassPartition& classes() const noexcept { return classes_; }
  const ElementSet& radical() const noexcept { return radical_; }
  const ElementSet& representative_sol(std::size_t class_id) const { return rep_sols_[class_id]; }

  /// y in Sol_G(x).
  bool contains(Index x, Index y) const {
    const Index g = classes_.conjugator[x];
    // x = g^-1 r g, so y in Sol(x) iff g y g^-1 in Sol(r).
    const Index back = t_->conjugate(y, t_->inverse(g));
    return rep_sols_[classes_.class_of[x]].contains(back);
  }

  ElementSet sol(Index x) const {
    const Index g = classes_.conjugator[x];
    ElementSet out = t_->empty_set();
    rep_sols_[classes_.class_of[x]].for_each([&](std::size_t y) { out.insert(t_->conjugate(static_cast<Index>(y), g)); });
    return out;
  }

  std::size_t sol_size(Index x) const { return rep_sols_[classes_.class_of[x]].count(); }

 private:
  const GroupTable* t_;
  ClassPartition classes_;
  std::vector<ElementSet> rep_sols_;
  ElementSet radical_;
};

/// The incidence refers to the table, so it must not be a temporary.
SolvabilizerIncidence sol_incidence(GroupTable&&, unsigned = 1) = delete;

/// Computes Sol once per conjugacy class. With jobs > 1 the class
/// representatives are split across threads, each with a private cache; the
/// result does not depend on the split.
inline SolvabilizerIncidence sol_incidence(const GroupTable& t, unsigned jobs = 1) {
  ClassPartition cp = conjugacy_classes(t);
  std::vector<ElementSet> sols(cp.count());
  auto work = [&](std::size_t begin, std::size_t stride) {
    PairSolvability pairs(t);
    for (std::size_t c = begin; c < cp.count(); c += stride) sols[c] = sol_of(t, cp.representatives[c], pairs);
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cp.count())));
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j, jobs);
  }
  ElementSet radical = t.empty_set();
  for (Index x = 0; x < t.order(); ++x)
    if (sols[cp.class_of[x]].count() == t.order()) radical.insert(x);
  if (!is_subgroup(t, radical) || !is_normal(t, radical))
    throw InternalInconsistency("elements with full solvabilizer do not form a normal subgroup");
  return SolvabilizerIncidence(t, std::move(cp), std::move(sols), std::move(radical));
}

/// The maximal solvable subgroups of G, grouped into conjugacy classes.
struct MaximalSolvableCensus {
  std::vector<ElementSet> subgroups;
  std::vector<std::uint32_t> class_of;   // per subgroup
  std::vector<std::size_t> class_count;  // per class
  std::vector<std::size_t> class_order;  // per class

  /// Indices of census members containing x.
  std::vector<std::size_t> containing(Index x) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < subgroups.size(); ++i)
      if (subgroups[i].contains(x)) out.push_back(i);
    return out;
  }
};

namespace detail {

inline ElementSet conjugate_set(const GroupTable& t, const ElementSet& h, Index g) {
  ElementSet out = t.empty_set();
  h.for_each([&](std::size_t e) { out.insert(t.conjugate(static_cast<Index>(e), g)); });
  return out;
}

}  // namespace detail

/// Walks the solvable subgroups up to conjugacy, starting from the trivial
/// group and adjoining one element at a time. A subgroup with no solvable
/// one-element extension is maximal solvable. Every solvable subgroup is
/// reached, so no class of maximal solvable subgroups is missed.
inline MaximalSolvableCensus maximal_solvable_subgroups(const GroupTable& t) {
  MaximalSolvableCensus census;
  const std::size_t n = t.order();
  if (group_is_solvable(t)) {
    census.subgroups.push_back(t.full_set());
    census.class_of.push_back(0);
    census.class_count.push_back(1);
    census.class_order.push_back(n);
    return census;
  }

  std::unordered_set<ElementSet, BitsetHash> solvable_seen;
  std::unordered_set<ElementSet, BitsetHash> nonsolvable_seen;
  std::vector<Subgroup> queue;
  std::vector<Subgroup> maximal_reps;

  auto register_class = [&](const Subgroup& h) {
    for (Index g = 0; g < n; ++g) solvable_seen.insert(detail::conjugate_set(t, h.members, g));
  };

  queue.push_back(*detail::close(t, {}));
  register_class(queue.front());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Subgroup h = queue[head];
    bool maximal = true;
    ElementSet done = h.members;
    for (Index g = 0; g < n; ++g) {
      if (done.contains(g)) continue;
      for (Index e : h.elements) done.insert(t.multiply(e, g));  // <H, g> = <H, hg>
      Subgroup k = h;
      if (!detail::extend(t, k, g, n / 2)) continue;  // more than half of G: it is G
      if (solvable_seen.contains(k.members)) {
        maximal = false;
        continue;
      }
      if (nonsolvable_seen.contains(k.members)) continue;
      if (detail::solvable_generated(t, k.generators, k.size())) {
        maximal = false;
        register_class(k);
        queue.push_back(std::move(k));
      } else {
        nonsolvable_seen.insert(k.members);
      }
    }
    if (maximal) maximal_reps.push_back(h);
  }

  std::stable_sort(maximal_reps.begin(), maximal_reps.end(),
                   [](const Subgroup& a, const Subgroup& b) { return a.size() > b.size(); });
  for (const auto& rep : maximal_reps) {
    const auto id = static_cast<std::uint32_t>(census.class_count.size());
    std::unordered_set<ElementSet, BitsetHash> conjugates;
    std::vector<ElementSet> ordered;
    for (Index g = 0; g < n; ++g) {
      ElementSet c = detail::conjugate_set(t, rep.members, g);
      if (conjugates.insert(c).second) ordered.push_back(std::move(c));
    }
    for (auto& c : ordered) {
      census.subgroups.push_back(std::move(c));
      census.class_of.push_back(id);
    }
    census.class_count.push_back(ordered.size());
    census.class_order.push_back(rep.size());
  }
  return census;
}

/// Whether the solvabilizers of the nonradical elements (restricted to
/// involutions when asked) cover G.
inline bool union_check(const SolvabilizerIncidence& inc, bool involutions_only = false) {
  const GroupTable& t = inc.table();
  ElementSet covered = t.empty_set();
  for (Index x = 0; x < t.order(); ++x) {
    if (inc.radical().contains(x)) continue;
    if (involutions_only && t.order_of(x) != 2) continue;
    covered |= inc.sol(x);
  }
  return covered.count() == t.order();
}

/// One candidate covering set after reduction.
struct CoverCandidate {
  Index element = 0;        // concrete group element named in certificates
  unsigned order = 0;
  bool involution = false;
  DynamicBitset row;        // covered universe targets
  std::uint32_t orbit = 0;  // orbit of the row under conjugation
};

/// A minimum set cover problem equivalent to the solvabilizer covering problem.
struct CoverInstance {
  std::vector<Index> universe;              // canonical generator of each maximal cyclic subgroup
  std::vector<std::uint32_t> target_orbit;  // conjugation orbit of each target
  std::vector<CoverCandidate> candidates;
  bool involutions_only = false;
  bool from_nonsolvable_group = false;  // optimum is then at least 3
  std::vector<std::string> notes;
  /// For every element that was considered as a candidate: the index of the
  /// surviving candidate whose row contains its row.
  std::unordered_map<Index, std::size_t> represented_by;

  std::size_t orbit_count() const {
    std::uint32_t m = 0;
    for (const auto& c : candidates) m = std::max(m, c.orbit + 1);
    return m;
  }
  std::size_t target_orbit_count() const {
    std::uint32_t m = 0;
    for (auto o : target_orbit) m = std::max(m, o + 1);
    return m;
  }
};

namespace detail {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

/// Dense orbit ids 0..k-1 from a union-find, numbered by first appearance.
inline std::vector<std::uint32_t> compact_ids(UnionFind& uf, std::size_t n) {
  std::unordered_map<std::uint32_t, std::uint32_t> remap;
  std::vector<std::uint32_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, _] = remap.try_emplace(uf.find(static_cast<std::uint32_t>(i)), static_cast<std::uint32_t>(remap.size()));
    out[i] = it->second;
  }
  return out;
}

/// True when x is outside the radical but every proper power x^p is inside.
/// With a trivial radical these are exactly the elements of prime order.
inline bool minimal_nonradical(const GroupTable& t, const DynamicBitset& radical, Index x) {
  if (radical.contains(x)) return false;
  unsigned o = t.order_of(x);
  for (unsigned p = 2, m = o; m > 1; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    if (!radical.contains(t.power(x, p))) return false;
  }
  return true;
}

}  // namespace detail

/// Canonical generator (least index) of <x> for every element.
inline std::vector<Index> cyclic_canonical(const GroupTable& t) {
  std::vector<Index> canon(t.order(), static_cast<Index>(-1));
  for (Index x = 0; x < t.order(); ++x) {
    if (canon[x] != static_cast<Index>(-1)) continue;
    auto gens = detail::cyclic_generators(t, x);
    Index least = *std::min_element(gens.begin(), gens.end());
    for (Index g : gens) canon[g] = least;
  }
  return canon;
}

/// Canonical generators of the maximal cyclic subgroups, ascending.
inline std::vector<Index> maximal_cyclic_generators(const GroupTable& t) {
  const auto canon = cyclic_canonical(t);
  std::vector<bool> non_maximal(t.order(), false);
  for (Index x = 0; x < t.order(); ++x) {
    if (canon[x] != x) continue;
    Index p = t.multiply(x, x);
    for (unsigned k = 2; k <= t.order_of(x); ++k, p = t.multiply(p, x))
      if (canon[p] != x) non_maximal[canon[p]] = true;
  }
  std::vector<Index> out;
  for (Index x = 0; x < t.order(); ++x)
    if (canon[x] == x && !non_maximal[x]) out.push_back(x);
  return out;
}

/// Builds the reduced covering problem.
///
/// Universe: one target per maximal cyclic subgroup; Sol sets contain <x, y>,
/// so covering a generator covers its whole cyclic group. Candidates: the
/// nonradical elements whose proper powers are radical (or the involutions),
/// since Sol(x) is contained in Sol(x^n) and Sol(x) = G for radical x. Rows that coincide are merged and rows
/// strictly contained in another row are dropped unless `prune_dominated` is off.
inline CoverInstance reduce_instance(const SolvabilizerIncidence& inc, bool involutions_only,
                                     bool prune_dominated = true) {
  const GroupTable& t = inc.table();
  CoverInstance inst;
  inst.involutions_only = involutions_only;
  inst.from_nonsolvable_group = inc.radical().count() < t.order();
  inst.universe = maximal_cyclic_generators(t);
  const std::size_t u = inst.universe.size();

  // Target orbits: conjugation permutes maximal cyclic subgroups.
  {
    const auto canon = cyclic_canonical(t);
    std::unordered_map<Index, std::uint32_t> target_id;
    for (std::size_t i = 0; i < u; ++i) target_id.emplace(inst.universe[i], static_cast<std::uint32_t>(i));
    detail::UnionFind uf(u);
    for (std::size_t i = 0; i < u; ++i)
      for (Index g : t.generator_indices())
        uf.unite(static_cast<std::uint32_t>(i), target_id.at(canon[t.conjugate(inst.universe[i], g)]));
    inst.target_orbit = detail::compact_ids(uf, u);
  }

  std::vector<Index> raw;
  for (Index x = 1; x < t.order(); ++x) {
    if (involutions_only ? inc.radical().contains(x) || t.order_of(x) != 2
                         : !detail::minimal_nonradical(t, inc.radical(), x))
      continue;
    raw.push_back(x);
  }
  inst.notes.push_back("universe: " + std::to_string(u) + " maximal cyclic subgroups");
  inst.notes.push_back(std::string(involutions_only ? "involution" : "minimal nonradical") +
                       " candidates: " + std::to_string(raw.size()));

  // Rows for every raw candidate, merged when identical.
  std::unordered_map<DynamicBitset, std::size_t, BitsetHash> by_row;
  std::vector<CoverCandidate> merged;
  std::vector<std::vector<Index>> merged_elements;
  for (Index x : raw) {
    DynamicBitset row(u);
    for (std::size_t i = 0; i < u; ++i)
      if (inc.contains(x, inst.universe[i])) row.insert(i);
    auto [it, inserted] = by_row.try_emplace(row, merged.size());
    if (inserted) {
      merged.push_back({x, t.order_of(x), t.order_of(x) == 2, std::move(row), 0});
      merged_elements.emplace_back();
    }
    merged_elements[it->second].push_back(x);
  }
  inst.notes.push_back("distinct rows: " + std::to_string(merged.size()));

  DynamicBitset uncovered = DynamicBitset::full(u);
  for (const auto& c : merged) uncovered -= c.row;
  if (!uncovered.empty()) {
    const std::size_t target = uncovered.first();
    if (!involutions_only)
      throw InternalInconsistency("a maximal cyclic subgroup lies in no nonradical solvabilizer");
    throw InfeasibleUniverse("target " + std::to_string(inst.universe[target]) + " is covered by no involution", target);
  }

  // Orbits of merged rows: elements in one conjugacy class give conjugate rows.
  std::vector<std::uint32_t> merged_orbit;
  {
    detail::UnionFind uf(merged.size());
    std::unordered_map<std::uint32_t, std::uint32_t> first_row_of_class;
    for (std::size_t r = 0; r < merged.size(); ++r)
      for (Index x : merged_elements[r]) {
        auto [it, inserted] = first_row_of_class.try_emplace(inc.classes().class_of[x], static_cast<std::uint32_t>(r));
        if (!inserted) uf.unite(it->second, static_cast<std::uint32_t>(r));
      }
    merged_orbit = detail::compact_ids(uf, merged.size());
  }

  // Drop rows strictly contained in another row.
  std::vector<std::size_t> dominator(merged.size(), static_cast<std::size_t>(-1));
  std::vector<std::size_t> by_size(merged.size());
  std::iota(by_size.begin(), by_size.end(), 0);
  std::stable_sort(by_size.begin(), by_size.end(),
                   [&](std::size_t a, std::size_t b) { return merged[a].row.count() > merged[b].row.count(); });
  std::vector<std::size_t> kept;
  for (std::size_t r : by_size) {
    for (std::size_t k : kept)
      if (prune_dominated && merged[r].row.is_subset_of(merged[k].row)) {
        dominator[r] = k;
        break;
      }
    if (dominator[r] == static_cast<std::size_t>(-1)) kept.push_back(r);
  }
  std::sort(kept.begin(), kept.end(), [&](std::size_t a, std::size_t b) { return merged[a].element < merged[b].element; });
  std::vector<std::size_t> new_index(merged.size(), static_cast<std::size_t>(-1));
  // Orbits survive pruning whole: a dominated row's conjugates are dominated too.
  std::unordered_map<std::uint32_t, std::uint32_t> orbit_remap;
  for (std::size_t r : kept) {
    new_index[r] = inst.candidates.size();
    CoverCandidate c = merged[r];
    auto [it, _] = orbit_remap.try_emplace(merged_orbit[r], static_cast<std::uint32_t>(orbit_remap.size()));
    c.orbit = it->second;
    inst.candidates.push_back(std::move(c));
  }
  for (std::size_t r = 0; r < merged.size(); ++r) {
    std::size_t k = r;
    while (new_index[k] == static_cast<std::size_t>(-1)) k = dominator[k];
    for (Index x : merged_elements[r]) inst.represented_by.emplace(x, new_index[k]);
  }
  inst.notes.push_back(std::string(prune_dominated ? "after dominance pruning: " : "without dominance pruning: ") + std::to_string(inst.candidates.size()) + " candidates in " +
                       std::to_string(orbit_remap.size()) + " orbits");
  return inst;
}

/// Result of a maximum clique search: exact when lower == upper.
struct CliqueOutcome {
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::vector<Index> witness;  // group elements of a clique of size `lower`
  std::uint64_t nodes = 0;
  bool exact() const noexcept { return lower == upper; }
};

namespace detail {

/// Maximum clique with greedy-colouring bounds. `adj[i]` lists the neighbours
/// of vertex i as a bitset over vertices.
class MaxClique {
 public:
  MaxClique(const std::vector<DynamicBitset>& adj, std::uint64_t node_limit) : adj_(adj), limit_(node_limit) {}

  CliqueOutcome run(const std::vector<Index>& names) {
    const std::size_t n = adj_.size();
    DynamicBitset all = DynamicBitset::full(n);
    std::vector<std::size_t> current;
    expand(all, current);
    CliqueOutcome out;
    out.lower = best_.size();
    out.upper = aborted_ ? std::max(best_.size(), root_bound_) : best_.size();
    for (auto v : best_) out.witness.push_back(names[v]);
    out.nodes = nodes_;
    return out;
  }

 private:
  // Greedy colouring of `p`; returns vertices in colour order with colour numbers.
  void colour(const DynamicBitset& p, std::vector<std::size_t>& order, std::vector<std::size_t>& colours) const {
    DynamicBitset uncoloured = p;
    std::size_t c = 0;
    while (!uncoloured.empty()) {
      ++c;
      DynamicBitset q = uncoloured;
      while (!q.empty()) {
        std::size_t v = q.first();
        q.erase(v);
        q -= adj_[v];
        uncoloured.erase(v);
        order.push_back(v);
        colours.push_back(c);
      }
    }
  }

  void expand(DynamicBitset p, std::vector<std::size_t>& current) {
    ++nodes_;
    std::vector<std::size_t> order, colours;
    colour(p, order, colours);
    if (current.empty()) root_bound_ = colours.empty() ? 0 : colours.back();
    for (std::size_t i = order.size(); i-- > 0;) {
      if (nodes_ >= limit_) {
        aborted_ = true;
        return;
      }
      if (current.size() + colours[i] <= best_.size()) return;
      const std::size_t v = order[i];
      current.push_back(v);
      DynamicBitset next = p & adj_[v];
      if (next.empty()) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(std::move(next), current);
      }
      current.pop_back();
      p.erase(v);
    }
  }

  const std::vector<DynamicBitset>& adj_;
  std::uint64_t limit_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::size_t root_bound_ = 0;
  std::vector<std::size_t> best_;
};

}  // namespace detail

/// Largest set of nonradical elements, pairwise generating nonsolvable
/// subgroups. Any such set that cannot be extended is a solvabilizer
/// covering, so the value bounds the solvabilizer number from above.
inline CliqueOutcome mu_s(const SolvabilizerIncidence& inc, std::uint64_t node_limit = 10'000'000) {
  const GroupTable& t = inc.table();
  std::vector<Index> names;
  for (Index x = 0; x < t.order(); ++x)
    if (!inc.radical().contains(x)) names.push_back(x);
  std::vector<DynamicBitset> adj(names.size(), DynamicBitset(names.size()));
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = 0; j < names.size(); ++j)
      if (i != j && !inc.contains(names[i], names[j])) adj[i].insert(j);
  return detail::MaxClique(adj, node_limit).run(names);
}

/// Largest set of pairwise generators of G.
inline CliqueOutcome mu_pairwise_generators(const GroupTable& t, std::uint64_t node_limit = 10'000'000) {
  std::vector<Index> names;
  for (Index x = 1; x < t.order(); ++x) names.push_back(x);
  std::vector<DynamicBitset> adj(names.size(), DynamicBitset(names.size()));
  bool any = false;
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      const Index gens[2] = {names[i], names[j]};
      if (detail::close(t, gens)->size() == t.order()) {
        adj[i].insert(j);
        adj[j].insert(i);
        any = true;
      }
    }
  if (!any) throw NotTwoGenerated("no pair of elements generates the group");
  return detail::MaxClique(adj, node_limit).run(names);
}

/// Whether the given elements pairwise generate G.
inline bool pairwise_generating(const GroupTable& t, const std::vector<Index>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const Index gens[2] = {xs[i], xs[j]};
      if (detail::close(t, gens)->size() != t.order()) return false;
    }
  return true;
}

}  // namespace solvcover

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "solvcover/error.hpp"
#include "solvcover/group_table.hpp"

namespace solvcover {

/// A subgroup held both as a membership set and as a generating list.
struct Subgroup {
  ElementSet members;
  std::vector<Index> elements;    // members in discovery order, identity first
  std::vector<Index> generators;  // nonidentity generators
  std::size_t size() const noexcept { return elements.size(); }
};

namespace detail {

/// Closure of `gens` by right multiplication. Returns nullopt once the closure
/// grows beyond `limit` elements.
inline std::optional<Subgroup> close(const GroupTable& t, std::span<const Index> gens,
                                     std::size_t limit = static_cast<std::size_t>(-1)) {
  Subgroup h{t.empty_set(), {0}, {}};
  h.members.insert(0);
  for (Index g : gens)
    if (g != 0 && std::find(h.generators.begin(), h.generators.end(), g) == h.generators.end())
      h.generators.push_back(g);
  for (std::size_t head = 0; head < h.elements.size(); ++head) {
    const Index e = h.elements[head];
    for (Index g : h.generators) {
      Index p = t.multiply(e, g);
      if (!h.members.contains(p)) {
        h.members.insert(p);
        h.elements.push_back(p);
        if (h.elements.size() > limit) return std::nullopt;
      }
    }
  }
  return h;
}

/// Adds `g` to `h` and recloses, reusing the existing elements.
inline bool extend(const GroupTable& t, Subgroup& h, Index g, std::size_t limit = static_cast<std::size_t>(-1)) {
  if (h.members.contains(g)) return true;
  h.generators.push_back(g);
  // Every old element times the old generators stays inside; only products
  // with the new generator, and everything reached from them, are new.
  std::size_t old_size = h.elements.size();
  for (std::size_t i = 0; i < old_size; ++i) {
    Index p = t.multiply(h.elements[i], g);
    if (!h.members.contains(p)) {
      h.members.insert(p);
      h.elements.push_back(p);
    }
  }
  for (std::size_t head = old_size; head < h.elements.size(); ++head) {
    const Index e = h.elements[head];
    for (Index gen : h.generators) {
      Index p = t.multiply(e, gen);
      if (!h.members.contains(p)) {
        h.members.insert(p);
        h.elements.push_back(p);
        if (h.elements.size() > limit) return false;
      }
    }
  }
  return h.elements.size() <= limit;
}

/// Normal closure of `seeds` inside the group generated by `ambient_gens`.
inline Subgroup normal_closure(const GroupTable& t, std::span<const Index> seeds, std::span<const Index> ambient_gens) {
  Subgroup n = *close(t, {});
  for (Index s : seeds)
    if (!n.members.contains(s)) extend(t, n, s);
  for (std::size_t i = 0; i < n.generators.size(); ++i) {
    for (Index a : ambient_gens) {
      Index c = t.conjugate(n.generators[i], a);
      if (!n.members.contains(c)) extend(t, n, c);
    }
  }
  return n;
}

/// Derived subgroup of the group generated by `gens`.
inline Subgroup derived_of_generated(const GroupTable& t, std::span<const Index> gens) {
  std::vector<Index> comms;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) comms.push_back(t.commutator(gens[i], gens[j]));
  return normal_closure(t, comms, gens);
}

/// Solvability of a group given by generators and its order.
inline bool solvable_generated(const GroupTable& t, std::vector<Index> gens, std::size_t size) {
  for (;;) {
    if (size == 1) return true;
    Subgroup d = derived_of_generated(t, gens);
    if (d.size() == size) return false;
    size = d.size();
    gens = std::move(d.generators);
  }
}

}  // namespace detail

/// Smallest subgroup containing `seeds`.
inline ElementSet subgroup_closure(const GroupTable& t, std::span<const Index> seeds) {
  for (Index s : seeds)
    if (s >= t.order()) throw BadParameter("seed index out of range");
  return detail::close(t, seeds)->members;
}

/// True iff `h` contains the identity and is closed under products.
inline bool is_subgroup(const GroupTable& t, const ElementSet& h) {
  if (h.size() != t.order() || !h.contains(0)) return false;
  Subgroup s = *detail::close(t, {});
  bool inside = true;
  h.for_each([&](std::size_t i) {
    if (inside && !s.members.contains(static_cast<Index>(i))) {
      detail::extend(t, s, static_cast<Index>(i));
      inside = s.members.is_subset_of(h);
    }
  });
  return inside && s.members == h;
}

/// A short generating list for the subgroup `h`, chosen greedily in
/// ascending index order.
inline Subgroup as_subgroup(const GroupTable& t, const ElementSet& h) {
  Subgroup s = *detail::close(t, {});
  h.for_each([&](std::size_t i) {
    if (!s.members.contains(static_cast<Index>(i))) detail::extend(t, s, static_cast<Index>(i));
  });
  if (!(s.members == h)) throw NotASubgroup("element set is not closed under products");
  return s;
}

/// Subgroup generated by all commutators of `h`.
///
/// The commutator subgroup of a group generated by S is the normal closure of
/// the commutators of S, so a greedy generating set of `h` suffices.
inline ElementSet derived_subgroup(const GroupTable& t, const ElementSet& h) {
  Subgroup s = as_subgroup(t, h);
  return detail::derived_of_generated(t, s.generators).members;
}

inline bool is_solvable(const GroupTable& t, const ElementSet& h) {
  Subgroup s = as_subgroup(t, h);
  return detail::solvable_generated(t, s.generators, s.size());
}

inline bool is_normal(const GroupTable& t, const ElementSet& n) {
  bool normal = true;
  n.for_each([&](std::size_t x) {
    if (!normal) return;
    for (Index g : t.generator_indices())
      if (!n.contains(t.conjugate(static_cast<Index>(x), g))) {
        normal = false;
        return;
      }
  });
  return normal;
}

struct ClassPartition {
  std::vector<std::uint32_t> class_of;      // element -> class id
  std::vector<Index> representatives;       // least element index in each class
  std::vector<std::size_t> sizes;
  std::vector<Index> conjugator;            // x == conjugate(rep(class_of[x]), conjugator[x])

  std::size_t count() const noexcept { return representatives.size(); }
  Index representative_of(Index x) const { return representatives[class_of[x]]; }
};

/// Orbits of G acting on itself by conjugation.
inline ClassPartition conjugacy_classes(const GroupTable& t) {
  const std::size_t n = t.order();
  constexpr std::uint32_t kUnset = static_cast<std::uint32_t>(-1);
  ClassPartition cp;
  cp.class_of.assign(n, kUnset);
  cp.conjugator.assign(n, 0);
  std::vector<Index> queue;
  for (std::size_t r = 0; r < n; ++r) {
    if (cp.class_of[r] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(cp.representatives.size());
    cp.representatives.push_back(static_cast<Index>(r));
    queue.assign(1, static_cast<Index>(r));
    cp.class_of[r] = id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Index x = queue[head];
      for (Index g : t.generator_indices()) {
        Index y = t.conjugate(x, g);
        if (cp.class_of[y] == kUnset) {
          cp.class_of[y] = id;
          cp.conjugator[y] = t.multiply(cp.conjugator[x], g);
          queue.push_back(y);
        }
      }
    }
    cp.sizes.push_back(queue.size());
  }
  return cp;
}

/// Elements commuting with x.
inline ElementSet centralizer(const GroupTable& t, Index x) {
  ElementSet c = t.empty_set();
  for (Index g = 0; g < t.order(); ++g)
    if (t.multiply(x, g) == t.multiply(g, x)) c.insert(g);
  return c;
}

/// Whether the whole group is solvable.
inline bool group_is_solvable(const GroupTable& t) {
  return detail::solvable_generated(t, t.generator_indices(), t.order());
}

/// Caches solvability verdicts for two-generated subgroups.
class PairSolvability {
 public:
  explicit PairSolvability(const GroupTable& t) : t_(t), group_solvable_(group_is_solvable(t)) {}

  /// Solvability of <x, y>. When `closure` is given it receives the subgroup
  /// if it was enumerated (it is not, when it turned out to be all of G).
  bool solvable(Index x, Index y, std::optional<Subgroup>* closure = nullptr) {
    const Index gens[2] = {x, y};
    // A subgroup with more than |G|/2 elements is G itself.
    auto h = detail::close(t_, gens, t_.order() / 2);
    if (!h) {
      if (closure) closure->reset();
      return group_solvable_;
    }
    bool verdict;
    if (auto it = cache_.find(h->members); it != cache_.end()) {
      verdict = it->second;
    } else {
      verdict = detail::solvable_generated(t_, h->generators, h->size());
      cache_.emplace(h->members, verdict);
    }
    if (closure) *closure = std::move(h);
    return verdict;
  }

  bool group_solvable() const noexcept { return group_solvable_; }
  std::size_t cache_size() const noexcept { return cache_.size(); }

 private:
  const GroupTable& t_;
  bool group_solvable_;
  std::unordered_map<ElementSet, bool, BitsetHash> cache_;
};

/// R(G): the elements x with <x, y> solvable for every y.
inline ElementSet solvable_radical(const GroupTable& t) {
  ElementSet r = t.empty_set();
  if (group_is_solvable(t)) return t.full_set();
  ClassPartition cp = conjugacy_classes(t);
  PairSolvability pairs(t);
  std::vector<bool> rep_in(cp.count(), false);
  for (std::size_t c = 0; c < cp.count(); ++c) {
    const Index x = cp.representatives[c];
    bool all = true;
    // Checking y against class representatives is not enough (pairs are not
    // conjugated together), so scan every y, stopping at the first failure.
    for (Index y = 0; y < t.order() && all; ++y) all = pairs.solvable(x, y);
    rep_in[c] = all;
  }
  for (Index x = 0; x < t.order(); ++x)
    if (rep_in[cp.class_of[x]]) r.insert(x);
  if (!is_subgroup(t, r) || !is_normal(t, r) || !is_solvable(t, r))
    throw InternalInconsistency("computed radical is not a solvable normal subgroup");
  return r;
}

/// Permutation representation of G/N on the right cosets of N.
inline GroupTable quotient_by(const GroupTable& t, const ElementSet& n, std::size_t cap = kDefaultCap) {
  if (!is_subgroup(t, n) || !is_normal(t, n)) throw NotNormal("quotient requires a normal subgroup");
  const std::size_t size_n = n.count();
  const std::size_t cosets = t.order() / size_n;
  // Number cosets by their least element.
  std::vector<std::uint32_t> coset_of(t.order(), static_cast<std::uint32_t>(-1));
  std::vector<Index> reps;
  std::vector<Index> n_elems = n.to_vector<Index>();
  for (Index g = 0; g < t.order(); ++g) {
    if (coset_of[g] != static_cast<std::uint32_t>(-1)) continue;
    const auto id = static_cast<std::uint32_t>(reps.size());
    reps.push_back(g);
    for (Index m : n_elems) coset_of[t.multiply(m, g)] = id;
  }
  if (reps.size() != cosets) throw InternalInconsistency("coset count mismatch");
  std::vector<Permutation> gens;
  for (Index g : t.generator_indices()) {
    std::vector<Point> images(cosets);
    for (std::size_t c = 0; c < cosets; ++c) images[c] = coset_of[t.multiply(reps[c], g)];
    gens.emplace_back(std::move(images));
  }
  if (gens.empty()) gens.emplace_back(cosets);
  GroupTable q = enumerate_group(gens, cap);
  if (q.order() != cosets) throw InternalInconsistency("coset action kernel differs from N");
  return q;
}

/// Maps each element of G to the quotient element it acts as on the cosets
/// of N, given the quotient built by quotient_by.
inline std::vector<Index> quotient_map(const GroupTable& t, const ElementSet& n, const GroupTable& q) {
  std::vector<std::uint32_t> coset_of(t.order(), static_cast<std::uint32_t>(-1));
  std::vector<Index> reps;
  std::vector<Index> n_elems = n.to_vector<Index>();
  for (Index g = 0; g < t.order(); ++g) {
    if (coset_of[g] != static_cast<std::uint32_t>(-1)) continue;
    const auto id = static_cast<std::uint32_t>(reps.size());
    reps.push_back(g);
    for (Index m : n_elems) coset_of[t.multiply(m, g)] = id;
  }
  std::vector<Index> image(t.order());
  for (Index g = 0; g < t.order(); ++g) {
    std::vector<Point> images(reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c) images[c] = coset_of[t.multiply(reps[c], g)];
    auto idx = q.find(Permutation(std::move(images)));
    if (!idx) throw InternalInconsistency("coset action not found in quotient table");
    image[g] = *idx;
  }
  return image;
}

/// All subgroups of index 2: the preimages of hyperplanes of G/D, where D is
/// generated by the squares and commutators of G.
inline std::vector<ElementSet> index_two_subgroups(const GroupTable& t) {
  const auto& gens = t.generator_indices();
  std::vector<Index> seeds;
  for (Index g : gens) seeds.push_back(t.multiply(g, g));
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) seeds.push_back(t.commutator(gens[i], gens[j]));
  Subgroup d = detail::normal_closure(t, seeds, gens);
  if (d.size() == t.order()) return {};

  // Coordinates of cosets of D over GF(2), one basis vector per generator
  // that leaves the current span.
  std::vector<std::uint32_t> coset_of(t.order(), static_cast<std::uint32_t>(-1));
  std::vector<std::uint64_t> coord;  // per coset
  std::vector<Index> coset_rep;
  auto add_coset = [&](Index rep, std::uint64_t v) {
    const auto id = static_cast<std::uint32_t>(coord.size());
    coord.push_back(v);
    coset_rep.push_back(rep);
    for (Index m : d.elements) coset_of[t.multiply(m, rep)] = id;
  };
  add_coset(0, 0);
  unsigned rank = 0;
  for (Index g : gens) {
    if (coset_of[g] != static_cast<std::uint32_t>(-1)) continue;
    const std::size_t existing = coord.size();
    for (std::size_t c = 0; c < existing; ++c) add_coset(t.multiply(coset_rep[c], g), coord[c] | (1ull << rank));
    ++rank;
  }
  if (coord.size() * d.size() != t.order()) throw InternalInconsistency("G/D is not elementary abelian");

  std::vector<ElementSet> out;
  for (std::uint64_t phi = 1; phi < (1ull << rank); ++phi) {
    ElementSet h = t.empty_set();
    for (Index g = 0; g < t.order(); ++g)
      if ((std::popcount(coord[coset_of[g]] & phi) & 1) == 0) h.insert(g);
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace solvcover

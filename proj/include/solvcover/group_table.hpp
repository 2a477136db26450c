#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "solvcover/bitset.hpp"
#include "solvcover/error.hpp"
#include "solvcover/permutation.hpp"

namespace solvcover {

using Index = std::uint32_t;

/// Subset of a group's element indices. Subgroups and solvabilizers are both
/// stored this way.
using ElementSet = DynamicBitset;

inline constexpr std::size_t kDefaultCap = 20000;

/// Groups at or below this order get a full multiplication table.
inline constexpr std::size_t kDenseTableLimit = 4096;

/// A fully enumerated permutation group.
///
/// Elements are numbered in breadth-first order from the identity (index 0),
/// expanding each element by the generators in the order given. Every element
/// records the element and generator it was reached from, so products can be
/// evaluated as generator words when no dense table is kept.
class GroupTable {
 public:
  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t degree() const noexcept { return degree_; }

  const Permutation& element(Index i) const { return elements_[i]; }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  const std::vector<Index>& generator_indices() const noexcept { return generator_indices_; }

  Index inverse(Index i) const { return inverse_[i]; }
  unsigned order_of(Index i) const { return order_of_[i]; }
  bool has_dense_table() const noexcept { return !dense_.empty(); }

  std::optional<Index> find(const Permutation& p) const {
    auto it = lookup_.find(p);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }

  /// a * b, with a acting first.
  Index multiply(Index a, Index b) const {
    if (!dense_.empty()) return dense_[static_cast<std::size_t>(a) * order() + b];
    return multiply_by_word(a, b);
  }

  /// g^-1 x g.
  Index conjugate(Index x, Index g) const { return multiply(multiply(inverse_[g], x), g); }

  Index commutator(Index a, Index b) const {
    return multiply(multiply(inverse_[a], inverse_[b]), multiply(a, b));
  }

  Index power(Index x, long long k) const {
    long long n = order_of_[x];
    k %= n;
    if (k < 0) k += n;
    Index base = x, result = 0;
    auto e = static_cast<unsigned long long>(k);
    while (e) {
      if (e & 1u) result = multiply(result, base);
      base = multiply(base, base);
      e >>= 1;
    }
    return result;
  }

  ElementSet empty_set() const { return ElementSet(order()); }
  ElementSet full_set() const { return ElementSet::full(order()); }

  friend GroupTable enumerate_group(const std::vector<Permutation>& generators, std::size_t cap);

 private:
  Index multiply_by_word(Index a, Index b) const {
    // Walk b back to the identity collecting its generator word.
    thread_local std::vector<std::uint16_t> word;
    word.clear();
    for (Index e = b; e != 0; e = parent_[e]) word.push_back(via_[e]);
    for (auto it = word.rbegin(); it != word.rend(); ++it) a = right_mult_[*it][a];
    return a;
  }

  std::size_t degree_ = 0;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, Index, PermutationHash> lookup_;
  std::vector<Index> inverse_;
  std::vector<unsigned> order_of_;
  std::vector<Index> generator_indices_;
  std::vector<Index> parent_;
  std::vector<std::uint16_t> via_;
  std::vector<std::vector<Index>> right_mult_;  // [generator][element]
  std::vector<std::uint16_t> dense_;
};

/// Breadth-first closure of `generators`. Throws CapExceeded once more than
/// `cap` elements are found.
inline GroupTable enumerate_group(const std::vector<Permutation>& generators, std::size_t cap = kDefaultCap) {
  if (generators.empty()) throw EmptyGenerators("no generators supplied");
  if (cap == 0) throw BadParameter("cap must be positive");
  const std::size_t degree = generators.front().degree();
  for (const auto& g : generators)
    if (g.degree() != degree) throw BadParameter("generators do not share a degree");

  GroupTable t;
  t.degree_ = degree;
  std::vector<Permutation> gens;
  for (const auto& g : generators)
    if (!g.is_identity() && std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);

  t.elements_.push_back(Permutation(degree));
  t.lookup_.emplace(t.elements_.back(), 0);
  t.parent_.push_back(0);
  t.via_.push_back(0);
  t.right_mult_.assign(gens.size(), {});

  for (std::size_t head = 0; head < t.elements_.size(); ++head) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Permutation next = t.elements_[head] * gens[g];
      auto [it, inserted] = t.lookup_.try_emplace(std::move(next), static_cast<Index>(t.elements_.size()));
      if (inserted) {
        if (t.elements_.size() >= cap) throw CapExceeded(cap);
        t.elements_.push_back(it->first);
        t.parent_.push_back(static_cast<Index>(head));
        t.via_.push_back(static_cast<std::uint16_t>(g));
      }
      t.right_mult_[g].push_back(it->second);
    }
  }

  const std::size_t n = t.elements_.size();
  for (const auto& g : gens) t.generator_indices_.push_back(t.lookup_.at(g));

  t.inverse_.resize(n);
  t.order_of_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.inverse_[i] = t.lookup_.at(t.elements_[i].inverse());
    t.order_of_[i] = static_cast<unsigned>(t.elements_[i].order());
  }

  if (n <= kDenseTableLimit) {
    // Row a: a * e = (a * parent(e)) * gen(e), filled in BFS order.
    t.dense_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      std::uint16_t* row = &t.dense_[a * n];
      row[0] = static_cast<std::uint16_t>(a);
      for (std::size_t e = 1; e < n; ++e) row[e] = static_cast<std::uint16_t>(t.right_mult_[t.via_[e]][row[t.parent_[e]]]);
    }
  }
  return t;
}

}  // namespace solvcover

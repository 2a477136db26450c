#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "solvcover/error.hpp"
#include "solvcover/group_core.hpp"
#include "solvcover/group_table.hpp"
#include "solvcover/permutation.hpp"
#include "solvcover/solvabilizer.hpp"

namespace solvcover {

enum class Mode { All, Involutions };

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t lp_solves = 0;
  double seconds = 0;
};

/// Result of a covering computation. Infeasible stands for an infinite value.
struct CoverOutcome {
  enum class Status { Exact, Interval, Infeasible };
  Status status = Status::Infeasible;
  std::size_t lower = 0;
  std::optional<std::size_t> upper;
  std::optional<std::vector<Index>> certificate;  // element indices of the solved table
  std::vector<Permutation> elements;              // the certificate as permutations
  SolveStats stats;
  bool involutions_only = false;
  bool via_quotient = false;
  std::vector<std::string> notes;
};

struct SolveBudget {
  double time_limit_seconds = 60;
  std::uint64_t node_limit = 10'000'000;
  /// Stop as soon as a cover of at most this size is known.
  std::optional<std::size_t> target;
};

struct SolverOptions {
  bool root_symmetry = true;
  unsigned jobs = 1;
};

/// Max-coverage greedy. Ties go to the smaller element index. Returns
/// candidate positions.
inline std::vector<std::size_t> greedy_cover(const CoverInstance& inst) {
  const std::size_t u = inst.universe.size();
  DynamicBitset uncovered = DynamicBitset::full(u);
  std::vector<std::size_t> chosen;
  while (!uncovered.empty()) {
    std::size_t best = inst.candidates.size(), gain = 0;
    for (std::size_t c = 0; c < inst.candidates.size(); ++c) {
      const std::size_t g = inst.candidates[c].row.count_and(uncovered);
      if (g > gain || (g == gain && g > 0 && inst.candidates[c].element < inst.candidates[best].element)) {
        best = c;
        gain = g;
      }
    }
    if (gain == 0) {
      const std::size_t t = uncovered.first();
      throw InfeasibleUniverse("target " + std::to_string(inst.universe[t]) + " is covered by no candidate", t);
    }
    chosen.push_back(best);
    uncovered -= inst.candidates[best].row;
  }
  return chosen;
}

inline std::vector<Index> candidate_elements(const CoverInstance& inst, const std::vector<std::size_t>& chosen) {
  std::vector<Index> out;
  for (auto c : chosen) out.push_back(inst.candidates[c].element);
  std::sort(out.begin(), out.end());
  return out;
}

/// Counting bound over conjugation orbits: with x_k candidates taken from
/// candidate orbit k, orbit j of n_j targets needs sum_k a_kj x_k >= n_j,
/// where a_kj is the most targets of orbit j a member of orbit k covers.
struct ClassCountingBound {
  std::size_t value = 0;
  std::vector<unsigned> candidate_order;             // element order per candidate orbit
  std::vector<std::size_t> target_orbit_size;        // n_j
  std::vector<std::vector<std::size_t>> coverage;    // a_kj, [candidate orbit][target orbit]
  std::vector<std::size_t> solution;                 // an optimal x
  bool complete = true;                              // false when enumeration hit its cap
};

namespace detail {

class CountingProgram {
 public:
  CountingProgram(const ClassCountingBound& b, std::uint64_t node_cap) : b_(b), cap_(node_cap) {}

  /// Least s with a feasible x of total s; the search for s stops at `limit`.
  std::size_t solve(std::size_t limit, std::vector<std::size_t>& x, bool& complete) {
    const std::size_t k = b_.coverage.size();
    for (std::size_t s = 0; s <= limit; ++s) {
      std::vector<std::size_t> need = b_.target_orbit_size;
      x.assign(k, 0);
      if (feasible(0, s, need, x)) return s;
      if (nodes_ >= cap_) {
        complete = false;
        return s;
      }
    }
    return limit;
  }

 private:
  bool feasible(std::size_t k, std::size_t left, std::vector<std::size_t>& need, std::vector<std::size_t>& x) {
    if (++nodes_ >= cap_) return false;
    const std::size_t m = need.size();
    bool done = true;
    for (std::size_t j = 0; j < m; ++j)
      if (need[j] > 0) done = false;
    if (done) return true;
    if (k == b_.coverage.size() || left == 0) return false;
    for (std::size_t j = 0; j < m; ++j) {
      std::size_t best = 0;
      for (std::size_t kk = k; kk < b_.coverage.size(); ++kk) best = std::max(best, b_.coverage[kk][j]);
      if (best * left < need[j]) return false;
    }
    for (std::size_t take = left + 1; take-- > 0;) {
      std::vector<std::size_t> saved = need;
      for (std::size_t j = 0; j < m; ++j) need[j] -= std::min(need[j], b_.coverage[k][j] * take);
      x[k] = take;
      if (feasible(k + 1, left - take, need, x)) return true;
      need = std::move(saved);
      x[k] = 0;
      if (nodes_ >= cap_) return false;
    }
    return false;
  }

  const ClassCountingBound& b_;
  std::uint64_t cap_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

inline ClassCountingBound class_counting_bound(const CoverInstance& inst, std::uint64_t node_cap = 1'000'000) {
  ClassCountingBound b;
  const std::size_t orbits = inst.orbit_count(), torbits = inst.target_orbit_count();
  b.candidate_order.assign(orbits, 0);
  b.target_orbit_size.assign(torbits, 0);
  b.coverage.assign(orbits, std::vector<std::size_t>(torbits, 0));
  for (auto o : inst.target_orbit) ++b.target_orbit_size[o];
  for (const auto& c : inst.candidates) {
    b.candidate_order[c.orbit] = c.order;
    std::vector<std::size_t> cov(torbits, 0);
    c.row.for_each([&](std::size_t t) { ++cov[inst.target_orbit[t]]; });
    for (std::size_t j = 0; j < torbits; ++j) b.coverage[c.orbit][j] = std::max(b.coverage[c.orbit][j], cov[j]);
  }
  if (inst.universe.empty()) return b;
  detail::CountingProgram prog(b, node_cap);
  b.value = prog.solve(inst.universe.size(), b.solution, b.complete);
  return b;
}

/// Targets no two of which share a covering candidate; each needs its own.
inline std::size_t packing_bound(const CoverInstance& inst) {
  const std::size_t u = inst.universe.size();
  std::vector<DynamicBitset> cols(u, DynamicBitset(inst.candidates.size()));
  for (std::size_t c = 0; c < inst.candidates.size(); ++c) inst.candidates[c].row.for_each([&](std::size_t t) { cols[t].insert(c); });
  std::vector<std::size_t> order(u);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return cols[a].count() < cols[b].count(); });
  DynamicBitset used(inst.candidates.size());
  std::size_t count = 0;
  for (auto t : order)
    if (!cols[t].intersects(used)) {
      used |= cols[t];
      ++count;
    }
  return count;
}

inline std::size_t density_bound(const CoverInstance& inst) {
  std::size_t best = 0;
  for (const auto& c : inst.candidates) best = std::max(best, c.row.count());
  if (inst.universe.empty()) return 0;
  if (best == 0) return inst.universe.size();
  return (inst.universe.size() + best - 1) / best;
}

/// Largest of the packing, density and class-counting bounds.
inline std::size_t lower_bound(const CoverInstance& inst) {
  return std::max({packing_bound(inst), density_bound(inst), class_counting_bound(inst).value});
}

namespace detail {

/// A feasible point of the covering LP dual
///   max sum_t y_t  subject to  sum_{t in row(c)} y_t <= 1 for every candidate c,  y >= 0,
/// restricted to the targets in `active_targets` and candidates in
/// `active_candidates`. Any such point bounds the cover size from below.
/// Dense primal simplex from the slack basis; the result is rescaled so that
/// rounding error cannot make it infeasible.
inline std::vector<double> covering_dual(const CoverInstance& inst, const std::vector<std::size_t>& active_targets,
                                         const std::vector<std::size_t>& active_candidates) {
  const std::size_t m = active_targets.size(), k = active_candidates.size();
  std::vector<double> y(inst.universe.size(), 0.0);
  if (m == 0) return y;
  const std::size_t width = m + k + 1;  // structural, slack, right-hand side
  std::vector<double> tab(k * width, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& row = inst.candidates[active_candidates[i]].row;
    for (std::size_t j = 0; j < m; ++j)
      if (row.contains(active_targets[j])) tab[i * width + j] = 1.0;
    tab[i * width + m + i] = 1.0;
    tab[i * width + m + k] = 1.0;
  }
  std::vector<double> obj(m + k, 0.0);
  std::fill(obj.begin(), obj.begin() + static_cast<std::ptrdiff_t>(m), 1.0);
  std::vector<std::size_t> basis(k);
  std::iota(basis.begin(), basis.end(), m);

  constexpr double eps = 1e-9;
  const std::size_t max_pivots = 50 * (m + k);
  std::size_t degenerate = 0;
  for (std::size_t pivots = 0; pivots < max_pivots; ++pivots) {
    std::size_t enter = m + k;
    if (degenerate < 30) {
      double best = eps;
      for (std::size_t j = 0; j < m + k; ++j)
        if (obj[j] > best) best = obj[j], enter = j;
    } else {
      for (std::size_t j = 0; j < m + k; ++j)
        if (obj[j] > eps) {
          enter = j;
          break;
        }
    }
    if (enter == m + k) break;
    std::size_t leave = k;
    double ratio = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const double a = tab[i * width + enter];
      if (a <= eps) continue;
      const double r = tab[i * width + m + k] / a;
      if (leave == k || r < ratio - eps || (r < ratio + eps && basis[i] < basis[leave])) {
        leave = i;
        ratio = r;
      }
    }
    if (leave == k) break;  // unbounded: some target has no candidate
    degenerate = ratio < eps ? degenerate + 1 : 0;
    double* prow = &tab[leave * width];
    const double piv = prow[enter];
    for (std::size_t j = 0; j < width; ++j) prow[j] /= piv;
    for (std::size_t i = 0; i < k; ++i) {
      if (i == leave) continue;
      double* r = &tab[i * width];
      const double f = r[enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) r[j] -= f * prow[j];
    }
    const double f = obj[enter];
    for (std::size_t j = 0; j < m + k; ++j) obj[j] -= f * prow[j];
    basis[leave] = enter;
  }
  for (std::size_t i = 0; i < k; ++i)
    if (basis[i] < m) y[active_targets[basis[i]]] = std::max(0.0, tab[i * width + m + k]);
  double worst = 1.0;
  for (std::size_t c : active_candidates) {
    double s = 0;
    inst.candidates[c].row.for_each([&](std::size_t t) { s += y[t]; });
    worst = std::max(worst, s);
  }
  for (auto& v : y) v /= worst;
  return y;
}

inline std::size_t dual_value(const std::vector<double>& y, const DynamicBitset& targets) {
  double s = 0;
  targets.for_each([&](std::size_t t) { s += y[t]; });
  return static_cast<std::size_t>(std::ceil(s - 1e-7));
}

/// Branch and bound shared by all workers of one solve.
class CoverSearch {
 public:
  CoverSearch(const CoverInstance& inst, const SolveBudget& budget, std::size_t incumbent_size,
              std::vector<std::size_t> incumbent)
      : inst_(inst),
        budget_(budget),
        start_(std::chrono::steady_clock::now()),
        best_size_(incumbent_size),
        best_(std::move(incumbent)) {
    const std::size_t u = inst.universe.size();
    cols_.assign(u, DynamicBitset(inst.candidates.size()));
    for (std::size_t c = 0; c < inst.candidates.size(); ++c)
      inst.candidates[c].row.for_each([&](std::size_t t) { cols_[t].insert(c); });
  }

  /// Subtree in which `include` (if any) is chosen and the candidates outside
  /// `allowed` are excluded.
  void run_branch(std::optional<std::size_t> include, DynamicBitset allowed, const std::vector<double>& dual) {
    std::vector<std::size_t> chosen;
    DynamicBitset uncovered = DynamicBitset::full(inst_.universe.size());
    if (include) {
      chosen.push_back(*include);
      uncovered -= inst_.candidates[*include].row;
      allowed.erase(*include);
    }
    dfs(chosen, uncovered, allowed, dual);
  }

  bool aborted() const { return aborted_.load(); }
  bool target_reached() const { return budget_.target && best_size_.load() <= *budget_.target; }
  std::size_t best_size() const { return best_size_.load(); }
  std::vector<std::size_t> best() const {
    std::lock_guard lock(mutex_);
    return best_;
  }
  std::uint64_t nodes() const { return nodes_.load(); }
  std::uint64_t lp_solves() const { return lp_solves_.load(); }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  std::vector<double> dual_for(const DynamicBitset& uncovered, const DynamicBitset& allowed) {
    ++lp_solves_;
    std::vector<std::size_t> targets = uncovered.to_vector<std::size_t>(), cands;
    allowed.for_each([&](std::size_t c) {
      if (inst_.candidates[c].row.intersects(uncovered)) cands.push_back(c);
    });
    return covering_dual(inst_, targets, cands);
  }

 private:
  bool out_of_budget() {
    const auto n = ++nodes_;
    if (n >= budget_.node_limit) aborted_ = true;
    if ((n & 255) == 0 && elapsed() > budget_.time_limit_seconds) aborted_ = true;
    return aborted_.load() || target_reached();
  }

  void offer(const std::vector<std::size_t>& chosen) {
    std::lock_guard lock(mutex_);
    if (chosen.size() < best_size_.load()) {
      best_ = chosen;
      best_size_ = chosen.size();
    }
  }

  void dfs(std::vector<std::size_t>& chosen, const DynamicBitset& uncovered, DynamicBitset allowed,
           const std::vector<double>& parent_dual) {
    if (out_of_budget()) return;
    if (uncovered.empty()) {
      offer(chosen);
      return;
    }
    const std::size_t depth = chosen.size();
    if (depth + 1 >= best_size_.load()) return;

    std::size_t branch_target = 0, fewest = static_cast<std::size_t>(-1);
    uncovered.for_each([&](std::size_t t) {
      const std::size_t n = cols_[t].count_and(allowed);
      if (n < fewest) fewest = n, branch_target = t;
    });
    if (fewest == 0) return;

    std::vector<double> dual;
    const std::vector<double>* y = &parent_dual;
    if (fewest > 1 && depth + dual_value(parent_dual, uncovered) >= best_size_.load()) return;
    if (fewest > 1) {
      dual = dual_for(uncovered, allowed);
      if (depth + dual_value(dual, uncovered) >= best_size_.load()) return;
      y = &dual;
    }

    std::vector<std::size_t> options = (cols_[branch_target] & allowed).to_vector<std::size_t>();
    std::vector<std::size_t> gain(inst_.candidates.size(), 0);
    for (auto c : options) gain[c] = inst_.candidates[c].row.count_and(uncovered);
    std::stable_sort(options.begin(), options.end(), [&](auto a, auto b) { return gain[a] > gain[b]; });
    for (auto c : options) {
      chosen.push_back(c);
      allowed.erase(c);
      dfs(chosen, uncovered - inst_.candidates[c].row, allowed, *y);
      chosen.pop_back();
      if (aborted_.load() || target_reached() || depth + 1 >= best_size_.load()) return;
    }
  }

  const CoverInstance& inst_;
  const SolveBudget& budget_;
  std::chrono::steady_clock::time_point start_;
  std::vector<DynamicBitset> cols_;
  mutable std::mutex mutex_;
  std::atomic<std::size_t> best_size_;
  std::vector<std::size_t> best_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<std::uint64_t> lp_solves_{0};
  std::atomic<bool> aborted_{false};
};

}  // namespace detail

/// Minimum cover of a reduced instance by branch and bound.
///
/// Branches on the uncovered target with fewest remaining candidates and
/// prunes with the covering LP dual. With root symmetry on, the first level
/// instead picks the lowest candidate orbit used and takes its first member,
/// since conjugating a cover gives a cover of the same size.
inline CoverOutcome solve_exact(const CoverInstance& inst, const SolveBudget& budget = {}, const SolverOptions& opts = {}) {
  CoverOutcome out;
  out.involutions_only = inst.involutions_only;
  const auto start = std::chrono::steady_clock::now();
  const std::size_t floor = inst.from_nonsolvable_group ? 3 : 0;

  std::vector<std::size_t> incumbent;
  try {
    incumbent = greedy_cover(inst);
  } catch (const InfeasibleUniverse& e) {
    out.status = CoverOutcome::Status::Infeasible;
    out.notes.push_back(e.what());
    return out;
  }

  std::size_t lower = std::max(floor, lower_bound(inst));
  detail::CoverSearch search(inst, budget, incumbent.size(), incumbent);
  const DynamicBitset all_targets = DynamicBitset::full(inst.universe.size());
  const DynamicBitset all_candidates = DynamicBitset::full(inst.candidates.size());
  const std::vector<double> root_dual = search.dual_for(all_targets, all_candidates);
  lower = std::max(lower, detail::dual_value(root_dual, all_targets));

  if (lower < incumbent.size() && !search.target_reached()) {
    std::vector<std::pair<std::optional<std::size_t>, DynamicBitset>> branches;
    if (opts.root_symmetry && !inst.candidates.empty()) {
      const std::size_t orbits = inst.orbit_count();
      std::vector<std::size_t> rep(orbits, inst.candidates.size());
      for (std::size_t c = 0; c < inst.candidates.size(); ++c)
        if (rep[inst.candidates[c].orbit] == inst.candidates.size()) rep[inst.candidates[c].orbit] = c;
      std::vector<std::size_t> order(orbits);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
        return inst.candidates[rep[a]].row.count() > inst.candidates[rep[b]].row.count();
      });
      DynamicBitset allowed = all_candidates;
      for (auto o : order) {
        branches.emplace_back(rep[o], allowed);
        for (std::size_t c = 0; c < inst.candidates.size(); ++c)
          if (inst.candidates[c].orbit == o) allowed.erase(c);
      }
    } else {
      branches.emplace_back(std::nullopt, all_candidates);
    }
    const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(branches.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t b; (b = next++) < branches.size();) {
        if (search.aborted() || search.target_reached()) return;
        search.run_branch(branches[b].first, branches[b].second, root_dual);
      }
    };
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
  }

  const auto best = search.best();
  const bool finished = !search.aborted() && !search.target_reached();
  out.upper = best.size();
  out.certificate = candidate_elements(inst, best);
  out.lower = finished ? best.size() : std::min(lower, best.size());
  out.status = out.lower == *out.upper ? CoverOutcome::Status::Exact : CoverOutcome::Status::Interval;
  out.stats.nodes = search.nodes();
  out.stats.lp_solves = search.lp_solves();
  out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

namespace detail {

inline void attach_elements(const GroupTable& t, CoverOutcome& out) {
  out.elements.clear();
  if (out.certificate)
    for (Index x : *out.certificate) out.elements.push_back(t.element(x));
}

inline CoverOutcome solve_direct(const GroupTable& t, Mode mode, const SolveBudget& budget, const SolverOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  auto inc = sol_incidence(t, opts.jobs);
  CoverOutcome out;
  try {
    auto inst = reduce_instance(inc, mode == Mode::Involutions);
    out = solve_exact(inst, budget, opts);
    out.notes.insert(out.notes.begin(), inst.notes.begin(), inst.notes.end());
  } catch (const InfeasibleUniverse& e) {
    out.status = CoverOutcome::Status::Infeasible;
    out.notes.push_back(e.what());
  }
  out.involutions_only = mode == Mode::Involutions;
  attach_elements(t, out);
  out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace detail

/// alpha(G) or alpha_inv(G).
///
/// For alpha with a nontrivial solvable radical R the quotient G/R is solved
/// and the certificate lifted to least-index coset representatives, since
/// Sol_G(x) is the full preimage of Sol_{G/R}(xR). Involution covers are
/// always solved in G itself, as involutions of G/R need not lift to
/// involutions.
inline CoverOutcome solve_alpha(const GroupTable& t, Mode mode, const SolveBudget& budget = {},
                                const SolverOptions& opts = {}, bool use_quotient = true) {
  if (group_is_solvable(t)) throw GroupSolvable("the group is solvable, so the covering number is undefined");
  if (mode == Mode::All && use_quotient) {
    const ElementSet radical = solvable_radical(t);
    if (radical.count() > 1) {
      const GroupTable q = quotient_by(t, radical);
      const std::vector<Index> image = quotient_map(t, radical, q);
      CoverOutcome out = detail::solve_direct(q, mode, budget, opts);
      out.via_quotient = true;
      out.notes.push_back("solved on the quotient by the solvable radical of order " + std::to_string(radical.count()));
      if (out.certificate) {
        std::vector<Index> lifted;
        for (Index y : *out.certificate)
          for (Index g = 0; g < t.order(); ++g)
            if (image[g] == y) {
              lifted.push_back(g);
              break;
            }
        std::sort(lifted.begin(), lifted.end());
        out.certificate = lifted;
        detail::attach_elements(t, out);
      }
      return out;
    }
  }
  return detail::solve_direct(t, mode, budget, opts);
}

/// alpha or alpha_inv of a direct product from its factors, which is the
/// minimum over the nonsolvable factors. Infeasible factors are skipped in
/// the involution case. The certificate embeds the winning factor's cover at
/// its point offset in the concatenated action.
inline CoverOutcome solve_product(const std::vector<const GroupTable*>& factors, Mode mode, const SolveBudget& budget = {},
                                  const SolverOptions& opts = {}) {
  std::size_t total_degree = 0;
  for (auto* f : factors) total_degree += f->degree();
  std::optional<CoverOutcome> best;
  std::size_t offset = 0;
  bool any_nonsolvable = false;
  for (std::size_t i = 0; i < factors.size(); offset += factors[i]->degree(), ++i) {
    const GroupTable& f = *factors[i];
    if (group_is_solvable(f)) continue;
    any_nonsolvable = true;
    CoverOutcome o = solve_alpha(f, mode, budget, opts);
    if (o.status == CoverOutcome::Status::Infeasible) continue;
    for (auto& p : o.elements) p = p.shifted(offset, total_degree);
    o.certificate.reset();
    o.notes.push_back("attained on factor " + std::to_string(i + 1));
    if (!best || *o.upper < *best->upper || (*o.upper == *best->upper && o.lower > best->lower)) {
      const std::size_t lower = best ? std::min(best->lower, o.lower) : o.lower;
      best = std::move(o);
      best->lower = lower;
    } else {
      best->lower = std::min(best->lower, o.lower);
    }
  }
  if (!any_nonsolvable) throw GroupSolvable("every factor is solvable");
  if (!best) {
    CoverOutcome out;
    out.involutions_only = mode == Mode::Involutions;
    out.notes.push_back("no factor admits an involution cover");
    return out;
  }
  best->status = best->lower == *best->upper ? CoverOutcome::Status::Exact : CoverOutcome::Status::Interval;
  return *best;
}

}  // namespace solvcover

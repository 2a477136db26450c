#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "solvcover/constructions.hpp"
#include "solvcover/cover_solver.hpp"
#include "solvcover/error.hpp"
#include "solvcover/field.hpp"
#include "solvcover/group_core.hpp"
#include "solvcover/group_table.hpp"
#include "solvcover/permutation.hpp"
#include "solvcover/solvabilizer.hpp"

namespace solvcover {

/// A claimed solvabilizer covering, as read from a file.
struct Certificate {
  std::string group;  // group spec text
  Mode mode = Mode::All;
  std::vector<Permutation> elements;
  std::optional<std::size_t> claimed_size;
};

struct Verification {
  bool valid = false;
  std::size_t covered = 0;                // |union of Sol|
  std::optional<Index> first_uncovered;   // least uncovered element
  ElementSet uncovered;
  std::string reason;
};

/// Checks that the solvabilizers of `xs` cover G. Sol sets are computed
/// afresh, independently of any solver state.
inline Verification verify_elements(const GroupTable& t, const std::vector<Index>& xs, Mode mode,
                                    std::optional<std::size_t> claimed_size = std::nullopt) {
  const ElementSet radical = solvable_radical(t);
  for (Index x : xs) {
    if (x >= t.order()) throw ElementNotInGroup("element index out of range");
    if (radical.contains(x))
      throw ElementInRadical(to_cycle_string(t.element(x)) + " lies in the solvable radical");
  }
  Verification v;
  if (mode == Mode::Involutions)
    for (Index x : xs)
      if (t.order_of(x) != 2) {
        v.reason = to_cycle_string(t.element(x)) + " is not an involution";
        return v;
      }
  PairSolvability pairs(t);
  ElementSet covered = t.empty_set();
  for (Index x : xs) covered |= sol_of(t, x, pairs);
  v.covered = covered.count();
  v.uncovered = t.full_set() - covered;
  for (Index y = 0; y < t.order(); ++y)
    if (!covered.contains(y)) {
      v.first_uncovered = y;
      v.reason = "element " + to_cycle_string(t.element(y)) + " of order " + std::to_string(t.order_of(y)) +
                 " is not covered";
      break;
    }
  if (claimed_size && *claimed_size != xs.size()) {
    const std::string size_reason =
        "certificate lists " + std::to_string(xs.size()) + " elements but claims " + std::to_string(*claimed_size);
    v.reason = v.reason.empty() ? size_reason : v.reason + "; " + size_reason;
    return v;
  }
  v.valid = !v.first_uncovered;
  return v;
}

/// The uncovered element with the smallest solvabilizer, ties to the least
/// index: the hardest element for any extension of the certificate.
inline std::optional<Index> hardest_uncovered(const GroupTable& t, const Verification& v) {
  if (!v.first_uncovered) return std::nullopt;
  const ClassPartition cp = conjugacy_classes(t);
  std::vector<std::size_t> sol_size(cp.count(), 0);
  PairSolvability pairs(t);
  std::optional<Index> best;
  std::size_t best_size = 0;
  v.uncovered.for_each([&](std::size_t y) {
    const auto c = cp.class_of[y];
    if (!sol_size[c]) sol_size[c] = sol_of(t, cp.representatives[c], pairs).count();
    if (!best || sol_size[c] < best_size) {
      best = static_cast<Index>(y);
      best_size = sol_size[c];
    }
  });
  return best;
}

/// Indices of the certificate's permutations in `t`.
inline std::vector<Index> locate_elements(const GroupTable& t, const std::vector<Permutation>& elements) {
  std::vector<Index> out;
  for (const auto& p : elements) {
    if (p.degree() > t.degree())
      throw ElementNotInGroup(to_cycle_string(p) + " moves points beyond the group's degree");
    auto idx = t.find(p.degree() == t.degree() ? p : p.extended(t.degree()));
    if (!idx) throw ElementNotInGroup(to_cycle_string(p) + " is not in the group");
    out.push_back(*idx);
  }
  return out;
}

inline Verification verify_certificate(const GroupTable& t, const Certificate& cert) {
  return verify_elements(t, locate_elements(t, cert.elements), cert.mode, cert.claimed_size);
}

/// A relabeling s of the points with s^-1 c s in G for every certificate element c.
struct Alignment {
  Permutation relabel;
  std::vector<Index> elements;  // the relabeled certificate, in input order
  std::uint64_t tried = 0;      // complete relabelings examined
};

namespace detail {

inline std::vector<std::size_t> cycle_type(const Permutation& p) {
  std::vector<std::size_t> out;
  std::size_t moved = 0;
  for (const auto& c : p.cycles()) {
    out.push_back(c.size());
    moved += c.size();
  }
  std::sort(out.begin(), out.end());
  out.push_back(p.degree() - moved);
  return out;
}

class AlignmentSearch {
 public:
  AlignmentSearch(const GroupTable& t, std::vector<Permutation> elems,
                  const std::function<bool(const std::vector<Index>&)>& accept, std::uint64_t solution_limit)
      : t_(t), elems_(std::move(elems)), accept_(accept), limit_(solution_limit), n_(t.degree()) {
    for (auto& e : elems_) {
      if (e.degree() > n_) throw ElementNotInGroup(to_cycle_string(e) + " moves points beyond the group's degree");
      if (e.degree() < n_) e = e.extended(n_);
      inverses_.push_back(e.inverse());
    }
    // Points in breadth-first order over the certificate's action, so that a
    // point's image is usually forced by an earlier point.
    std::vector<bool> seen(n_, false);
    for (Point s = 0; s < n_; ++s) {
      if (seen[s]) continue;
      seen[s] = true;
      order_.push_back(s);
      parent_.push_back({n_, 0});
      for (std::size_t head = order_.size() - 1; head < order_.size(); ++head)
        for (std::size_t k = 0; k < elems_.size(); ++k) {
          const Point q = elems_[k](order_[head]);
          if (!seen[q]) {
            seen[q] = true;
            order_.push_back(q);
            parent_.push_back({order_[head], k});
          }
        }
    }
    // Orbit representatives of G for the first point.
    std::vector<Point> rep(n_);
    for (Point p = 0; p < n_; ++p) rep[p] = p;
    std::function<Point(Point)> find = [&](Point p) { return rep[p] == p ? p : rep[p] = find(rep[p]); };
    for (Index g : t.generator_indices())
      for (Point p = 0; p < n_; ++p) {
        Point a = find(p), b = find(t.element(g)(p));
        if (a != b) rep[std::max(a, b)] = std::min(a, b);
      }
    for (Point p = 0; p < n_; ++p)
      if (find(p) == p) orbit_reps_.push_back(p);
  }

  std::optional<Alignment> run() {
    std::vector<std::vector<Index>> cand(elems_.size());
    for (std::size_t k = 0; k < elems_.size(); ++k) {
      const auto type = cycle_type(elems_[k]);
      for (Index g = 0; g < t_.order(); ++g)
        if (cycle_type(t_.element(g)) == type) cand[k].push_back(g);
      if (cand[k].empty()) return std::nullopt;
    }
    sigma_.assign(n_, n_);
    used_.assign(n_, false);
    if (n_ == 0 || elems_.empty()) return std::nullopt;
    if (assign(0, cand)) return result_;
    return std::nullopt;
  }

  std::uint64_t tried() const { return tried_; }

 private:
  bool assign(std::size_t level, const std::vector<std::vector<Index>>& cand) {
    if (tried_ >= limit_) return false;
    if (level == n_) {
      ++tried_;
      std::vector<Index> mapped;
      for (const auto& c : cand) mapped.push_back(c.front());
      if (accept_ && !accept_(mapped)) return false;
      result_.relabel = Permutation(std::vector<Point>(sigma_.begin(), sigma_.end()));
      result_.elements = std::move(mapped);
      result_.tried = tried_;
      return true;
    }
    const Point v = order_[level];
    std::vector<Point> options;
    const auto [p, k] = parent_[level];
    if (p != n_) {
      for (Index g : cand[k]) options.push_back(t_.element(g)(sigma_[p]));
    } else if (level == 0) {
      options = orbit_reps_;
    } else {
      for (Point q = 0; q < n_; ++q) options.push_back(q);
    }
    std::sort(options.begin(), options.end());
    options.erase(std::unique(options.begin(), options.end()), options.end());
    for (Point img : options) {
      if (used_[img]) continue;
      sigma_[v] = img;
      used_[img] = true;
      std::vector<std::vector<Index>> next(cand.size());
      bool ok = true;
      for (std::size_t j = 0; j < elems_.size() && ok; ++j) {
        const Point fwd = elems_[j](v), back = inverses_[j](v);
        for (Index g : cand[j]) {
          const Permutation& d = t_.element(g);
          if (sigma_[fwd] != n_ && d(img) != sigma_[fwd]) continue;
          if (sigma_[back] != n_ && d(sigma_[back]) != img) continue;
          next[j].push_back(g);
        }
        ok = !next[j].empty();
      }
      if (ok && assign(level + 1, next)) return true;
      sigma_[v] = n_;
      used_[img] = false;
      if (tried_ >= limit_) return false;
    }
    return false;
  }

  const GroupTable& t_;
  std::vector<Permutation> elems_, inverses_;
  const std::function<bool(const std::vector<Index>&)>& accept_;
  std::uint64_t limit_;
  Point n_;
  std::vector<Point> order_;
  std::vector<std::pair<Point, std::size_t>> parent_;
  std::vector<Point> orbit_reps_;
  std::vector<Point> sigma_;
  std::vector<bool> used_;
  std::uint64_t tried_ = 0;
  Alignment result_;
};

}  // namespace detail

/// Searches relabelings of the points that move every certificate element
/// into G, in a fixed order, and returns the first one `accept` agrees to.
/// The first point only ranges over orbit representatives of G, since
/// relabeling further by an element of G conjugates inside G.
inline std::optional<Alignment> align_to_group(const GroupTable& t, const std::vector<Permutation>& elements,
                                               const std::function<bool(const std::vector<Index>&)>& accept = {},
                                               std::uint64_t solution_limit = 5000) {
  detail::AlignmentSearch search(t, elements, accept, solution_limit);
  return search.run();
}

/// Relabels the certificate into G and verifies it. Returns the alignment
/// that verified, or the verification of the first alignment if none did.
struct AlignedVerification {
  Verification verification;
  std::optional<Alignment> alignment;
};

inline AlignedVerification verify_with_relabeling(const GroupTable& t, const Certificate& cert,
                                                  std::uint64_t solution_limit = 5000) {
  AlignedVerification out;
  std::optional<Verification> first;
  auto accept = [&](const std::vector<Index>& xs) {
    Verification v = verify_elements(t, xs, cert.mode, cert.claimed_size);
    if (!first) first = v;
    if (v.valid) out.verification = v;
    return v.valid;
  };
  out.alignment = align_to_group(t, cert.elements, accept, solution_limit);
  if (!out.alignment) {
    if (first) {
      out.verification = *first;
      out.verification.reason += " (no relabeling verified)";
    } else {
      out.verification.reason = "no relabeling places the certificate inside the group";
    }
  }
  return out;
}

/// Applies a relabeling found by align_to_group to other permutations.
inline Permutation relabel(const Permutation& p, const Permutation& sigma) {
  const Permutation q = p.degree() < sigma.degree() ? p.extended(sigma.degree()) : p;
  return sigma.inverse() * q * sigma;
}

/// One bound implied by a theorem for some family.
struct Bound {
  enum class Kind { Lower, Upper, Exact };
  Kind kind = Kind::Lower;
  std::size_t value = 0;
  bool alpha = true;       // applies to alpha
  bool alpha_inv = false;  // applies to alpha_inv
  std::string source;
  std::string caveat;      // set when the theorem's hypotheses are not all met
};

struct BoundReport {
  enum class Verdict { Consistent, Violation };
  std::string group;
  std::vector<Bound> bounds;
  Verdict verdict = Verdict::Consistent;
  std::vector<std::string> violations;
};

namespace detail {

inline bool is_power_of_prime_exponent(std::uint32_t q, std::uint32_t base, std::uint32_t& exponent) {
  try {
    auto [p, f] = prime_power(q);
    exponent = f;
    return p == base && is_prime(f);
  } catch (const NotAPrimePower&) {
    return false;
  }
}

inline void push(BoundReport& r, Bound::Kind kind, std::size_t value, bool inv, std::string source, std::string caveat = {}) {
  r.bounds.push_back({kind, value, true, inv, std::move(source), std::move(caveat)});
}

inline void psl2_bounds(BoundReport& r, std::uint32_t q) {
  using K = Bound::Kind;
  std::uint32_t f = 0;
  if (q == 5) {
    push(r, K::Exact, 3, true, "psl2(5) is isomorphic to psl2(4), covered by q-1 = 3 involutions");
  }
  if (is_power_of_prime_exponent(q, 2, f)) {
    push(r, K::Exact, q - 1, true, "psl2(2^p), p prime: covered by q-1 involutions and no fewer");
  }
  if (is_prime(q) && q > 3) {
    const bool minimal_simple = q % 5 == 2 || q % 5 == 3;
    const std::string hyp = minimal_simple ? "" : "p is not 2 or 3 mod 5, so the minimal simple hypothesis fails";
    if (q % 4 == 1 && q > 5) push(r, K::Exact, q, true, "psl2(p), p prime, p = 1 mod 4, p > 5: alpha = p", hyp);
    if (q % 4 == 3) push(r, K::Lower, (3 * q - 1) / 2, true, "psl2(p), p prime, p = 3 mod 4: alpha >= (3p-1)/2", hyp);
  }
  if (is_power_of_prime_exponent(q, 3, f) && f % 2 == 1) {
    push(r, K::Lower, (3 * q - 1) / 2, true, "psl2(3^p), p odd prime: alpha >= (3q-1)/2");
  }
  if (q % 4 == 1) push(r, K::Upper, q, true, "psl2(q), q = 1 mod 4: covered by q involutions from gl2(q)");
}

inline std::optional<std::pair<std::size_t, std::size_t>> alpha_range(const BoundReport& r) {
  std::size_t lo = 0, hi = static_cast<std::size_t>(-1);
  for (const auto& b : r.bounds) {
    if (!b.alpha || !b.caveat.empty()) continue;
    if (b.kind != Bound::Kind::Upper) lo = std::max(lo, b.value);
    if (b.kind != Bound::Kind::Lower) hi = std::min(hi, b.value);
  }
  return std::make_pair(lo, hi);
}

}  // namespace detail

/// Every theorem bound that applies to the family of `spec`. Bounds whose
/// hypotheses are not met are still listed, with a caveat.
inline BoundReport family_bounds(const GroupSpec& spec, std::size_t cap = kDefaultCap) {
  using K = Bound::Kind;
  BoundReport r;
  r.group = spec.to_string();
  const auto q = spec.param;
  bool solvable = false;
  switch (spec.kind) {
    case GroupSpec::Kind::Psl2:
      detail::psl2_bounds(r, q);
      solvable = q < 4;
      break;
    case GroupSpec::Kind::Alternating:
      if (q == 5) detail::psl2_bounds(r, 4);
      if (q == 6) detail::psl2_bounds(r, 9);
      solvable = q < 5;
      break;
    case GroupSpec::Kind::Symmetric:
      if (q == 5) detail::push(r, K::Upper, 5, true, "pgl2(5) = symmetric(5), quotient of gl2(5) covered by 5 involutions");
      solvable = q < 5;
      break;
    case GroupSpec::Kind::Gl2:
    case GroupSpec::Kind::Pgl2:
      if (q % 2 == 1)
        detail::push(r, K::Upper, q, true, "gl2(q), q odd: covered by the q involutions g_{U,W} with U fixed");
      solvable = q < 4;
      break;
    case GroupSpec::Kind::Sl2: {
      // sl2(q) modulo its centre is psl2(q); only alpha passes to the quotient.
      BoundReport quotient;
      detail::psl2_bounds(quotient, q);
      for (auto b : quotient.bounds) {
        b.alpha_inv = false;
        b.source = "quotient psl2(q): " + b.source;
        r.bounds.push_back(std::move(b));
      }
      solvable = q < 4;
      break;
    }
    case GroupSpec::Kind::Pgammal2:
      solvable = q < 4;
      break;
    case GroupSpec::Kind::M10:
      break;
    case GroupSpec::Kind::Suzuki: {
      std::uint32_t f = 0;
      if (detail::is_power_of_prime_exponent(q, 2, f) && f % 2 == 1)
        detail::push(r, K::Lower, static_cast<std::size_t>(q) * q + 1, false, "sz(2^p), p odd prime: alpha >= q^2+1");
      break;
    }
    case GroupSpec::Kind::Dihedral:
      solvable = true;
      break;
    case GroupSpec::Kind::Product: {
      std::size_t hi = static_cast<std::size_t>(-1), lo = static_cast<std::size_t>(-1);
      bool all_known = true, any_nonsolvable = false;
      for (const auto& c : spec.children) {
        BoundReport cr = family_bounds(c, cap);
        bool child_solvable = false;
        try {
          child_solvable = group_is_solvable(build(c, cap));
        } catch (const Error&) {
          all_known = false;
          continue;
        }
        if (child_solvable) continue;
        any_nonsolvable = true;
        auto [clo, chi] = *detail::alpha_range(cr);
        lo = std::min(lo, std::max<std::size_t>(clo, 3));
        hi = std::min(hi, chi);
      }
      solvable = !any_nonsolvable && all_known;
      if (any_nonsolvable && hi != static_cast<std::size_t>(-1))
        detail::push(r, K::Upper, hi, false, "direct product: alpha is the minimum over nonsolvable factors");
      if (any_nonsolvable && all_known && lo > 3)
        detail::push(r, K::Lower, lo, false, "direct product: alpha is the minimum over nonsolvable factors");
      break;
    }
    case GroupSpec::Kind::Wreath: {
      BoundReport base = family_bounds(spec.children.front(), cap);
      auto [lo, hi] = *detail::alpha_range(base);
      if (hi != static_cast<std::size_t>(-1))
        detail::push(r, K::Upper, hi, false, "wreath product: alpha <= alpha(base)",
                     "the diagonal witness fails on psl2(4) wr 2, so the bound is unproven");
      break;
    }
    default:
      try {
        solvable = group_is_solvable(build(spec, cap));
      } catch (const Error&) {
        return r;
      }
      break;
  }
  if (!solvable) detail::push(r, K::Lower, 3, true, "nonsolvable groups: alpha > 2");
  return r;
}

namespace detail {

inline std::string outcome_text(const CoverOutcome& o) {
  switch (o.status) {
    case CoverOutcome::Status::Exact:
      return std::to_string(o.lower);
    case CoverOutcome::Status::Interval:
      return "[" + std::to_string(o.lower) + "," + std::to_string(*o.upper) + "]";
    case CoverOutcome::Status::Infeasible:
      break;
  }
  return "∞";
}

inline void check_bound(BoundReport& r, const Bound& b, const CoverOutcome& o, const char* which) {
  const bool infinite = o.status == CoverOutcome::Status::Infeasible;
  const bool lower_broken = b.kind != Bound::Kind::Upper && !infinite && b.value > *o.upper;
  const bool upper_broken = b.kind != Bound::Kind::Lower && (infinite || b.value < o.lower);
  if (!lower_broken && !upper_broken) return;
  r.verdict = BoundReport::Verdict::Violation;
  std::string msg = std::string(which) + " computed " + outcome_text(o) + " contradicts " +
                    (b.kind == Bound::Kind::Lower ? "lower bound " : b.kind == Bound::Kind::Upper ? "upper bound " : "exact value ") +
                    std::to_string(b.value) + " (" + b.source + ")";
  if (!b.caveat.empty()) msg += "; " + b.caveat;
  r.violations.push_back(std::move(msg));
}

}  // namespace detail

/// Compares computed values with the theorem bounds. A violation means a
/// genuine contradiction: a lower bound above the computed upper value or an
/// upper bound below the computed lower value.
inline void assess(BoundReport& r, const CoverOutcome* alpha, const CoverOutcome* alpha_inv) {
  r.verdict = BoundReport::Verdict::Consistent;
  r.violations.clear();
  for (const auto& b : r.bounds) {
    if (alpha && b.alpha) detail::check_bound(r, b, *alpha, "alpha");
    if (alpha_inv && b.alpha_inv) detail::check_bound(r, b, *alpha_inv, "alpha_inv");
    // alpha_inv >= alpha, so lower bounds on alpha carry over.
    if (alpha_inv && b.alpha && !b.alpha_inv && b.kind != Bound::Kind::Upper) {
      Bound lower = b;
      lower.kind = Bound::Kind::Lower;
      detail::check_bound(r, lower, *alpha_inv, "alpha_inv");
    }
  }
}

/// Whether some composition factor is isomorphic to A5, when the family
/// decides it.
inline std::optional<bool> has_a5_composition_factor(const GroupSpec& spec) {
  using K = GroupSpec::Kind;
  const auto q = spec.param;
  switch (spec.kind) {
    case K::Alternating:
    case K::Symmetric:
      return q == 5;
    case K::Dihedral:
      return false;
    case K::Psl2:
    case K::Pgl2:
    case K::Pgammal2:
    case K::Gl2:
    case K::Sl2:
      return q == 4 || q == 5;
    case K::M10:
    case K::Suzuki:
      return false;
    case K::Product:
    case K::Squished:
    case K::Wreath: {
      bool unknown = false;
      for (const auto& c : spec.children) {
        auto v = has_a5_composition_factor(c);
        if (v && *v) return true;
        if (!v) unknown = true;
      }
      if (spec.kind == K::Wreath) return std::nullopt;  // the top group's factors are not tracked
      if (unknown) return std::nullopt;
      return false;
    }
    case K::Raw:
      break;
  }
  return std::nullopt;
}

struct CrossCheckEntry {
  GroupSpec spec;
  std::optional<CoverOutcome> alpha;
  std::optional<CoverOutcome> alpha_inv;
};

struct ConjectureStatus {
  enum class Status { Supports, Refutes, Inconclusive, Inapplicable };
  std::string conjecture;
  Status status = Status::Inapplicable;
};

inline const char* status_name(ConjectureStatus::Status s) {
  switch (s) {
    case ConjectureStatus::Status::Supports:
      return "supports";
    case ConjectureStatus::Status::Refutes:
      return "refutes";
    case ConjectureStatus::Status::Inconclusive:
      return "inconclusive";
    case ConjectureStatus::Status::Inapplicable:
      break;
  }
  return "inapplicable";
}

struct CrossCheckRow {
  std::string group;
  std::string alpha;
  std::string alpha_inv;
  BoundReport bounds;
  std::vector<ConjectureStatus> conjectures;
};

namespace detail {

using CS = ConjectureStatus::Status;

/// Status of the claim "alpha equals v" given an outcome.
inline CS equals_status(const CoverOutcome& o, std::size_t v) {
  if (o.status == CoverOutcome::Status::Infeasible) return CS::Refutes;
  if (o.status == CoverOutcome::Status::Exact) return o.lower == v ? CS::Supports : CS::Refutes;
  return (o.lower <= v && v <= *o.upper) ? CS::Inconclusive : CS::Refutes;
}

}  // namespace detail

/// Per group: computed values, theorem bounds and the status of each
/// conjecture. Conjectures are only ever reported, never enforced.
inline std::vector<CrossCheckRow> cross_check(const std::vector<CrossCheckEntry>& entries) {
  using detail::CS;
  std::vector<CrossCheckRow> rows;
  for (const auto& e : entries) {
    CrossCheckRow row;
    row.group = e.spec.to_string();
    row.alpha = e.alpha ? detail::outcome_text(*e.alpha) : "-";
    row.alpha_inv = e.alpha_inv ? detail::outcome_text(*e.alpha_inv) : "-";
    row.bounds = family_bounds(e.spec);
    assess(row.bounds, e.alpha ? &*e.alpha : nullptr, e.alpha_inv ? &*e.alpha_inv : nullptr);

    // alpha_inv = alpha whenever alpha_inv is finite.
    ConjectureStatus c1{"alpha_inv equals alpha when finite", CS::Inapplicable};
    if (e.alpha && e.alpha_inv && e.alpha_inv->status != CoverOutcome::Status::Infeasible) {
      const auto& a = *e.alpha;
      const auto& b = *e.alpha_inv;
      if (a.status == CoverOutcome::Status::Exact && b.status == CoverOutcome::Status::Exact)
        c1.status = a.lower == b.lower ? CS::Supports : CS::Refutes;
      else
        c1.status = (*a.upper < b.lower || *b.upper < a.lower) ? CS::Refutes : CS::Inconclusive;
    }
    row.conjectures.push_back(c1);

    ConjectureStatus c2{"psl2(2^f) has alpha = q-1", CS::Inapplicable};
    ConjectureStatus c3{"psl2(q), q = 1 mod 4, has alpha = q", CS::Inapplicable};
    if (e.spec.kind == GroupSpec::Kind::Psl2 && e.alpha) {
      const auto q = e.spec.param;
      if (q >= 4 && (q & (q - 1)) == 0) c2.status = detail::equals_status(*e.alpha, q - 1);
      if (q % 4 == 1) c3.status = detail::equals_status(*e.alpha, q);
    }
    row.conjectures.push_back(c2);
    row.conjectures.push_back(c3);

    ConjectureStatus c4{"alpha = 3 implies an A5 composition factor", CS::Inapplicable};
    if (e.alpha && e.alpha->status != CoverOutcome::Status::Infeasible && e.alpha->lower <= 3) {
      if (e.alpha->status == CoverOutcome::Status::Exact) {
        auto f = has_a5_composition_factor(e.spec);
        c4.status = !f ? CS::Inconclusive : *f ? CS::Supports : CS::Refutes;
      } else {
        c4.status = CS::Inconclusive;
      }
    }
    row.conjectures.push_back(c4);
    rows.push_back(std::move(row));
  }
  return rows;
}

struct Gl2CoverCheck {
  std::uint32_t q = 0;
  std::size_t size = 0;
  std::optional<bool> native;     // gl2(q) checked directly; empty when over the cap
  std::optional<bool> projected;  // image in psl2(q); empty unless q = 1 mod 4
  std::vector<Index> projected_certificate;
  bool passed() const {
    return (native || projected) && native.value_or(true) && projected.value_or(true);
  }
};

/// Checks the q-element cover of gl2(q), q odd, made of the g_{U,W} with U
/// fixed. gl2(q) itself is checked when it fits under the cap; for q = 1 mod 4
/// the projected cover of psl2(q) is checked too.
inline Gl2CoverCheck verify_gl2_cover(std::uint32_t q, std::size_t cap = kDefaultCap) {
  Gl2CoverCheck out;
  out.q = q;
  const auto matrices = gl2_cover_elements(q);
  out.size = matrices.size();
  const std::uint64_t gl_order = pgl2_order(q) * (q - 1);
  if (gl_order <= cap) {
    const GroupTable gl = build(GroupSpec::gl2(q), cap);
    std::vector<Permutation> perms;
    for (const auto& m : matrices) perms.push_back(gl2_permutation(q, m));
    out.native = verify_elements(gl, locate_elements(gl, perms), Mode::Involutions, q).valid;
  }
  if (q % 4 == 1) {
    const GroupTable psl = build(GroupSpec::psl2(q), cap);
    out.projected_certificate = project_to_psl(q, matrices, psl);
    std::vector<Index> distinct = out.projected_certificate;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    out.projected = distinct.size() == q && verify_elements(psl, distinct, Mode::Involutions, q).valid;
  }
  if (!out.native && !out.projected) throw CapExceeded(cap);
  return out;
}

}  // namespace solvcover

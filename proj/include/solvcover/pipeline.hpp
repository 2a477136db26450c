#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "solvcover/constructions.hpp"
#include "solvcover/cover_solver.hpp"
#include "solvcover/error.hpp"
#include "solvcover/group_core.hpp"
#include "solvcover/group_table.hpp"
#include "solvcover/theorems.hpp"

namespace solvcover {

/// Outcome for a spec together with the order of the group it names.
struct SpecOutcome {
  std::uint64_t order = 0;
  CoverOutcome outcome;
};

namespace detail {

inline std::uint64_t spec_order(const GroupSpec& spec, std::size_t cap);

inline std::uint64_t top_order(const GroupSpec& spec, std::size_t cap) {
  const auto top = spec.top.empty() ? spec.perms : cycle_top(spec.param, spec.top);
  if (top.empty()) return 1;
  std::vector<Permutation> gens;
  for (const auto& t : top) gens.push_back(t.extended(std::max<std::size_t>(spec.param, t.degree())));
  return enumerate_group(gens, cap).order();
}

inline std::uint64_t spec_order(const GroupSpec& spec, std::size_t cap) {
  if (spec.kind == GroupSpec::Kind::Product) {
    std::uint64_t n = 1;
    for (const auto& c : spec.children) n *= spec_order(c, cap);
    return n;
  }
  if (spec.kind == GroupSpec::Kind::Wreath) {
    std::uint64_t n = top_order(spec, cap);
    const std::uint64_t base = spec_order(spec.children.front(), cap);
    for (std::uint32_t i = 0; i < spec.param; ++i) n *= base;
    return n;
  }
  return build(spec, cap).order();
}

/// The diagonal element (x, ..., x; 1) of a wreath product with n blocks.
inline Permutation diagonal(const Permutation& x, std::uint32_t n) {
  const std::size_t d = x.degree();
  std::vector<Point> images(d * n);
  for (std::uint32_t b = 0; b < n; ++b)
    for (std::size_t j = 0; j < d; ++j) images[b * d + j] = static_cast<Point>(b * d + x(static_cast<Point>(j)));
  return Permutation(std::move(images));
}

}  // namespace detail

/// Solves the covering problem for the group a spec names.
///
/// Direct products are solved factor by factor. For a wreath product H wr K
/// the base is solved and the theorem bound alpha <= alpha(H) is applied;
/// with alpha > 2 this is exact when alpha(H) = 3. Diagonal copies of the
/// base cover are the intended witness but need not cover, so within the cap
/// they are verified and replaced by a direct solve when they fail. Above the
/// cap the value rests on the theorem alone and no certificate is attached.
/// Everything else is enumerated and solved.
inline SpecOutcome solve_spec(const GroupSpec& spec, Mode mode, const SolveBudget& budget = {},
                              const SolverOptions& opts = {}, std::size_t cap = kDefaultCap) {
  SpecOutcome out;
  if (spec.kind == GroupSpec::Kind::Product) {
    std::vector<GroupTable> tables;
    for (const auto& c : spec.children) tables.push_back(build(c, cap));
    std::vector<const GroupTable*> ptrs;
    out.order = 1;
    for (const auto& t : tables) {
      ptrs.push_back(&t);
      out.order *= t.order();
    }
    out.outcome = solve_product(ptrs, mode, budget, opts);
    out.outcome.notes.insert(out.outcome.notes.begin(), "direct product solved factor by factor");
    return out;
  }
  std::vector<std::string> notes;
  if (spec.kind == GroupSpec::Kind::Wreath) {
    const GroupTable base = build(spec.children.front(), cap);
    CoverOutcome b = solve_alpha(base, mode, budget, opts);
    out.order = detail::spec_order(spec, cap);
    if (b.status != CoverOutcome::Status::Infeasible && b.upper && *b.upper == 3) {
      CoverOutcome o;
      o.involutions_only = mode == Mode::Involutions;
      o.status = CoverOutcome::Status::Exact;
      o.lower = o.upper.emplace(3);
      o.stats = b.stats;
      o.notes.push_back("wreath product: alpha <= alpha(base) = 3 and nonsolvable groups need more than 2");
      if (out.order > cap) {
        o.notes.push_back("order above the cap: value from the wreath bound, no certificate");
        out.outcome = std::move(o);
        return out;
      }
      const GroupTable t = build(spec, cap);
      std::vector<Permutation> diag;
      for (const auto& x : b.elements) diag.push_back(detail::diagonal(x, spec.param));
      if (verify_elements(t, locate_elements(t, diag), mode).valid) {
        o.elements = std::move(diag);
        o.certificate = locate_elements(t, o.elements);
        o.notes.push_back("diagonal copies of the base cover verified");
        out.outcome = std::move(o);
        return out;
      }
      notes = o.notes;
      notes.push_back("diagonal copies of the base cover do not cover the group; solved directly");
    } else if (b.status != CoverOutcome::Status::Infeasible && b.upper) {
      notes.push_back("wreath product: alpha <= alpha(base) = " + std::to_string(*b.upper) + "; solved directly");
    }
  }
  const GroupTable t = build(spec, cap);
  out.order = t.order();
  out.outcome = solve_alpha(t, mode, budget, opts);
  out.outcome.notes.insert(out.outcome.notes.begin(), notes.begin(), notes.end());
  return out;
}

}  // namespace solvcover

#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "solvcover/error.hpp"
#include "solvcover/field.hpp"
#include "solvcover/group_core.hpp"
#include "solvcover/group_table.hpp"
#include "solvcover/permutation.hpp"

namespace solvcover {

/// Description of a named group, product or raw generating set.
struct GroupSpec {
  enum class Kind {
    Symmetric,
    Alternating,
    Dihedral,
    Psl2,
    Pgl2,
    Pgammal2,
    Gl2,
    Sl2,
    M10,
    Suzuki,  // bounds only; not constructible
    Product,
    Wreath,
    Squished,
    Raw,
  };

  Kind kind = Kind::Raw;
  std::uint32_t param = 0;           // n for S/A/D, q for the linear families, block count for Wreath
  std::vector<GroupSpec> children;   // Product factors, Wreath base, Squished pair
  std::vector<Permutation> perms;    // Raw generators, or explicit Wreath top generators
  std::string top;                   // Wreath top alias ("cycle", "swap", "full"); empty when explicit

  static GroupSpec symmetric(std::uint32_t n) { return {Kind::Symmetric, n, {}, {}, {}}; }
  static GroupSpec alternating(std::uint32_t n) { return {Kind::Alternating, n, {}, {}, {}}; }
  static GroupSpec dihedral(std::uint32_t n) { return {Kind::Dihedral, n, {}, {}, {}}; }
  static GroupSpec psl2(std::uint32_t q) { return {Kind::Psl2, q, {}, {}, {}}; }
  static GroupSpec pgl2(std::uint32_t q) { return {Kind::Pgl2, q, {}, {}, {}}; }
  static GroupSpec pgammal2(std::uint32_t q) { return {Kind::Pgammal2, q, {}, {}, {}}; }
  static GroupSpec gl2(std::uint32_t q) { return {Kind::Gl2, q, {}, {}, {}}; }
  static GroupSpec sl2(std::uint32_t q) { return {Kind::Sl2, q, {}, {}, {}}; }
  static GroupSpec m10() { return {Kind::M10, 9, {}, {}, {}}; }
  static GroupSpec suzuki(std::uint32_t q) { return {Kind::Suzuki, q, {}, {}, {}}; }
  static GroupSpec product(std::vector<GroupSpec> factors) { return {Kind::Product, 0, std::move(factors), {}, {}}; }
  static GroupSpec wreath(GroupSpec base, std::uint32_t n, std::string top) {
    return {Kind::Wreath, n, {std::move(base)}, {}, std::move(top)};
  }
  static GroupSpec wreath(GroupSpec base, std::uint32_t n, std::vector<Permutation> top) {
    return {Kind::Wreath, n, {std::move(base)}, std::move(top), {}};
  }
  static GroupSpec squished(GroupSpec a, GroupSpec b) { return {Kind::Squished, 0, {std::move(a), std::move(b)}, {}, {}}; }
  static GroupSpec raw(std::vector<Permutation> gens) { return {Kind::Raw, 0, {}, std::move(gens), {}}; }

  /// Canonical one-line text, re-parseable by parse_group_spec.
  std::string to_string() const {
    auto join = [](const std::vector<GroupSpec>& v) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].to_string();
      return s;
    };
    auto perm_list = [](const std::vector<Permutation>& v) {
      std::string s = "[";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_cycle_string(v[i]);
      return s + "]";
    };
    switch (kind) {
      case Kind::Symmetric: return "symmetric(" + std::to_string(param) + ")";
      case Kind::Alternating: return "alternating(" + std::to_string(param) + ")";
      case Kind::Dihedral: return "dihedral(" + std::to_string(param) + ")";
      case Kind::Psl2: return "psl2(" + std::to_string(param) + ")";
      case Kind::Pgl2: return "pgl2(" + std::to_string(param) + ")";
      case Kind::Pgammal2: return "pgammal2(" + std::to_string(param) + ")";
      case Kind::Gl2: return "gl2(" + std::to_string(param) + ")";
      case Kind::Sl2: return "sl2(" + std::to_string(param) + ")";
      case Kind::M10: return "m10";
      case Kind::Suzuki: return "sz(" + std::to_string(param) + ")";
      case Kind::Product: return "product(" + join(children) + ")";
      case Kind::Wreath:
        return "wreath(" + children.front().to_string() + "," + std::to_string(param) + "," +
               (top.empty() ? perm_list(perms) : top) + ")";
      case Kind::Squished: return "squished(" + join(children) + ")";
      case Kind::Raw: {
        std::size_t degree = perms.empty() ? 0 : perms.front().degree();
        return "raw(" + std::to_string(degree) + ";" + perm_list(perms) + ")";
      }
    }
    return {};
  }

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

namespace detail {

/// Index of a projective point: infinity first, then affine a at 1 + a.
inline Point projective_point(const GaloisField& k, Matrix2::Element x, Matrix2::Element y) {
  if (y == 0) return 0;
  return 1 + k.div(x, y);
}

/// Möbius action of `m` on the q + 1 points of the projective line, acting on
/// column vectors.
inline Permutation projective_action(const GaloisField& k, const Matrix2& m) {
  const std::uint32_t q = k.order();
  std::vector<Point> images(q + 1);
  images[0] = projective_point(k, m.a, m.c);
  for (std::uint32_t a = 0; a < q; ++a)
    images[1 + a] = projective_point(k, k.add(k.mul(m.a, a), m.b), k.add(k.mul(m.c, a), m.d));
  return Permutation(std::move(images));
}

/// Action of `m` on the q^2 - 1 nonzero column vectors (x, y), numbered
/// x*q + y - 1.
inline Permutation vector_action(const GaloisField& k, const Matrix2& m) {
  const std::uint32_t q = k.order();
  std::vector<Point> images(q * q - 1);
  for (std::uint32_t v = 1; v < q * q; ++v) {
    const std::uint32_t x = v / q, y = v % q;
    const auto nx = k.add(k.mul(m.a, x), k.mul(m.b, y));
    const auto ny = k.add(k.mul(m.c, x), k.mul(m.d, y));
    images[v - 1] = nx * q + ny - 1;
  }
  return Permutation(std::move(images));
}

inline Permutation frobenius_action(const GaloisField& k) {
  const std::uint32_t q = k.order();
  std::vector<Point> images(q + 1);
  images[0] = 0;
  for (std::uint32_t a = 0; a < q; ++a) images[1 + a] = 1 + k.frobenius(a);
  return Permutation(std::move(images));
}

/// Elementary transvections with entries running over a GF(p)-basis of GF(q);
/// they generate SL(2, q).
inline std::vector<Matrix2> sl2_generators(const GaloisField& k) {
  std::vector<Matrix2> out;
  Matrix2::Element w = 1;
  for (std::uint32_t i = 0; i < k.degree(); ++i, w = k.mul(w, k.primitive())) {
    out.push_back({1, w, 0, 1});
    out.push_back({1, 0, w, 1});
  }
  return out;
}

inline Matrix2 gl2_extra_generator(const GaloisField& k) { return {k.primitive(), 0, 0, 1}; }

inline std::vector<Permutation> cycle_top(std::uint32_t n, const std::string& alias) {
  if (alias == "cycle") {
    std::vector<Point> c(n);
    std::iota(c.begin(), c.end(), Point{0});
    return {Permutation::from_cycles(n, {c})};
  }
  if (alias == "swap") {
    if (n != 2) throw BadParameter("swap top requires two blocks");
    return {Permutation::from_cycles(2, {{0, 1}})};
  }
  if (alias == "full" || alias == "symmetric") {
    std::vector<Point> c(n);
    std::iota(c.begin(), c.end(), Point{0});
    return {Permutation::from_cycles(n, {{0, 1}}), Permutation::from_cycles(n, {c})};
  }
  throw BadParameter("unknown wreath top '" + alias + "'");
}

inline std::vector<Permutation> subgroup_generators(const GroupTable& t, const ElementSet& h) {
  std::vector<Permutation> out;
  for (Index g : as_subgroup(t, h).generators) out.push_back(t.element(g));
  if (out.empty()) out.emplace_back(t.degree());
  return out;
}

inline ElementSet unique_index_two_subgroup(const GroupTable& t, const char* which) {
  auto subs = index_two_subgroups(t);
  if (subs.size() != 1)
    throw BadParameter(std::string("squished product needs a unique index-2 subgroup in the ") + which + " factor");
  return subs.front();
}

}  // namespace detail

inline std::vector<Permutation> spec_generators(const GroupSpec& spec, std::size_t cap = kDefaultCap);

inline GroupTable build(const GroupSpec& spec, std::size_t cap = kDefaultCap) {
  return enumerate_group(spec_generators(spec, cap), cap);
}

/// Permutation generators realizing `spec`.
inline std::vector<Permutation> spec_generators(const GroupSpec& spec, std::size_t cap) {
  using Kind = GroupSpec::Kind;
  const std::uint32_t n = spec.param;
  switch (spec.kind) {
    case Kind::Symmetric: {
      if (n == 0) throw BadParameter("symmetric(n) needs n >= 1");
      if (n == 1) return {Permutation(1)};
      std::vector<Point> c(n);
      std::iota(c.begin(), c.end(), Point{0});
      return {Permutation::from_cycles(n, {{0, 1}}), Permutation::from_cycles(n, {c})};
    }
    case Kind::Alternating: {
      if (n == 0) throw BadParameter("alternating(n) needs n >= 1");
      if (n < 3) return {Permutation(n)};
      std::vector<Permutation> out;
      for (Point k = 2; k < n; ++k) out.push_back(Permutation::from_cycles(n, {{0, 1, k}}));
      return out;
    }
    case Kind::Dihedral: {
      if (n < 3) throw BadParameter("dihedral(n) acts on n >= 3 points");
      std::vector<Point> rot(n), ref(n);
      for (Point i = 0; i < n; ++i) {
        rot[i] = (i + 1) % n;
        ref[i] = (n - i) % n;
      }
      return {Permutation(rot), Permutation(ref)};
    }
    case Kind::Psl2:
    case Kind::Pgl2:
    case Kind::Pgammal2: {
      GaloisField k(n);
      std::vector<Permutation> out;
      for (const auto& m : detail::sl2_generators(k)) out.push_back(detail::projective_action(k, m));
      if (spec.kind != Kind::Psl2) out.push_back(detail::projective_action(k, detail::gl2_extra_generator(k)));
      if (spec.kind == Kind::Pgammal2) out.push_back(detail::frobenius_action(k));
      return out;
    }
    case Kind::Gl2:
    case Kind::Sl2: {
      GaloisField k(n);
      std::vector<Permutation> out;
      for (const auto& m : detail::sl2_generators(k)) out.push_back(detail::vector_action(k, m));
      if (spec.kind == Kind::Gl2) out.push_back(detail::vector_action(k, detail::gl2_extra_generator(k)));
      return out;
    }
    case Kind::M10: {
      // The index-2 subgroup of PGammaL(2,9) whose outer coset has no involutions.
      GroupTable pgl = build(GroupSpec::pgammal2(9), cap);
      ElementSet socle = derived_subgroup(pgl, pgl.full_set());
      for (const auto& h : index_two_subgroups(pgl)) {
        bool outer_involution = false;
        h.for_each([&](std::size_t i) {
          if (!socle.contains(static_cast<Index>(i)) && pgl.order_of(static_cast<Index>(i)) == 2) outer_involution = true;
        });
        if (!outer_involution) return detail::subgroup_generators(pgl, h);
      }
      throw InternalInconsistency("no index-2 subgroup of PGammaL(2,9) matches M10");
    }
    case Kind::Suzuki:
      throw BadParameter("sz(q) is supported for bounds only and cannot be constructed");
    case Kind::Product: {
      if (spec.children.empty()) throw BadParameter("product needs factors");
      std::vector<std::vector<Permutation>> parts;
      std::size_t degree = 0;
      for (const auto& c : spec.children) {
        parts.push_back(spec_generators(c, cap));
        degree += parts.back().front().degree();
      }
      std::vector<Permutation> out;
      std::size_t offset = 0;
      for (const auto& part : parts) {
        for (const auto& g : part) out.push_back(g.shifted(offset, degree));
        offset += part.front().degree();
      }
      return out;
    }
    case Kind::Wreath: {
      if (n == 0) throw BadParameter("wreath needs at least one block");
      auto base = spec_generators(spec.children.front(), cap);
      const std::size_t d = base.front().degree();
      const std::size_t degree = d * n;
      auto top = spec.top.empty() ? spec.perms : detail::cycle_top(n, spec.top);
      std::vector<Permutation> out;
      for (std::uint32_t block = 0; block < n; ++block)
        for (const auto& g : base) out.push_back(g.shifted(block * d, degree));
      for (const auto& t : top) {
        if (t.degree() > n) throw BadParameter("top permutation moves more points than there are blocks");
        Permutation tt = t.extended(n);
        std::vector<Point> images(degree);
        for (std::uint32_t b = 0; b < n; ++b)
          for (std::size_t j = 0; j < d; ++j) images[b * d + j] = static_cast<Point>(tt(b) * d + j);
        out.emplace_back(std::move(images));
      }
      return out;
    }
    case Kind::Squished: {
      if (spec.children.size() != 2) throw BadParameter("squished takes two groups");
      GroupTable a = build(spec.children[0], cap);
      GroupTable b = build(spec.children[1], cap);
      ElementSet s = detail::unique_index_two_subgroup(a, "first");
      ElementSet t = detail::unique_index_two_subgroup(b, "second");
      const std::size_t degree = a.degree() + b.degree();
      std::vector<Permutation> out;
      for (const auto& g : detail::subgroup_generators(a, s)) out.push_back(g.extended(degree));
      for (const auto& g : detail::subgroup_generators(b, t)) out.push_back(g.shifted(a.degree(), degree));
      // One (a, b) with a outside S and b outside T completes the index-2 subgroup.
      Index a0 = 0, b0 = 0;
      while (s.contains(a0)) ++a0;
      while (t.contains(b0)) ++b0;
      Permutation diag = a.element(a0).extended(degree) * b.element(b0).shifted(a.degree(), degree);
      out.push_back(diag);
      return out;
    }
    case Kind::Raw:
      if (spec.perms.empty()) throw EmptyGenerators("raw group without generators");
      return spec.perms;
  }
  throw BadParameter("unknown group kind");
}

/// Expected orders for the linear families.
inline std::uint64_t psl2_order(std::uint64_t q) { return q * (q * q - 1) / std::gcd<std::uint64_t>(2, q - 1); }
inline std::uint64_t pgl2_order(std::uint64_t q) { return q * (q * q - 1); }
inline std::uint64_t pgammal2_order(std::uint64_t q) { return prime_power(q).second * pgl2_order(q); }

/// The q involutions g_{U,W}, U = <e1>, W = <(a, 1)>, with eigenvalue 1 on U
/// and -1 on W, ordered by a.
inline std::vector<Matrix2> gl2_cover_elements(std::uint32_t q) {
  if (q % 2 == 0) throw EvenFieldOrder("gl2 cover needs odd q");
  GaloisField k(q);
  std::vector<Matrix2> out;
  const auto minus_one = k.neg(1);
  for (std::uint32_t a = 0; a < q; ++a) {
    // P diag(1,-1) P^-1 with P = [[1, a], [0, 1]].
    out.push_back({1, k.neg(k.add(a, a)), 0, minus_one});
  }
  return out;
}

/// Images of `matrices` in the psl2(q) table, after scaling each to determinant 1.
inline std::vector<Index> project_to_psl(std::uint32_t q, const std::vector<Matrix2>& matrices, const GroupTable& psl) {
  GaloisField k(q);
  std::vector<Index> out;
  for (const auto& m : matrices) {
    const auto det = determinant(k, m);
    if (det == 0) throw BadParameter("singular matrix");
    if (!k.is_square(det)) throw DeterminantNotSquare("determinant is not a square in GF(" + std::to_string(q) + ")");
    const Matrix2 unit = scaled(k, m, k.inv(k.sqrt(det)));
    auto idx = psl.find(detail::projective_action(k, unit));
    if (!idx) throw ElementNotFound("projected matrix is not in the psl2 table");
    out.push_back(*idx);
  }
  return out;
}

/// Image of a GL(2, q) matrix in gl2(q) built by `build`.
inline Permutation gl2_permutation(std::uint32_t q, const Matrix2& m) { return detail::vector_action(GaloisField(q), m); }

}  // namespace solvcover

#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "solvcover/error.hpp"

namespace solvcover {

using Point = std::uint32_t;

/// A bijection on the points {0, ..., degree-1}.
///
/// Products are read left to right: `(p * q)(i) == q(p(i))`, i.e. `p` acts
/// first. This matches the right-action convention of the cycle notation used
/// in certificate files.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), Point{0});
  }

  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
      if (p >= images_.size() || seen[p]) throw BadParameter("images do not form a bijection");
      seen[p] = true;
    }
  }

  /// Builds a permutation from 0-based disjoint cycles.
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
    Permutation p(degree);
    std::vector<bool> used(degree, false);
    for (const auto& cycle : cycles) {
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        Point a = cycle[i];
        Point b = cycle[(i + 1) % cycle.size()];
        if (a >= degree || b >= degree) throw BadParameter("cycle point out of range");
        if (used[a]) throw BadParameter("cycles are not disjoint");
        used[a] = true;
        p.images_[a] = b;
      }
    }
    return p;
  }

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point i) const noexcept { return images_[i]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    Permutation r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<Point>(i);
    return r;
  }

  /// Fixed points appended so the result acts on `degree` points.
  Permutation extended(std::size_t degree) const {
    if (degree < images_.size()) throw BadParameter("cannot shrink a permutation");
    Permutation r = *this;
    for (std::size_t i = images_.size(); i < degree; ++i) r.images_.push_back(static_cast<Point>(i));
    return r;
  }

  /// Relabels every point by `offset`, leaving the first `offset` points fixed.
  Permutation shifted(std::size_t offset, std::size_t degree) const {
    Permutation r(degree);
    for (std::size_t i = 0; i < images_.size(); ++i)
      r.images_[i + offset] = static_cast<Point>(images_[i] + offset);
    return r;
  }

  std::vector<std::vector<Point>> cycles() const {
    std::vector<std::vector<Point>> out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == i) continue;
      std::vector<Point> cycle;
      for (Point j = static_cast<Point>(i); !seen[j]; j = images_[j]) {
        seen[j] = true;
        cycle.push_back(j);
      }
      out.push_back(std::move(cycle));
    }
    return out;
  }

  /// Least k > 0 with p^k = identity.
  std::uint64_t order() const {
    std::uint64_t result = 1;
    for (const auto& c : cycles()) result = std::lcm(result, static_cast<std::uint64_t>(c.size()));
    return result;
  }

  friend Permutation operator*(const Permutation& p, const Permutation& q) {
    if (p.degree() != q.degree()) throw BadParameter("degree mismatch in product");
    Permutation r;
    r.images_.resize(p.degree());
    for (std::size_t i = 0; i < p.degree(); ++i) r.images_[i] = q.images_[p.images_[i]];
    return r;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Point x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Cycle notation with 1-based points, e.g. "(1,5)(3,4)"; identity is "()".
inline std::string to_cycle_string(const Permutation& p) {
  auto cycles = p.cycles();
  if (cycles.empty()) return "()";
  std::string out;
  for (const auto& c : cycles) {
    out += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(c[i] + 1);
    }
    out += ')';
  }
  return out;
}

/// Parses 1-based cycle notation. Points may be separated by commas and/or
/// whitespace. The degree is the larger of `degree` and the largest point.
inline Permutation parse_cycles(std::string_view text, std::size_t degree = 0) {
  std::vector<std::vector<Point>> cycles;
  std::size_t max_point = 0;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == text.size()) throw ParseError("empty permutation text");
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in cycle notation: " + std::string(text));
    ++i;
    std::vector<Point> cycle;
    for (;;) {
      skip_ws();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i < text.size() && text[i] == ',' && !cycle.empty()) {
        ++i;
        continue;
      }
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw ParseError("malformed cycle notation: " + std::string(text));
      std::size_t value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        value = value * 10 + static_cast<std::size_t>(text[i++] - '0');
      if (value == 0) throw ParseError("points are 1-based");
      max_point = std::max(max_point, value);
      cycle.push_back(static_cast<Point>(value - 1));
    }
    if (cycle.size() > 1) cycles.push_back(std::move(cycle));
    skip_ws();
  }
  try {
    return Permutation::from_cycles(std::max(degree, max_point), cycles);
  } catch (const BadParameter& e) {
    throw ParseError(std::string(e.what()) + ": " + std::string(text));
  }
}

}  // namespace solvcover

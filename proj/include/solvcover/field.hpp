#pragma once

#include <array>
#include <cstdint>
#include <tuple>
#include <utility>
#include <string>
#include <vector>

#include "solvcover/error.hpp"

namespace solvcover {

/// Returns (p, f) with q = p^f, or throws NotAPrimePower.
inline std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) {
  if (q < 2) throw NotAPrimePower(std::to_string(q) + " is not a prime power");
  std::uint64_t p = 2;
  while (p * p <= q && q % p) ++p;
  if (q % p) p = q;
  std::uint32_t f = 0;
  while (q % p == 0) {
    q /= p;
    ++f;
  }
  if (q != 1) throw NotAPrimePower(std::to_string(q * p) + " is not a prime power");
  return {static_cast<std::uint32_t>(p), f};
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// GF(p^f) as polynomials over GF(p) modulo the lexicographically least monic
/// primitive polynomial of degree f.
///
/// An element is the integer sum c_i p^i of its coefficients, so 0 and 1 are
/// the additive and multiplicative identities and GF(p) sits inside as 0..p-1.
class GaloisField {
 public:
  using Element = std::uint32_t;
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  explicit GaloisField(std::uint32_t q) : q_(q) {
    if (q > kMaxOrder) throw BadParameter("field order above 2^16");
    std::tie(p_, f_) = prime_power(q);
    find_primitive_polynomial();
  }

  std::uint32_t order() const noexcept { return q_; }
  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return f_; }
  /// Low-order coefficients c_0..c_{f-1} of the monic modulus.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  Element primitive() const noexcept { return exp_[1 % (q_ - 1)]; }

  Element add(Element a, Element b) const {
    if (f_ == 1) return (a + b) % p_;
    Element out = 0, scale = 1;
    for (std::uint32_t i = 0; i < f_; ++i, scale *= p_) {
      out += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
    }
    return out;
  }
  Element neg(Element a) const {
    Element out = 0, scale = 1;
    for (std::uint32_t i = 0; i < f_; ++i, scale *= p_) {
      out += ((p_ - a % p_) % p_) * scale;
      a /= p_;
    }
    return out;
  }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }

  Element mul(Element a, Element b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  Element inv(Element a) const {
    if (a == 0) throw BadParameter("zero has no inverse");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t k) const {
    if (k == 0) return 1;
    if (a == 0) return 0;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * k) % (q_ - 1)];
  }
  Element frobenius(Element a) const { return pow(a, p_); }

  bool is_square(Element a) const {
    if (a == 0 || p_ == 2) return true;
    return log_[a] % 2 == 0;
  }
  /// Some b with b*b == a; a must be a square.
  Element sqrt(Element a) const {
    if (!is_square(a)) throw BadParameter("not a square");
    if (a == 0) return 0;
    if (p_ == 2) return exp_[(static_cast<std::uint64_t>(log_[a]) * (q_ / 2)) % (q_ - 1)];
    return exp_[log_[a] / 2];
  }
  std::uint32_t log(Element a) const { return log_[a]; }

 private:
  void find_primitive_polynomial() {
    // Candidate moduli x^f + c_{f-1}x^{f-1} + ... + c_0, enumerated with the
    // coefficient tuple read as a base-p number, c_0 least significant.
    const std::uint32_t n = q_ - 1;
    for (std::uint32_t code = 0; code < q_; ++code) {
      std::vector<std::uint32_t> c(f_);
      for (std::uint32_t i = 0, v = code; i < f_; ++i, v /= p_) c[i] = v % p_;
      if (c[0] == 0) continue;
      if (try_modulus(c, n)) {
        modulus_ = std::move(c);
        return;
      }
    }
    throw BadParameter("no primitive polynomial found");
  }

  bool try_modulus(const std::vector<std::uint32_t>& c, std::uint32_t n) {
    exp_.assign(n, 0);
    log_.assign(q_, 0);
    std::vector<std::uint32_t> digits(f_, 0);
    digits[0] = 1;
    std::vector<bool> seen(q_, false);
    for (std::uint32_t k = 0; k < n; ++k) {
      Element v = 0;
      for (std::uint32_t i = f_; i-- > 0;) v = v * p_ + digits[i];
      if (seen[v] || v == 0) return false;
      seen[v] = true;
      exp_[k] = v;
      log_[v] = k;
      // Multiply by x and reduce with x^f = -(c_{f-1}x^{f-1} + ... + c_0).
      std::uint32_t top = digits[f_ - 1];
      for (std::uint32_t i = f_ - 1; i > 0; --i) digits[i] = (digits[i - 1] + (p_ - c[i]) * top) % p_;
      digits[0] = ((p_ - c[0]) * top) % p_;
    }
    Element v = 0;
    for (std::uint32_t i = f_; i-- > 0;) v = v * p_ + digits[i];
    return v == 1;
  }

  std::uint32_t q_, p_ = 0, f_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<Element> exp_;
  std::vector<std::uint32_t> log_;
};

/// 2x2 matrix over one GaloisField, rows (a b) and (c d).
struct Matrix2 {
  using Element = GaloisField::Element;
  Element a = 1, b = 0, c = 0, d = 1;
  friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

inline Matrix2 multiply(const GaloisField& k, const Matrix2& m, const Matrix2& n) {
  return {k.add(k.mul(m.a, n.a), k.mul(m.b, n.c)), k.add(k.mul(m.a, n.b), k.mul(m.b, n.d)),
          k.add(k.mul(m.c, n.a), k.mul(m.d, n.c)), k.add(k.mul(m.c, n.b), k.mul(m.d, n.d))};
}

inline Matrix2::Element determinant(const GaloisField& k, const Matrix2& m) {
  return k.sub(k.mul(m.a, m.d), k.mul(m.b, m.c));
}

inline Matrix2 scaled(const GaloisField& k, const Matrix2& m, Matrix2::Element s) {
  return {k.mul(s, m.a), k.mul(s, m.b), k.mul(s, m.c), k.mul(s, m.d)};
}

}  // namespace solvcover

#pragma once

#include "zetalab/padic.hpp"

#include <utility>
#include <vector>

namespace zetalab {

/// Polynomial with exact rational coefficients, ascending degree order.
/// Trailing zeros are stripped; the zero polynomial has no coefficients.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
    normalize();
  }

  static RatPoly zero() { return RatPoly(); }
  static RatPoly one() { return RatPoly({Rat(1)}); }
  static RatPoly constant(const Rat& a) { return RatPoly({a}); }

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  const std::vector<Rat>& coeffs() const { return c_; }

  Rat coeff(long k) const {
    if (k < 0 || k >= static_cast<long>(c_.size())) return Rat(0);
    return c_[static_cast<size_t>(k)];
  }

  Rat eval(const Rat& t) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  /// P(s*t): coefficient a_k becomes a_k s^k.
  RatPoly scale_arg(const Rat& s) const {
    std::vector<Rat> out(c_.size());
    Rat sk(1);
    for (size_t k = 0; k < c_.size(); ++k) {
      out[k] = c_[k] * sk;
      sk *= s;
    }
    return RatPoly(std::move(out));
  }

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    std::vector<Rat> out(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (size_t k = 0; k < out.size(); ++k) out[k] = a.coeff(k) + b.coeff(k);
    return RatPoly(std::move(out));
  }

  friend RatPoly operator-(const RatPoly& a, const RatPoly& b) {
    std::vector<Rat> out(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (size_t k = 0; k < out.size(); ++k) out[k] = a.coeff(k) - b.coeff(k);
    return RatPoly(std::move(out));
  }

  friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return RatPoly();
    std::vector<Rat> out(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return RatPoly(std::move(out));
  }

  friend RatPoly operator*(const Rat& s, const RatPoly& a) {
    std::vector<Rat> out(a.c_);
    for (auto& x : out) x *= s;
    return RatPoly(std::move(out));
  }

  std::pair<RatPoly, RatPoly> divmod(const RatPoly& d) const {
    if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
    std::vector<Rat> rem(c_);
    long dd = d.degree();
    const Rat& lead = d.c_.back();
    long qdeg = degree() - dd;
    if (qdeg < 0) return {RatPoly(), *this};
    std::vector<Rat> quot(static_cast<size_t>(qdeg) + 1, Rat(0));
    for (long k = qdeg; k >= 0; --k) {
      Rat f = rem[static_cast<size_t>(k + dd)] / lead;
      quot[static_cast<size_t>(k)] = f;
      if (f == 0) continue;
      for (long j = 0; j <= dd; ++j)
        rem[static_cast<size_t>(k + j)] -= f * d.c_[static_cast<size_t>(j)];
    }
    return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
  }

  RatPoly div_exact(const RatPoly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
    return q;
  }

  RatPoly pow(long e) const {
    if (e < 0) throw std::invalid_argument("negative polynomial power");
    RatPoly acc = one();
    for (long i = 0; i < e; ++i) acc = acc * (*this);
    return acc;
  }

  bool operator==(const RatPoly& o) const { return c_ == o.c_; }
  bool operator!=(const RatPoly& o) const { return !(*this == o); }

  std::string str(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      if (!out.empty()) out += c_[k] > 0 ? " + " : " - ";
      else if (c_[k] < 0) out += "-";
      Rat a = abs(c_[k]);
      bool unit_coeff = (a == 1) && k > 0;
      if (!unit_coeff) out += rat_str(a);
      if (k >= 1) out += (unit_coeff ? "" : "*") + var;
      if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rat> c_;
};

/// Multiplicity of u as a reciprocal root of P, i.e. of the factor (1 - u t).
inline long reciprocal_root_multiplicity(const RatPoly& P, const Rat& u) {
  if (u == 0) throw std::invalid_argument("zero is never a reciprocal root");
  RatPoly factor({Rat(1), -u});
  RatPoly cur = P;
  long m = 0;
  Rat inv_u = Rat(1) / u;
  while (cur.degree() >= 1 && cur.eval(inv_u) == 0) {
    cur = cur.div_exact(factor);
    ++m;
  }
  return m;
}

/// det(t*I - A) by fraction-free (Bareiss) elimination over Q[t].
/// Pivots are the leading principal minors of t*I - A, which are monic char
/// polys of principal submatrices, hence never the zero polynomial.
inline RatPoly char_poly(const RatMatrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("char_poly: not square");
  const Index n = A.rows();
  if (n == 0) return RatPoly::one();
  std::vector<std::vector<RatPoly>> M(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) {
    M[static_cast<size_t>(i)].resize(static_cast<size_t>(n));
    for (Index j = 0; j < n; ++j) {
      std::vector<Rat> c = {-A(i, j)};
      if (i == j) c.push_back(Rat(1));
      M[static_cast<size_t>(i)][static_cast<size_t>(j)] = RatPoly(std::move(c));
    }
  }
  RatPoly prev = RatPoly::one();
  for (Index k = 0; k + 1 < n; ++k) {
    auto uk = static_cast<size_t>(k);
    for (Index i = k + 1; i < n; ++i) {
      auto ui = static_cast<size_t>(i);
      for (Index j = k + 1; j < n; ++j) {
        auto uj = static_cast<size_t>(j);
        RatPoly num = M[uk][uk] * M[ui][uj] - M[ui][uk] * M[uk][uj];
        M[ui][uj] = num.div_exact(prev);
      }
    }
    prev = M[uk][uk];
  }
  return M[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
}

}  // namespace zetalab

#pragma once

#include "zetalab/rational.hpp"

namespace zetalab {

inline bool is_prime_small(long m) {
  if (m < 2) return false;
  for (long d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

/// The arithmetic frame: prime p, exponent n, and q = p^n.
struct PAdicContext {
  long p = 2;
  long n = 1;
  Int q = 2;

  PAdicContext() = default;
  explicit PAdicContext(long p_, long n_ = 1) : p(p_), n(n_) {
    if (!is_prime_small(p)) throw std::invalid_argument("p must be prime");
    if (n < 1) throw std::invalid_argument("n must be a positive integer");
    mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(n));
  }

  /// q^r as an exact rational, any sign of r.
  Rat q_pow(long r) const { return rat_pow(Rat(q), r); }
};

inline long valuation_int(const Int& z, long p) {
  if (z == 0) throw std::invalid_argument("valuation of zero undefined");
  Int tmp, f(p);
  return static_cast<long>(
      mpz_remove(tmp.get_mpz_t(), z.get_mpz_t(), f.get_mpz_t()));
}

/// v_p(x) for nonzero x: the exponent with x = p^v * (unit in Z_(p)).
inline long valuation(const Rat& x, const PAdicContext& ctx) {
  if (x == 0) throw std::invalid_argument("valuation of zero undefined");
  return valuation_int(x.get_num(), ctx.p) - valuation_int(x.get_den(), ctx.p);
}

/// |x|_p = p^{-v_p(x)}, reported as the integer exponent of p.
inline long norm_exponent(const Rat& x, const PAdicContext& ctx) {
  return -valuation(x, ctx);
}

/// The unit u with x = p^{v_p(x)} * u.
inline Rat unit_part(const Rat& x, const PAdicContext& ctx) {
  return x / rat_pow(Rat(ctx.p), valuation(x, ctx));
}

/// True for 0 and rationals whose (canonical) denominator is coprime to p.
inline bool p_integral(const Rat& x, const PAdicContext& ctx) {
  if (x == 0) return true;
  return !mpz_divisible_ui_p(x.get_den_mpz_t(),
                             static_cast<unsigned long>(ctx.p));
}

template <typename Derived>
bool p_integral(const Eigen::MatrixBase<Derived>& m, const PAdicContext& ctx) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!p_integral(m(i, j), ctx)) return false;
  return true;
}

template <typename Derived>
void require_p_integral(const Eigen::MatrixBase<Derived>& m,
                        const PAdicContext& ctx) {
  if (!p_integral(m, ctx))
    throw std::invalid_argument("matrix entry not p-integral");
}

}  // namespace zetalab

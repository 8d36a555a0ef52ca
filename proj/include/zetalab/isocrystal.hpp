#pragma once

#include "zetalab/newton.hpp"
#include "zetalab/smith.hpp"

#include <numeric>

namespace zetalab {

/// An isocrystal over F_q seen through det(1 - t F^n) on the underlying
/// K-vector space; the semilinear F itself is never materialized.
struct IsocrystalCharPoly {
  PAdicContext ctx;
  RatPoly P;  // P(0) = 1, deg P = dimension
};

inline IsocrystalCharPoly make_isocrystal(const PAdicContext& ctx, RatPoly P) {
  if (P.is_zero() || P.coeff(0) != 1)
    throw std::invalid_argument("not a zeta factor");
  return IsocrystalCharPoly{ctx, std::move(P)};
}

struct SlopeDatum {
  Rat slope;
  long multiplicity = 0;

  bool operator==(const SlopeDatum& o) const {
    return slope == o.slope && multiplicity == o.multiplicity;
  }
};

/// Matrix of Frobenius on a lattice with p*M contained in F(M); n = 1 only.
struct DieudonneMatrix {
  PAdicContext ctx;
  RatMatrix A;
};

inline void require_lattice_matrix(const RatMatrix& A, const PAdicContext& ctx) {
  if (A.rows() != A.cols()) throw std::invalid_argument("matrix must be square");
  require_p_integral(A, ctx);
  PLocalSNF s = p_local_snf(A, ctx);
  if (s.rank != A.rows()) throw std::invalid_argument("det F = 0");
  for (long d : s.diag_valuations)
    if (d > 1)
      throw std::invalid_argument("p * F^{-1} not p-integral");
}

inline DieudonneMatrix make_dieudonne_matrix(const PAdicContext& ctx,
                                             RatMatrix A) {
  if (ctx.n != 1)
    throw std::invalid_argument("Dieudonne lattices require q = p");
  require_lattice_matrix(A, ctx);
  return DieudonneMatrix{ctx, std::move(A)};
}

/// Characteristic polynomial 1 - p^s t^r of the simple isocrystal E_{s/r}.
inline IsocrystalCharPoly simple_charpoly(long s, long r,
                                          const PAdicContext& ctx) {
  if (ctx.n != 1)
    throw std::invalid_argument("simple_charpoly requires q = p");
  if (r <= 0 || std::gcd(std::abs(s), r) != 1)
    throw std::invalid_argument("slope s/r must be in lowest terms, r > 0");
  std::vector<Rat> c(static_cast<size_t>(r) + 1, Rat(0));
  c[0] = 1;
  c[static_cast<size_t>(r)] = -rat_pow(Rat(ctx.p), s);
  return IsocrystalCharPoly{ctx, RatPoly(std::move(c))};
}

/// Newton slopes of P divided by n, aggregated with multiplicities.
inline std::vector<SlopeDatum> slope_decomposition(
    const IsocrystalCharPoly& ic) {
  NewtonPolygonResult np = newton_slopes(ic.P, ic.ctx);
  std::vector<SlopeDatum> out;
  for (const Rat& v : np.slopes) {
    Rat s = v / ic.ctx.n;
    if (!out.empty() && out.back().slope == s)
      ++out.back().multiplicity;
    else
      out.push_back(SlopeDatum{s, 1});
  }
  return out;
}

/// Breuil-Kisin twist: P(t) -> P(q^{-i} t); every slope drops by i.
inline IsocrystalCharPoly bk_twist(const IsocrystalCharPoly& ic, long i) {
  return IsocrystalCharPoly{ic.ctx, ic.P.scale_arg(ic.ctx.q_pow(-i))};
}

inline bool is_effective(const IsocrystalCharPoly& ic) {
  for (const SlopeDatum& s : slope_decomposition(ic))
    if (s.slope < 0) return false;
  return true;
}

/// Matrix of F on the lattice of E_{s/r} from the standard span
/// {e_1/p^{s-1}, e_2/p^{s-2}, ..., e_s, ..., e_r} (standard lattice for
/// s <= 1). Column convention: column j holds F(f_j) in the f-basis.
inline DieudonneMatrix dm_lattice(long s, long r, const PAdicContext& ctx) {
  if (ctx.n != 1) throw std::invalid_argument("dm_lattice requires q = p");
  if (r <= 0 || s < 0 || s > r)
    throw std::invalid_argument("dm_lattice needs 0 <= s <= r, r > 0");
  if (std::gcd(s, r) != 1)
    throw std::invalid_argument("slope s/r must be in lowest terms");
  RatMatrix A = RatMatrix::Zero(r, r);
  const Rat p(ctx.p);
  if (r == 1) {
    A(0, 0) = s == 0 ? Rat(1) : p;
  } else {
    // F(f_1) = p^{min(s,1)} f_r; F(f_j) = p^{[j <= s]} f_{j-1} for j >= 2
    A(r - 1, 0) = s >= 1 ? p : Rat(1);
    for (long j = 2; j <= r; ++j)
      A(j - 2, j - 1) = j <= s ? p : Rat(1);
  }
  return make_dieudonne_matrix(ctx, std::move(A));
}

/// det(1 - t A) for a linear Frobenius matrix (n = 1), a zeta factor.
inline RatPoly frobenius_factor(const RatMatrix& A) {
  RatPoly chi = char_poly(A);  // det(tI - A), monic of degree r
  long r = chi.degree();
  // det(1 - tA) = t^r * chi(1/t) with the sign fixed by monicity
  std::vector<Rat> c(static_cast<size_t>(r) + 1);
  for (long k = 0; k <= r; ++k) c[static_cast<size_t>(k)] = chi.coeff(r - k);
  RatPoly out(std::move(c));
  if (out.coeff(0) != 1) throw std::logic_error("frobenius factor not monic");
  return out;
}

}  // namespace zetalab

#pragma once

#include "zetalab/module.hpp"
#include "zetalab/polynomial.hpp"

#include <optional>

namespace zetalab {

/// A finitely presented Z_(p)-module with an endomorphism.
struct EndoModule {
  PresentedModule module;
  RatMatrix theta;
};

inline EndoModule make_endo(PresentedModule m, RatMatrix theta,
                            const PAdicContext& ctx) {
  ModuleMap f = endomorphism(m, theta, ctx);
  return EndoModule{std::move(f.source), std::move(f.matrix)};
}

inline EndoModule endo_on_free(const RatMatrix& theta,
                               const PAdicContext& ctx) {
  if (theta.rows() != theta.cols())
    throw std::invalid_argument("endomorphism matrix must be square");
  return make_endo(PresentedModule::free_module(theta.rows()), theta, ctx);
}

inline EndoModule endo_on(const FpModule& m, const RatMatrix& theta,
                          const PAdicContext& ctx) {
  return make_endo(presentation_of(m, ctx), theta, ctx);
}

/// Kernel and cokernel of theta with the connecting map between them,
/// the composite M^theta -> M -> M_theta.
struct BocksteinData {
  FpModule kernel;    // degree 0
  FpModule cokernel;  // degree 1
  ModuleMap connecting;
};

inline BocksteinData bockstein_complex(const EndoModule& em,
                                       const PAdicContext& ctx) {
  ModuleMap f = endomorphism(em.module, em.theta, ctx);
  KernelData K = kernel_with_inclusion(f, ctx);
  PresentedModule Q = cokernel_presented(f);
  ModuleMap connecting = make_module_map(K.module, Q, K.inclusion, ctx);
  return BocksteinData{canonical_form(K.module, ctx), canonical_form(Q, ctx),
                       std::move(connecting)};
}

/// length ker - length coker of the connecting map, when both are finite;
/// non-existence is a value, not an error.
inline std::optional<long> bockstein_char(const EndoModule& em,
                                          const PAdicContext& ctx) {
  BocksteinData b = bockstein_complex(em, ctx);
  FpModule k = kernel(b.connecting, ctx);
  FpModule c = cokernel(b.connecting, ctx);
  if (!k.is_finite() || !c.is_finite()) return std::nullopt;
  return k.length() - c.length();
}

/// Split form of an EndoModule: generators reduced to torsion + free
/// summands, with theta transported to the split coordinates. In these
/// coordinates the (free rows, torsion columns) block vanishes identically,
/// so theta_free below is the action on the free quotient.
struct SplitEndo {
  std::vector<long> torsion;  // exponent per torsion coordinate
  Index free_rank = 0;
  RatMatrix theta;  // (torsion + free) square, torsion coordinates first
};

inline SplitEndo split_endo(const EndoModule& em, const PAdicContext& ctx) {
  PLocalSNF s = p_local_snf(em.module.rels, ctx);
  RatMatrix t = s.Uinv * em.theta * s.U;
  std::vector<Index> keep;
  std::vector<long> tors;
  for (Index i = 0; i < s.rank; ++i) {
    long d = s.diag_valuations[static_cast<size_t>(i)];
    if (d > 0) {
      keep.push_back(i);
      tors.push_back(d);
    }
    // d == 0 kills the generator entirely
  }
  Index nt = static_cast<Index>(keep.size());
  Index nf = em.module.gens - s.rank;
  for (Index i = s.rank; i < em.module.gens; ++i) keep.push_back(i);
  RatMatrix theta(nt + nf, nt + nf);
  for (Index i = 0; i < nt + nf; ++i)
    for (Index j = 0; j < nt + nf; ++j)
      theta(i, j) = t(keep[static_cast<size_t>(i)], keep[static_cast<size_t>(j)]);
  return SplitEndo{std::move(tors), nf, std::move(theta)};
}

inline RatMatrix theta_free(const SplitEndo& se) {
  return se.theta.bottomRightCorner(se.free_rank, se.free_rank);
}

inline RatMatrix matrix_power(const RatMatrix& a, long k) {
  RatMatrix acc = RatMatrix::Identity(a.rows(), a.cols());
  for (long i = 0; i < k; ++i) acc = acc * a;
  return acc;
}

/// Smallest k >= 1 with rank ker(theta_Q^k) = rank ker(theta_Q^{k+1}),
/// theta_Q the action on the free quotient over Q. The kernel filtration
/// stabilizes within the free rank.
inline long stabilization_index(const EndoModule& em, const PAdicContext& ctx) {
  SplitEndo se = split_endo(em, ctx);
  RatMatrix f = theta_free(se);
  if (f.rows() == 0) return 1;
  long prev = rational_rank(f, ctx);
  RatMatrix power = f;
  for (long k = 1; k <= f.rows() + 1; ++k) {
    power = power * f;
    long next = rational_rank(power, ctx);
    if (next == prev) return k;
    prev = next;
  }
  throw std::logic_error("kernel filtration failed to stabilize");
}

inline long stable_bockstein_char(const EndoModule& em,
                                  const PAdicContext& ctx) {
  long k = stabilization_index(em, ctx);
  EndoModule powered{em.module, matrix_power(em.theta, k)};
  std::optional<long> chi = bockstein_char(powered, ctx);
  if (!chi) throw std::logic_error("characteristic undefined at stable power");
  if (*chi % k != 0) throw std::logic_error("stable characteristic not divisible");
  return *chi / k;
}

/// -v_p of the product of the nonzero eigenvalues of theta on the free
/// quotient, read off the trailing nonzero coefficient of the characteristic
/// polynomial; 0 when there are none.
inline long uk_valuation(const EndoModule& em, const PAdicContext& ctx) {
  SplitEndo se = split_endo(em, ctx);
  RatPoly chi = char_poly(theta_free(se));
  for (long k = 0; k <= chi.degree(); ++k) {
    Rat c = chi.coeff(k);
    if (c != 0) return -valuation(c, ctx);
  }
  throw std::logic_error("zero characteristic polynomial");
}

/// Bounded complex of FpModules with differentials and a commuting
/// endomorphism, all in the coordinates of presentation_of(modules[i]).
struct EndoComplex {
  long first_degree = 0;
  std::vector<FpModule> modules;
  std::vector<RatMatrix> differentials;  // modules.size()-1 maps, i -> i+1
  std::vector<RatMatrix> theta;          // one per degree
};

inline EndoComplex make_endo_complex(long first_degree,
                                     std::vector<FpModule> modules,
                                     std::vector<RatMatrix> differentials,
                                     std::vector<RatMatrix> theta,
                                     const PAdicContext& ctx) {
  if (modules.empty()) throw std::invalid_argument("empty complex");
  if (differentials.size() + 1 != modules.size() ||
      theta.size() != modules.size())
    throw std::invalid_argument("complex shape mismatch");
  std::vector<PresentedModule> pres;
  pres.reserve(modules.size());
  for (const auto& m : modules) pres.push_back(presentation_of(m, ctx));
  std::vector<ModuleMap> d;
  for (size_t i = 0; i + 1 < modules.size(); ++i)
    d.push_back(make_module_map(pres[i], pres[i + 1], differentials[i], ctx));
  for (size_t i = 0; i < modules.size(); ++i)
    endomorphism(pres[i], theta[i], ctx);
  for (size_t i = 0; i + 2 < modules.size(); ++i)
    if (!columns_in_span(pres[i + 2].rels, d[i + 1].matrix * d[i].matrix, ctx))
      throw std::invalid_argument("d o d != 0");
  for (size_t i = 0; i + 1 < modules.size(); ++i) {
    RatMatrix comm = theta[i + 1] * d[i].matrix - d[i].matrix * theta[i];
    if (!columns_in_span(pres[i + 1].rels, comm, ctx))
      throw std::invalid_argument("theta does not commute with d");
  }
  return EndoComplex{first_degree, std::move(modules), std::move(differentials),
                     std::move(theta)};
}

inline EndoComplex complex_of(const EndoModule& em, long degree,
                              const PAdicContext& ctx) {
  FpModule m = canonical_form(em.module, ctx);
  // transport theta to the canonical presentation
  SplitEndo se = split_endo(em, ctx);
  Index nt = static_cast<Index>(se.torsion.size());
  Index g = nt + se.free_rank;
  RatMatrix t(g, g);
  // presentation_of lists torsion ascending; split_endo produces diag
  // valuations ascending as well, so coordinates already agree.
  t = se.theta;
  return make_endo_complex(degree, {m}, {}, {t}, ctx);
}

/// Cohomology H^i with the induced endomorphism, lowest degree first.
inline std::vector<EndoModule> complex_cohomology(const EndoComplex& cx,
                                                  const PAdicContext& ctx) {
  const size_t n = cx.modules.size();
  std::vector<PresentedModule> pres;
  pres.reserve(n);
  for (const auto& m : cx.modules) pres.push_back(presentation_of(m, ctx));

  std::vector<EndoModule> out;
  for (size_t i = 0; i < n; ++i) {
    // L = ker(d_i) as a submodule of the generator lattice
    RatMatrix B;
    if (i + 1 < n) {
      ModuleMap di = make_module_map(pres[i], pres[i + 1],
                                     cx.differentials[i], ctx);
      B = kernel_with_inclusion(di, ctx).inclusion;
    } else {
      B = RatMatrix::Identity(pres[i].gens, pres[i].gens);
    }
    // relations: incoming image + presentation relations, in B-coordinates
    RatMatrix incoming =
        i > 0 ? hcat(cx.differentials[i - 1], pres[i].rels) : pres[i].rels;
    RatMatrix C = solve_columns(B, incoming, ctx);
    RatMatrix Theta = solve_columns(B, cx.theta[i] * B, ctx);
    out.push_back(make_endo(PresentedModule(B.cols(), C), Theta, ctx));
  }
  return out;
}

/// Alternating sum of the degreewise characteristics; defined iff every
/// degreewise characteristic is.
inline std::optional<long> bockstein_char_complex(const EndoComplex& cx,
                                                  const PAdicContext& ctx) {
  auto H = complex_cohomology(cx, ctx);
  long total = 0;
  for (size_t i = 0; i < H.size(); ++i) {
    std::optional<long> chi = bockstein_char(H[i], ctx);
    if (!chi) return std::nullopt;
    long deg = cx.first_degree + static_cast<long>(i);
    total += (deg % 2 == 0 ? *chi : -*chi);
  }
  return total;
}

inline long stable_bockstein_char(const EndoComplex& cx,
                                  const PAdicContext& ctx) {
  auto H = complex_cohomology(cx, ctx);
  long k = 1;
  for (const auto& h : H) k = std::max(k, stabilization_index(h, ctx));
  long total = 0;
  for (size_t i = 0; i < H.size(); ++i) {
    EndoModule powered{H[i].module, matrix_power(H[i].theta, k)};
    std::optional<long> chi = bockstein_char(powered, ctx);
    if (!chi) throw std::logic_error("characteristic undefined at stable power");
    long deg = cx.first_degree + static_cast<long>(i);
    total += (deg % 2 == 0 ? *chi : -*chi);
  }
  if (total % k != 0)
    throw std::logic_error("stable characteristic not divisible");
  return total / k;
}

}  // namespace zetalab

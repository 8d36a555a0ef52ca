#pragma once

#include "zetalab/smith.hpp"

#include <algorithm>
#include <numeric>

namespace zetalab {

/// Canonical form Z_p^free_rank (+) sum of Z_p/p^e, exponents ascending.
struct FpModule {
  long free_rank = 0;
  std::vector<long> torsion;

  FpModule() = default;
  FpModule(long free, std::vector<long> tors)
      : free_rank(free), torsion(std::move(tors)) {
    if (free_rank < 0) throw std::invalid_argument("negative free rank");
    for (long e : torsion)
      if (e <= 0) throw std::invalid_argument("torsion exponent must be > 0");
    std::sort(torsion.begin(), torsion.end());
  }

  static FpModule zero() { return {}; }
  static FpModule free_module(long rank) { return FpModule(rank, {}); }

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool is_finite() const { return free_rank == 0; }

  long length() const {
    if (free_rank > 0) throw std::invalid_argument("infinite length");
    return std::accumulate(torsion.begin(), torsion.end(), 0L);
  }

  bool operator==(const FpModule& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  bool operator!=(const FpModule& o) const { return !(*this == o); }

  std::string str() const {
    std::string s;
    if (free_rank > 0) s = "Zp^" + std::to_string(free_rank);
    for (long e : torsion) {
      if (!s.empty()) s += " + ";
      s += "Z/p^" + std::to_string(e);
    }
    return s.empty() ? "0" : s;
  }
};

inline long length(const FpModule& m) { return m.length(); }

/// Module presented as Z_(p)^gens / (column span of rels).
struct PresentedModule {
  Index gens = 0;
  RatMatrix rels;  // gens x (number of relations)

  PresentedModule() : rels(RatMatrix::Zero(0, 0)) {}
  PresentedModule(Index g, RatMatrix r) : gens(g), rels(std::move(r)) {
    if (rels.rows() != gens)
      throw std::invalid_argument("presentation: relation rows != gens");
  }

  static PresentedModule free_module(Index g) {
    return PresentedModule(g, RatMatrix::Zero(g, 0));
  }
};

/// Standard presentation: torsion generators first, then free ones.
inline PresentedModule presentation_of(const FpModule& m,
                                       const PAdicContext& ctx) {
  Index g = m.free_rank + static_cast<Index>(m.torsion.size());
  RatMatrix rels = RatMatrix::Zero(g, static_cast<Index>(m.torsion.size()));
  for (size_t i = 0; i < m.torsion.size(); ++i)
    rels(static_cast<Index>(i), static_cast<Index>(i)) =
        rat_pow(Rat(ctx.p), m.torsion[i]);
  return PresentedModule(g, rels);
}

inline FpModule canonical_form(const PresentedModule& m,
                               const PAdicContext& ctx) {
  if (m.gens == 0) return FpModule::zero();
  PLocalSNF s = p_local_snf(m.rels, ctx);
  std::vector<long> tors;
  for (long d : s.diag_valuations)
    if (d > 0) tors.push_back(d);
  return FpModule(m.gens - s.rank, tors);
}

/// A map of presented modules: matrix columns give the images of the source
/// generators in target-generator coordinates. Must carry relations into the
/// target's relation span.
struct ModuleMap {
  PresentedModule source, target;
  RatMatrix matrix;  // target.gens x source.gens
};

inline ModuleMap make_module_map(PresentedModule source, PresentedModule target,
                                 RatMatrix matrix, const PAdicContext& ctx) {
  if (matrix.rows() != target.gens || matrix.cols() != source.gens)
    throw std::invalid_argument("module map: shape mismatch");
  require_p_integral(matrix, ctx);
  require_p_integral(source.rels, ctx);
  require_p_integral(target.rels, ctx);
  if (!columns_in_span(target.rels, matrix * source.rels, ctx))
    throw std::invalid_argument("module map does not preserve relations");
  return ModuleMap{std::move(source), std::move(target), std::move(matrix)};
}

inline ModuleMap endomorphism(const PresentedModule& m, RatMatrix matrix,
                              const PAdicContext& ctx) {
  return make_module_map(m, m, std::move(matrix), ctx);
}

/// True when every generator image lies in the target's relation span.
inline bool is_zero_map(const ModuleMap& f, const PAdicContext& ctx) {
  return columns_in_span(f.target.rels, f.matrix, ctx);
}

struct KernelData {
  PresentedModule module;
  RatMatrix inclusion;  // source.gens x module.gens
};

/// Kernel of the induced map on quotients, presented on a basis of
/// L = {x : A x in span(target.rels)}, with relations from source.rels.
inline KernelData kernel_with_inclusion(const ModuleMap& f,
                                        const PAdicContext& ctx) {
  const Index gs = f.source.gens;
  RatMatrix cat = hcat(f.matrix, f.target.rels);
  RatMatrix K = kernel_basis(cat, ctx);
  RatMatrix G = K.topRows(gs);
  RatMatrix B = span_basis(G, ctx);
  RatMatrix C = solve_columns(B, f.source.rels, ctx);
  return KernelData{PresentedModule(B.cols(), C), B};
}

inline PresentedModule cokernel_presented(const ModuleMap& f) {
  return PresentedModule(f.target.gens, hcat(f.matrix, f.target.rels));
}

inline FpModule kernel(const ModuleMap& f, const PAdicContext& ctx) {
  return canonical_form(kernel_with_inclusion(f, ctx).module, ctx);
}

inline FpModule cokernel(const ModuleMap& f, const PAdicContext& ctx) {
  return canonical_form(cokernel_presented(f), ctx);
}

}  // namespace zetalab

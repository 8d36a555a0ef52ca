#pragma once

#include "zetalab/bockstein.hpp"
#include "zetalab/isocrystal.hpp"

#include <map>
#include <optional>

namespace zetalab {

/// Finitely supported table (i,j) -> h^{i,j} >= 0.
struct HodgeTable {
  std::map<std::pair<long, long>, long> h;

  void add(long i, long j, long value) {
    if (value < 0) throw std::invalid_argument("negative Hodge number");
    if (value == 0) return;
    auto key = std::make_pair(i, j);
    h[key] += value;
    if (h[key] == 0) h.erase(key);
  }

  long get(long i, long j) const {
    auto it = h.find({i, j});
    return it == h.end() ? 0 : it->second;
  }

  bool empty() const { return h.empty(); }

  /// Total dimension sitting in cohomological degree d = i + j.
  long dimension_in_degree(long d) const {
    long s = 0;
    for (const auto& [key, v] : h)
      if (key.first + key.second == d) s += v;
    return s;
  }

  /// Entries move (i,j) -> (i, j+k) under a shift by k.
  HodgeTable shifted(long k) const {
    HodgeTable out;
    for (const auto& [key, v] : h) out.add(key.first, key.second + k, v);
    return out;
  }

  /// Entries move (i,j) -> (i-t, j+t) under a Breuil-Kisin twist by t.
  HodgeTable twisted(long t) const {
    HodgeTable out;
    for (const auto& [key, v] : h) out.add(key.first - t, key.second + t, v);
    return out;
  }

  HodgeTable merged(const HodgeTable& o) const {
    HodgeTable out = *this;
    for (const auto& [key, v] : o.h) out.add(key.first, key.second, v);
    return out;
  }

  bool operator==(const HodgeTable& o) const { return h == o.h; }
};

/// chi(M,r) = sum over i <= r of (-1)^{i+j} (r-i) h^{i,j}.
inline long weighted_hodge_euler(const HodgeTable& t, long r) {
  long s = 0;
  for (const auto& [key, v] : t.h) {
    auto [i, j] = key;
    if (i > r) continue;
    long term = (r - i) * v;
    s += ((i + j) % 2 == 0) ? term : -term;
  }
  return s;
}

/// Hodge table of the gauge of a p-divisible group:
/// h^{0,0} = dim G^dual, h^{1,-1} = dim G.
inline HodgeTable hodge_from_pdiv(long dim_g, long dim_g_dual) {
  if (dim_g < 0 || dim_g_dual < 0)
    throw std::invalid_argument("negative dimension");
  HodgeTable t;
  t.add(0, 0, dim_g_dual);
  t.add(1, -1, dim_g);
  return t;
}

/// Weight-{0,1} vector-bundle gauge in the p-divisible normal form: an
/// explicit splitting M^u = T (+) W with Fil^r = p^r T (+) p^{r-1} W and
/// Phi(x,y) = F(x) + F(y)/p well defined (W-columns of F divisible by p).
struct DieudonneGauge {
  PAdicContext ctx;  // n = 1
  long t_rank = 0;
  long w_rank = 0;
  RatMatrix F;
  long degree = 0;  // cohomological placement
};

inline DieudonneGauge make_dieudonne_gauge(const PAdicContext& ctx, long t_rank,
                                           long w_rank, RatMatrix F,
                                           long degree = 0) {
  if (ctx.n != 1)
    throw std::invalid_argument("Dieudonne gauges require q = p");
  if (t_rank < 0 || w_rank < 0) throw std::invalid_argument("negative rank");
  if (F.rows() != t_rank + w_rank || F.cols() != t_rank + w_rank)
    throw std::invalid_argument("F must be (T+W)-square");
  require_lattice_matrix(F, ctx);
  for (Index j = t_rank; j < F.cols(); ++j)
    for (Index i = 0; i < F.rows(); ++i)
      if (F(i, j) != 0 && valuation(F(i, j), ctx) < 1)
        throw std::invalid_argument("W-column of F not divisible by p");
  return DieudonneGauge{ctx, t_rank, w_rank, std::move(F), degree};
}

/// Same shape reduced mod p^m; every constituent is killed by p^m.
struct TorsionGauge {
  PAdicContext ctx;  // n = 1
  long modulus = 1;  // the exponent m
  long t_rank = 0;
  long w_rank = 0;
  RatMatrix F;
  long degree = 0;
};

inline TorsionGauge make_torsion_gauge(const PAdicContext& ctx, long modulus,
                                       long t_rank, long w_rank, RatMatrix F,
                                       long degree = 0) {
  DieudonneGauge g =
      make_dieudonne_gauge(ctx, t_rank, w_rank, std::move(F), degree);
  if (modulus < 1) throw std::invalid_argument("modulus exponent must be >= 1");
  return TorsionGauge{g.ctx, modulus, g.t_rank, g.w_rank, std::move(g.F),
                      g.degree};
}

/// can: Fil^r -> M^u in the splitting coordinates, diag(p^r I_T, p^{r-1} I_W)
/// for r >= 1 and the identity for r <= 0.
inline RatMatrix canonical_inclusion_matrix(long t_rank, long w_rank, long r,
                                            const PAdicContext& ctx) {
  Index size = t_rank + w_rank;
  RatMatrix can = RatMatrix::Identity(size, size);
  if (r >= 1) {
    for (Index i = 0; i < t_rank; ++i) can(i, i) = rat_pow(Rat(ctx.p), r);
    for (Index i = t_rank; i < size; ++i)
      can(i, i) = rat_pow(Rat(ctx.p), r - 1);
  }
  return can;
}

/// phi: Fil^r -> M^u; for r >= 1 this is Phi(x,y) = F(x) + F(y)/p in the
/// identification Fil^r = T (+) W, for r <= 0 it is p^{-r} F.
inline RatMatrix frobenius_on_filtration(const RatMatrix& F, long t_rank,
                                         long r, const PAdicContext& ctx) {
  RatMatrix phi = F;
  if (r >= 1) {
    for (Index j = t_rank; j < phi.cols(); ++j) phi.col(j) /= Rat(ctx.p);
  } else {
    phi *= rat_pow(Rat(ctx.p), -r);
  }
  return phi;
}

/// r-th Nygaard characteristic chi^l(M^u/Fil^r M) via SNF lengths of the
/// canonical map; placement in degree d contributes the sign (-1)^d.
inline long nygaard_characteristic(const DieudonneGauge& g, long r) {
  RatMatrix can = canonical_inclusion_matrix(g.t_rank, g.w_rank, r, g.ctx);
  // free gauge: can is injective, so the characteristic is length coker
  long len = p_local_snf(can, g.ctx).diag_valuation_sum();
  return g.degree % 2 == 0 ? len : -len;
}

inline long nygaard_characteristic(const TorsionGauge& g, long r) {
  Index size = g.t_rank + g.w_rank;
  RatMatrix can = canonical_inclusion_matrix(g.t_rank, g.w_rank, r, g.ctx);
  RatMatrix pm =
      RatMatrix::Identity(size, size) * rat_pow(Rat(g.ctx.p), g.modulus);
  PresentedModule mod_pm(size, pm);
  ModuleMap f = make_module_map(mod_pm, mod_pm, can, g.ctx);
  FpModule ker = kernel(f, g.ctx);
  FpModule coker = cokernel(f, g.ctx);
  long chi = coker.length() - ker.length();
  return g.degree % 2 == 0 ? chi : -chi;
}

/// Syntomic cohomology of weight r as the two-term complex
/// Fil^r M -> M^u given by phi - can; returns (H^0, H^1) before the
/// cohomological placement shift.
inline std::pair<FpModule, FpModule> syntomic_cohomology(
    const DieudonneGauge& g, long r) {
  if (g.ctx.n != 1)
    throw std::invalid_argument("direct syntomic route requires q = p");
  RatMatrix map = frobenius_on_filtration(g.F, g.t_rank, r, g.ctx) -
                  canonical_inclusion_matrix(g.t_rank, g.w_rank, r, g.ctx);
  PLocalSNF s = p_local_snf(map, g.ctx);
  std::vector<long> tors;
  for (long d : s.diag_valuations)
    if (d > 0) tors.push_back(d);
  FpModule h0 = FpModule::free_module(s.kernel_rank());
  FpModule h1 = FpModule(map.rows() - s.rank, tors);
  return {h0, h1};
}

inline std::pair<FpModule, FpModule> syntomic_cohomology(const TorsionGauge& g,
                                                         long r) {
  if (g.ctx.n != 1)
    throw std::invalid_argument("direct syntomic route requires q = p");
  Index size = g.t_rank + g.w_rank;
  RatMatrix map = frobenius_on_filtration(g.F, g.t_rank, r, g.ctx) -
                  canonical_inclusion_matrix(g.t_rank, g.w_rank, r, g.ctx);
  RatMatrix pm =
      RatMatrix::Identity(size, size) * rat_pow(Rat(g.ctx.p), g.modulus);
  PresentedModule mod_pm(size, pm);
  ModuleMap f = make_module_map(mod_pm, mod_pm, map, g.ctx);
  return {kernel(f, g.ctx), cokernel(f, g.ctx)};
}

struct DescentReport {
  std::map<long, long> ranks;  // degree -> rank H^i_syn
  bool alternating_zero = false;
  std::optional<std::map<long, long>> u_solution;
};

/// Checks the alternating-rank identity and solves rank H^i = u_{i-1} + u_i
/// in nonnegative integers when possible.
inline DescentReport descent_rank_checks_from_ranks(
    const std::map<long, long>& ranks) {
  DescentReport rep;
  rep.ranks = ranks;
  long alt = 0;
  for (const auto& [deg, rk] : ranks) alt += (deg % 2 == 0) ? rk : -rk;
  rep.alternating_zero = alt == 0;
  std::map<long, long> u;
  long prev = 0;
  bool ok = true;
  long last_deg = 0;
  for (const auto& [deg, rk] : ranks) {
    long ui = rk - prev;
    if (ui < 0) {
      ok = false;
      break;
    }
    u[deg] = ui;
    prev = ui;
    last_deg = deg;
  }
  if (ok && prev == 0) {
    u.erase(last_deg);  // trailing u is zero; keep interior values only
    rep.u_solution = u;
  }
  return rep;
}

template <typename Gauge>
DescentReport descent_rank_checks(const Gauge& g, long r) {
  auto [h0, h1] = syntomic_cohomology(g, r);
  std::map<long, long> ranks;
  ranks[g.degree] = h0.free_rank;
  ranks[g.degree + 1] = h1.free_rank;
  return descent_rank_checks_from_ranks(ranks);
}

struct OrderOfVanishing {
  long value = 0;
  bool semisimple = false;  // q^r checked semisimple as an eigenvalue of F
};

/// Order-of-vanishing formula sum (-1)^i i rank H^i_syn(M, Z_p(r)); the
/// formula applies when q^r is a semisimple eigenvalue, which is checked by
/// comparing kernel ranks of (F - q^r) and its square over Q.
inline OrderOfVanishing order_of_vanishing_syn(const DieudonneGauge& g,
                                               long r) {
  auto [h0, h1] = syntomic_cohomology(g, r);
  OrderOfVanishing out;
  long d = g.degree;
  auto sgn = [](long k) { return k % 2 == 0 ? 1 : -1; };
  out.value = sgn(d) * d * h0.free_rank + sgn(d + 1) * (d + 1) * h1.free_rank;
  Index size = g.t_rank + g.w_rank;
  RatMatrix shifted = g.F - g.ctx.q_pow(r) * RatMatrix::Identity(size, size);
  long k1 = size - rational_rank(shifted, g.ctx);
  long k2 = size - rational_rank(RatMatrix(shifted * shifted), g.ctx);
  out.semisimple = k1 == k2;
  return out;
}

struct PdivInvariants {
  long dim = 0;
  long height = 0;

  long dual_dim() const { return height - dim; }
};

/// dim G = sum of slopes with multiplicity; height = total multiplicity.
inline PdivInvariants pdiv_invariants(const std::vector<SlopeDatum>& slopes) {
  Rat dim(0);
  long height = 0;
  for (const SlopeDatum& s : slopes) {
    if (s.multiplicity <= 0)
      throw std::invalid_argument("multiplicity must be positive");
    if (s.slope < 0 || s.slope > 1)
      throw std::invalid_argument("slope outside [0,1]");
    dim += s.slope * s.multiplicity;
    height += s.multiplicity;
  }
  if (dim.get_den() != 1)
    throw std::invalid_argument("not realizable: non-integer dimension");
  return PdivInvariants{static_cast<long>(dim.get_num().get_si()), height};
}

/// Derived Hodge table of a Dieudonne gauge, placed in its degree.
inline HodgeTable derived_hodge(const DieudonneGauge& g) {
  return hodge_from_pdiv(g.w_rank, g.t_rank).shifted(g.degree);
}

/// p^{Nygaard characteristic} = q^{chi(M,r)}, asserted on exponents with the
/// two sides computed along independent paths (SNF lengths vs table sums).
inline bool check_niceob(const DieudonneGauge& g, const HodgeTable& table,
                         long r) {
  return nygaard_characteristic(g, r) ==
         g.ctx.n * weighted_hodge_euler(table, r);
}

inline bool check_niceob(const DieudonneGauge& g, long r) {
  return check_niceob(g, derived_hodge(g), r);
}

inline bool check_niceob(const TorsionGauge& g, long r) {
  // torsion gauges have vanishing Hodge-Euler characteristic in every weight
  return nygaard_characteristic(g, r) == 0;
}

enum class Tier { CharPoly, Slope, Dieudonne, Torsion };

inline const char* tier_name(Tier t) {
  switch (t) {
    case Tier::CharPoly: return "charpoly";
    case Tier::Slope: return "slope";
    case Tier::Dieudonne: return "dieudonne";
    case Tier::Torsion: return "torsion";
  }
  return "?";
}

/// One per-degree summand of a gauge. Declared Hodge entries are given as
/// placed, so each (i,j) satisfies i + j = degree.
struct GaugeSummand {
  Tier tier = Tier::CharPoly;
  long degree = 0;
  RatPoly poly;                    // charpoly tier
  std::vector<SlopeDatum> slopes;  // slope tier
  std::optional<DieudonneGauge> dieudonne;
  std::optional<TorsionGauge> torsion;
  std::optional<HodgeTable> hodge;
};

/// Desk model of a dualizable F-gauge: a direct sum of tiered summands with
/// a global shift and Breuil-Kisin twist.
struct GaugeSpec {
  PAdicContext ctx;
  std::vector<GaugeSummand> summands;
  long shift = 0;
  long twist = 0;
};

inline GaugeSummand charpoly_summand(const PAdicContext& ctx, long degree,
                                     RatPoly P,
                                     std::optional<HodgeTable> hodge = {}) {
  make_isocrystal(ctx, P);  // validates P(0) = 1
  GaugeSummand s;
  s.tier = Tier::CharPoly;
  s.degree = degree;
  s.poly = std::move(P);
  s.hodge = std::move(hodge);
  return s;
}

inline GaugeSummand slope_summand(long degree, std::vector<SlopeDatum> slopes,
                                  std::optional<HodgeTable> hodge = {}) {
  GaugeSummand s;
  s.tier = Tier::Slope;
  s.degree = degree;
  s.slopes = std::move(slopes);
  s.hodge = std::move(hodge);
  return s;
}

inline GaugeSummand dieudonne_summand(DieudonneGauge g,
                                      std::optional<HodgeTable> hodge = {}) {
  GaugeSummand s;
  s.tier = Tier::Dieudonne;
  s.degree = g.degree;
  s.dieudonne = std::move(g);
  s.hodge = std::move(hodge);
  return s;
}

inline GaugeSummand torsion_summand(TorsionGauge g) {
  GaugeSummand s;
  s.tier = Tier::Torsion;
  s.degree = g.degree;
  s.torsion = std::move(g);
  return s;
}

/// Zeta factor of a single summand before shift and twist: det(1 - t F^n) at
/// the char-poly and Dieudonne tiers, the pure-slope realization
/// prod (1 - p^{n s} t^{r})^{mult/r} at the slope tier, 1 at torsion.
inline RatPoly summand_factor(const GaugeSummand& s, const PAdicContext& ctx) {
  switch (s.tier) {
    case Tier::CharPoly:
      return s.poly;
    case Tier::Slope: {
      RatPoly out = RatPoly::one();
      for (const SlopeDatum& sd : s.slopes) {
        if (sd.multiplicity <= 0)
          throw std::invalid_argument("multiplicity must be positive");
        Rat sl = sd.slope;
        long den = static_cast<long>(sl.get_den().get_si());
        long num = static_cast<long>(sl.get_num().get_si());
        if (sd.multiplicity % den != 0)
          throw std::invalid_argument(
              "slope multiplicity not divisible by slope denominator");
        std::vector<Rat> c(static_cast<size_t>(den) + 1, Rat(0));
        c[0] = 1;
        c[static_cast<size_t>(den)] = -rat_pow(Rat(ctx.p), ctx.n * num);
        out = out * RatPoly(std::move(c)).pow(sd.multiplicity / den);
      }
      return out;
    }
    case Tier::Dieudonne:
      return frobenius_factor(s.dieudonne->F);
    case Tier::Torsion:
      return RatPoly::one();
  }
  throw std::logic_error("unknown tier");
}

inline void validate_summand(const GaugeSummand& s, const PAdicContext& ctx) {
  RatPoly P = summand_factor(s, ctx);
  if (s.tier == Tier::Torsion) {
    if (s.hodge && !s.hodge->empty())
      throw std::invalid_argument(
          "torsion summands carry no Hodge cohomology");
    return;
  }
  if (!s.hodge) return;
  for (const auto& [key, v] : s.hodge->h)
    if (key.first + key.second != s.degree)
      throw std::invalid_argument(
          "Hodge entry outside the summand's degree");
  if (s.hodge->dimension_in_degree(s.degree) != P.degree())
    throw std::invalid_argument(
        "Hodge dimension does not match summand dimension");
}

inline GaugeSpec make_gauge_spec(PAdicContext ctx,
                                 std::vector<GaugeSummand> summands,
                                 long shift = 0, long twist = 0) {
  for (const GaugeSummand& s : summands) {
    validate_summand(s, ctx);
    if ((s.tier == Tier::Dieudonne || s.tier == Tier::Torsion) && ctx.n != 1)
      throw std::invalid_argument("Dieudonne-tier summands require q = p");
  }
  return GaugeSpec{std::move(ctx), std::move(summands), shift, twist};
}

inline GaugeSpec twisted(GaugeSpec g, long i) {
  g.twist += i;
  return g;
}

inline GaugeSpec shifted(GaugeSpec g, long k) {
  g.shift += k;
  return g;
}

inline GaugeSpec direct_sum(const GaugeSpec& a, const GaugeSpec& b) {
  if (a.ctx.p != b.ctx.p || a.ctx.n != b.ctx.n)
    throw std::invalid_argument("direct sum across different contexts");
  if (a.shift != b.shift || a.twist != b.twist) {
    // normalize via per-summand placement: only equal shift/twist supported
    throw std::invalid_argument("direct sum requires equal shift and twist");
  }
  GaugeSpec out = a;
  out.summands.insert(out.summands.end(), b.summands.begin(),
                      b.summands.end());
  return out;
}

struct EffectiveHodge {
  HodgeTable table;
  bool available = false;  // every non-torsion summand contributed a table
  bool conflict = false;   // declared table contradicts a derived one
  std::string note;
};

/// Assembles the gauge's Hodge table: declared entries at the char-poly and
/// slope tiers, derived tables at the Dieudonne tier (a declared table there
/// must match the derived one exactly), then shift/twist transforms.
inline EffectiveHodge effective_hodge(const GaugeSpec& g) {
  EffectiveHodge out;
  out.available = true;
  for (const GaugeSummand& s : g.summands) {
    if (s.tier == Tier::Torsion) continue;
    if (s.tier == Tier::Dieudonne) {
      HodgeTable derived = derived_hodge(*s.dieudonne);
      if (s.hodge && !(*s.hodge == derived)) {
        out.conflict = true;
        out.note = "declared Hodge table conflicts with derived table";
      }
      out.table = out.table.merged(derived);
    } else if (s.hodge) {
      out.table = out.table.merged(*s.hodge);
    } else {
      out.available = false;
      out.note = "summand without Hodge data";
    }
  }
  out.table = out.table.shifted(g.shift).twisted(g.twist);
  return out;
}

}  // namespace zetalab

#pragma once

#include "zetalab/zeta.hpp"

#include <array>
#include <string>
#include <vector>

namespace zetalab {

struct NamedGauge {
  std::string name;
  GaugeSpec gauge;
};

inline HodgeTable table_of(std::initializer_list<std::array<long, 3>> rows) {
  HodgeTable t;
  for (const auto& r : rows) t.add(r[0], r[1], r[2]);
  return t;
}

inline RatPoly poly_of(std::initializer_list<long> coeffs) {
  std::vector<Rat> c;
  for (long x : coeffs) c.push_back(Rat(x));
  return RatPoly(std::move(c));
}

/// Weil factors 1 - a t + q t^2 flanked by 1 - t and 1 - q t, with the
/// standard elliptic Hodge square.
inline GaugeSpec elliptic_family(const PAdicContext& ctx, long a) {
  RatPoly p0 = poly_of({1, -1});
  RatPoly p1(std::vector<Rat>{Rat(1), Rat(-a), Rat(ctx.q)});
  RatPoly p2(std::vector<Rat>{Rat(1), -Rat(ctx.q)});
  return make_gauge_spec(
      ctx, {charpoly_summand(ctx, 0, p0, table_of({{0, 0, 1}})),
            charpoly_summand(ctx, 1, p1, table_of({{0, 1, 1}, {1, 0, 1}})),
            charpoly_summand(ctx, 2, p2, table_of({{1, 1, 1}}))});
}

/// Factors {1-t, 1-qt, 1-q^2 t} in degrees 0, 2, 4 with the diagonal table.
inline GaugeSpec projective_plane_family(const PAdicContext& ctx) {
  RatPoly p2(std::vector<Rat>{Rat(1), -Rat(ctx.q)});
  RatPoly p4(std::vector<Rat>{Rat(1), -Rat(ctx.q) * Rat(ctx.q)});
  return make_gauge_spec(
      ctx,
      {charpoly_summand(ctx, 0, poly_of({1, -1}), table_of({{0, 0, 1}})),
       charpoly_summand(ctx, 2, p2, table_of({{1, 1, 1}})),
       charpoly_summand(ctx, 4, p4, table_of({{2, 2, 1}}))});
}

inline GaugeSpec unit_gauge(const PAdicContext& ctx) {
  return make_gauge_spec(
      ctx, {charpoly_summand(ctx, 0, poly_of({1, -1}), table_of({{0, 0, 1}}))});
}

/// E_{s/r} with the p-divisible Hodge table {h^{0,0}=r-s, h^{1,-1}=s}.
inline GaugeSpec simple_isocrystal_gauge(const PAdicContext& ctx, long s,
                                         long r) {
  IsocrystalCharPoly ic = simple_charpoly(s, r, ctx);
  return make_gauge_spec(
      ctx, {charpoly_summand(ctx, 0, ic.P,
                             table_of({{0, 0, r - s}, {1, -1, s}}))});
}

inline DieudonneGauge unit_dieudonne(const PAdicContext& ctx) {
  RatMatrix F = RatMatrix::Identity(1, 1);
  return make_dieudonne_gauge(ctx, 1, 0, F);
}

inline DieudonneGauge multiplicative_dieudonne(const PAdicContext& ctx) {
  RatMatrix F(1, 1);
  F(0, 0) = Rat(ctx.p);
  return make_dieudonne_gauge(ctx, 0, 1, F);
}

inline DieudonneGauge supersingular_dieudonne(const PAdicContext& ctx) {
  RatMatrix F = RatMatrix::Zero(2, 2);
  F(1, 0) = 1;
  F(0, 1) = Rat(ctx.p);
  return make_dieudonne_gauge(ctx, 1, 1, F);
}

inline DieudonneGauge ordinary_dieudonne(const PAdicContext& ctx) {
  RatMatrix F = RatMatrix::Zero(2, 2);
  F(0, 0) = 1;
  F(1, 1) = Rat(ctx.p);
  return make_dieudonne_gauge(ctx, 1, 1, F);
}

inline TorsionGauge corpus_torsion_gauge(const PAdicContext& ctx) {
  RatMatrix F = RatMatrix::Zero(2, 2);
  F(1, 0) = 1;
  F(0, 1) = Rat(ctx.p);
  return make_torsion_gauge(ctx, 2, 1, 1, F);
}

/// The curated corpus over F_5: the unit gauge and its twists, the listed
/// E_{s/r}, elliptic families a in {0,1,2}, shifted and direct-sum
/// combinations, the p-divisible Dieudonne gauges, one torsion gauge, and
/// the projective-plane family (plus a q = 25 copy).
inline std::vector<NamedGauge> curated_corpus() {
  std::vector<NamedGauge> out;
  PAdicContext f5(5, 1);

  out.push_back({"unit", unit_gauge(f5)});
  for (long i = -2; i <= 2; ++i) {
    if (i == 0) continue;
    std::string nm = "unit_twist_" + std::string(i < 0 ? "m" : "p") +
                     std::to_string(std::abs(i));
    out.push_back({nm, twisted(unit_gauge(f5), i)});
  }
  const std::pair<long, long> simple_list[] = {
      {0, 1}, {1, 1}, {1, 2}, {1, 3}, {2, 3}};
  for (auto [s, r] : simple_list)
    out.push_back({"E_" + std::to_string(s) + "_" + std::to_string(r),
                   simple_isocrystal_gauge(f5, s, r)});
  for (long a : {0L, 1L, 2L})
    out.push_back({"elliptic_a" + std::to_string(a), elliptic_family(f5, a)});
  out.push_back({"elliptic_a1_shift1", shifted(elliptic_family(f5, 1), 1)});
  out.push_back(
      {"unit_plus_E_1_2",
       direct_sum(unit_gauge(f5), simple_isocrystal_gauge(f5, 1, 2))});

  out.push_back({"unit_dieudonne",
                 make_gauge_spec(f5, {dieudonne_summand(unit_dieudonne(f5))})});
  out.push_back(
      {"etale_dieudonne",
       make_gauge_spec(f5, {dieudonne_summand(unit_dieudonne(f5))})});
  out.push_back({"multiplicative_dieudonne",
                 make_gauge_spec(
                     f5, {dieudonne_summand(multiplicative_dieudonne(f5))})});
  out.push_back({"supersingular_dieudonne",
                 make_gauge_spec(
                     f5, {dieudonne_summand(supersingular_dieudonne(f5))})});
  out.push_back(
      {"ordinary_dieudonne",
       make_gauge_spec(f5, {dieudonne_summand(ordinary_dieudonne(f5))})});
  out.push_back(
      {"torsion_m2",
       make_gauge_spec(f5, {torsion_summand(corpus_torsion_gauge(f5))})});
  out.push_back({"p2", projective_plane_family(f5)});

  PAdicContext f25(5, 2);
  out.push_back({"unit_q25", unit_gauge(f25)});
  out.push_back({"p2_q25", projective_plane_family(f25)});
  return out;
}

}  // namespace zetalab

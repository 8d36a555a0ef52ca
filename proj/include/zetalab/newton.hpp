#pragma once

#include "zetalab/polynomial.hpp"

#include <algorithm>

namespace zetalab {

/// Multiset of v_p(u) over the reciprocal roots u of a zeta factor,
/// sorted ascending.
struct NewtonPolygonResult {
  std::vector<Rat> slopes;

  long multiplicity_of(const Rat& s) const {
    return static_cast<long>(std::count(slopes.begin(), slopes.end(), s));
  }
};

/// Newton-polygon slopes of P with P(0) = 1. The lower convex hull of
/// {(k, v_p(a_k)) : a_k != 0} has sides whose slope equals v_p(u) for exactly
/// (horizontal length) reciprocal roots u; total multiplicity is deg P.
inline NewtonPolygonResult newton_slopes(const RatPoly& P,
                                         const PAdicContext& ctx) {
  if (P.is_zero() || P.coeff(0) != 1)
    throw std::invalid_argument("not a zeta factor");
  NewtonPolygonResult out;
  if (P.degree() == 0) return out;

  struct Pt {
    long x;
    long y;
  };
  std::vector<Pt> pts;
  for (long k = 0; k <= P.degree(); ++k) {
    Rat a = P.coeff(k);
    if (a != 0) pts.push_back({k, valuation(a, ctx)});
  }

  // Monotone-chain lower hull; merging collinear points keeps the slope
  // multiset intact since each side contributes slope x (its length).
  std::vector<Pt> hull;
  for (const Pt& q : pts) {
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull[hull.size() - 1];
      // keep b only if it lies strictly below segment a->q
      long cross = (b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(q);
  }

  for (size_t i = 0; i + 1 < hull.size(); ++i) {
    long run = hull[i + 1].x - hull[i].x;
    long rise = hull[i + 1].y - hull[i].y;
    Rat slope(rise, run);
    slope.canonicalize();
    for (long k = 0; k < run; ++k) out.slopes.push_back(slope);
  }
  std::sort(out.slopes.begin(), out.slopes.end());
  return out;
}

}  // namespace zetalab

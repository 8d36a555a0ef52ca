#pragma once

#include "zetalab/padic.hpp"

#include <limits>
#include <vector>

namespace zetalab {

/// p-local Smith normal form A = U * D * V over Z_(p):
///   - U (m x m) and V (n x n) invertible over Z_(p), with Uinv, Vinv exact;
///   - D diagonal with entries p^{d_0}, ..., p^{d_{rank-1}} (ascending), then
///     zeros.
/// Pivots are chosen at globally minimal valuation, ties broken row-major.
struct PLocalSNF {
  RatMatrix D, U, Uinv, V, Vinv;
  std::vector<long> diag_valuations;
  Index rank = 0;

  Index kernel_rank() const { return D.cols() - rank; }

  long diag_valuation_sum() const {
    long s = 0;
    for (long d : diag_valuations) s += d;
    return s;
  }
};

/// Horizontal concatenation that tolerates zero-width blocks.
inline RatMatrix hcat(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
  RatMatrix out(a.rows(), a.cols() + b.cols());
  if (a.cols() > 0) out.leftCols(a.cols()) = a;
  if (b.cols() > 0) out.rightCols(b.cols()) = b;
  return out;
}

inline PLocalSNF p_local_snf(const RatMatrix& A, const PAdicContext& ctx) {
  require_p_integral(A, ctx);
  const Index m = A.rows(), n = A.cols();
  PLocalSNF r;
  r.D = A;
  r.U = RatMatrix::Identity(m, m);
  r.Uinv = RatMatrix::Identity(m, m);
  r.V = RatMatrix::Identity(n, n);
  r.Vinv = RatMatrix::Identity(n, n);

  const Rat p(ctx.p);
  for (Index t = 0; t < std::min(m, n); ++t) {
    // pivot: minimal valuation in the trailing block, row-major tie-break
    long best = std::numeric_limits<long>::max();
    Index pi = -1, pj = -1;
    for (Index i = t; i < m; ++i)
      for (Index j = t; j < n; ++j) {
        if (r.D(i, j) == 0) continue;
        long v = valuation(r.D(i, j), ctx);
        if (v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;

    if (pi != t) {
      r.D.row(t).swap(r.D.row(pi));
      r.U.col(t).swap(r.U.col(pi));
      r.Uinv.row(t).swap(r.Uinv.row(pi));
    }
    if (pj != t) {
      r.D.col(t).swap(r.D.col(pj));
      r.V.row(t).swap(r.V.row(pj));
      r.Vinv.col(t).swap(r.Vinv.col(pj));
    }

    // normalize pivot to p^d
    Rat u = unit_part(r.D(t, t), ctx);
    if (u != 1) {
      Rat uinv = Rat(1) / u;
      r.D.row(t) *= uinv;
      r.U.col(t) *= u;
      r.Uinv.row(t) *= uinv;
    }
    Rat piv = r.D(t, t);  // p^best

    for (Index i = t + 1; i < m; ++i) {
      if (r.D(i, t) == 0) continue;
      Rat f = r.D(i, t) / piv;  // p-integral: the pivot valuation is minimal
      r.D.row(i) -= f * r.D.row(t);
      r.U.col(t) += f * r.U.col(i);
      r.Uinv.row(i) -= f * r.Uinv.row(t);
    }
    for (Index j = t + 1; j < n; ++j) {
      if (r.D(t, j) == 0) continue;
      Rat f = r.D(t, j) / piv;
      r.D.col(j) -= f * r.D.col(t);
      r.V.row(t) += f * r.V.row(j);
      r.Vinv.col(j) -= f * r.Vinv.col(t);
    }

    r.diag_valuations.push_back(best);
    ++r.rank;
  }
  return r;
}

/// Rank over Q of an arbitrary rational matrix (scaled into Z_(p) first).
inline long rational_rank(const RatMatrix& A, const PAdicContext& ctx) {
  if (A.rows() == 0 || A.cols() == 0) return 0;
  long minval = 0;
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j)
      if (A(i, j) != 0) minval = std::min(minval, valuation(A(i, j), ctx));
  RatMatrix B = A;
  if (minval < 0) B *= rat_pow(Rat(ctx.p), -minval);
  return static_cast<long>(p_local_snf(B, ctx).rank);
}

/// Basis of {x : A x = 0} over Z_(p), as columns; the span is saturated.
inline RatMatrix kernel_basis(const RatMatrix& A, const PAdicContext& ctx) {
  PLocalSNF s = p_local_snf(A, ctx);
  return s.Vinv.rightCols(s.kernel_rank());
}

/// Basis of the column span of G over Z_(p), as columns.
inline RatMatrix span_basis(const RatMatrix& G, const PAdicContext& ctx) {
  PLocalSNF s = p_local_snf(G, ctx);
  RatMatrix B(G.rows(), s.rank);
  for (Index i = 0; i < s.rank; ++i) B.col(i) = s.U.col(i) * s.D(i, i);
  return B;
}

/// Whether every column of Y lies in the Z_(p)-column-span of A.
inline bool columns_in_span(const RatMatrix& A, const RatMatrix& Y,
                            const PAdicContext& ctx) {
  if (Y.cols() == 0) return true;
  if (A.rows() != Y.rows())
    throw std::invalid_argument("columns_in_span: row mismatch");
  require_p_integral(Y, ctx);
  PLocalSNF s = p_local_snf(A, ctx);
  RatMatrix W = s.Uinv * Y;
  for (Index c = 0; c < W.cols(); ++c) {
    for (Index i = 0; i < s.rank; ++i) {
      if (W(i, c) == 0) continue;
      if (valuation(W(i, c), ctx) < s.diag_valuations[static_cast<size_t>(i)])
        return false;
    }
    for (Index i = s.rank; i < W.rows(); ++i)
      if (W(i, c) != 0) return false;
  }
  return true;
}

/// Solves A X = Y over Z_(p); every column of Y must lie in the span of A.
inline RatMatrix solve_columns(const RatMatrix& A, const RatMatrix& Y,
                               const PAdicContext& ctx) {
  if (A.rows() != Y.rows())
    throw std::invalid_argument("solve_columns: row mismatch");
  PLocalSNF s = p_local_snf(A, ctx);
  RatMatrix W = s.Uinv * Y;
  RatMatrix Z = RatMatrix::Zero(A.cols(), Y.cols());
  for (Index c = 0; c < W.cols(); ++c) {
    for (Index i = 0; i < s.rank; ++i)
      Z(i, c) = W(i, c) / s.D(i, i);
    for (Index i = s.rank; i < W.rows(); ++i)
      if (W(i, c) != 0) throw std::logic_error("solve_columns: unsolvable");
  }
  RatMatrix X = s.Vinv * Z;
  if (!p_integral(X, ctx)) throw std::logic_error("solve_columns: unsolvable");
  return X;
}

}  // namespace zetalab

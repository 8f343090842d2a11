#pragma once

#include <complex>
#include <utility>

#include <Eigen/Core>

#include "grunsky_lab/errors.hpp"
#include "grunsky_lab/series.hpp"

namespace grunsky_lab {

/// Whether table indices (p, q) refer to omega_{p,q} of f itself or to the
/// odd-index coefficients omega_{2p-1,2q-1} of its square-root transform.
enum class Parity { full, odd };

/// Matrix of Grunsky coefficients.
///
/// Only entries that are fully determined by the input truncation are stored:
/// the table covers the square block 0 <= p, q <= order, chosen so that every
/// entry is exact for any function the input series truncates. Row and column
/// 0 carry the omega_{p,0} terms for the full parity and are zero for the odd
/// parity; inequality sums range over p, q >= 1 only.
template <typename Real>
struct GrunskyTable {
  using Scalar = std::complex<Real>;
  using Matrix = Eigen::MatrixX<Scalar>;

  Eigen::Index order = 0;
  Parity parity = Parity::full;
  Matrix omega;
};

using GrunskyTableXd = GrunskyTable<double>;

/// (f(t) - f(z)) / (t - z) as a two-variable series of order N-1.
///
/// By the geometric-sum identity t^n - z^n = (t - z) sum_{i+j=n-1} t^i z^j the
/// coefficients are d_{i,j} = a_{i+j+1} (with a_1 = 1); entries with
/// i + j >= N take the truncated tail a_n = 0.
template <typename Real>
BivariateSeries<Real> difference_quotient(const TruncatedSeries<Real>& f) {
  if (!f.is_normalized())
    throw NormalizationError("difference_quotient: series must be normalized");
  const Eigen::Index n = f.order();
  if (n < 2) throw OrderError("difference_quotient: order must be at least 2");
  typename BivariateSeries<Real>::CoeffMatrix d =
      BivariateSeries<Real>::CoeffMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i + j + 1 <= n) d(i, j) = f.coeff(i + j + 1);
  return BivariateSeries<Real>(std::move(d));
}

/// Grunsky coefficients of f: the two-variable log of the difference quotient.
///
/// The returned block covers p, q <= floor((N-1)/2); every stored entry needs
/// only a_2..a_{p+q+1} and is therefore exact for the underlying function.
template <typename Real>
GrunskyTable<Real> grunsky_table(const TruncatedSeries<Real>& f) {
  const Eigen::Index n = f.order();
  if (n < 3) throw OrderError("grunsky_table: order must be at least 3");
  const BivariateSeries<Real> lg = log_unit(difference_quotient(f));
  const Eigen::Index m = (n - 1) / 2;
  GrunskyTable<Real> table;
  table.order = m;
  table.parity = Parity::full;
  table.omega = lg.coeffs().topLeftCorner(m + 1, m + 1);
  return table;
}

/// The square-root transform f2(z) = sqrt(f(z^2)), an odd normalized series
/// of order 2N-1 (exact through that order when f is exact through N).
template <typename Real>
TruncatedSeries<Real> sqrt_transform(const TruncatedSeries<Real>& f) {
  if (!f.is_normalized())
    throw NormalizationError("sqrt_transform: series must be normalized");
  const Eigen::Index n = f.order();
  const TruncatedSeries<Real> f_of_z2 =
      compose(extended(f, 2 * n), TruncatedSeries<Real>::monomial(2 * n, 2));
  const TruncatedSeries<Real> unit = shifted_down(f_of_z2, 2);  // f(z^2)/z^2
  return shifted_up(sqrt_unit(unit), 1);
}

/// Odd-index Grunsky coefficients of f: entry (p, q) holds
/// omega_{2p-1,2q-1} of the square-root transform, for p, q <= floor(N/2).
template <typename Real>
GrunskyTable<Real> odd_grunsky_table(const TruncatedSeries<Real>& f) {
  const Eigen::Index n = f.order();
  if (n < 3) throw OrderError("odd_grunsky_table: order must be at least 3");
  const GrunskyTable<Real> full = grunsky_table(sqrt_transform(f));
  const Eigen::Index m = n / 2;  // (2p-1)+(2q-1) <= 2N-2 for all p,q <= m
  GrunskyTable<Real> table;
  table.order = m;
  table.parity = Parity::odd;
  table.omega = GrunskyTable<Real>::Matrix::Zero(m + 1, m + 1);
  for (Eigen::Index p = 1; p <= m; ++p)
    for (Eigen::Index q = 1; q <= m; ++q)
      table.omega(p, q) = full.omega(2 * p - 1, 2 * q - 1);
  return table;
}

/// Residual moduli of the six formal relations between a_2..a_5 and the
/// odd-index Grunsky coefficients. They hold for any normalized series, so a
/// nonzero residual beyond rounding indicates a bug, not a property of f.
///
/// Requires N >= 8 so that the stored odd table reaches omega_{1,7}.
template <typename Real>
Eigen::Matrix<Real, 6, 1> check_coefficient_relations(const TruncatedSeries<Real>& f) {
  using Scalar = std::complex<Real>;
  if (!f.is_normalized())
    throw NormalizationError("check_coefficient_relations: series must be normalized");
  if (f.order() < 8)
    throw OrderError("check_coefficient_relations: order must be at least 8");

  const GrunskyTable<Real> t = odd_grunsky_table(f);
  const Scalar w11 = t.omega(1, 1), w13 = t.omega(1, 2), w15 = t.omega(1, 3),
               w17 = t.omega(1, 4), w33 = t.omega(2, 2), w35 = t.omega(2, 3);
  const Scalar a2 = f.coeff(2), a3 = f.coeff(3), a4 = f.coeff(4), a5 = f.coeff(5);

  const Scalar w11sq = w11 * w11;
  Eigen::Matrix<Real, 6, 1> res;
  res[0] = std::abs(a2 - Real(2) * w11);
  res[1] = std::abs(a3 - (Real(2) * w13 + Real(3) * w11sq));
  res[2] = std::abs(a4 - (Real(2) * w33 + Real(8) * w11 * w13 + Real(10) / Real(3) * w11sq * w11));
  res[3] = std::abs(a5 - (Real(2) * w35 + Real(8) * w11 * w33 + Real(5) * w13 * w13 +
                          Real(18) * w11sq * w13 + Real(7) / Real(3) * w11sq * w11sq));
  res[4] = std::abs(Real(3) * w15 - Real(3) * w11 * w13 + w11sq * w11 - Real(3) * w33);
  res[5] = std::abs(w17 - w35 - w11 * w33 - w13 * w13 + w11sq * w11sq / Real(3));
  return res;
}

enum class InequalityForm { weighted, bilinear };

/// One evaluated Grunsky inequality: lhs <= rhs for univalent f, with
/// margin = rhs - lhs.
template <typename Real>
struct InequalityCheck {
  using Scalar = std::complex<Real>;
  Real lhs = Real(0);
  Real rhs = Real(0);
  Real margin = Real(0);
  Eigen::Vector<Scalar, Eigen::Dynamic> weights_x;
};

using InequalityCheckXd = InequalityCheck<double>;

/// Evaluates a Grunsky inequality for the weight vector x (x[i] is x_{i+1}).
///
/// weighted:  sum_q w_q |sum_p omega_{p,q} x_p|^2  vs  sum_p |x_p|^2 / w_p
/// bilinear:  |sum_{p,q} omega_{p,q} x_p x_q|      vs  sum_p |x_p|^2 / w_p
/// with w_k = k for the full parity and w_k = 2k-1 for the odd parity.
template <typename Real>
InequalityCheck<Real> inequality_check(const GrunskyTable<Real>& table,
                                       const Eigen::Vector<std::complex<Real>, Eigen::Dynamic>& x,
                                       InequalityForm form) {
  using Scalar = std::complex<Real>;
  if (x.size() < 1 || x.size() > table.order)
    throw OrderError("inequality_check: weight vector length must be in [1, table order]");
  if (!x.allFinite() || x.cwiseAbs().maxCoeff() == Real(0))
    throw DegenerateInputError("inequality_check: weight vector must be finite and nonzero");

  const auto weight = [&](Eigen::Index k) {
    return table.parity == Parity::odd ? Real(2 * k - 1) : Real(k);
  };
  const Eigen::Index klen = x.size();

  Real lhs(0);
  if (form == InequalityForm::weighted) {
    for (Eigen::Index q = 1; q <= table.order; ++q) {
      Scalar inner(0);
      for (Eigen::Index p = 1; p <= klen; ++p) inner += table.omega(p, q) * x[p - 1];
      lhs += weight(q) * std::norm(inner);
    }
  } else {
    Scalar acc(0);
    for (Eigen::Index p = 1; p <= klen; ++p)
      for (Eigen::Index q = 1; q <= klen; ++q) acc += table.omega(p, q) * x[p - 1] * x[q - 1];
    lhs = std::abs(acc);
  }

  Real rhs(0);
  for (Eigen::Index p = 1; p <= klen; ++p) rhs += std::norm(x[p - 1]) / weight(p);

  InequalityCheck<Real> out;
  out.lhs = lhs;
  out.rhs = rhs;
  out.margin = rhs - lhs;
  out.weights_x = x;
  return out;
}

}  // namespace grunsky_lab

#pragma once

#include <cmath>
#include <complex>
#include <type_traits>
#include <utility>

#include <Eigen/Core>

#include "grunsky_lab/errors.hpp"

namespace grunsky_lab {

/// Numerical slack accepted when checking c0 = 0 / c0 = 1 / c1 = 1 preconditions.
inline constexpr double kUnitTol = 1e-12;

/// One-variable power series truncated at a fixed order N:
///   s(z) = c0 + c1 z + ... + cN z^N.
///
/// Values are immutable after construction; every operation on them is a pure
/// function, so series can be shared freely across threads.
template <typename Real>
class TruncatedSeries {
 public:
  using Scalar = std::complex<Real>;
  using CoeffVector = Eigen::Vector<Scalar, Eigen::Dynamic>;

  /// Zero series of the given order (order >= 1).
  explicit TruncatedSeries(Eigen::Index order)
      : coeffs_(CoeffVector::Zero(checked_order(order) + 1)) {}

  /// Wraps a coefficient vector c0..cN (size N+1, N >= 1).
  explicit TruncatedSeries(CoeffVector coeffs) : coeffs_(std::move(coeffs)) {
    checked_order(coeffs_.size() - 1);
  }

  static TruncatedSeries zero(Eigen::Index order) { return TruncatedSeries(order); }

  static TruncatedSeries constant(Eigen::Index order, Scalar c0) {
    CoeffVector c = CoeffVector::Zero(checked_order(order) + 1);
    c[0] = c0;
    return TruncatedSeries(std::move(c));
  }

  /// The monomial c * z^k at the given order (k <= order).
  static TruncatedSeries monomial(Eigen::Index order, Eigen::Index k, Scalar c = Scalar(1)) {
    if (k < 0 || k > checked_order(order)) throw OrderError("monomial degree outside truncation order");
    CoeffVector v = CoeffVector::Zero(order + 1);
    v[k] = c;
    return TruncatedSeries(std::move(v));
  }

  /// The series z.
  static TruncatedSeries identity(Eigen::Index order) { return monomial(order, 1); }

  Eigen::Index order() const { return coeffs_.size() - 1; }
  const CoeffVector& coeffs() const { return coeffs_; }

  Scalar coeff(Eigen::Index k) const {
    if (k < 0 || k >= coeffs_.size()) throw OrderError("coefficient index outside truncation order");
    return coeffs_[k];
  }

  /// Class-A normalization: c0 = 0 and c1 = 1 (within tol).
  bool is_normalized(Real tol = Real(kUnitTol)) const {
    return std::abs(coeffs_[0]) <= tol && std::abs(coeffs_[1] - Scalar(1)) <= tol;
  }

 private:
  static Eigen::Index checked_order(Eigen::Index order) {
    if (order < 1) throw OrderError("series order must be at least 1");
    return order;
  }

  CoeffVector coeffs_;
};

namespace detail {

template <typename Real>
void require_same_order(const TruncatedSeries<Real>& a, const TruncatedSeries<Real>& b,
                        const char* what) {
  if (a.order() != b.order())
    throw OrderMismatchError(std::string(what) + ": operands have different truncation orders");
}

/// Truncated Cauchy product of two coefficient vectors of equal length.
template <typename Vec>
Vec convolve_truncated(const Vec& a, const Vec& b) {
  const Eigen::Index n = a.size();
  Vec out = Vec::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k)
    out[k] = a.head(k + 1).reverse().cwiseProduct(b.head(k + 1)).sum();
  return out;
}

/// Reciprocal of a coefficient vector with s0 != 0.
template <typename Vec>
Vec reciprocal_vec(const Vec& s) {
  using Scalar = typename Vec::Scalar;
  if (s[0] == Scalar(0)) throw BranchError("reciprocal requires a nonzero constant term");
  const Eigen::Index n = s.size();
  Vec r = Vec::Zero(n);
  r[0] = Scalar(1) / s[0];
  for (Eigen::Index k = 1; k < n; ++k)
    r[k] = -s.segment(1, k).reverse().cwiseProduct(r.head(k)).sum() / s[0];
  return r;
}

/// log of a coefficient vector with s0 ~ 1, principal branch.
/// Solves L' s = s' one coefficient at a time.
template <typename Vec>
Vec log_unit_vec(const Vec& s) {
  using Scalar = typename Vec::Scalar;
  using Real = typename Scalar::value_type;
  const Eigen::Index n = s.size();
  Vec l = Vec::Zero(n);
  l[0] = std::log(s[0]);
  for (Eigen::Index k = 1; k < n; ++k) {
    Scalar acc = s[k];
    for (Eigen::Index j = 1; j < k; ++j) acc -= Real(j) / Real(k) * l[j] * s[k - j];
    l[k] = acc / s[0];
  }
  return l;
}

}  // namespace detail

template <typename Real>
TruncatedSeries<Real> add(const TruncatedSeries<Real>& a, const TruncatedSeries<Real>& b) {
  detail::require_same_order(a, b, "add");
  return TruncatedSeries<Real>(typename TruncatedSeries<Real>::CoeffVector(a.coeffs() + b.coeffs()));
}

template <typename Real>
TruncatedSeries<Real> sub(const TruncatedSeries<Real>& a, const TruncatedSeries<Real>& b) {
  detail::require_same_order(a, b, "sub");
  return TruncatedSeries<Real>(typename TruncatedSeries<Real>::CoeffVector(a.coeffs() - b.coeffs()));
}

template <typename Real>
TruncatedSeries<Real> scale(const TruncatedSeries<Real>& a,
                            std::type_identity_t<std::complex<Real>> factor) {
  return TruncatedSeries<Real>(typename TruncatedSeries<Real>::CoeffVector(a.coeffs() * factor));
}

/// Cauchy product truncated at the common order.
template <typename Real>
TruncatedSeries<Real> mul(const TruncatedSeries<Real>& a, const TruncatedSeries<Real>& b) {
  detail::require_same_order(a, b, "mul");
  return TruncatedSeries<Real>(detail::convolve_truncated(a.coeffs(), b.coeffs()));
}

template <typename Real>
TruncatedSeries<Real> operator+(const TruncatedSeries<Real>& a, const TruncatedSeries<Real>& b) {
  return add(a, b);
}
template <typename Real>
TruncatedSeries<Real> operator-(const TruncatedSeries<Real>& a, const TruncatedSeries<Real>& b) {
  return sub(a, b);
}
template <typename Real>
TruncatedSeries<Real> operator*(const TruncatedSeries<Real>& a, const TruncatedSeries<Real>& b) {
  return mul(a, b);
}
template <typename Real>
TruncatedSeries<Real> operator*(std::type_identity_t<std::complex<Real>> c,
                                const TruncatedSeries<Real>& a) {
  return scale(a, c);
}
template <typename Real>
TruncatedSeries<Real> operator*(const TruncatedSeries<Real>& a,
                                std::type_identity_t<std::complex<Real>> c) {
  return scale(a, c);
}

/// 1/s for a series with nonzero constant term.
template <typename Real>
TruncatedSeries<Real> reciprocal(const TruncatedSeries<Real>& s) {
  return TruncatedSeries<Real>(detail::reciprocal_vec(s.coeffs()));
}

/// Same coefficients, higher order (zero padded).
template <typename Real>
TruncatedSeries<Real> extended(const TruncatedSeries<Real>& s, Eigen::Index order) {
  if (order < s.order()) throw OrderError("extended: target order below current order");
  typename TruncatedSeries<Real>::CoeffVector c =
      TruncatedSeries<Real>::CoeffVector::Zero(order + 1);
  c.head(s.coeffs().size()) = s.coeffs();
  return TruncatedSeries<Real>(std::move(c));
}

/// Coefficients c0..cM of s, discarding the tail.
template <typename Real>
TruncatedSeries<Real> truncated(const TruncatedSeries<Real>& s, Eigen::Index order) {
  if (order > s.order()) throw OrderError("truncated: target order above current order");
  return TruncatedSeries<Real>(
      typename TruncatedSeries<Real>::CoeffVector(s.coeffs().head(order + 1)));
}

/// z^k * s; order grows by k so no information is lost.
template <typename Real>
TruncatedSeries<Real> shifted_up(const TruncatedSeries<Real>& s, Eigen::Index k) {
  if (k < 0) throw OrderError("shifted_up: negative shift");
  typename TruncatedSeries<Real>::CoeffVector c =
      TruncatedSeries<Real>::CoeffVector::Zero(s.order() + k + 1);
  c.tail(s.coeffs().size()) = s.coeffs();
  return TruncatedSeries<Real>(std::move(c));
}

/// s / z^k; requires the k lowest coefficients to vanish. Order drops by k.
template <typename Real>
TruncatedSeries<Real> shifted_down(const TruncatedSeries<Real>& s, Eigen::Index k) {
  if (k < 0 || s.order() - k < 1) throw OrderError("shifted_down: shift too large");
  for (Eigen::Index j = 0; j < k; ++j)
    if (std::abs(s.coeff(j)) > Real(kUnitTol))
      throw OrderError("shifted_down: low-order coefficients are nonzero");
  return TruncatedSeries<Real>(
      typename TruncatedSeries<Real>::CoeffVector(s.coeffs().tail(s.order() - k + 1)));
}

/// outer(inner(z)) truncated at the common order; inner must vanish at 0.
template <typename Real>
TruncatedSeries<Real> compose(const TruncatedSeries<Real>& outer,
                              const TruncatedSeries<Real>& inner) {
  detail::require_same_order(outer, inner, "compose");
  if (std::abs(inner.coeff(0)) > Real(kUnitTol))
    throw CompositionError("compose: inner series must vanish at the origin");
  using Vec = typename TruncatedSeries<Real>::CoeffVector;
  const Eigen::Index n = outer.order();
  // Horner accumulation over truncated powers of the inner series.
  Vec acc = Vec::Zero(n + 1);
  acc[0] = outer.coeff(n);
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    acc = detail::convolve_truncated(acc, inner.coeffs());
    acc[0] += outer.coeff(k);
  }
  return TruncatedSeries<Real>(std::move(acc));
}

/// log s for a series with constant term 1 (principal branch), via the
/// coefficient recursion for L' = s'/s. Exact up to rounding.
template <typename Real>
TruncatedSeries<Real> log_unit(const TruncatedSeries<Real>& s) {
  if (std::abs(s.coeff(0) - std::complex<Real>(1)) > Real(kUnitTol))
    throw BranchError("log_unit: constant term must be 1");
  return TruncatedSeries<Real>(detail::log_unit_vec(s.coeffs()));
}

/// The square root R of s with R(0) = 1; requires constant term 1.
template <typename Real>
TruncatedSeries<Real> sqrt_unit(const TruncatedSeries<Real>& s) {
  using Scalar = std::complex<Real>;
  if (std::abs(s.coeff(0) - Scalar(1)) > Real(kUnitTol))
    throw BranchError("sqrt_unit: constant term must be 1");
  using Vec = typename TruncatedSeries<Real>::CoeffVector;
  const Eigen::Index n = s.order();
  Vec r = Vec::Zero(n + 1);
  r[0] = std::sqrt(s.coeff(0));
  for (Eigen::Index k = 1; k <= n; ++k) {
    Scalar acc = s.coeff(k);
    for (Eigen::Index j = 1; j < k; ++j) acc -= r[j] * r[k - j];
    r[k] = acc / (Real(2) * r[0]);
  }
  return TruncatedSeries<Real>(std::move(r));
}

/// Compositional inverse g of a normalized series: compose(f, g) = z up to
/// order N. One coefficient of g is fixed per order.
template <typename Real>
TruncatedSeries<Real> revert(const TruncatedSeries<Real>& f) {
  if (!f.is_normalized()) throw ReversionError("revert: series must be normalized (c0=0, c1=1)");
  using Vec = typename TruncatedSeries<Real>::CoeffVector;
  const Eigen::Index n = f.order();
  Vec g = Vec::Zero(n + 1);
  g[1] = std::complex<Real>(1) / f.coeff(1);
  for (Eigen::Index k = 2; k <= n; ++k) {
    // With g correct below order k and g[k] = 0, the k-th coefficient of
    // f(g(w)) is exactly the defect that a1*g[k] must cancel.
    TruncatedSeries<Real> h = compose(f, TruncatedSeries<Real>(Vec(g)));
    g[k] = -h.coeff(k) / f.coeff(1);
  }
  return TruncatedSeries<Real>(std::move(g));
}

/// Two-variable power series on the rectangular index set 0 <= i, j <= N:
///   s(t, z) = sum d_{i,j} t^i z^j,
/// stored as the (N+1) x (N+1) matrix with row index = power of t.
template <typename Real>
class BivariateSeries {
 public:
  using Scalar = std::complex<Real>;
  using CoeffMatrix = Eigen::MatrixX<Scalar>;

  explicit BivariateSeries(Eigen::Index order)
      : coeffs_(CoeffMatrix::Zero(checked_order(order) + 1, order + 1)) {}

  explicit BivariateSeries(CoeffMatrix coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.rows() != coeffs_.cols()) throw OrderError("bivariate coefficient matrix must be square");
    checked_order(coeffs_.rows() - 1);
  }

  Eigen::Index order() const { return coeffs_.rows() - 1; }
  const CoeffMatrix& coeffs() const { return coeffs_; }

  Scalar coeff(Eigen::Index i, Eigen::Index j) const {
    if (i < 0 || j < 0 || i > order() || j > order())
      throw OrderError("bivariate coefficient index outside truncation order");
    return coeffs_(i, j);
  }

 private:
  static Eigen::Index checked_order(Eigen::Index order) {
    if (order < 1) throw OrderError("bivariate order must be at least 1");
    return order;
  }

  CoeffMatrix coeffs_;
};

/// Product truncated on the rectangular index set.
template <typename Real>
BivariateSeries<Real> mul(const BivariateSeries<Real>& a, const BivariateSeries<Real>& b) {
  if (a.order() != b.order())
    throw OrderMismatchError("bivariate mul: operands have different truncation orders");
  const Eigen::Index n = a.order();
  typename BivariateSeries<Real>::CoeffMatrix out =
      BivariateSeries<Real>::CoeffMatrix::Zero(n + 1, n + 1);
  for (Eigen::Index i = 0; i <= n; ++i)
    for (Eigen::Index j = 0; j <= n; ++j) {
      std::complex<Real> acc(0);
      for (Eigen::Index p = 0; p <= i; ++p)
        acc += a.coeffs().row(p).head(j + 1).reverse().cwiseProduct(
                   b.coeffs().row(i - p).head(j + 1)).sum();
      out(i, j) = acc;
    }
  return BivariateSeries<Real>(std::move(out));
}

/// log s for a two-variable series with d_{0,0} = 1.
///
/// The recursion L'_t s = s'_t is applied in the first variable with
/// coefficients that are truncated polynomials in the second; the slice
/// constant in t is handled by the univariate logarithm.
template <typename Real>
BivariateSeries<Real> log_unit(const BivariateSeries<Real>& s) {
  using Scalar = std::complex<Real>;
  using Vec = Eigen::Vector<Scalar, Eigen::Dynamic>;
  if (std::abs(s.coeff(0, 0) - Scalar(1)) > Real(kUnitTol))
    throw BranchError("bivariate log_unit: constant term must be 1");
  const Eigen::Index n = s.order();
  typename BivariateSeries<Real>::CoeffMatrix out(n + 1, n + 1);

  const Vec s0 = s.coeffs().row(0).transpose();
  out.row(0) = detail::log_unit_vec(s0).transpose();
  const Vec inv0 = detail::reciprocal_vec(s0);

  for (Eigen::Index m = 1; m <= n; ++m) {
    Vec acc = s.coeffs().row(m).transpose();
    for (Eigen::Index k = 1; k < m; ++k) {
      const Vec lk = out.row(k).transpose();
      const Vec smk = s.coeffs().row(m - k).transpose();
      acc -= Real(k) / Real(m) * detail::convolve_truncated(Vec(lk), smk);
    }
    out.row(m) = detail::convolve_truncated(acc, inv0).transpose();
  }
  return BivariateSeries<Real>(std::move(out));
}

using TruncatedSeriesXd = TruncatedSeries<double>;
using BivariateSeriesXd = BivariateSeries<double>;

}  // namespace grunsky_lab

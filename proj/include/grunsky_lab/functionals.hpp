#pragma once

#include <complex>

#include <Eigen/Dense>

#include "grunsky_lab/errors.hpp"
#include "grunsky_lab/series.hpp"

namespace grunsky_lab {

/// Logarithmic coefficients gamma_1..gamma_n of a normalized series, defined
/// by log(f(z)/z) = 2 sum gamma_n z^n. Requires n <= N-1: gamma_N would need
/// the coefficient a_{N+1}, which the truncation does not determine.
template <typename Real>
Eigen::Vector<std::complex<Real>, Eigen::Dynamic> log_coeffs(const TruncatedSeries<Real>& f,
                                                             Eigen::Index n) {
  if (!f.is_normalized()) throw NormalizationError("log_coeffs: series must be normalized");
  if (n < 1 || n > f.order() - 1)
    throw OrderError("log_coeffs: index must be in [1, N-1]");
  const TruncatedSeries<Real> lg = log_unit(shifted_down(f, 1));
  return lg.coeffs().segment(1, n) / Real(2);
}

/// Coefficients A_2..A_n of the compositional inverse f^{-1}.
template <typename Real>
Eigen::Vector<std::complex<Real>, Eigen::Dynamic> inverse_coeffs(const TruncatedSeries<Real>& f,
                                                                 Eigen::Index n) {
  if (!f.is_normalized()) throw NormalizationError("inverse_coeffs: series must be normalized");
  if (n < 2 || n > f.order()) throw OrderError("inverse_coeffs: index must be in [2, N]");
  return revert(f).coeffs().segment(2, n - 1);
}

/// Hankel determinant H_{q,n}: determinant of the q x q matrix whose (i, j)
/// entry is coeffs[n+i+j]. The vector is indexed so that coeffs[k] holds a_k
/// (a_1 = 1 for a normalized series).
template <typename Real>
std::complex<Real> hankel(const Eigen::Vector<std::complex<Real>, Eigen::Dynamic>& coeffs,
                          Eigen::Index q, Eigen::Index n) {
  if (q < 1 || n < 1) throw OrderError("hankel: q and n must be at least 1");
  if (coeffs.size() <= n + 2 * q - 2)
    throw OrderError("hankel: not enough coefficients for H_{q,n}");
  Eigen::MatrixX<std::complex<Real>> m(q, q);
  for (Eigen::Index i = 0; i < q; ++i)
    for (Eigen::Index j = 0; j < q; ++j) m(i, j) = coeffs[n + i + j];
  if (q == 1) return m(0, 0);
  return m.determinant();
}

/// Second Hankel determinant of the logarithmic coefficients,
/// gamma_1 gamma_3 - gamma_2^2.
template <typename Real>
std::complex<Real> log_hankel21(const TruncatedSeries<Real>& f) {
  if (f.order() < 4) throw OrderError("log_hankel21: order must be at least 4");
  const auto g = log_coeffs(f, 3);
  return g[0] * g[2] - g[1] * g[1];
}

/// Every scalar functional of one function gathered in a single value object:
/// initial coefficients, logarithmic and inverse coefficients, Hankel
/// determinants of f and f^{-1}, and the modulus differences used by the
/// statement scans.
struct FunctionalReport {
  using Complex = std::complex<double>;

  Eigen::Vector<Complex, 6> a;      // a_2..a_7
  Eigen::Vector<Complex, 6> gamma;  // gamma_1..gamma_6
  Eigen::Vector<Complex, 5> A;      // A_2..A_6

  Complex h22{}, h31{}, h23{};             // H_{2,2}(f), H_{3,1}(f), H_{2,3}(f)
  Complex h22_inv{}, h31_inv{}, h32_inv{}; // same determinants of f^{-1}
  Complex loghank21{};                     // gamma_1 gamma_3 - gamma_2^2

  double diff_a4_a3 = 0;  // |a_4| - |a_3|
  double diff_a5_a4 = 0;
  double diff_a5_a3 = 0;
  double diff_a3_a2 = 0;
  double abs_a2a3_minus_a4 = 0;
  Eigen::Vector<double, 5> gamma_diffs;  // |gamma_n| - |gamma_{n-1}|, n = 2..6

  Complex h22_gap{};  // H_{2,2}(f^{-1}) - H_{2,2}(f)
  Complex h31_gap{};
};

/// Computes the full report from one shared series of order >= 12.
inline FunctionalReport functional_report(const TruncatedSeries<double>& f) {
  if (!f.is_normalized())
    throw NormalizationError("functional_report: series must be normalized");
  if (f.order() < 12) throw OrderError("functional_report: order must be at least 12");

  FunctionalReport rep;
  rep.a = f.coeffs().segment(2, 6);
  rep.gamma = log_coeffs(f, 6);
  const TruncatedSeries<double> inv = revert(f);
  rep.A = inv.coeffs().segment(2, 5);

  rep.h22 = hankel(f.coeffs(), 2, 2);
  rep.h31 = hankel(f.coeffs(), 3, 1);
  rep.h23 = hankel(f.coeffs(), 2, 3);
  rep.h22_inv = hankel(inv.coeffs(), 2, 2);
  rep.h31_inv = hankel(inv.coeffs(), 3, 1);
  rep.h32_inv = hankel(inv.coeffs(), 3, 2);
  rep.loghank21 = log_hankel21(f);

  const auto amod = [&](int k) { return std::abs(f.coeff(k)); };
  rep.diff_a4_a3 = amod(4) - amod(3);
  rep.diff_a5_a4 = amod(5) - amod(4);
  rep.diff_a5_a3 = amod(5) - amod(3);
  rep.diff_a3_a2 = amod(3) - amod(2);
  rep.abs_a2a3_minus_a4 = std::abs(f.coeff(2) * f.coeff(3) - f.coeff(4));
  for (int n = 2; n <= 6; ++n)
    rep.gamma_diffs[n - 2] = std::abs(rep.gamma[n - 1]) - std::abs(rep.gamma[n - 2]);

  rep.h22_gap = rep.h22_inv - rep.h22;
  rep.h31_gap = rep.h31_inv - rep.h31;
  return rep;
}

}  // namespace grunsky_lab

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "grunsky_lab/catalog.hpp"
#include "grunsky_lab/errors.hpp"
#include "grunsky_lab/functionals.hpp"
#include "grunsky_lab/series.hpp"
#include "oracle_support.hpp"

using namespace grunsky_lab;
using Complex = std::complex<double>;

namespace {

TruncatedSeriesXd koebe(Eigen::Index order) { return catalog_series("koebe", {0.0}, order); }
TruncatedSeriesXd odd_extremal(Eigen::Index order) {  // z/(1-z^2)
  return catalog_series("m_koebe", {2.0}, order);
}

}  // namespace

TEST_CASE("logarithmic coefficients") {
  const auto gk = log_coeffs(koebe(12), 11);
  for (Eigen::Index n = 1; n <= 11; ++n) CHECK(std::abs(gk[n - 1] - 1.0 / double(n)) < 1e-12);

  const auto gz = log_coeffs(TruncatedSeriesXd::identity(12), 11);
  CHECK(gz.cwiseAbs().maxCoeff() == 0.0);

  const auto gf1 = log_coeffs(odd_extremal(12), 6);
  CHECK(std::abs(gf1[0]) < 1e-14);              // gamma_1
  CHECK(std::abs(gf1[1] - 0.5) < 1e-14);        // gamma_2
  CHECK(std::abs(gf1[2]) < 1e-14);              // gamma_3
  CHECK(std::abs(gf1[3] - 0.25) < 1e-14);       // gamma_4

  CHECK_THROWS_AS(log_coeffs(koebe(12), 12), OrderError);
  CHECK_THROWS_AS(log_coeffs(TruncatedSeriesXd::constant(12, 1.0), 3), NormalizationError);
}

TEST_CASE("log coefficients agree with the closed forms") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto f = oracle::random_normalized_series(seed, 12);
    const auto g = log_coeffs(f, 4);
    const auto expected = oracle::gamma_closed_forms(f);
    for (int n = 0; n < 4; ++n) CHECK(std::abs(g[n] - expected[n]) < 1e-12);
  }
}

TEST_CASE("inverse coefficients") {
  const auto ak = inverse_coeffs(koebe(12), 5);
  const double expected[] = {-2, 5, -14, 42};
  for (int n = 0; n < 4; ++n) CHECK(std::abs(ak[n] - expected[n]) < 1e-10);

  CHECK(inverse_coeffs(TruncatedSeriesXd::identity(12), 12).cwiseAbs().maxCoeff() == 0.0);

  const auto af1 = inverse_coeffs(odd_extremal(12), 5);
  CHECK(std::abs(af1[0]) < 1e-12);         // A_2
  CHECK(std::abs(af1[1] + 1.0) < 1e-12);   // A_3
  CHECK(std::abs(af1[2]) < 1e-12);         // A_4
  CHECK(std::abs(af1[3] - 2.0) < 1e-12);   // A_5

  CHECK_THROWS_AS(inverse_coeffs(koebe(12), 13), OrderError);
}

TEST_CASE("inverse coefficients agree with the closed forms") {
  for (std::uint64_t seed = 31; seed <= 60; ++seed) {
    const auto f = oracle::random_normalized_series(seed, 12);
    const auto a = inverse_coeffs(f, 5);
    const auto expected = oracle::inverse_closed_forms(f);
    for (int n = 0; n < 4; ++n) CHECK(std::abs(a[n] - expected[n]) < 1e-12);
  }
}

TEST_CASE("hankel determinants") {
  const auto k = koebe(12);
  CHECK(std::abs(hankel(k.coeffs(), 2, 2) - Complex(-1.0)) < 1e-12);  // 2*4 - 3^2

  const auto inv = revert(k);
  CHECK(std::abs(hankel(inv.coeffs(), 2, 2) - Complex(3.0)) < 1e-9);  // (-2)(-14) - 25

  // H_{3,1} against the expanded formula with a_n = n.
  const Complex a2 = k.coeff(2), a3 = k.coeff(3), a4 = k.coeff(4), a5 = k.coeff(5);
  const Complex expanded =
      a3 * (a2 * a4 - a3 * a3) - a4 * (a4 - a2 * a3) + a5 * (a3 - a2 * a2);
  CHECK(std::abs(hankel(k.coeffs(), 3, 1) - expanded) < 1e-12);
  CHECK(std::abs(expanded) < 1e-12);  // 3(-1) - 4(-2) + 5(-1) = 0

  CHECK_THROWS_AS(hankel(k.coeffs(), 3, 12), OrderError);
}

TEST_CASE("hankel matches the expanded formulas on random series") {
  for (std::uint64_t seed = 61; seed <= 80; ++seed) {
    const auto f = oracle::random_normalized_series(seed, 12);
    const Complex a2 = f.coeff(2), a3 = f.coeff(3), a4 = f.coeff(4), a5 = f.coeff(5);
    CHECK(std::abs(hankel(f.coeffs(), 2, 2) - (a2 * a4 - a3 * a3)) < 1e-13);
    const Complex h31 =
        a3 * (a2 * a4 - a3 * a3) - a4 * (a4 - a2 * a3) + a5 * (a3 - a2 * a2);
    CHECK(std::abs(hankel(f.coeffs(), 3, 1) - h31) < 1e-13);
  }
}

TEST_CASE("log hankel determinant") {
  CHECK(std::abs(log_hankel21(koebe(12)) - Complex(1.0 / 12.0)) < 1e-13);
  CHECK(std::abs(log_hankel21(TruncatedSeriesXd::identity(12))) == 0.0);
  CHECK(std::abs(log_hankel21(odd_extremal(12)) - Complex(-0.25)) < 1e-13);

  // Both sides of the identity gamma_1 gamma_3 - gamma_2^2
  //   = (a_2 a_4 - a_3^2 + a_2^4/12)/4 agree on random series.
  for (std::uint64_t seed = 81; seed <= 100; ++seed) {
    const auto f = oracle::random_normalized_series(seed, 12);
    const Complex a2 = f.coeff(2), a3 = f.coeff(3), a4 = f.coeff(4);
    const Complex rhs = (a2 * a4 - a3 * a3 + a2 * a2 * a2 * a2 / 12.0) / 4.0;
    CHECK(std::abs(log_hankel21(f) - rhs) < 1e-12);
  }
}

TEST_CASE("functional report for sharp witnesses") {
  const auto rep_k = functional_report(koebe(12));
  CHECK(std::abs(rep_k.diff_a4_a3 - 1.0) < 1e-12);
  CHECK(std::abs(rep_k.abs_a2a3_minus_a4 - 2.0) < 1e-12);
  CHECK(std::abs(rep_k.h22_gap - Complex(4.0)) < 1e-9);
  CHECK(std::abs(rep_k.h31_gap - Complex(1.0)) < 1e-9);

  const auto rep_id = functional_report(TruncatedSeriesXd::identity(12));
  CHECK(rep_id.a.cwiseAbs().maxCoeff() == 0.0);
  CHECK(rep_id.gamma.cwiseAbs().maxCoeff() == 0.0);
  CHECK(rep_id.A.cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(rep_id.h22) + std::abs(rep_id.h31) + std::abs(rep_id.h23) == 0.0);
  CHECK(std::abs(rep_id.loghank21) == 0.0);

  const auto rep_f1 = functional_report(odd_extremal(12));
  CHECK(std::abs(rep_f1.h31) < 1e-12);
  CHECK(std::abs(rep_f1.h31_inv - Complex(-1.0)) < 1e-12);
  CHECK(std::abs(std::abs(rep_f1.h31_gap) - 1.0) < 1e-12);

  CHECK_THROWS_AS(functional_report(koebe(11)), OrderError);
}

TEST_CASE("catalog known values match the computed report") {
  for (const auto& fn : enumerate_catalog(0, 0)) {
    if (fn.known.empty()) continue;
    const auto rep = functional_report(fn.generator(12));
    for (const auto& [key, expected] : fn.known) {
      Complex actual;
      if (key == "h22") actual = rep.h22;
      else if (key == "h31") actual = rep.h31;
      else if (key == "h22_inv") actual = rep.h22_inv;
      else if (key == "h31_inv") actual = rep.h31_inv;
      else if (key == "h22_gap") actual = rep.h22_gap;
      else if (key == "h31_gap") actual = rep.h31_gap;
      else if (key == "loghank21") actual = rep.loghank21;
      else if (key[0] == 'A') actual = rep.A[std::stoi(key.substr(1)) - 2];
      else FAIL("unhandled known key ", key);
      INFO(fn.name, " ", key);
      CHECK(std::abs(actual - expected) < 1e-9);
    }
  }
}

TEST_CASE("inverse hankel identities hold for arbitrary normalized series") {
  for (std::uint64_t seed = 101; seed <= 140; ++seed) {
    const auto f = oracle::random_normalized_series(seed, 12);
    const auto rep = functional_report(f);
    const Complex a2 = f.coeff(2), a3 = f.coeff(3), a4 = f.coeff(4);
    const Complex q = a3 - a2 * a2;

    // H_{3,1}(f^{-1}) = H_{3,1}(f) - (a_3 - a_2^2)^3.
    CHECK(std::abs(rep.h31_inv - (rep.h31 - q * q * q)) < 1e-10);

    // H_{2,2}(f^{-1}) = a_2 a_4 - a_3^2 - a_2^2 (a_3 - a_2^2).
    CHECK(std::abs(rep.h22_inv - (a2 * a4 - a3 * a3 - a2 * a2 * q)) < 1e-10);

    // loghank21 is assembled from the stored gammas.
    CHECK(std::abs(rep.loghank21 -
                   (rep.gamma[0] * rep.gamma[2] - rep.gamma[1] * rep.gamma[1])) == 0.0);
  }
}

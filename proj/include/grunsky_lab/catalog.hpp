#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "grunsky_lab/errors.hpp"
#include "grunsky_lab/series.hpp"

namespace grunsky_lab {

/// How univalence of a catalog member is certified.
enum class UnivalenceWitness {
  closed_form,            // univalent by construction (explicit conformal map)
  coefficient_criterion,  // sum_{n>=2} n |a_n| <= 1
};

/// A catalog member: a named generator producing the series at any requested
/// order, with optional known functional values for oracle tests.
struct NamedFunction {
  std::string name;
  std::string kind;
  std::vector<double> params;
  UnivalenceWitness witness = UnivalenceWitness::closed_form;
  std::function<TruncatedSeriesXd(Eigen::Index)> generator;
  std::map<std::string, std::complex<double>> known;
};

namespace detail {

inline TruncatedSeriesXd koebe_series(double theta, Eigen::Index order) {
  // z/(1 - e^{i theta} z)^2 has a_n = n e^{i theta (n-1)}.
  TruncatedSeriesXd::CoeffVector c = TruncatedSeriesXd::CoeffVector::Zero(order + 1);
  const std::complex<double> rot = std::polar(1.0, theta);
  std::complex<double> phase(1.0, 0.0);
  for (Eigen::Index n = 1; n <= order; ++n) {
    c[n] = double(n) * phase;
    phase *= rot;
  }
  return TruncatedSeriesXd(std::move(c));
}

inline TruncatedSeriesXd m_koebe_series(int m, Eigen::Index order) {
  // z/(1 - z^m)^{2/m}: binomial-series recursion for (1-u)^{-2/m},
  // b_k = b_{k-1} (2/m + k - 1)/k, giving a_{1+mk} = b_k.
  TruncatedSeriesXd::CoeffVector c = TruncatedSeriesXd::CoeffVector::Zero(order + 1);
  const double alpha = 2.0 / double(m);
  double b = 1.0;
  c[1] = 1.0;
  for (Eigen::Index k = 1; 1 + m * k <= order; ++k) {
    b *= (alpha + double(k) - 1.0) / double(k);
    c[1 + m * k] = b;
  }
  return TruncatedSeriesXd(std::move(c));
}

inline TruncatedSeriesXd half_plane_series(Eigen::Index order) {
  TruncatedSeriesXd::CoeffVector c = TruncatedSeriesXd::CoeffVector::Ones(order + 1);
  c[0] = 0.0;
  return TruncatedSeriesXd(std::move(c));
}

inline double unit_uniform(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;  // [0, 1), platform independent
}

inline TruncatedSeriesXd random_criterion_series(std::uint64_t seed, Eigen::Index order) {
  // Random coefficients rescaled so that sum_{n>=2} n |a_n| = 0.95 < 1, a
  // sufficient condition for univalence checkable from coefficients alone.
  std::mt19937_64 rng(seed);
  TruncatedSeriesXd::CoeffVector c = TruncatedSeriesXd::CoeffVector::Zero(order + 1);
  c[1] = 1.0;
  double weighted = 0.0;
  for (Eigen::Index n = 2; n <= order; ++n) {
    c[n] = std::complex<double>(2.0 * unit_uniform(rng) - 1.0, 2.0 * unit_uniform(rng) - 1.0);
    weighted += double(n) * std::abs(c[n]);
  }
  if (weighted == 0.0) {
    c[2] = 0.475;  // all-zero draw; keep the invariant anyway
    weighted = 0.95;
  }
  const double factor = 0.95 / weighted;
  for (Eigen::Index n = 2; n <= order; ++n) c[n] *= factor;
  return TruncatedSeriesXd(std::move(c));
}

}  // namespace detail

/// Generates a catalog series by name.
///
/// Names and parameters:
///   identity                 -> z
///   half_plane               -> z/(1-z)
///   koebe            (theta) -> z/(1 - e^{i theta} z)^2
///   m_koebe          (m>=2)  -> z/(1 - z^m)^{2/m}
///   random_criterion (seed)  -> random series with sum n|a_n| = 0.95
inline TruncatedSeriesXd catalog_series(const std::string& kind,
                                        const std::vector<double>& params,
                                        Eigen::Index order) {
  if (kind == "identity") return TruncatedSeriesXd::identity(order);
  if (kind == "half_plane") return detail::half_plane_series(order);
  if (kind == "koebe") {
    const double theta = params.empty() ? 0.0 : params[0];
    return detail::koebe_series(theta, order);
  }
  if (kind == "m_koebe") {
    if (params.empty()) throw ConfigError("m_koebe requires the parameter m");
    const double m = params[0];
    if (m < 2.0 || m != std::floor(m)) throw ConfigError("m_koebe requires an integer m >= 2");
    return detail::m_koebe_series(int(m), order);
  }
  if (kind == "random_criterion") {
    if (params.empty()) throw ConfigError("random_criterion requires a seed parameter");
    return detail::random_criterion_series(std::uint64_t(params[0]), order);
  }
  throw ConfigError("unknown catalog function: " + kind);
}

/// Deterministic catalog: the closed-form members (with 8 rotations of the
/// Koebe function), then `samples` random coefficient-criterion members.
/// The same seed always yields the same list, bit for bit.
inline std::vector<NamedFunction> enumerate_catalog(int samples, std::uint64_t seed) {
  if (samples < 0) throw ConfigError("enumerate_catalog: samples must be nonnegative");
  std::vector<NamedFunction> out;

  const auto add = [&](std::string name, std::string kind, std::vector<double> params,
                       UnivalenceWitness witness,
                       std::map<std::string, std::complex<double>> known = {}) {
    NamedFunction fn;
    fn.name = std::move(name);
    fn.kind = std::move(kind);
    fn.params = std::move(params);
    fn.witness = witness;
    fn.known = std::move(known);
    fn.generator = [kind = fn.kind, params = fn.params](Eigen::Index order) {
      return catalog_series(kind, params, order);
    };
    out.push_back(std::move(fn));
  };

  add("identity", "identity", {}, UnivalenceWitness::closed_form);
  add("half_plane", "half_plane", {}, UnivalenceWitness::closed_form);
  add("m_koebe(2)", "m_koebe", {2}, UnivalenceWitness::closed_form,
      {{"h31", 0.0}, {"h31_inv", -1.0}, {"A2", 0.0}, {"A3", -1.0}, {"A4", 0.0}, {"A5", 2.0},
       {"loghank21", -0.25}});
  add("m_koebe(3)", "m_koebe", {3}, UnivalenceWitness::closed_form);
  add("m_koebe(4)", "m_koebe", {4}, UnivalenceWitness::closed_form);

  for (int k = 0; k < 8; ++k) {
    const double theta = 2.0 * std::numbers::pi * double(k) / 8.0;
    std::map<std::string, std::complex<double>> known;
    if (k == 0)
      known = {{"h22", -1.0}, {"h31", 0.0},    {"h22_inv", 3.0}, {"h22_gap", 4.0},
               {"h31_gap", 1.0}, {"A2", -2.0}, {"A3", 5.0},      {"A4", -14.0},
               {"A5", 42.0},     {"loghank21", 1.0 / 12.0}};
    add("koebe(theta=" + std::to_string(k) + "pi/4)", "koebe", {theta},
        UnivalenceWitness::closed_form, std::move(known));
  }

  std::mt19937_64 master(seed);
  for (int i = 0; i < samples; ++i) {
    // 32-bit member seeds survive the round trip through the double params.
    const std::uint64_t member_seed = master() >> 32;
    add("random_criterion(seed=" + std::to_string(member_seed) + ")", "random_criterion",
        {double(member_seed)}, UnivalenceWitness::coefficient_criterion);
  }
  return out;
}

}  // namespace grunsky_lab

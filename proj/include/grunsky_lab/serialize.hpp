#pragma once

#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "grunsky_lab/errors.hpp"
#include "grunsky_lab/functionals.hpp"
#include "grunsky_lab/grunsky.hpp"
#include "grunsky_lab/scan.hpp"
#include "grunsky_lab/series.hpp"

namespace grunsky_lab {

using json = nlohmann::json;

inline json complex_to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

inline std::complex<double> complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("expected a complex value as a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

/// {"order": N, "coeffs": [[re, im], ...]} with exactly N+1 pairs.
inline json series_to_json(const TruncatedSeriesXd& s) {
  json coeffs = json::array();
  for (Eigen::Index k = 0; k <= s.order(); ++k) coeffs.push_back(complex_to_json(s.coeff(k)));
  return json{{"order", s.order()}, {"coeffs", std::move(coeffs)}};
}

inline TruncatedSeriesXd series_from_json(const json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("coeffs"))
    throw InputError("series file must be an object with 'order' and 'coeffs'");
  if (!j["order"].is_number_integer()) throw InputError("series 'order' must be an integer");
  const auto order = j["order"].get<Eigen::Index>();
  if (order < 1) throw InputError("series 'order' must be at least 1");
  const json& coeffs = j["coeffs"];
  if (!coeffs.is_array() || Eigen::Index(coeffs.size()) != order + 1)
    throw InputError("series 'coeffs' must hold exactly order+1 [re, im] pairs");
  TruncatedSeriesXd::CoeffVector c(order + 1);
  for (Eigen::Index k = 0; k <= order; ++k) c[k] = complex_from_json(coeffs[std::size_t(k)]);
  if (!c.allFinite()) throw InputError("series coefficients must be finite");
  return TruncatedSeriesXd(std::move(c));
}

/// {"order": M, "parity": "full"|"odd", "omega": [[re, im], ...]} row-major.
inline json table_to_json(const GrunskyTableXd& t) {
  json omega = json::array();
  for (Eigen::Index p = 0; p <= t.order; ++p)
    for (Eigen::Index q = 0; q <= t.order; ++q) omega.push_back(complex_to_json(t.omega(p, q)));
  return json{{"order", t.order},
              {"parity", t.parity == Parity::full ? "full" : "odd"},
              {"omega", std::move(omega)}};
}

/// Flat object keyed by functional name.
inline json report_to_json(const FunctionalReport& rep) {
  json j;
  for (int k = 0; k < 6; ++k) j["a" + std::to_string(k + 2)] = complex_to_json(rep.a[k]);
  for (int k = 0; k < 6; ++k) j["gamma" + std::to_string(k + 1)] = complex_to_json(rep.gamma[k]);
  for (int k = 0; k < 5; ++k) j["A" + std::to_string(k + 2)] = complex_to_json(rep.A[k]);
  j["h22"] = complex_to_json(rep.h22);
  j["h31"] = complex_to_json(rep.h31);
  j["h23"] = complex_to_json(rep.h23);
  j["h22_inv"] = complex_to_json(rep.h22_inv);
  j["h31_inv"] = complex_to_json(rep.h31_inv);
  j["h32_inv"] = complex_to_json(rep.h32_inv);
  j["loghank21"] = complex_to_json(rep.loghank21);
  j["diff_a4_a3"] = rep.diff_a4_a3;
  j["diff_a5_a4"] = rep.diff_a5_a4;
  j["diff_a5_a3"] = rep.diff_a5_a3;
  j["diff_a3_a2"] = rep.diff_a3_a2;
  j["abs_a2a3_minus_a4"] = rep.abs_a2a3_minus_a4;
  for (int n = 2; n <= 6; ++n) j["gamma_diff_" + std::to_string(n)] = rep.gamma_diffs[n - 2];
  j["h22_gap"] = complex_to_json(rep.h22_gap);
  j["h31_gap"] = complex_to_json(rep.h31_gap);
  return j;
}

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

/// One CSV row (with header) of the flat report; complex entries split into
/// _re/_im columns.
inline std::string report_to_csv(const FunctionalReport& rep) {
  const json j = report_to_json(rep);
  std::string header, row;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto append = [&](const std::string& name, double v) {
      if (!header.empty()) {
        header += ',';
        row += ',';
      }
      header += name;
      row += detail::format_double(v);
    };
    if (it.value().is_array()) {
      append(it.key() + "_re", it.value()[0].get<double>());
      append(it.key() + "_im", it.value()[1].get<double>());
    } else {
      append(it.key(), it.value().get<double>());
    }
  }
  return header + "\n" + row + "\n";
}

inline json scan_report_to_json(const ScanReport& rep, const BoundStatement& st) {
  return json{{"statement_id", rep.statement_id},
              {"functional", st.functional},
              {"bound", st.bound},
              {"status", st.status == StatementStatus::proved     ? "proved"
                         : st.status == StatementStatus::cited    ? "cited"
                                                                  : "conjecture"},
              {"description", st.description},
              {"samples_tested", rep.samples_tested},
              {"max_observed", rep.max_observed},
              {"margin", rep.margin},
              {"witness", rep.witness},
              {"violated", rep.violated}};
}

/// Fixed columns: statement_id,samples,max_observed,bound,margin,witness_name.
inline std::string scan_to_csv(const std::vector<ScanReport>& reports,
                               const std::vector<BoundStatement>& statements) {
  std::string out = "statement_id,samples,max_observed,bound,margin,witness_name\n";
  for (const auto& rep : reports) {
    double bound = 0;
    for (const auto& st : statements)
      if (st.id == rep.statement_id) bound = st.bound;
    out += rep.statement_id + ',' + std::to_string(rep.samples_tested) + ',' +
           detail::format_double(rep.max_observed) + ',' + detail::format_double(bound) + ',' +
           detail::format_double(rep.margin) + ',' + rep.witness + "\n";
  }
  return out;
}

}  // namespace grunsky_lab

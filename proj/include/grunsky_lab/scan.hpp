#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "grunsky_lab/catalog.hpp"
#include "grunsky_lab/errors.hpp"
#include "grunsky_lab/functionals.hpp"
#include "grunsky_lab/grunsky.hpp"
#include "grunsky_lab/series.hpp"

namespace grunsky_lab {

/// Filter a catalog member must pass before a statement applies to it.
enum class Precondition { none, a2_zero, a3_zero, odd_function };

enum class StatementStatus {
  proved,      // full derivation available; a violation is an implementation bug
  cited,       // established elsewhere; a violation is still a bug signal
  conjecture,  // a violation would be a finding and is reported, not asserted
};

/// Machine-readable bound statement: |functional| <= bound for every
/// univalent function passing the precondition.
struct BoundStatement {
  std::string id;
  std::string functional;  // key into the scan functional registry
  double bound = 0;
  Precondition pre = Precondition::none;
  StatementStatus status = StatementStatus::cited;
  std::string description;
};

/// Outcome of scanning one statement over the catalog.
struct ScanReport {
  std::string statement_id;
  int samples_tested = 0;
  double max_observed = 0;
  double margin = 0;  // bound - max_observed
  std::string witness;
  bool violated = false;
};

/// Violations are flagged only beyond this slack, so sharp witnesses that
/// attain a bound exactly do not trip the detector through rounding.
inline constexpr double kViolationTol = 1e-9;

/// Evaluates a named real-valued functional. The report carries everything up
/// to gamma_6; the higher logarithmic-coefficient differences fall back to
/// the series itself.
inline double evaluate_statement_functional(const std::string& functional,
                                            const TruncatedSeries<double>& f,
                                            const FunctionalReport& rep) {
  if (functional == "abs_gamma3") return std::abs(rep.gamma[2]);
  if (functional == "abs_gamma4") return std::abs(rep.gamma[3]);
  if (functional == "abs_h22") return std::abs(rep.h22);
  if (functional == "abs_h31") return std::abs(rep.h31);
  if (functional == "abs_h23") return std::abs(rep.h23);
  if (functional == "abs_h22_inv") return std::abs(rep.h22_inv);
  if (functional == "abs_h31_inv") return std::abs(rep.h31_inv);
  if (functional == "abs_h32_inv") return std::abs(rep.h32_inv);
  if (functional == "abs_h22_gap") return std::abs(rep.h22_gap);
  if (functional == "abs_h31_gap") return std::abs(rep.h31_gap);
  if (functional == "abs_loghank21") return std::abs(rep.loghank21);
  if (functional == "abs_a2") return std::abs(rep.a[0]);
  if (functional == "abs_a3") return std::abs(rep.a[1]);
  if (functional == "abs_a4") return std::abs(rep.a[2]);
  if (functional == "abs_a5") return std::abs(rep.a[3]);
  if (functional == "diff_a4_a3") return rep.diff_a4_a3;
  if (functional == "diff_a5_a4") return rep.diff_a5_a4;
  if (functional == "diff_a5_a3") return rep.diff_a5_a3;
  if (functional == "abs_a2a3_minus_a4") return rep.abs_a2a3_minus_a4;
  if (functional.rfind("gamma_diff_", 0) == 0) {
    const int n = std::stoi(functional.substr(11));
    if (n < 2 || n > 8) throw ConfigError("gamma_diff index out of range: " + functional);
    const auto g = log_coeffs(f, n);
    return std::abs(g[n - 1]) - std::abs(g[n - 2]);
  }
  throw ConfigError("unknown scan functional: " + functional);
}

/// The statement set scanned by default: every bound with an explicit numeric
/// value, plus the consecutive logarithmic-coefficient-difference conjecture
/// |gamma_n| - |gamma_{n-1}| <= 1/sqrt(2n-1) for n = 3..8.
inline std::vector<BoundStatement> default_statements() {
  std::vector<BoundStatement> s;
  const auto add = [&](std::string id, std::string functional, double bound, Precondition pre,
                       StatementStatus status, std::string description) {
    s.push_back({std::move(id), std::move(functional), bound, pre, status, std::move(description)});
  };
  const double sqrt5 = std::sqrt(5.0), sqrt7 = std::sqrt(7.0);

  add("gamma3", "abs_gamma3", 0.5566178, Precondition::none, StatementStatus::proved,
      "third logarithmic coefficient");
  add("gamma4", "abs_gamma4", 0.51059, Precondition::none, StatementStatus::cited,
      "fourth logarithmic coefficient");
  add("gamma_diff32", "gamma_diff_3", 1.0 / sqrt5, Precondition::none, StatementStatus::proved,
      "|gamma_3| - |gamma_2|");
  add("gamma_diff43", "gamma_diff_4", 1.0 / sqrt7, Precondition::none, StatementStatus::cited,
      "|gamma_4| - |gamma_3|");
  for (int n = 3; n <= 8; ++n)
    add("gamma_diff_conj_n" + std::to_string(n), "gamma_diff_" + std::to_string(n),
        1.0 / std::sqrt(2.0 * n - 1.0), Precondition::none, StatementStatus::conjecture,
        "conjectured |gamma_n| - |gamma_{n-1}| bound, n = " + std::to_string(n));

  add("h22_range", "abs_h22", 11.0 / 3.0, Precondition::none, StatementStatus::cited,
      "second Hankel determinant, coarse range");
  add("h31_range", "abs_h31", (32.0 + std::sqrt(285.0)) / 15.0, Precondition::none,
      StatementStatus::cited, "third Hankel determinant, coarse range");
  add("h22", "abs_h22", 1.3614, Precondition::none, StatementStatus::cited,
      "second Hankel determinant");
  add("h31", "abs_h31", 1.6787, Precondition::none, StatementStatus::cited,
      "third Hankel determinant");
  add("h23_a2zero", "abs_h23", 2.02757, Precondition::a2_zero, StatementStatus::cited,
      "H_{2,3} with vanishing second coefficient");
  add("h23", "abs_h23", 4.8986977, Precondition::none, StatementStatus::cited, "H_{2,3}");
  add("h22_inv", "abs_h22_inv", 3.0, Precondition::none, StatementStatus::proved,
      "sharp H_{2,2} of the inverse");
  add("h31_inv", "abs_h31_inv", 2.36639, Precondition::none, StatementStatus::cited,
      "H_{3,1} of the inverse");
  add("h22_gap", "abs_h22_gap", 4.0, Precondition::none, StatementStatus::proved,
      "sharp |H_{2,2}(f^-1) - H_{2,2}(f)|");
  add("h31_gap", "abs_h31_gap", 1.0, Precondition::none, StatementStatus::proved,
      "sharp |H_{3,1}(f^-1) - H_{3,1}(f)|");
  add("h32_inv_a2zero", "abs_h32_inv", 3.57321, Precondition::a2_zero, StatementStatus::cited,
      "H_{3,2} of the inverse with vanishing second coefficient");
  add("loghank21", "abs_loghank21", 1.0 / 3.0, Precondition::none, StatementStatus::cited,
      "second Hankel determinant of logarithmic coefficients");

  add("a3_a2zero", "abs_a3", 1.0, Precondition::a2_zero, StatementStatus::cited,
      "|a_3| with vanishing second coefficient");
  add("a4_a2zero", "abs_a4", 2.0 / 3.0, Precondition::a2_zero, StatementStatus::cited,
      "|a_4| with vanishing second coefficient");
  add("a5_a2zero", "abs_a5", 0.75 + 1.0 / sqrt7, Precondition::a2_zero, StatementStatus::cited,
      "|a_5| with vanishing second coefficient");
  add("h22_a2zero", "abs_h22", 1.0, Precondition::a2_zero, StatementStatus::cited,
      "H_{2,2} with vanishing second coefficient");
  add("h31_a2zero", "abs_h31", 1.026, Precondition::a2_zero, StatementStatus::cited,
      "H_{3,1} with vanishing second coefficient");

  add("a2_a3zero", "abs_a2", 1.0, Precondition::a3_zero, StatementStatus::cited,
      "|a_2| with vanishing third coefficient");
  add("a4_a3zero", "abs_a4", std::sqrt(21.0 / 5.0) / 4.0 + 5.0 / 8.0, Precondition::a3_zero,
      StatementStatus::cited, "|a_4| with vanishing third coefficient");
  add("a5_a3zero", "abs_a5", 1.674896577, Precondition::a3_zero, StatementStatus::cited,
      "|a_5| with vanishing third coefficient");
  add("h22_a3zero", "abs_h22", std::sqrt(21.0 / 5.0) / 4.0 + 5.0 / 8.0, Precondition::a3_zero,
      StatementStatus::cited, "H_{2,2} with vanishing third coefficient");

  add("a_diff43", "diff_a4_a3", 1.75185, Precondition::none, StatementStatus::cited,
      "|a_4| - |a_3|");
  add("a_diff53_odd", "diff_a5_a3", 2.0 / sqrt7, Precondition::odd_function,
      StatementStatus::cited, "|a_5| - |a_3| for odd functions");
  add("a2a3_a4", "abs_a2a3_minus_a4", 2.10064, Precondition::none, StatementStatus::cited,
      "|a_2 a_3 - a_4|");
  add("a_diff54", "diff_a5_a4", 2.3297, Precondition::none, StatementStatus::cited,
      "|a_5| - |a_4|");
  add("a2a3_a4_conj", "abs_a2a3_minus_a4", 2.0, Precondition::none, StatementStatus::conjecture,
      "conjectured sharp |a_2 a_3 - a_4|");
  return s;
}

inline bool passes_precondition(Precondition pre, const TruncatedSeries<double>& f) {
  switch (pre) {
    case Precondition::none:
      return true;
    case Precondition::a2_zero:
      return std::abs(f.coeff(2)) <= 1e-12;
    case Precondition::a3_zero:
      return std::abs(f.coeff(3)) <= 1e-12;
    case Precondition::odd_function: {
      for (Eigen::Index n = 2; n <= f.order(); n += 2)
        if (std::abs(f.coeff(n)) > 1e-12) return false;
      return true;
    }
  }
  return false;
}

struct CatalogSpec {
  int samples = 200;
  std::uint64_t seed = 0;
  int order = 12;
};

namespace detail {

/// Evaluates a pure function over indexed slots, optionally in parallel.
/// Results land in preassigned positions, so the outcome is independent of
/// the thread count.
template <typename Fn>
void parallel_for_index(std::size_t count, int threads, Fn&& fn) {
  if (threads == 0) threads = int(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, 64));
  if (threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> futures;
  const std::size_t chunk = (count + std::size_t(threads) - 1) / std::size_t(threads);
  for (int t = 0; t < threads; ++t) {
    const std::size_t begin = std::size_t(t) * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    futures.push_back(std::async(std::launch::async, [begin, end, &fn] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    }));
  }
  for (auto& f : futures) f.get();
}

}  // namespace detail

/// Result of a full catalog scan, including the identity-residual tripwire.
struct ScanOutcome {
  std::vector<ScanReport> reports;            // sorted by statement id
  double identity_residual_max = 0;           // worst coefficient-relation residual
  bool identity_failure = false;              // residual above 1e-10 (bug signal)
};

/// Scans every statement over the catalog: evaluates its functional on each
/// applicable member, records the maximum, the margin against the bound, and
/// the witness attaining it. Catalog evaluation may run in parallel; the
/// reduction is sequential in member order, so results are deterministic.
inline ScanOutcome bound_scan(const std::vector<BoundStatement>& statements,
                              const CatalogSpec& spec, int threads = 1) {
  if (spec.samples < 1) throw ConfigError("bound_scan: samples must be at least 1");
  if (spec.order < 12) throw ConfigError("bound_scan: order must be at least 12");
  for (const auto& st : statements)
    if (!(st.bound > 0) || !std::isfinite(st.bound))
      throw ConfigError("bound_scan: statement bound must be finite and positive: " + st.id);

  const std::vector<NamedFunction> catalog = enumerate_catalog(spec.samples, spec.seed);
  std::vector<TruncatedSeries<double>> series;
  series.reserve(catalog.size());
  for (const auto& fn : catalog) series.push_back(fn.generator(spec.order));

  std::vector<FunctionalReport> reports(catalog.size());
  std::vector<double> residuals(catalog.size());
  detail::parallel_for_index(catalog.size(), threads, [&](std::size_t i) {
    reports[i] = functional_report(series[i]);
    residuals[i] = check_coefficient_relations(series[i]).maxCoeff();
  });

  ScanOutcome outcome;
  outcome.identity_residual_max = *std::max_element(residuals.begin(), residuals.end());
  outcome.identity_failure = outcome.identity_residual_max > 1e-10;

  for (const auto& st : statements) {
    ScanReport rep;
    rep.statement_id = st.id;
    bool have = false;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
      if (!passes_precondition(st.pre, series[i])) continue;
      const double v = evaluate_statement_functional(st.functional, series[i], reports[i]);
      ++rep.samples_tested;
      if (!have || v > rep.max_observed) {
        rep.max_observed = v;
        rep.witness = catalog[i].name;
        have = true;
      }
    }
    rep.margin = st.bound - rep.max_observed;
    rep.violated = have && rep.max_observed > st.bound + kViolationTol;
    outcome.reports.push_back(std::move(rep));
  }
  std::sort(outcome.reports.begin(), outcome.reports.end(),
            [](const ScanReport& a, const ScanReport& b) { return a.statement_id < b.statement_id; });
  return outcome;
}

}  // namespace grunsky_lab

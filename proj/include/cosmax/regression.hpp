#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cosmax/data.hpp"
#include "cosmax/diagnostics.hpp"
#include "cosmax/errors.hpp"
#include "cosmax/matrix.hpp"

namespace cosmax {

namespace detail {

inline SymmetricMatrix submatrix(const SymmetricMatrix& r,
                                 const std::vector<std::size_t>& idx) {
  SymmetricMatrix sub(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) sub.set(i, j, r(idx[i], idx[j]));
  return sub;
}

inline SymmetricMatrix invert_submatrix(const SymmetricMatrix& r,
                                        const std::vector<std::size_t>& idx,
                                        const char* who) {
  const SymmetricMatrix sub = submatrix(r, idx);
  const EigenSystem es = eigen_decompose(sub);
  if (es.eigenvalues.back() <= 1e-10)
    throw SingularPredictorsError(std::string(who) +
                                  ": submatrix is numerically singular");
  return spectral_apply(es, [](double l) { return 1.0 / l; });
}

}  // namespace detail

// Coefficient of determination of `dependent` on `predictors`, computed
// entirely from correlation entries: R^2 = r' Rxx^{-1} r. Standardized
// variables carry a zero intercept, so none is fitted. An empty predictor
// set gives 0; the result is clamped into [0, 1].
inline double r_squared(const CorrelationMatrix& r, std::size_t dependent,
                        const std::vector<std::size_t>& predictors) {
  if (predictors.empty()) return 0.0;
  for (std::size_t p : predictors)
    if (p == dependent)
      throw ConfigError("r_squared: predictors must exclude the dependent");
  const SymmetricMatrix inv = detail::invert_submatrix(r.base, predictors, "r_squared");
  const std::size_t k = predictors.size();
  double value = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      value += r.base(dependent, predictors[i]) * inv(i, j) *
               r.base(dependent, predictors[j]);
  return std::clamp(value, 0.0, 1.0);
}

inline double vif_from_regression(const CorrelationMatrix& r, std::size_t i) {
  std::vector<std::size_t> others;
  for (std::size_t j = 0; j < r.dim(); ++j)
    if (j != i) others.push_back(j);
  double rsq;
  try {
    rsq = r_squared(r, i, others);
  } catch (const SingularPredictorsError& e) {
    throw ExactCollinearityError(e.what());
  }
  if (rsq >= 1.0 - 1e-10)
    throw ExactCollinearityError("variable " + r.names[i] +
                                 " is an exact linear combination of the rest");
  return 1.0 / (1.0 - rsq);
}

namespace detail {

// Regularized incomplete beta function I_x(a, b) by Lentz's continued
// fraction, good to ~1e-12 for the moderate degrees of freedom seen here.
inline double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-14;
  constexpr double kFpMin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

inline double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log(1.0 - x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

// Upper tail of the F(df1, df2) distribution.
inline double f_upper_tail(double f, double df1, double df2) {
  if (f <= 0.0) return 1.0;
  return incomplete_beta(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * f));
}

}  // namespace detail

struct StepwiseStep {
  std::size_t variable = 0;
  double r_squared = 0.0;
  std::optional<double> f_stat;  // partial F, present when n was supplied

  bool operator==(const StepwiseStep&) const = default;
};

enum class StopReason { gain_below_min, p_above_alpha, all_entered };

struct StepwiseTrace {
  std::size_t dependent = 0;
  std::vector<StepwiseStep> steps;
  StopReason stopped_reason = StopReason::all_entered;

  bool operator==(const StepwiseTrace&) const = default;
};

// Forward stepwise auxiliary regression driven by the correlation matrix. At
// each step the candidate with the largest R^2 gain enters (exact ties fall
// to the lowest index). Stops when the best gain drops below min_gain, when
// max_steps have entered, or when no candidates remain. Supplying n_obs adds
// the partial F statistic of each entry; supplying alpha as well turns it
// into an entry test, stopping once the best candidate's p-value exceeds it.
// The F uses the intercept-inclusive convention df2 = n - k - 1.
inline StepwiseTrace stepwise_forward(const CorrelationMatrix& r,
                                      std::size_t dependent, double min_gain,
                                      std::size_t max_steps,
                                      std::optional<std::size_t> n_obs = {},
                                      std::optional<double> alpha = {}) {
  if (min_gain < 0.0) throw ConfigError("stepwise_forward: min_gain must be >= 0");
  const std::size_t m = r.dim();
  if (dependent >= m) throw ConfigError("stepwise_forward: dependent out of range");

  StepwiseTrace trace;
  trace.dependent = dependent;
  std::vector<std::size_t> entered;
  std::vector<std::size_t> candidates;
  for (std::size_t j = 0; j < m; ++j)
    if (j != dependent) candidates.push_back(j);

  double current = 0.0;
  while (!candidates.empty() && entered.size() < max_steps) {
    std::size_t best = candidates.front();
    double best_rsq = -1.0;
    for (std::size_t c : candidates) {
      entered.push_back(c);
      const double rsq = r_squared(r, dependent, entered);
      entered.pop_back();
      if (rsq > best_rsq) {
        best_rsq = rsq;
        best = c;
      }
    }
    const double gain = best_rsq - current;
    if (gain < min_gain) {
      trace.stopped_reason = StopReason::gain_below_min;
      return trace;
    }
    StepwiseStep step;
    step.variable = best;
    step.r_squared = best_rsq;
    if (n_obs) {
      const double df2 =
          static_cast<double>(*n_obs) - static_cast<double>(entered.size() + 1) - 1.0;
      if (df2 > 0.0 && best_rsq < 1.0)
        step.f_stat = gain * df2 / (1.0 - best_rsq);
      if (alpha && step.f_stat &&
          detail::f_upper_tail(*step.f_stat, 1.0, df2) > *alpha) {
        trace.stopped_reason = StopReason::p_above_alpha;
        return trace;
      }
    }
    entered.push_back(best);
    candidates.erase(std::find(candidates.begin(), candidates.end(), best));
    trace.steps.push_back(step);
    current = best_rsq;
  }
  trace.stopped_reason = StopReason::all_entered;
  return trace;
}

struct PartialCorrelation {
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<std::size_t> conditioning;
  double value = 0.0;

  bool operator==(const PartialCorrelation&) const = default;
};

// Partial correlation of i and j given a conditioning set, from the inverse
// of the correlation submatrix over {i, j} union the set:
// -omega_ij / sqrt(omega_ii omega_jj). An empty set reduces to r_ij.
inline PartialCorrelation partial_correlation(
    const CorrelationMatrix& r, std::size_t i, std::size_t j,
    const std::vector<std::size_t>& conditioning) {
  if (i == j) throw ConfigError("partial_correlation: i and j must differ");
  for (std::size_t c : conditioning)
    if (c == i || c == j)
      throw ConfigError("partial_correlation: conditioning set must exclude i and j");
  std::vector<std::size_t> idx = {i, j};
  idx.insert(idx.end(), conditioning.begin(), conditioning.end());
  const SymmetricMatrix omega =
      detail::invert_submatrix(r.base, idx, "partial_correlation");
  PartialCorrelation out;
  out.i = i;
  out.j = j;
  out.conditioning = conditioning;
  out.value = -omega(0, 1) / std::sqrt(omega(0, 0) * omega(1, 1));
  return out;
}

}  // namespace cosmax

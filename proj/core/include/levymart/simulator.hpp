// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "levymart/cumulant_model.hpp"

namespace levymart {

/// Simulated values X_{t_j} for n_paths independent paths. Row-major: path p,
/// time index j at values[p * times.size() + j].
struct PathEnsemble {
  std::vector<double> times;
  std::size_t n_paths = 0;
  std::vector<double> values;
  std::uint64_t seed = 0;
  KolmogorovMeasure measure{Rational(0), {}, Rational(0)};

  [[nodiscard]] double at(std::size_t path, std::size_t time_index) const {
    return values[path * times.size() + time_index];
  }
  /// Index of `t` in times (exact match up to 1e-12 relative); InvalidArgument otherwise.
  [[nodiscard]] std::size_t time_index(double t) const;
  [[nodiscard]] std::vector<double> column(double t) const;
};

/// X_t = c_1 t + sigma W_t + sum_i (y_i N_i(t) - (w_i/y_i) t) with N_i Poisson
/// of rate w_i/y_i^2. Path p draws from PhiloxStream(seed, p), so the output is
/// a function of (measure, times, n_paths, seed) for any thread count
/// (0 = hardware concurrency). Throws InvalidArgument on empty, unsorted or
/// nonpositive times, or n_paths == 0.
PathEnsemble simulate_paths(const KolmogorovMeasure& measure, std::vector<double> times, std::size_t n_paths,
                            std::uint64_t seed, unsigned threads = 0);

enum class CheckStatus { Pass, Fail, Inconclusive };
std::string to_string(CheckStatus status);

struct CheckOptions {
  double z_threshold = 4.0;
  int bins = 20;
  /// Bins with fewer paths are skipped.
  int min_bin_count = 100;
  /// Heavy-tail warning when the sample kurtosis of the statistic exceeds this.
  double kurtosis_bound = 100.0;
  /// Replace the prediction by a deliberately wrong one.
  bool inject_fault = false;
};

struct CheckReport {
  std::string name;
  /// Sample mean of the observed statistic.
  double estimate = 0.0;
  /// Mean of the per-path predictions.
  double prediction = 0.0;
  double standard_error = 0.0;
  /// For binned checks: the Sidak-adjusted maximum of per-bin |z|, mapped back
  /// to a two-sided normal quantile. Otherwise the plain z-score.
  double z_score = 0.0;
  bool pass = false;
  CheckStatus status = CheckStatus::Inconclusive;
  std::size_t sample_size = 0;
  int bins_used = 0;
  bool heavy_tail_warning = false;
  std::vector<std::string> notes;
};

/// Sample mean of X_t^n against m_n(t).
CheckReport empirical_moment_check(const PathEnsemble& e, const CumulantSpec& spec, int n, double t,
                                   const CheckOptions& opts = {});

/// Conditional mean of M_n(X_t, t) given X_s against M_n(X_s, s); bins on X_s.
/// Fault: M_n(X_s, t) on the right side.
CheckReport martingale_mc_check(const PathEnsemble& e, const CumulantSpec& spec, int n, double s, double t,
                                const CheckOptions& opts = {});

/// Conditional mean of M_1(X_s, s)/s given X_t against M_1(X_t, t)/t; bins on X_t.
/// s == t is allowed and compares a statistic with itself. Fault: M_1(X_t, t)/s.
CheckReport reversed_mc_check(const PathEnsemble& e, double s, double t, const CheckOptions& opts = {});

/// Conditional mean of M_1(X_t, t) given (X_s, X_u) against
/// ((u-t) M_1(X_s,s) + (t-s) M_1(X_u,u))/(u-s); bins on the pair. Fault: weights swapped.
CheckReport harness_mc_check(const PathEnsemble& e, double s, double t, double u, const CheckOptions& opts = {});

/// For a single-atom measure without Gaussian part (X = y N + d t, N Poisson):
/// compares MC conditional means against exact binomial-thinning laws computed
/// from the binomial pmf, independently of the martingale algebra.
/// Reversed: E[X_s | X_t] with N_s | N_t = k ~ Bin(k, s/t).
CheckReport poisson_bridge_reversed_check(const PathEnsemble& e, double s, double t, const CheckOptions& opts = {});
/// Harness: E[X_t | X_s, X_u] with N_t - N_s | (N_s, N_u) ~ Bin(N_u - N_s, (t-s)/(u-s)).
CheckReport poisson_bridge_harness_check(const PathEnsemble& e, double s, double t, double u,
                                         const CheckOptions& opts = {});

/// Unbiased k-statistics k_1..k_4 of X_t against c_i t; standard errors from
/// 50 batch means. Fault: prediction scaled by 1.1.
std::vector<CheckReport> cumulant_check(const PathEnsemble& e, const CumulantSpec& spec, double t,
                                        double z_threshold = 5.0, bool inject_fault = false);

/// k-statistics k_1..k_4 of a sample (n >= 4).
std::vector<double> k_statistics(const std::vector<double>& sample);

}  // namespace levymart

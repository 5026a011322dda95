// SPDX-License-Identifier: Apache-2.0
#include "levymart/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <thread>
#include <unordered_map>

#include <boost/math/special_functions/erf.hpp>

#include "levymart/errors.hpp"
#include "levymart/martingale_engine.hpp"
#include "levymart/moment_engine.hpp"
#include "levymart/philox.hpp"

namespace levymart {

std::size_t PathEnsemble::time_index(double t) const {
  for (std::size_t j = 0; j < times.size(); ++j) {
    if (std::abs(times[j] - t) <= 1e-12 * std::max(1.0, std::abs(t))) return j;
  }
  throw InvalidArgument("time " + std::to_string(t) + " is not among the simulated times");
}

std::vector<double> PathEnsemble::column(double t) const {
  const std::size_t j = time_index(t);
  std::vector<double> out(n_paths);
  for (std::size_t p = 0; p < n_paths; ++p) out[p] = at(p, j);
  return out;
}

PathEnsemble simulate_paths(const KolmogorovMeasure& measure, std::vector<double> times, std::size_t n_paths,
                            std::uint64_t seed, unsigned threads) {
  if (times.empty()) throw InvalidArgument("simulate_paths needs at least one time");
  if (n_paths == 0) throw InvalidArgument("simulate_paths needs n_paths >= 1");
  double prev = 0.0;
  for (double t : times) {
    if (!(t > prev) || !std::isfinite(t)) throw InvalidArgument("times must be positive, finite and strictly increasing");
    prev = t;
  }

  struct JumpAtom {
    double y, rate, compensator;
  };
  std::vector<JumpAtom> atoms;
  for (const Atom& a : measure.atoms()) {
    const double y = a.y.to_double();
    const double w = a.w.to_double();
    atoms.push_back({y, w / (y * y), w / y});
  }
  const double drift = measure.drift().to_double();
  const double sigma = std::sqrt(measure.sigma2().to_double());

  PathEnsemble e{times, n_paths, std::vector<double>(n_paths * times.size()), seed, measure};
  const auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      PhiloxStream rng(seed, p);
      std::normal_distribution<double> normal;
      double x = 0.0, last = 0.0;
      for (std::size_t j = 0; j < times.size(); ++j) {
        const double dt = times[j] - last;
        last = times[j];
        x += drift * dt;
        if (sigma > 0.0) x += sigma * std::sqrt(dt) * normal(rng);
        for (const JumpAtom& a : atoms) {
          std::poisson_distribution<long> count(a.rate * dt);
          x += a.y * static_cast<double>(count(rng)) - a.compensator * dt;
        }
        e.values[p * times.size() + j] = x;
      }
    }
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_paths));
  if (workers <= 1) {
    run(0, n_paths);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n_paths + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n_paths, begin + chunk);
      if (begin < end) pool.emplace_back(run, begin, end);
    }
    for (std::thread& th : pool) th.join();
  }
  return e;
}

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;
  double kurtosis = 0.0;
};

Moments sample_moments(const std::vector<double>& v) {
  Moments m;
  const double n = static_cast<double>(v.size());
  m.mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double m2 = 0.0, m4 = 0.0;
  for (double x : v) {
    const double d = x - m.mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m.var = v.size() > 1 ? m2 / (n - 1) : 0.0;
  m.kurtosis = m2 > 0.0 ? n * m4 / (m2 * m2) : 0.0;
  return m;
}

void finish(CheckReport& r, const CheckOptions& opts) {
  r.pass = std::abs(r.z_score) <= opts.z_threshold;
  r.status = r.pass ? CheckStatus::Pass : CheckStatus::Fail;
}

// x-coefficients of p(x, t) at a fixed t, lowest degree first.
std::vector<double> x_coefficients(const MultiPoly& p, double t) {
  const bool has_t = p.has_variable(kT);
  const std::size_t ix = p.index_of(kX);
  const std::size_t it = has_t ? p.index_of(kT) : 0;
  std::vector<double> out(static_cast<std::size_t>(std::max(p.degree(kX), 0)) + 1, 0.0);
  for (const auto& [e, c] : p.terms()) out[e[ix]] += c.to_double() * (has_t ? std::pow(t, e[it]) : 1.0);
  return out;
}

double horner(const std::vector<double>& a, double x) {
  double acc = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Bin ids for one or two conditioning keys: exact values when few, otherwise equal-count bins.
std::vector<int> quantile_bins(const std::vector<double>& key, int bins) {
  std::vector<double> sorted = key;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> cuts;
  for (int b = 1; b < bins; ++b) cuts.push_back(sorted[sorted.size() * static_cast<std::size_t>(b) / static_cast<std::size_t>(bins)]);
  std::vector<int> out(key.size());
  for (std::size_t i = 0; i < key.size(); ++i) {
    out[i] = static_cast<int>(std::upper_bound(cuts.begin(), cuts.end(), key[i]) - cuts.begin());
  }
  return out;
}

std::vector<int> assign_bins(const std::vector<double>& k1, const std::vector<double>* k2, int bins, std::string& how) {
  std::map<std::pair<double, double>, int> distinct;
  const std::size_t limit = k2 ? static_cast<std::size_t>(bins) * static_cast<std::size_t>(bins)
                               : std::max<std::size_t>(static_cast<std::size_t>(bins), 64);
  for (std::size_t i = 0; i < k1.size() && distinct.size() <= limit; ++i) {
    distinct.emplace(std::make_pair(k1[i], k2 ? (*k2)[i] : 0.0), 0);
  }
  std::vector<int> out(k1.size());
  if (distinct.size() <= limit) {
    how = "exact-value bins";
    int id = 0;
    for (auto& [key, v] : distinct) v = id++;
    for (std::size_t i = 0; i < k1.size(); ++i) out[i] = distinct.at({k1[i], k2 ? (*k2)[i] : 0.0});
    return out;
  }
  how = "equal-count bins";
  const std::vector<int> b1 = quantile_bins(k1, bins);
  if (!k2) return b1;
  const std::vector<int> b2 = quantile_bins(*k2, bins);
  for (std::size_t i = 0; i < k1.size(); ++i) out[i] = b1[i] * bins + b2[i];
  return out;
}

// Per-path differences D = observed - predicted have conditional mean zero in
// every bin under the null. Per-bin z-scores are combined through a Sidak
// correction on their maximum.
CheckReport binned_check(std::string name, const std::vector<double>& k1, const std::vector<double>* k2,
                         const std::vector<double>& observed, const std::vector<double>& predicted,
                         const CheckOptions& opts) {
  CheckReport r;
  r.name = std::move(name);
  r.sample_size = observed.size();
  std::vector<double> diff(observed.size());
  for (std::size_t i = 0; i < observed.size(); ++i) diff[i] = observed[i] - predicted[i];
  const Moments obs = sample_moments(observed);
  const Moments dm = sample_moments(diff);
  r.estimate = obs.mean;
  r.prediction = sample_moments(predicted).mean;
  r.standard_error = std::sqrt(dm.var / static_cast<double>(diff.size()));
  r.heavy_tail_warning = obs.kurtosis > opts.kurtosis_bound;

  std::string how;
  const std::vector<int> ids = assign_bins(k1, k2, opts.bins, how);
  struct Acc {
    std::size_t n = 0;
    double sum = 0.0, sumsq = 0.0;
  };
  std::unordered_map<int, Acc> acc;
  for (std::size_t i = 0; i < diff.size(); ++i) {
    Acc& a = acc[ids[i]];
    ++a.n;
    a.sum += diff[i];
  }
  for (std::size_t i = 0; i < diff.size(); ++i) {
    Acc& a = acc[ids[i]];
    const double d = diff[i] - a.sum / static_cast<double>(a.n);
    a.sumsq += d * d;
  }
  double zmax = 0.0;
  int used = 0;
  for (const auto& [id, a] : acc) {
    if (a.n < static_cast<std::size_t>(opts.min_bin_count)) continue;
    ++used;
    const double mean = a.sum / static_cast<double>(a.n);
    const double se = std::sqrt(a.sumsq / static_cast<double>(a.n - 1) / static_cast<double>(a.n));
    const double scale = std::max(1.0, std::abs(r.prediction));
    double z;
    if (se > 1e-12 * scale) {
      z = mean / se;
    } else {
      z = std::abs(mean) <= 1e-9 * scale ? 0.0 : std::numeric_limits<double>::infinity();
    }
    zmax = std::max(zmax, std::abs(z));
  }
  r.bins_used = used;
  r.notes.push_back(how + ", " + std::to_string(used) + " populated with >= " + std::to_string(opts.min_bin_count) +
                    " paths");
  if (used < 2) {
    r.status = CheckStatus::Inconclusive;
    r.pass = false;
    r.z_score = zmax;
    r.notes.push_back("fewer than two populated bins");
    return r;
  }
  const double p = std::erfc(zmax / std::sqrt(2.0));
  if (!std::isfinite(zmax) || p <= 0.0) {
    r.z_score = zmax;
  } else {
    const double p_adj = -std::expm1(static_cast<double>(used) * std::log1p(-p));
    r.z_score = p_adj >= 1.0 ? 0.0 : std::sqrt(2.0) * boost::math::erfc_inv(p_adj);
  }
  finish(r, opts);
  return r;
}

double m1(double x, double t, double c1) { return x - c1 * t; }

struct PoissonView {
  double y = 1.0;
  double d = 0.0;  // deterministic drift after compensation
};

PoissonView poisson_view(const KolmogorovMeasure& m) {
  if (m.atoms().size() != 1 || !m.sigma2().is_zero()) {
    throw InvalidArgument("binomial-bridge oracle needs a single jump atom and no Gaussian part");
  }
  const double y = m.atoms()[0].y.to_double();
  return {y, m.drift().to_double() - m.atoms()[0].w.to_double() / y};
}

// Mean of Bin(k, p) summed from the pmf.
double binomial_mean_from_pmf(long k, double p) {
  if (k <= 0) return 0.0;
  double acc = 0.0;
  const double lp = std::log(p), lq = std::log1p(-p);
  for (long j = 1; j <= k; ++j) {
    const double logpmf = std::lgamma(static_cast<double>(k) + 1) - std::lgamma(static_cast<double>(j) + 1) -
                          std::lgamma(static_cast<double>(k - j) + 1) + static_cast<double>(j) * lp +
                          static_cast<double>(k - j) * lq;
    acc += static_cast<double>(j) * std::exp(logpmf);
  }
  return acc;
}

}  // namespace

CheckReport empirical_moment_check(const PathEnsemble& e, const CumulantSpec& spec, int n, double t,
                                   const CheckOptions& opts) {
  if (n < 1) throw InvalidArgument("moment order must be >= 1");
  const std::vector<double> x = e.column(t);
  std::vector<double> xn(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) xn[i] = std::pow(x[i], n);
  const Moments m = sample_moments(xn);
  CheckReport r;
  r.name = "moment m_" + std::to_string(n) + "(" + std::to_string(t) + ")";
  r.sample_size = x.size();
  r.estimate = m.mean;
  r.prediction = moments(spec, n).m(n).evaluate_double({{kT, t}});
  if (opts.inject_fault) r.prediction += 0.05 * std::sqrt(m.var) + 0.05;
  r.standard_error = std::sqrt(m.var / static_cast<double>(x.size()));
  r.z_score = r.standard_error > 0.0 ? (r.estimate - r.prediction) / r.standard_error
                                     : (r.estimate == r.prediction ? 0.0 : std::numeric_limits<double>::infinity());
  r.heavy_tail_warning = m.kurtosis > opts.kurtosis_bound;
  if (r.heavy_tail_warning) r.notes.push_back("sample kurtosis of X_t^n is " + std::to_string(m.kurtosis));
  finish(r, opts);
  return r;
}

CheckReport martingale_mc_check(const PathEnsemble& e, const CumulantSpec& spec, int n, double s, double t,
                                const CheckOptions& opts) {
  if (!(s < t)) throw InvalidArgument("martingale check needs s < t");
  const MultiPoly M = martingale_poly(spec, n);
  const std::vector<double> at_t = x_coefficients(M, t);
  const std::vector<double> at_s = x_coefficients(M, opts.inject_fault ? t : s);
  const std::vector<double> xs = e.column(s), xt = e.column(t);
  std::vector<double> obs(xs.size()), pred(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    obs[i] = horner(at_t, xt[i]);
    pred[i] = horner(at_s, xs[i]);
  }
  return binned_check("martingale M_" + std::to_string(n), xs, nullptr, obs, pred, opts);
}

CheckReport reversed_mc_check(const PathEnsemble& e, double s, double t, const CheckOptions& opts) {
  if (s > t) throw InvalidArgument("reversed check needs s <= t");
  const double c1 = e.measure.drift().to_double();
  const std::vector<double> xs = e.column(s), xt = e.column(t);
  std::vector<double> obs(xs.size()), pred(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    obs[i] = m1(xs[i], s, c1) / s;
    pred[i] = m1(xt[i], t, c1) / (opts.inject_fault ? s : t);
  }
  return binned_check("reversed M_1/t", xt, nullptr, obs, pred, opts);
}

CheckReport harness_mc_check(const PathEnsemble& e, double s, double t, double u, const CheckOptions& opts) {
  if (!(s < t && t < u)) throw InvalidArgument("harness check needs s < t < u");
  const double c1 = e.measure.drift().to_double();
  double ws = (u - t) / (u - s), wu = (t - s) / (u - s);
  if (opts.inject_fault) std::swap(ws, wu);
  const std::vector<double> xs = e.column(s), xt = e.column(t), xu = e.column(u);
  std::vector<double> obs(xs.size()), pred(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    obs[i] = m1(xt[i], t, c1);
    pred[i] = ws * m1(xs[i], s, c1) + wu * m1(xu[i], u, c1);
  }
  return binned_check("harness M_1", xs, &xu, obs, pred, opts);
}

CheckReport poisson_bridge_reversed_check(const PathEnsemble& e, double s, double t, const CheckOptions& opts) {
  if (!(s < t)) throw InvalidArgument("bridge check needs s < t");
  const PoissonView pv = poisson_view(e.measure);
  const double p = std::min(1.0, s / t + (opts.inject_fault ? 0.05 : 0.0));
  const std::vector<double> xs = e.column(s), xt = e.column(t);
  std::map<long, double> cache;
  std::vector<double> pred(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const long k = std::lround((xt[i] - pv.d * t) / pv.y);
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, binomial_mean_from_pmf(k, p)).first;
    pred[i] = pv.y * it->second + pv.d * s;
  }
  return binned_check("binomial bridge E[X_s | X_t]", xt, nullptr, xs, pred, opts);
}

CheckReport poisson_bridge_harness_check(const PathEnsemble& e, double s, double t, double u,
                                         const CheckOptions& opts) {
  if (!(s < t && t < u)) throw InvalidArgument("bridge check needs s < t < u");
  const PoissonView pv = poisson_view(e.measure);
  const double p = std::min(1.0, (t - s) / (u - s) + (opts.inject_fault ? 0.05 : 0.0));
  const std::vector<double> xs = e.column(s), xt = e.column(t), xu = e.column(u);
  std::map<long, double> cache;
  std::vector<double> pred(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const long a = std::lround((xs[i] - pv.d * s) / pv.y);
    const long b = std::lround((xu[i] - pv.d * u) / pv.y);
    auto it = cache.find(b - a);
    if (it == cache.end()) it = cache.emplace(b - a, binomial_mean_from_pmf(b - a, p)).first;
    pred[i] = pv.y * (static_cast<double>(a) + it->second) + pv.d * t;
  }
  return binned_check("binomial bridge E[X_t | X_s, X_u]", xs, &xu, xt, pred, opts);
}

std::vector<double> k_statistics(const std::vector<double>& v) {
  if (v.size() < 4) throw InvalidArgument("k-statistics need at least 4 observations");
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double s2 = 0.0, s3 = 0.0, s4 = 0.0;
  for (double x : v) {
    const double d = x - mean;
    s2 += d * d;
    s3 += d * d * d;
    s4 += d * d * d * d;
  }
  const double m2 = s2 / n, m3 = s3 / n, m4 = s4 / n;
  const double k2 = n / (n - 1) * m2;
  const double k3 = n * n / ((n - 1) * (n - 2)) * m3;
  const double k4 = n * n * ((n + 1) * m4 - 3 * (n - 1) * m2 * m2) / ((n - 1) * (n - 2) * (n - 3));
  return {mean, k2, k3, k4};
}

std::vector<CheckReport> cumulant_check(const PathEnsemble& e, const CumulantSpec& spec, double t, double z_threshold,
                                        bool inject_fault) {
  constexpr std::size_t kBatches = 50;
  const std::vector<double> x = e.column(t);
  if (x.size() < kBatches * 4) throw InvalidArgument("cumulant check needs at least 200 paths");
  const std::vector<double> full = k_statistics(x);
  const std::size_t per = x.size() / kBatches;
  std::vector<std::vector<double>> batch(4);
  for (std::size_t b = 0; b < kBatches; ++b) {
    const std::vector<double> part(x.begin() + static_cast<std::ptrdiff_t>(b * per),
                                   x.begin() + static_cast<std::ptrdiff_t>((b + 1) * per));
    const std::vector<double> k = k_statistics(part);
    for (int i = 0; i < 4; ++i) batch[i].push_back(k[i]);
  }
  std::vector<CheckReport> out;
  for (int i = 0; i < 4; ++i) {
    CheckReport r;
    r.name = "k-statistic k_" + std::to_string(i + 1);
    r.sample_size = x.size();
    r.estimate = full[i];
    r.prediction = spec.c(i + 1).to_double() * t * (inject_fault ? 1.1 : 1.0);
    if (inject_fault && r.prediction == 0.0) r.prediction = 0.1;
    // Batch statistics on n/B paths have variance about B times that of the full statistic.
    r.standard_error = std::sqrt(sample_moments(batch[i]).var / static_cast<double>(kBatches));
    r.z_score = r.standard_error > 0.0 ? (r.estimate - r.prediction) / r.standard_error : 0.0;
    r.bins_used = static_cast<int>(kBatches);
    r.pass = std::abs(r.z_score) <= z_threshold;
    r.status = r.pass ? CheckStatus::Pass : CheckStatus::Fail;
    out.push_back(r);
  }
  return out;
}

}  // namespace levymart

#pragma once

// Shared test oracles: tie-aware KS distance, the distribution invariant
// battery, and capped truncated means for the growth-trend checks.

#include <algorithm>
#include <vector>

#include "htd/htd.hpp"

namespace htd::test {

// Kolmogorov-Smirnov distance between n inverse-transform samples and the
// model cdf; ties are resolved against the exact atom masses.
inline double ks_stat(const Distribution& d, int n, std::uint64_t seed) {
  RngStream rng(seed, 0);
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (auto& x : xs) x = d.sample(rng);
  std::sort(xs.begin(), xs.end());
  const auto atoms = d.atoms();
  double ks = 0.0;
  std::size_t i = 0;
  while (i < xs.size()) {
    std::size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    const double u_hi = d.cdf(xs[i]);
    double mass = 0.0;
    for (const Atom& a : atoms)
      if (a.x == xs[i]) mass = a.mass;
    ks = std::max(ks, std::fabs(u_hi - static_cast<double>(j) / n));
    ks = std::max(ks, std::fabs(u_hi - mass - static_cast<double>(i) / n));
    i = j;
  }
  return ks;
}

// Empirical means of X ^ n over the first n draws; for infinite-mean laws
// the sequence trends upward across decades.
inline std::vector<double> capped_means(const Distribution& d, std::uint64_t seed,
                                        const std::vector<std::int64_t>& ns) {
  RngStream rng(seed, 0);
  std::vector<double> draws;
  draws.reserve(static_cast<std::size_t>(ns.back()));
  for (std::int64_t i = 0; i < ns.back(); ++i) draws.push_back(d.sample(rng));
  std::vector<double> means;
  for (std::int64_t n : ns) {
    double s = 0.0;
    const double cap = static_cast<double>(n);
    for (std::int64_t i = 0; i < n; ++i) s += std::min(draws[static_cast<std::size_t>(i)], cap);
    means.push_back(s / static_cast<double>(n));
  }
  return means;
}

struct InvariantOptions {
  double grid_lo = 1e-3;
  double grid_hi = 1e6;
  int grid_n = 200;
  bool check_density = true;
  bool check_sampling = false;
  std::uint64_t seed = 20250809;
};

// The dist_core invariant battery, reusable on transformed laws.
inline void check_distribution_invariants(const Distribution& d, const InvariantOptions& opt = {}) {
  const Support sp = d.support();
  const double lo = std::max(opt.grid_lo, std::isfinite(sp.lower) ? sp.lower : opt.grid_lo);
  std::vector<double> xs;
  for (int i = 0; i < opt.grid_n; ++i)
    xs.push_back(lo * std::pow(opt.grid_hi / std::max(lo, 1e-12), i / (opt.grid_n - 1.0)));
  for (double k : d.kinks())
    if (k > lo && k < opt.grid_hi) xs.push_back(k);
  std::sort(xs.begin(), xs.end());

  // monotone, right bounded, survival + cdf = 1 at moderate x
  double prev = -1.0;
  for (double x : xs) {
    const double c = d.cdf(x);
    REQUIRE(c >= prev - 1e-15);
    REQUIRE(c >= 0.0);
    REQUIRE(c <= 1.0);
    if (x <= 1e6) REQUIRE_THAT(d.survival(x) + c, Catch::Matchers::WithinAbs(1.0, 1e-12));
    prev = c;
  }

  // Galois pair on random (u, x)
  RngStream rng(opt.seed, 1);
  for (int i = 0; i < 500; ++i) {
    const double u = 0.001 + 0.998 * rng.uniform01();
    const double x = d.quantile(0.02 + 0.96 * rng.uniform01());
    const double q = d.quantile(u);
    REQUIRE(d.cdf(q) >= u - 1e-9);
    const bool left = q <= x + 1e-9 * std::max(1.0, std::fabs(x));
    const bool right = u <= d.cdf(x) + 1e-12;
    if (left != right) REQUIRE(std::fabs(u - d.cdf(x)) <= 1e-9);
  }

  if (opt.check_density && d.has_density_part() && d.atoms().empty()) {
    // density mass over a fixed probability window, integrated in log-x so
    // slowly vanishing tails (log-Cauchy style) cannot exhaust the panels
    const double a = d.quantile(1e-3);
    const double b = d.quantile(1.0 - 1e-3);
    if (a > 0.0 && std::isfinite(b)) {
      std::vector<double> lbreaks;
      for (double k : d.kinks())
        if (k > a && k < b) lbreaks.push_back(std::log(k));
      const double mass = integrate(
          [&](double u) {
            const double x = std::exp(u);
            return d.density_part(x) * x;
          },
          std::log(a), std::log(b), lbreaks);
      REQUIRE_THAT(mass, Catch::Matchers::WithinAbs(0.998, 1e-6));
    }
    for (double u : {0.2, 0.5, 0.8, 0.95}) {
      const double x = d.quantile(u);
      bool near_kink = false;
      for (double k : d.kinks())
        if (std::fabs(x - k) < 1e-3 * std::max(1.0, std::fabs(k))) near_kink = true;
      if (near_kink) continue;
      const double h = 1e-5 * std::max(1.0, std::fabs(x));
      const double fd = (d.cdf(x + h) - d.cdf(x - h)) / (2.0 * h);
      const auto f = d.density(x);
      REQUIRE(f.has_value());
      REQUIRE_THAT(fd, Catch::Matchers::WithinAbs(*f, 1e-4 * std::max(1.0, *f)));
    }
  }

  if (opt.check_sampling) {
    // empirical survival within 3 standard errors at 20 quantile points
    RngStream srng(opt.seed, 2);
    const int n = 40000;
    std::vector<double> draws(n);
    for (auto& v : draws) v = d.sample(srng);
    for (int i = 0; i < 20; ++i) {
      const double u = 0.04 + 0.92 * i / 19.0;
      const double x = d.quantile(u);
      const double s = d.survival(x);
      int hits = 0;
      for (double v : draws) hits += (v > x);
      const double emp = hits / static_cast<double>(n);
      const double se = std::sqrt(std::max(s * (1.0 - s), 1e-9) / n);
      REQUIRE(std::fabs(emp - s) <= 3.5 * se + 1e-3);
    }
  }
}

}  // namespace htd::test

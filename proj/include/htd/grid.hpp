#pragma once

// Evaluation grids for the numerical certifiers.

#include <algorithm>
#include <cmath>
#include <vector>

#include "htd/common.hpp"
#include "htd/distribution.hpp"

namespace htd {

enum class Spacing { log, linear };

struct GridSpec {
  double lo = 1e-6;
  double hi = 1e6;
  int n_points = 2048;
  Spacing spacing = Spacing::log;

  // Defaults: log spacing resolves both tails; 256 points keep the full
  // cross-product sweeps cheap.
  static GridSpec one_d() { return {1e-6, 1e6, 2048, Spacing::log}; }
  static GridSpec two_d() { return {1e-6, 1e6, 256, Spacing::log}; }

  void validate() const {
    require(n_points >= 16, errc::bad_grid, "grid needs at least 16 points");
    require(hi > lo, errc::bad_grid, "grid needs hi > lo");
    require(spacing == Spacing::linear || lo > 0.0, errc::bad_grid,
            "log spacing needs lo > 0");
  }

  std::vector<double> points() const {
    validate();
    std::vector<double> xs(static_cast<std::size_t>(n_points));
    if (spacing == Spacing::log) {
      const double la = std::log(lo), lb = std::log(hi);
      for (int i = 0; i < n_points; ++i)
        xs[static_cast<std::size_t>(i)] = std::exp(la + (lb - la) * i / (n_points - 1));
    } else {
      for (int i = 0; i < n_points; ++i)
        xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n_points - 1);
    }
    return xs;
  }
};

namespace detail {

inline void insert_with_offsets(std::vector<double>& xs, double v, double lo, double hi) {
  if (!(v > 0.0) || !std::isfinite(v)) return;
  for (double cand : {v - 1e-9, v, v + 1e-9})
    if (cand >= lo && cand <= hi && cand > 0.0) xs.push_back(cand);
}

}  // namespace detail

// Grid in the eta/lambda coordinate (x maps to the law's value at 1/x):
// breakpoints of the cdf land at 1/k, and for the 2-d subadditivity sweeps
// the pairwise differences of breakpoints are added so violations pinned to
// kink pairs (a, K - a) are never missed.
inline std::vector<double> build_inverse_domain_grid(const Distribution& f, const GridSpec& spec,
                                                     bool with_differences) {
  std::vector<double> xs = spec.points();
  std::vector<double> mapped;
  for (double k : f.kinks())
    if (k > 0.0 && std::isfinite(k)) mapped.push_back(1.0 / k);
  for (double m : mapped) detail::insert_with_offsets(xs, m, spec.lo, spec.hi);
  if (with_differences) {
    for (std::size_t i = 0; i < mapped.size(); ++i)
      for (std::size_t j = 0; j < mapped.size(); ++j) {
        const double d = mapped[i] - mapped[j];
        if (d > 1e-9) detail::insert_with_offsets(xs, d, spec.lo, spec.hi);
      }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

// Grid in the cdf coordinate, with the law's own breakpoints inserted.
inline std::vector<double> build_direct_domain_grid(const Distribution& f, const GridSpec& spec) {
  std::vector<double> xs = spec.points();
  for (double k : f.kinks()) detail::insert_with_offsets(xs, k, spec.lo, spec.hi);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace htd

#pragma once

// Distribution abstraction: an immutable probability law on [0, inf)
// (the standard Cauchy base is the one whole-line exception).
//
// Models expose closed forms where they exist. survival() is primary for the
// heavy-tail families so deep-tail values never go through 1 - cdf
// cancellation; log_cdf() is primary wherever cdf underflows on the default
// check grids.

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "htd/common.hpp"

namespace htd {

class DistModel {
 public:
  virtual ~DistModel() = default;

  virtual double cdf(double x) const = 0;
  virtual double survival(double x) const { return 1.0 - cdf(x); }
  virtual double log_cdf(double x) const {
    const double c = cdf(x);
    return c > 0.0 ? std::log(c) : -kInf;
  }
  virtual Support support() const = 0;

  // Left-continuous inverse; default bracketing bisection (heavy tails make
  // Newton unreliable).
  virtual double quantile(double u) const;

  // Density of the absolutely continuous part, if the model knows one.
  virtual bool has_density_part() const { return false; }
  virtual double density_part(double) const { return 0.0; }

  // Exact point masses (never smoothed).
  virtual std::vector<Atom> atoms() const { return {}; }

  // cdf-domain breakpoints (kinks of cdf/density and support edges).
  virtual std::vector<double> kinks() const { return {}; }

  // x where density_part is not defined (corners); density() reports absent there.
  virtual bool density_kink_at(double x) const;

  virtual double sample(RngStream& rng) const { return quantile(rng.uniform01()); }

  // Nonzero only for Monte-Carlo-backed evaluations; certifiers widen their
  // violation threshold by 3x this value.
  virtual double survival_se(double) const { return 0.0; }
};

inline double DistModel::quantile(double u) const {
  const Support sp = support();
  if (u <= 0.0) return sp.lower;
  if (u > 1.0) raise(errc::param_out_of_range, "quantile level outside [0,1]");
  if (u == 1.0 && survival(sp.upper) <= 0.0 && std::isfinite(sp.upper)) return sp.upper;

  double lo = std::isfinite(sp.lower) ? sp.lower : -1.0;
  if (!std::isfinite(sp.lower)) {
    while (cdf(lo) >= u) lo *= 2.0;
  }
  if (cdf(lo) >= u) return lo;
  double hi = std::max(lo + 1.0, std::fabs(lo) * 2.0 + 1.0);
  int grow = 0;
  while (cdf(hi) < u) {
    hi *= 2.0;
    if (++grow > 1200) return kInf;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) >= u)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= kQuantileTol * std::max(1.0, std::fabs(hi))) break;
  }
  return hi;
}

inline bool DistModel::density_kink_at(double x) const {
  for (double k : kinks())
    if (x == k) return true;
  return false;
}

class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(std::shared_ptr<const DistModel> m) : m_(std::move(m)) {}

  double cdf(double x) const { return m_->cdf(x); }
  double survival(double x) const { return m_->survival(x); }
  double log_cdf(double x) const { return m_->log_cdf(x); }
  double quantile(double u) const {
    require(u >= 0.0 && u <= 1.0, errc::param_out_of_range, "quantile level outside [0,1]");
    return m_->quantile(u);
  }
  Support support() const { return m_->support(); }
  double sample(RngStream& rng) const { return m_->sample(rng); }

  // eta(x) = survival(1/x); the canonical encoding for the class checks.
  double eta(double x) const { return x > 0.0 ? m_->survival(1.0 / x) : 0.0; }

  // lambda(x) = -log cdf(1/x), with log 0 = -inf (so the value is +inf).
  double lambda(double x) const { return x > 0.0 ? -m_->log_cdf(1.0 / x) : 0.0; }

  std::optional<double> density(double x) const {
    if (!m_->has_density_part() || !m_->atoms().empty()) return std::nullopt;
    if (m_->density_kink_at(x)) return std::nullopt;
    return m_->density_part(x);
  }

  bool has_density_part() const { return m_->has_density_part(); }
  double density_part(double x) const { return m_->density_part(x); }
  std::vector<Atom> atoms() const { return m_->atoms(); }
  std::vector<double> kinks() const { return m_->kinks(); }
  double survival_se(double x) const { return m_->survival_se(x); }

  bool degenerate() const {
    const Support sp = support();
    return sp.lower == sp.upper;
  }

  const DistModel& model() const { return *m_; }
  const std::shared_ptr<const DistModel>& shared_model() const { return m_; }

 private:
  std::shared_ptr<const DistModel> m_;
};

template <class M, class... Args>
Distribution make_distribution(Args&&... args) {
  return Distribution(std::make_shared<const M>(std::forward<Args>(args)...));
}

}  // namespace htd

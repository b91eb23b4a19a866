#pragma once

// Concrete families: Pareto, Frechet, Lomax, log-Cauchy, standard Cauchy,
// uniform, point mass, piecewise-eta laws and the named example catalog.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "htd/distribution.hpp"

namespace htd {

// ---------------------------------------------------------------- Pareto

class ParetoModel final : public DistModel {
 public:
  explicit ParetoModel(double alpha) : alpha_(alpha) {
    require(alpha > 0.0, errc::non_positive_param, "pareto alpha must be > 0");
  }
  double cdf(double x) const override { return x >= 1.0 ? 1.0 - std::pow(x, -alpha_) : 0.0; }
  double survival(double x) const override { return x >= 1.0 ? std::pow(x, -alpha_) : 1.0; }
  double log_cdf(double x) const override {
    return x >= 1.0 ? std::log1p(-std::pow(x, -alpha_)) : -kInf;
  }
  double quantile(double u) const override {
    if (u <= 0.0) return 1.0;
    if (u >= 1.0) return kInf;
    return std::pow(1.0 - u, -1.0 / alpha_);
  }
  Support support() const override { return {1.0, kInf}; }
  bool has_density_part() const override { return true; }
  double density_part(double x) const override {
    return x >= 1.0 ? alpha_ * std::pow(x, -alpha_ - 1.0) : 0.0;
  }
  std::vector<double> kinks() const override { return {1.0}; }
  double alpha() const { return alpha_; }

 private:
  double alpha_;
};

inline Distribution make_pareto(double alpha) { return make_distribution<ParetoModel>(alpha); }

// ---------------------------------------------------------------- Frechet

class FrechetModel final : public DistModel {
 public:
  explicit FrechetModel(double alpha) : alpha_(alpha) {
    require(alpha > 0.0, errc::non_positive_param, "frechet alpha must be > 0");
  }
  double cdf(double x) const override { return x > 0.0 ? std::exp(-std::pow(x, -alpha_)) : 0.0; }
  double survival(double x) const override {
    return x > 0.0 ? -std::expm1(-std::pow(x, -alpha_)) : 1.0;
  }
  double log_cdf(double x) const override { return x > 0.0 ? -std::pow(x, -alpha_) : -kInf; }
  double quantile(double u) const override {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return kInf;
    return std::pow(-std::log(u), -1.0 / alpha_);
  }
  Support support() const override { return {0.0, kInf}; }
  bool has_density_part() const override { return true; }
  double density_part(double x) const override {
    if (x <= 0.0) return 0.0;
    return alpha_ * std::pow(x, -alpha_ - 1.0) * std::exp(-std::pow(x, -alpha_));
  }

 private:
  double alpha_;
};

inline Distribution make_frechet(double alpha) { return make_distribution<FrechetModel>(alpha); }

// ---------------------------------------------------------------- Lomax

class LomaxModel final : public DistModel {
 public:
  explicit LomaxModel(double alpha) : alpha_(alpha) {
    require(alpha > 0.0, errc::non_positive_param, "lomax alpha must be > 0");
  }
  double cdf(double x) const override { return x >= 0.0 ? 1.0 - std::pow(1.0 + x, -alpha_) : 0.0; }
  double survival(double x) const override { return x >= 0.0 ? std::pow(1.0 + x, -alpha_) : 1.0; }
  double log_cdf(double x) const override {
    return x >= 0.0 ? std::log1p(-std::pow(1.0 + x, -alpha_)) : -kInf;
  }
  double quantile(double u) const override {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return kInf;
    return std::pow(1.0 - u, -1.0 / alpha_) - 1.0;
  }
  Support support() const override { return {0.0, kInf}; }
  bool has_density_part() const override { return true; }
  double density_part(double x) const override {
    return x >= 0.0 ? alpha_ * std::pow(1.0 + x, -alpha_ - 1.0) : 0.0;
  }

 private:
  double alpha_;
};

inline Distribution make_lomax(double alpha) { return make_distribution<LomaxModel>(alpha); }

// ---------------------------------------------------------------- log-Cauchy

class LogCauchyModel final : public DistModel {
 public:
  double cdf(double x) const override {
    if (x <= 0.0) return 0.0;
    const double t = std::log(x);
    // For t < 0 use arctan(1/|t|) to avoid cancellation against pi/2.
    if (t < 0.0) return std::atan(-1.0 / t) / M_PI;
    return std::atan(t) / M_PI + 0.5;
  }
  double survival(double x) const override {
    if (x <= 0.0) return 1.0;
    return cdf(1.0 / x);  // log-symmetry
  }
  double log_cdf(double x) const override {
    const double c = cdf(x);
    return c > 0.0 ? std::log(c) : -kInf;
  }
  double quantile(double u) const override {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return kInf;
    return std::exp(std::tan(M_PI * (u - 0.5)));
  }
  Support support() const override { return {0.0, kInf}; }
  bool has_density_part() const override { return true; }
  double density_part(double x) const override {
    if (x <= 0.0) return 0.0;
    const double t = std::log(x);
    return 1.0 / (M_PI * x * (1.0 + t * t));
  }
};

inline Distribution make_logcauchy() { return make_distribution<LogCauchyModel>(); }

// ---------------------------------------------------------------- standard Cauchy

// Whole-line law; used only as the base of the super-Cauchy check.
class CauchyModel final : public DistModel {
 public:
  double cdf(double x) const override { return std::atan(x) / M_PI + 0.5; }
  double survival(double x) const override { return 0.5 - std::atan(x) / M_PI; }
  double quantile(double u) const override {
    if (u <= 0.0) return -kInf;
    if (u >= 1.0) return kInf;
    return std::tan(M_PI * (u - 0.5));
  }
  Support support() const override { return {-kInf, kInf}; }
  bool has_density_part() const override { return true; }
  double density_part(double x) const override { return 1.0 / (M_PI * (1.0 + x * x)); }
};

inline Distribution make_cauchy_std() { return make_distribution<CauchyModel>(); }

// ---------------------------------------------------------------- uniform

class UniformModel final : public DistModel {
 public:
  UniformModel(double a, double b) : a_(a), b_(b) {
    require(b > a, errc::param_out_of_range, "uniform needs b > a");
  }
  double cdf(double x) const override {
    if (x <= a_) return 0.0;
    if (x >= b_) return 1.0;
    return (x - a_) / (b_ - a_);
  }
  double quantile(double u) const override {
    if (u <= 0.0) return a_;
    if (u >= 1.0) return b_;
    return a_ + (b_ - a_) * u;
  }
  Support support() const override { return {a_, b_}; }
  bool has_density_part() const override { return true; }
  double density_part(double x) const override {
    return (x >= a_ && x <= b_) ? 1.0 / (b_ - a_) : 0.0;
  }
  std::vector<double> kinks() const override { return {a_, b_}; }

 private:
  double a_, b_;
};

inline Distribution make_uniform(double a, double b) { return make_distribution<UniformModel>(a, b); }

// ---------------------------------------------------------------- point mass

// Allowed as a building block (e.g. the Y in (X-Y)+); certifiers reject it.
class PointMassModel final : public DistModel {
 public:
  explicit PointMassModel(double c) : c_(c) {}
  double cdf(double x) const override { return x >= c_ ? 1.0 : 0.0; }
  double quantile(double) const override { return c_; }
  Support support() const override { return {c_, c_}; }
  std::vector<Atom> atoms() const override { return {{c_, 1.0}}; }
  double sample(RngStream&) const override { return c_; }

 private:
  double c_;
};

inline Distribution make_point_mass(double c) { return make_distribution<PointMassModel>(c); }

// ---------------------------------------------------------------- piecewise eta

// Piecewise-linear eta(x) = survival(1/x): ordered breakpoints, eta(0) = 0,
// terminal value 1, constant past the last breakpoint.
struct PiecewiseEta {
  std::vector<std::pair<double, double>> points;  // (x, eta)

  void validate() const {
    require(points.size() >= 2, errc::invalid_eta, "need at least two breakpoints");
    require(points.front().first == 0.0 && points.front().second == 0.0, errc::invalid_eta,
            "eta must start at (0, 0)");
    for (std::size_t i = 1; i < points.size(); ++i) {
      require(points[i].first > points[i - 1].first, errc::invalid_eta,
              "x-coordinates must be strictly increasing");
      require(points[i].second >= points[i - 1].second, errc::invalid_eta,
              "eta values must be nondecreasing");
      require(points[i].second <= 1.0 + kSumTol, errc::invalid_eta, "eta values must be <= 1");
    }
    require(std::fabs(points.back().second - 1.0) <= kSumTol, errc::invalid_eta,
            "terminal eta value must be 1");
  }

  double operator()(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= points.back().first) return points.back().second;
    auto it = std::upper_bound(points.begin(), points.end(), x,
                               [](double v, const auto& p) { return v < p.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double t = (x - lo.first) / (hi.first - lo.first);
    return lo.second + t * (hi.second - lo.second);
  }

  // sup{x : eta(x) <= v}; flats resolve to their right edge.
  double inverse_sup(double v) const {
    if (v >= points.back().second) return kInf;
    for (std::size_t i = points.size() - 1; i > 0; --i) {
      const auto& lo = points[i - 1];
      const auto& hi = points[i];
      if (v >= hi.second) return hi.first;  // only when later segments exceed v
      if (v >= lo.second) {
        if (hi.second == lo.second) return hi.first;
        const double t = (v - lo.second) / (hi.second - lo.second);
        return lo.first + t * (hi.first - lo.first);
      }
    }
    return points.front().first;
  }
};

class PiecewiseEtaModel final : public DistModel {
 public:
  explicit PiecewiseEtaModel(PiecewiseEta eta) : eta_(std::move(eta)) {
    eta_.validate();
    double first_hit_one = kInf;
    for (const auto& p : eta_.points)
      if (p.second >= 1.0 - kSumTol) {
        first_hit_one = p.first;
        break;
      }
    lower_ = 1.0 / first_hit_one;
    double last_zero = 0.0;
    for (const auto& p : eta_.points)
      if (p.second <= 0.0) last_zero = p.first;
    upper_ = last_zero > 0.0 ? 1.0 / last_zero : kInf;
  }

  double cdf(double x) const override {
    if (x <= 0.0) return 0.0;
    return 1.0 - eta_(1.0 / x);
  }
  double survival(double x) const override { return x > 0.0 ? eta_(1.0 / x) : 1.0; }
  double quantile(double u) const override {
    if (u <= 0.0) return lower_;
    if (u >= 1.0) return upper_;
    const double x = eta_.inverse_sup(1.0 - u);
    return x == kInf ? 0.0 : 1.0 / x;
  }
  Support support() const override { return {lower_, upper_}; }
  bool has_density_part() const override { return true; }
  double density_part(double x) const override {
    if (x <= 0.0) return 0.0;
    const double ix = 1.0 / x;
    // slope of the segment containing 1/x
    const auto& pts = eta_.points;
    if (ix >= pts.back().first) return 0.0;
    auto it = std::upper_bound(pts.begin(), pts.end(), ix,
                               [](double v, const auto& p) { return v < p.first; });
    const double slope = (it->second - (it - 1)->second) / (it->first - (it - 1)->first);
    return slope / (x * x);
  }
  std::vector<double> kinks() const override {
    std::vector<double> ks;
    for (const auto& p : eta_.points)
      if (p.first > 0.0) ks.push_back(1.0 / p.first);
    std::sort(ks.begin(), ks.end());
    return ks;
  }
  bool density_kink_at(double x) const override {
    for (double k : kinks())
      if (x == k) return true;
    return false;
  }
  const PiecewiseEta& eta_spec() const { return eta_; }

 private:
  PiecewiseEta eta_;
  double lower_, upper_;
};

inline Distribution make_piecewise_eta(PiecewiseEta eta) {
  return make_distribution<PiecewiseEtaModel>(std::move(eta));
}

inline Distribution make_piecewise_eta(std::vector<std::pair<double, double>> pts) {
  return make_piecewise_eta(PiecewiseEta{std::move(pts)});
}

}  // namespace htd

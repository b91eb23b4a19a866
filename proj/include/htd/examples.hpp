#pragma once

// Named example distributions used by the reproduction catalog and tests.

#include <cmath>
#include <string>

#include "htd/families.hpp"

namespace htd {

// F-bar(x) = (3(1/x - 1)^2 + 1)/x on [1, inf). x*F-bar(x) is increasing but
// eta(x) = 3x^3 - 6x^2 + 4x is convex on (2/3, 1).
class ExVNotHModel final : public DistModel {
 public:
  double survival(double x) const override {
    if (x <= 1.0) return 1.0;
    const double t = 1.0 / x;
    return (3.0 * (t - 1.0) * (t - 1.0) + 1.0) * t;
  }
  double cdf(double x) const override { return 1.0 - survival(x); }
  Support support() const override { return {1.0, kInf}; }
  bool has_density_part() const override { return true; }
  double density_part(double x) const override {
    if (x <= 1.0) return 0.0;
    const double u = (2.0 * x - 3.0) / (x * x);
    return u * u;
  }
  std::vector<double> kinks() const override { return {1.0}; }
};

// Hazard-rate ordered pair on (6/5, inf): F-bar = c1/(x+1) is in the concave
// class, G-bar = c2 (3(1/x-1)^2 + 1)/x dominates it in hazard rate but is not.
inline constexpr double kHrPairC1 = 11.0 / 5.0;
inline constexpr double kHrPairC2 = 72.0 / 65.0;

class HrPairFModel final : public DistModel {
 public:
  double survival(double x) const override {
    return x <= 1.2 ? 1.0 : kHrPairC1 / (x + 1.0);
  }
  double cdf(double x) const override { return 1.0 - survival(x); }
  double quantile(double u) const override {
    if (u <= 0.0) return 1.2;
    if (u >= 1.0) return kInf;
    return kHrPairC1 / (1.0 - u) - 1.0;
  }
  Support support() const override { return {1.2, kInf}; }
  bool has_density_part() const override { return true; }
  double density_part(double x) const override {
    return x > 1.2 ? kHrPairC1 / ((x + 1.0) * (x + 1.0)) : 0.0;
  }
  std::vector<double> kinks() const override { return {1.2}; }
};

class HrPairGModel final : public DistModel {
 public:
  double survival(double x) const override {
    if (x <= 1.2) return 1.0;
    const double t = 1.0 / x;
    return kHrPairC2 * (3.0 * (t - 1.0) * (t - 1.0) + 1.0) * t;
  }
  double cdf(double x) const override { return 1.0 - survival(x); }
  Support support() const override { return {1.2, kInf}; }
  bool has_density_part() const override { return true; }
  double density_part(double x) const override {
    if (x <= 1.2) return 0.0;
    const double u = (2.0 * x - 3.0) / (x * x);
    return kHrPairC2 * u * u;
  }
  std::vector<double> kinks() const override { return {1.2}; }
};

// Frechet density restricted to (1, inf); the normalizing constant follows
// from F-bar(1) = 1:  c = alpha / (1 - e^{-1}).
class TruncFrechetModel final : public DistModel {
 public:
  explicit TruncFrechetModel(double alpha) : alpha_(alpha) {
    require(alpha > 0.0, errc::non_positive_param, "alpha must be > 0");
  }
  double survival(double x) const override {
    if (x <= 1.0) return 1.0;
    return -std::expm1(-std::pow(x, -alpha_)) / (1.0 - std::exp(-1.0));
  }
  double cdf(double x) const override { return 1.0 - survival(x); }
  Support support() const override { return {1.0, kInf}; }
  bool has_density_part() const override { return true; }
  double density_part(double x) const override {
    if (x <= 1.0) return 0.0;
    const double c = alpha_ / (1.0 - std::exp(-1.0));
    return c * std::pow(x, -alpha_ - 1.0) * std::exp(-std::pow(x, -alpha_));
  }
  std::vector<double> kinks() const override { return {1.0}; }
  double alpha() const { return alpha_; }

 private:
  double alpha_;
};

// Lambda(x) = sqrt(x) on [0,1], sqrt(x - 0.99) + 0.9 beyond: subadditive (so
// the log-subadditive check passes) yet x*F-bar(x) dips just left of 1.
class SqrtLambdaModel final : public DistModel {
 public:
  static double lambda_fn(double x) {
    if (x <= 0.0) return 0.0;
    if (x <= 1.0) return std::sqrt(x);
    return std::sqrt(x - 0.99) + 0.9;
  }
  double cdf(double x) const override {
    if (x <= 0.0) return 0.0;
    return std::exp(-lambda_fn(1.0 / x));
  }
  double survival(double x) const override {
    if (x <= 0.0) return 1.0;
    return -std::expm1(-lambda_fn(1.0 / x));
  }
  double log_cdf(double x) const override { return x > 0.0 ? -lambda_fn(1.0 / x) : -kInf; }
  Support support() const override { return {0.0, kInf}; }
  bool has_density_part() const override { return true; }
  double density_part(double x) const override {
    if (x <= 0.0) return 0.0;
    const double t = 1.0 / x;
    const double dl = t <= 1.0 ? 0.5 / std::sqrt(t) : 0.5 / std::sqrt(t - 0.99);
    return std::exp(-lambda_fn(t)) * dl * t * t;
  }
  std::vector<double> kinks() const override { return {1.0}; }
};

// F_n(x) = 1 - 1/(n x + 1); every member passes all four checks while the
// weak limit is the point mass at zero.
class FnFamilyModel final : public DistModel {
 public:
  explicit FnFamilyModel(double n) : n_(n) {
    require(n > 0.0, errc::non_positive_param, "n must be > 0");
  }
  double cdf(double x) const override { return x >= 0.0 ? n_ * x / (n_ * x + 1.0) : 0.0; }
  double survival(double x) const override { return x >= 0.0 ? 1.0 / (n_ * x + 1.0) : 1.0; }
  double quantile(double u) const override {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return kInf;
    return u / (n_ * (1.0 - u));
  }
  Support support() const override { return {0.0, kInf}; }
  bool has_density_part() const override { return true; }
  double density_part(double x) const override {
    if (x < 0.0) return 0.0;
    const double d = n_ * x + 1.0;
    return n_ / (d * d);
  }

 private:
  double n_;
};

// Piecewise survival 1, 1/x, 1/2, 3/(2x): the completely-subscalable member
// whose two-asset mixes order the wrong way at x = 3/2.
class SdCounterModel final : public DistModel {
 public:
  double survival(double x) const override {
    if (x < 1.0) return 1.0;
    if (x < 2.0) return 1.0 / x;
    if (x < 3.0) return 0.5;
    return 1.5 / x;
  }
  double cdf(double x) const override { return 1.0 - survival(x); }
  double quantile(double u) const override {
    if (u <= 0.0) return 1.0;
    if (u < 0.5) return 1.0 / (1.0 - u);
    if (u == 0.5) return 2.0;
    if (u >= 1.0) return kInf;
    return 1.5 / (1.0 - u);
  }
  Support support() const override { return {1.0, kInf}; }
  bool has_density_part() const override { return true; }
  double density_part(double x) const override {
    if (x > 1.0 && x < 2.0) return 1.0 / (x * x);
    if (x > 3.0) return 1.5 / (x * x);
    return 0.0;
  }
  std::vector<double> kinks() const override { return {1.0, 2.0, 3.0}; }
};

// G-bar(x) = min(2/(1+x), 1): hazard-rate above the x/(1+x) law but with
// essential infimum 1, so the log-subadditive check rejects it.
class GMinModel final : public DistModel {
 public:
  double survival(double x) const override { return std::min(2.0 / (1.0 + x), 1.0); }
  double cdf(double x) const override { return 1.0 - survival(x); }
  double quantile(double u) const override {
    if (u <= 0.0) return 1.0;
    if (u >= 1.0) return kInf;
    return (1.0 + u) / (1.0 - u);
  }
  Support support() const override { return {1.0, kInf}; }
  bool has_density_part() const override { return true; }
  double density_part(double x) const override {
    return x > 1.0 ? 2.0 / ((1.0 + x) * (1.0 + x)) : 0.0;
  }
  std::vector<double> kinks() const override { return {1.0}; }
};

enum class Example {
  ex_v_not_h,
  ex_hr_pair_f,
  ex_hr_pair_g,
  trunc_frechet,
  sqrt_lambda,
  fn_family,
  ex_sd_counter,
  g_min,
};

inline Distribution make_example(Example which, double param = 1.0) {
  switch (which) {
    case Example::ex_v_not_h: return make_distribution<ExVNotHModel>();
    case Example::ex_hr_pair_f: return make_distribution<HrPairFModel>();
    case Example::ex_hr_pair_g: return make_distribution<HrPairGModel>();
    case Example::trunc_frechet: return make_distribution<TruncFrechetModel>(param);
    case Example::sqrt_lambda: return make_distribution<SqrtLambdaModel>();
    case Example::fn_family: return make_distribution<FnFamilyModel>(param);
    case Example::ex_sd_counter: return make_distribution<SdCounterModel>();
    case Example::g_min: return make_distribution<GMinModel>();
  }
  raise(errc::unknown_name, "unknown example id");
}

inline Distribution make_example(const std::string& name, double param = 1.0) {
  if (name == "EX_V_NOT_H") return make_example(Example::ex_v_not_h);
  if (name == "EX_HR_PAIR_F") return make_example(Example::ex_hr_pair_f);
  if (name == "EX_HR_PAIR_G") return make_example(Example::ex_hr_pair_g);
  if (name == "TRUNC_FRECHET") return make_example(Example::trunc_frechet, param);
  if (name == "SQRT_LAMBDA") return make_example(Example::sqrt_lambda);
  if (name == "FN_FAMILY") return make_example(Example::fn_family, param);
  if (name == "EX_SD_COUNTER") return make_example(Example::ex_sd_counter);
  if (name == "G_MIN") return make_example(Example::g_min);
  raise(errc::unknown_name, "unknown example name: " + name);
}

// eta-coordinate encodings of the two canonical piecewise counterexamples.
inline Distribution make_eta1() {
  return make_piecewise_eta({{0.0, 0.0}, {1.0, 0.5}, {2.0, 0.5}, {4.0, 1.0}});
}

inline Distribution make_eta2() {
  return make_piecewise_eta({{0.0, 0.0}, {1.0, 0.5}, {3.0, 0.5}, {4.0, 1.0}});
}

}  // namespace htd

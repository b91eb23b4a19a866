#pragma once

// Distribution -> Distribution constructors: cdf/survival powers, maxima,
// excess losses, conditioning, truncation, convex maps, mixtures, and the
// two closed-form iid sums.

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>
#include <vector>

#include "htd/distribution.hpp"
#include "htd/quadrature.hpp"

namespace htd {

// ---------------------------------------------------------------- ConvexMap

// Increasing convex psi on R+, either named or a convex polyline. Whether
// psi(0) == 0 is tracked explicitly; the closure results hinge on it.
class ConvexMap {
 public:
  enum class Kind { power, add_const, scale, polyline };

  static ConvexMap power(double p) {
    require(p >= 1.0, errc::param_out_of_range, "power map needs p >= 1");
    ConvexMap m;
    m.kind_ = Kind::power;
    m.a_ = p;
    return m;
  }
  static ConvexMap add_const(double c) {
    require(c > 0.0, errc::non_positive_param, "shift must be > 0");
    ConvexMap m;
    m.kind_ = Kind::add_const;
    m.a_ = c;
    return m;
  }
  static ConvexMap scale(double c) {
    require(c > 0.0, errc::non_positive_param, "scale must be > 0");
    ConvexMap m;
    m.kind_ = Kind::scale;
    m.a_ = c;
    return m;
  }
  static ConvexMap polyline(std::vector<std::pair<double, double>> pts) {
    require(pts.size() >= 2, errc::param_out_of_range, "polyline needs >= 2 points");
    double prev_slope = -kInf;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      require(pts[i].first > pts[i - 1].first, errc::param_out_of_range,
              "polyline x must be strictly increasing");
      const double s = (pts[i].second - pts[i - 1].second) / (pts[i].first - pts[i - 1].first);
      require(s >= 0.0, errc::not_invertible, "polyline must be nondecreasing");
      require(s >= prev_slope - 1e-12, errc::param_out_of_range, "polyline must be convex");
      prev_slope = std::max(prev_slope, s);
    }
    require(prev_slope > 0.0, errc::not_invertible, "polyline map is constant");
    ConvexMap m;
    m.kind_ = Kind::polyline;
    m.pts_ = std::move(pts);
    return m;
  }

  double operator()(double x) const {
    switch (kind_) {
      case Kind::power: return std::pow(x, a_);
      case Kind::add_const: return x + a_;
      case Kind::scale: return a_ * x;
      case Kind::polyline: {
        if (x <= pts_.front().first)
          return pts_.front().second;  // clamp below the polyline's domain
        auto it = std::upper_bound(pts_.begin(), pts_.end(), x,
                                   [](double v, const auto& p) { return v < p.first; });
        if (it == pts_.end()) {
          const auto& b = pts_.back();
          const auto& a = pts_[pts_.size() - 2];
          const double s = (b.second - a.second) / (b.first - a.first);
          return b.second + s * (x - b.first);
        }
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        const double t = (x - lo.first) / (hi.first - lo.first);
        return lo.second + t * (hi.second - lo.second);
      }
    }
    return 0.0;
  }

  // Generalized inverse; flat segments resolve to their leftmost point.
  double inverse(double y) const {
    switch (kind_) {
      case Kind::power: return y <= 0.0 ? 0.0 : std::pow(y, 1.0 / a_);
      case Kind::add_const: return y - a_;
      case Kind::scale: return y / a_;
      case Kind::polyline: {
        if (y <= pts_.front().second) return pts_.front().first;
        for (std::size_t i = 1; i < pts_.size(); ++i) {
          const auto& lo = pts_[i - 1];
          const auto& hi = pts_[i];
          if (y <= hi.second) {
            if (hi.second == lo.second) return lo.first;
            const double t = (y - lo.second) / (hi.second - lo.second);
            return lo.first + t * (hi.first - lo.first);
          }
        }
        const auto& b = pts_.back();
        const auto& a = pts_[pts_.size() - 2];
        const double s = (b.second - a.second) / (b.first - a.first);
        require(s > 0.0, errc::not_invertible, "polyline not invertible beyond last point");
        return b.first + (y - b.second) / s;
      }
    }
    return 0.0;
  }

  double derivative(double x) const {
    switch (kind_) {
      case Kind::power: return a_ * std::pow(x, a_ - 1.0);
      case Kind::add_const: return 1.0;
      case Kind::scale: return a_;
      case Kind::polyline: {
        auto it = std::upper_bound(pts_.begin(), pts_.end(), x,
                                   [](double v, const auto& p) { return v < p.first; });
        if (it == pts_.begin()) ++it;
        if (it == pts_.end()) --it;
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        return (hi.second - lo.second) / (hi.first - lo.first);
      }
    }
    return 0.0;
  }

  bool fixes_zero() const {
    switch (kind_) {
      case Kind::power:
      case Kind::scale: return true;
      case Kind::add_const: return false;
      case Kind::polyline: return pts_.front().first == 0.0 && pts_.front().second == 0.0;
    }
    return false;
  }

  bool smooth() const { return kind_ != Kind::polyline; }
  Kind kind() const { return kind_; }
  double param() const { return a_; }
  const std::vector<std::pair<double, double>>& points() const { return pts_; }

  std::vector<double> corner_images() const {
    std::vector<double> out;
    if (kind_ == Kind::polyline)
      for (const auto& p : pts_) out.push_back(p.second);
    return out;
  }

 private:
  Kind kind_ = Kind::scale;
  double a_ = 1.0;
  std::vector<std::pair<double, double>> pts_;
};

// ---------------------------------------------------------------- pow_cdf

class PowCdfModel final : public DistModel {
 public:
  PowCdfModel(Distribution f, double beta) : f_(std::move(f)), beta_(beta) {}
  double cdf(double x) const override { return std::exp(beta_ * f_.log_cdf(x)); }
  double survival(double x) const override {
    const double lc = f_.log_cdf(x);
    return lc == -kInf ? 1.0 : -std::expm1(beta_ * lc);
  }
  double log_cdf(double x) const override { return beta_ * f_.log_cdf(x); }
  double quantile(double u) const override {
    if (u <= 0.0) return f_.support().lower;
    if (u >= 1.0) return f_.quantile(1.0);
    return f_.quantile(std::pow(u, 1.0 / beta_));
  }
  Support support() const override { return f_.support(); }
  bool has_density_part() const override { return f_.has_density_part(); }
  double density_part(double x) const override {
    const double lc = f_.log_cdf(x);
    if (lc == -kInf) return 0.0;
    return beta_ * std::exp((beta_ - 1.0) * lc) * f_.density_part(x);
  }
  std::vector<Atom> atoms() const override { return f_.atoms().empty() ? std::vector<Atom>{} : recompute_atoms(); }
  std::vector<double> kinks() const override { return f_.kinks(); }

 private:
  std::vector<Atom> recompute_atoms() const {
    std::vector<Atom> out;
    for (const Atom& a : f_.atoms()) {
      const double hi = cdf(a.x);
      const double lo = std::exp(beta_ * std::log(std::max(0.0, f_.cdf(a.x) - a.mass)));
      out.push_back({a.x, hi - lo});
    }
    return out;
  }
  Distribution f_;
  double beta_;
};

inline Distribution pow_cdf(const Distribution& f, double beta) {
  require(beta > 0.0, errc::non_positive_param, "pow_cdf beta must be > 0");
  if (beta == 1.0) return f;
  return make_distribution<PowCdfModel>(f, beta);
}

// ---------------------------------------------------------------- pow_survival

class PowSurvivalModel final : public DistModel {
 public:
  PowSurvivalModel(Distribution f, double beta) : f_(std::move(f)), beta_(beta) {}
  double survival(double x) const override { return std::pow(f_.survival(x), beta_); }
  double cdf(double x) const override {
    const double s = f_.survival(x);
    return s >= 1.0 ? 0.0 : -std::expm1(beta_ * std::log(s));
  }
  double quantile(double u) const override {
    if (u <= 0.0) return f_.support().lower;
    if (u >= 1.0) return f_.quantile(1.0);
    return f_.quantile(-std::expm1(std::log1p(-u) / beta_));
  }
  Support support() const override { return f_.support(); }
  bool has_density_part() const override { return f_.has_density_part(); }
  double density_part(double x) const override {
    const double s = f_.survival(x);
    if (s <= 0.0) return 0.0;
    return beta_ * std::pow(s, beta_ - 1.0) * f_.density_part(x);
  }
  std::vector<Atom> atoms() const override {
    std::vector<Atom> out;
    for (const Atom& a : f_.atoms()) {
      const double s_hi = f_.survival(a.x);
      out.push_back({a.x, std::pow(s_hi + a.mass, beta_) - std::pow(s_hi, beta_)});
    }
    return out;
  }
  std::vector<double> kinks() const override { return f_.kinks(); }

 private:
  Distribution f_;
  double beta_;
};

inline Distribution pow_survival(const Distribution& f, double beta) {
  require(beta > 0.0 && beta < 1.0, errc::param_out_of_range,
          "pow_survival beta must be in (0,1)");
  return make_distribution<PowSurvivalModel>(f, beta);
}

// ---------------------------------------------------------------- max of independents

class MaxOfModel final : public DistModel {
 public:
  MaxOfModel(Distribution f, Distribution g) : f_(std::move(f)), g_(std::move(g)) {}
  double cdf(double x) const override { return f_.cdf(x) * g_.cdf(x); }
  double survival(double x) const override {
    const double sf = f_.survival(x), sg = g_.survival(x);
    return sf + sg - sf * sg;
  }
  double log_cdf(double x) const override { return f_.log_cdf(x) + g_.log_cdf(x); }
  Support support() const override {
    return {std::max(f_.support().lower, g_.support().lower),
            std::max(f_.support().upper, g_.support().upper)};
  }
  bool has_density_part() const override { return f_.has_density_part() && g_.has_density_part(); }
  double density_part(double x) const override {
    return f_.density_part(x) * g_.cdf(x) + f_.cdf(x) * g_.density_part(x);
  }
  std::vector<Atom> atoms() const override {
    std::vector<double> locs;
    for (const Atom& a : f_.atoms()) locs.push_back(a.x);
    for (const Atom& a : g_.atoms()) locs.push_back(a.x);
    std::sort(locs.begin(), locs.end());
    locs.erase(std::unique(locs.begin(), locs.end()), locs.end());
    std::vector<Atom> out;
    for (double x : locs) {
      const double mass = cdf(x) - cdf_left(x);
      if (mass > 0.0) out.push_back({x, mass});
    }
    return out;
  }
  std::vector<double> kinks() const override {
    std::vector<double> ks = f_.kinks();
    for (double k : g_.kinks()) ks.push_back(k);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
  }
  double sample(RngStream& rng) const override {
    const double a = f_.sample(rng);
    const double b = g_.sample(rng);
    return std::max(a, b);
  }

 private:
  double cdf_left(double x) const {
    double cf = f_.cdf(x), cg = g_.cdf(x);
    for (const Atom& a : f_.atoms())
      if (a.x == x) cf -= a.mass;
    for (const Atom& a : g_.atoms())
      if (a.x == x) cg -= a.mass;
    return cf * cg;
  }
  Distribution f_, g_;
};

inline Distribution max_of(const Distribution& f, const Distribution& g) {
  return make_distribution<MaxOfModel>(f, g);
}

// ---------------------------------------------------------------- excess (X - c)+

class ExcessModel final : public DistModel {
 public:
  ExcessModel(Distribution f, double c) : f_(std::move(f)), c_(c) {}
  double cdf(double x) const override { return x < 0.0 ? 0.0 : f_.cdf(x + c_); }
  double survival(double x) const override { return x < 0.0 ? 1.0 : f_.survival(x + c_); }
  double log_cdf(double x) const override { return x < 0.0 ? -kInf : f_.log_cdf(x + c_); }
  double quantile(double u) const override {
    return std::max(0.0, f_.quantile(u) - c_);
  }
  Support support() const override {
    const Support s = f_.support();
    return {std::max(0.0, s.lower - c_), std::max(0.0, s.upper - c_)};
  }
  bool has_density_part() const override { return f_.has_density_part(); }
  double density_part(double x) const override { return x > 0.0 ? f_.density_part(x + c_) : 0.0; }
  std::vector<Atom> atoms() const override {
    std::vector<Atom> out;
    const double m0 = f_.cdf(c_);
    if (m0 > 0.0) out.push_back({0.0, m0});
    for (const Atom& a : f_.atoms())
      if (a.x > c_) out.push_back({a.x - c_, a.mass});
    return out;
  }
  std::vector<double> kinks() const override {
    std::vector<double> ks{0.0};
    for (double k : f_.kinks())
      if (k > c_) ks.push_back(k - c_);
    return ks;
  }
  double sample(RngStream& rng) const override { return std::max(0.0, f_.sample(rng) - c_); }

 private:
  Distribution f_;
  double c_;
};

inline Distribution excess(const Distribution& f, double c) {
  require(c > 0.0, errc::non_positive_param, "excess threshold must be > 0");
  return make_distribution<ExcessModel>(f, c);
}

// ---------------------------------------------------------------- excess over random threshold (X - Y)+

class ExcessRandomModel final : public DistModel {
 public:
  ExcessRandomModel(Distribution f, Distribution y, int mc_n, std::uint64_t seed)
      : f_(std::move(f)), y_(std::move(y)) {
    require(y_.support().lower >= 0.0, errc::negative_support,
            "threshold variable must be nonnegative");
    double atom_total = 0.0;
    for (const Atom& a : y_.atoms()) atom_total += a.mass;
    // quadrature only when atoms plus density describe all of Y's mass
    use_quad_ = y_.has_density_part() || atom_total >= 1.0 - kSumTol;
    if (!use_quad_) {
      RngStream rng(seed, 0);
      y_draws_.resize(static_cast<std::size_t>(mc_n));
      for (auto& v : y_draws_) v = y_.sample(rng);
    }
    atom0_ = 1.0 - survival_raw(0.0);
  }

  double survival(double x) const override { return x < 0.0 ? 1.0 : survival_raw(x); }
  double cdf(double x) const override { return x < 0.0 ? 0.0 : 1.0 - survival_raw(x); }
  Support support() const override {
    const double up = f_.support().upper;
    return {0.0, std::isfinite(up) ? std::max(0.0, up - y_.support().lower) : kInf};
  }
  std::vector<Atom> atoms() const override {
    return atom0_ > 0.0 ? std::vector<Atom>{{0.0, atom0_}} : std::vector<Atom>{};
  }
  double survival_se(double x) const override {
    if (use_quad_ || x < 0.0) return 0.0;
    double mean = 0.0, m2 = 0.0;
    std::size_t k = 0;
    for (double z : y_draws_) {
      const double v = f_.survival(x + z);
      ++k;
      const double d = v - mean;
      mean += d / static_cast<double>(k);
      m2 += d * (v - mean);
    }
    return std::sqrt(m2 / static_cast<double>(y_draws_.size() - 1) /
                     static_cast<double>(y_draws_.size()));
  }
  double sample(RngStream& rng) const override {
    return std::max(0.0, f_.sample(rng) - y_.sample(rng));
  }

 private:
  double survival_raw(double x) const {
    if (!use_quad_) {
      double acc = 0.0;
      for (double z : y_draws_) acc += f_.survival(x + z);
      return acc / static_cast<double>(y_draws_.size());
    }
    double s = 0.0;
    for (const Atom& a : y_.atoms()) s += a.mass * f_.survival(x + a.x);
    if (y_.has_density_part()) {
      const Support sy = y_.support();
      const double hi = std::isfinite(sy.upper) ? sy.upper : y_.quantile(1.0 - 1e-12);
      std::vector<double> breaks = y_.kinks();
      for (double k : f_.kinks())
        if (k - x > sy.lower && k - x < hi) breaks.push_back(k - x);
      s += integrate([&](double z) { return y_.density_part(z) * f_.survival(x + z); }, sy.lower,
                     hi, std::move(breaks));
    }
    return std::min(1.0, s);
  }

  Distribution f_, y_;
  bool use_quad_ = true;
  std::vector<double> y_draws_;
  double atom0_ = 0.0;
};

inline Distribution excess_random(const Distribution& f, const Distribution& y, int mc_n = 100000,
                                  std::uint64_t seed = 0x5eedULL) {
  return make_distribution<ExcessRandomModel>(f, y, mc_n, seed);
}

// ---------------------------------------------------------------- [X | X > c]

class ConditionExceedModel final : public DistModel {
 public:
  ConditionExceedModel(Distribution f, double c) : f_(std::move(f)), c_(c) {
    tail_ = f_.survival(c);
    require(tail_ > 0.0, errc::zero_tail, "conditioning event has zero probability");
  }
  double survival(double x) const override { return std::min(1.0, f_.survival(x) / tail_); }
  double cdf(double x) const override { return 1.0 - survival(x); }
  double quantile(double u) const override {
    if (u <= 0.0) return support().lower;
    if (u >= 1.0) return f_.quantile(1.0);
    return f_.quantile(1.0 - (1.0 - u) * tail_);
  }
  Support support() const override {
    return {std::max(c_, f_.support().lower), f_.support().upper};
  }
  bool has_density_part() const override { return f_.has_density_part(); }
  double density_part(double x) const override {
    return x > c_ ? f_.density_part(x) / tail_ : 0.0;
  }
  std::vector<Atom> atoms() const override {
    std::vector<Atom> out;
    for (const Atom& a : f_.atoms())
      if (a.x > c_) out.push_back({a.x, a.mass / tail_});
    return out;
  }
  std::vector<double> kinks() const override {
    std::vector<double> ks{c_};
    for (double k : f_.kinks())
      if (k > c_) ks.push_back(k);
    return ks;
  }

 private:
  Distribution f_;
  double c_;
  double tail_;
};

inline Distribution condition_exceed(const Distribution& f, double c) {
  require(c > 0.0, errc::non_positive_param, "conditioning threshold must be > 0");
  return make_distribution<ConditionExceedModel>(f, c);
}

// ---------------------------------------------------------------- X ^ c (upper truncation)

class TruncateUpperModel final : public DistModel {
 public:
  TruncateUpperModel(Distribution f, double c) : f_(std::move(f)), c_(c) {}
  double cdf(double x) const override { return x >= c_ ? 1.0 : f_.cdf(x); }
  double survival(double x) const override { return x >= c_ ? 0.0 : f_.survival(x); }
  double quantile(double u) const override { return std::min(f_.quantile(u), c_); }
  Support support() const override {
    return {std::min(f_.support().lower, c_), std::min(f_.support().upper, c_)};
  }
  bool has_density_part() const override { return f_.has_density_part(); }
  double density_part(double x) const override { return x < c_ ? f_.density_part(x) : 0.0; }
  std::vector<Atom> atoms() const override {
    std::vector<Atom> out;
    for (const Atom& a : f_.atoms())
      if (a.x < c_) out.push_back(a);
    double m = f_.survival(c_);
    for (const Atom& a : f_.atoms())
      if (a.x == c_) m += a.mass;
    if (m > 0.0) out.push_back({c_, m});
    return out;
  }
  std::vector<double> kinks() const override {
    std::vector<double> ks;
    for (double k : f_.kinks())
      if (k < c_) ks.push_back(k);
    ks.push_back(c_);
    return ks;
  }
  double sample(RngStream& rng) const override { return std::min(f_.sample(rng), c_); }

 private:
  Distribution f_;
  double c_;
};

inline Distribution truncate_upper(const Distribution& f, double c) {
  require(c > 0.0, errc::non_positive_param, "truncation bound must be > 0");
  return make_distribution<TruncateUpperModel>(f, c);
}

// ---------------------------------------------------------------- psi(X)

class ConvexMapModel final : public DistModel {
 public:
  ConvexMapModel(Distribution f, ConvexMap psi) : f_(std::move(f)), psi_(std::move(psi)) {}
  double cdf(double x) const override { return f_.cdf(psi_.inverse(x)); }
  double survival(double x) const override { return f_.survival(psi_.inverse(x)); }
  double log_cdf(double x) const override { return f_.log_cdf(psi_.inverse(x)); }
  double quantile(double u) const override { return psi_(f_.quantile(u)); }
  Support support() const override {
    const Support s = f_.support();
    return {psi_(s.lower), std::isfinite(s.upper) ? psi_(s.upper) : kInf};
  }
  bool has_density_part() const override { return f_.has_density_part(); }
  double density_part(double x) const override {
    const double z = psi_.inverse(x);
    const double d = psi_.derivative(z);
    return d > 0.0 ? f_.density_part(z) / d : 0.0;
  }
  std::vector<Atom> atoms() const override {
    std::vector<Atom> out;
    for (const Atom& a : f_.atoms()) out.push_back({psi_(a.x), a.mass});
    return out;
  }
  std::vector<double> kinks() const override {
    std::vector<double> ks;
    for (double k : f_.kinks()) ks.push_back(psi_(k));
    for (double y : psi_.corner_images()) ks.push_back(y);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
  }
  double sample(RngStream& rng) const override { return psi_(f_.sample(rng)); }

 private:
  Distribution f_;
  ConvexMap psi_;
};

inline Distribution convex_map(const Distribution& f, const ConvexMap& psi) {
  return make_distribution<ConvexMapModel>(f, psi);
}

inline Distribution scale(const Distribution& f, double c) {
  return convex_map(f, ConvexMap::scale(c));
}

inline Distribution shift(const Distribution& f, double c) {
  return convex_map(f, ConvexMap::add_const(c));
}

// ---------------------------------------------------------------- mixtures

class MixtureModel final : public DistModel {
 public:
  MixtureModel(std::vector<double> w, std::vector<Distribution> comps)
      : w_(std::move(w)), comps_(std::move(comps)) {
    require(w_.size() == comps_.size(), errc::length_mismatch,
            "weights and components differ in length");
    require(!w_.empty(), errc::length_mismatch, "mixture needs at least one component");
    double s = 0.0;
    for (double wi : w_) {
      require(wi >= 0.0, errc::bad_weights, "mixture weights must be >= 0");
      s += wi;
    }
    require(std::fabs(s - 1.0) <= kSumTol, errc::weight_sum, "mixture weights must sum to 1");
  }
  double cdf(double x) const override {
    double c = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) c += w_[i] * comps_[i].cdf(x);
    return c;
  }
  double survival(double x) const override {
    double s = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) s += w_[i] * comps_[i].survival(x);
    return s;
  }
  Support support() const override {
    double lo = kInf, hi = -kInf;
    for (const auto& c : comps_) {
      lo = std::min(lo, c.support().lower);
      hi = std::max(hi, c.support().upper);
    }
    return {lo, hi};
  }
  bool has_density_part() const override {
    for (const auto& c : comps_)
      if (!c.has_density_part()) return false;
    return true;
  }
  double density_part(double x) const override {
    double d = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) d += w_[i] * comps_[i].density_part(x);
    return d;
  }
  std::vector<Atom> atoms() const override {
    std::vector<Atom> out;
    for (std::size_t i = 0; i < w_.size(); ++i)
      for (const Atom& a : comps_[i].atoms()) {
        bool merged = false;
        for (Atom& o : out)
          if (o.x == a.x) {
            o.mass += w_[i] * a.mass;
            merged = true;
          }
        if (!merged) out.push_back({a.x, w_[i] * a.mass});
      }
    std::sort(out.begin(), out.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
    return out;
  }
  std::vector<double> kinks() const override {
    std::vector<double> ks;
    for (const auto& c : comps_)
      for (double k : c.kinks()) ks.push_back(k);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
  }
  double sample(RngStream& rng) const override {
    double u = rng.uniform01();
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (u < w_[i] || i + 1 == w_.size()) return comps_[i].sample(rng);
      u -= w_[i];
    }
    return comps_.back().sample(rng);
  }

 private:
  std::vector<double> w_;
  std::vector<Distribution> comps_;
};

inline Distribution mixture(std::vector<double> weights, std::vector<Distribution> components) {
  return make_distribution<MixtureModel>(std::move(weights), std::move(components));
}

// ---------------------------------------------------------------- closed-form iid sums (n = 2)

enum class Sum2Case { pareto1, lomax1 };

class SumIidPareto1Model final : public DistModel {
 public:
  double cdf(double x) const override {
    if (x <= 2.0) return 0.0;
    return 1.0 - 2.0 / x - 2.0 * std::log(x - 1.0) / (x * x);
  }
  double survival(double x) const override {
    if (x <= 2.0) return 1.0;
    return 2.0 / x + 2.0 * std::log(x - 1.0) / (x * x);
  }
  Support support() const override { return {2.0, kInf}; }
  bool has_density_part() const override { return true; }
  double density_part(double x) const override {
    if (x <= 2.0) return 0.0;
    return 2.0 / (x * x) - 2.0 / (x * x * (x - 1.0)) + 4.0 * std::log(x - 1.0) / (x * x * x);
  }
  std::vector<double> kinks() const override { return {2.0}; }

 private:
};

class SumIidLomax1Model final : public DistModel {
 public:
  double cdf(double x) const override {
    if (x <= 0.0) return 0.0;
    const double d = x + 2.0;
    return x / d - 2.0 * std::log1p(x) / (d * d);
  }
  double survival(double x) const override {
    if (x <= 0.0) return 1.0;
    const double d = x + 2.0;
    return 2.0 / d + 2.0 * std::log1p(x) / (d * d);
  }
  Support support() const override { return {0.0, kInf}; }
  bool has_density_part() const override { return true; }
  double density_part(double x) const override {
    if (x <= 0.0) return 0.0;
    const double d = x + 2.0;
    return 2.0 * x / ((1.0 + x) * d * d) + 4.0 * std::log1p(x) / (d * d * d);
  }
  std::vector<double> kinks() const override { return {0.0}; }
};

inline Distribution sum_iid_closed(Sum2Case which, int n = 2) {
  require(n == 2, errc::unsupported_case, "closed-form sums exist for n = 2 only");
  switch (which) {
    case Sum2Case::pareto1: return make_distribution<SumIidPareto1Model>();
    case Sum2Case::lomax1: return make_distribution<SumIidLomax1Model>();
  }
  raise(errc::unsupported_case, "unknown closed-form sum");
}

}  // namespace htd

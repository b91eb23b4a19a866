#pragma once

// Survival functions of weighted sums and the stochastic-dominance checkers:
// plain majorization comparisons, the all-weights variant against a single
// scaled loss, concentrated-vs-diversified portfolios, event-triggered
// losses, upper-truncated losses and tail-type comparisons, plus VaR probes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "htd/majorization.hpp"
#include "htd/membership.hpp"
#include "htd/quadrature.hpp"

namespace htd {

struct Method {
  enum class Kind { quad, mc };
  Kind kind = Kind::quad;
  std::int64_t n = 1'000'000;
  std::uint64_t seed = 20'250'809ULL;
  QuadOptions quad;

  static Method quad_default() { return {}; }
  static Method mc(std::int64_t n, std::uint64_t seed) {
    Method m;
    m.kind = Kind::mc;
    m.n = n;
    m.seed = seed;
    return m;
  }
};

struct SurvivalValue {
  double value = 0.0;
  double se = 0.0;
};

// ------------------------------------------------------------ n = 2 quadrature

// P(t1 X1 + t2 X2 > x) by integrating the survival of one component against
// the law of the other, with panels split at atoms and kink preimages.
inline double survival_weighted_sum_quad(const Distribution& f1, const Distribution& f2,
                                         double t1, double t2, double x,
                                         const QuadOptions& opt = {}) {
  require(t1 >= 0.0 && t2 >= 0.0, errc::bad_weights, "weights must be >= 0");
  require(t1 > 0.0 || t2 > 0.0, errc::zero_weights, "all weights are zero");
  if (x < 0.0) return 1.0;
  if (t1 == 0.0) return f2.survival(x / t2);
  if (t2 == 0.0) return f1.survival(x / t1);

  const Distribution* fa = &f1;  // tail side
  const Distribution* fb = &f2;  // integration side
  double ta = t1, tb = t2;
  if (!f2.has_density_part() && f2.atoms().empty()) {
    std::swap(fa, fb);
    std::swap(ta, tb);
  }
  require(fb->has_density_part() || !fb->atoms().empty(), errc::unsupported_quad,
          "quadrature needs a density on at least one component");

  const double lower_a = fa->support().lower;
  const Support sb = fb->support();
  const double T = (x - ta * lower_a) / tb;  // beyond T the tail factor is 1

  double s = 0.0;
  double atom_tail_beyond_T = 0.0;
  for (const Atom& a : fb->atoms()) {
    s += a.mass * fa->survival((x - tb * a.x) / ta);
    if (a.x >= T) atom_tail_beyond_T += a.mass;
  }
  const double t_hi = std::max(sb.lower, std::min(T, sb.upper));
  if (fb->has_density_part() && t_hi > sb.lower) {
    std::vector<double> breaks = fb->kinks();
    for (double k : fa->kinks()) breaks.push_back((x - ta * k) / tb);
    breaks.push_back(T);
    s += integrate([&](double t) { return fb->density_part(t) * fa->survival((x - tb * t) / ta); },
                   sb.lower, t_hi, std::move(breaks), opt);
  }
  // continuous mass at and beyond T contributes with tail factor exactly 1
  s += std::max(0.0, fb->survival(t_hi) - atom_tail_beyond_T);
  return std::min(1.0, std::max(0.0, s));
}

// ------------------------------------------------------------ Monte Carlo core

namespace detail {

struct CurveAccum {
  std::vector<double> xs;
  std::vector<std::int64_t> cnt_lhs, cnt_rhs, cnt_diff;
  std::int64_t n = 0;

  explicit CurveAccum(std::vector<double> grid)
      : xs(std::move(grid)),
        cnt_lhs(xs.size(), 0),
        cnt_rhs(xs.size(), 0),
        cnt_diff(xs.size(), 0) {}

  void add(double lhs, double rhs) {
    ++n;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const bool a = lhs > xs[i];
      const bool b = rhs > xs[i];
      cnt_lhs[i] += a;
      cnt_rhs[i] += b;
      cnt_diff[i] += (a != b);
    }
  }
};

}  // namespace detail

// Survival of a nonnegatively weighted sum of independent components.
inline SurvivalValue survival_weighted_sum(const std::vector<Distribution>& fs,
                                           const WeightVector& theta, double x,
                                           const Method& method = {}) {
  require(fs.size() == theta.size(), errc::length_mismatch,
          "components and weights differ in length");
  double wsum = 0.0;
  for (double w : theta.w) wsum += w;
  require(wsum > 0.0, errc::zero_weights, "all weights are zero");
  if (method.kind == Method::Kind::quad) {
    require(fs.size() <= 2, errc::unsupported_quad, "quadrature path supports n <= 2 only");
    if (fs.size() == 1) return {fs[0].survival(x / theta.w[0]), 0.0};
    return {survival_weighted_sum_quad(fs[0], fs[1], theta.w[0], theta.w[1], x, method.quad),
            0.0};
  }
  std::vector<RngStream> streams;
  streams.reserve(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) streams.emplace_back(method.seed, i);
  std::int64_t hits = 0;
  for (std::int64_t k = 0; k < method.n; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i) s += theta.w[i] * fs[i].sample(streams[i]);
    hits += (s > x);
  }
  const MCEstimate e = make_indicator_estimate(static_cast<double>(hits), method.n, method.seed);
  return {e.value, e.std_error};
}

inline MCEstimate survival_weighted_sum_mc(const std::vector<Distribution>& fs,
                                           const WeightVector& theta, double x, std::int64_t n,
                                           std::uint64_t seed) {
  const SurvivalValue v = survival_weighted_sum(fs, theta, x, Method::mc(n, seed));
  MCEstimate e;
  e.value = v.value;
  e.n = n;
  e.std_error = v.se;
  e.ci_lo = v.value - 1.96 * v.se;
  e.ci_hi = v.value + 1.96 * v.se;
  e.seed = seed;
  return e;
}

// ------------------------------------------------------------ verdicts

enum class Relation { dominates_on_grid, violated, inconclusive };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::dominates_on_grid: return "DOMINATES_ON_GRID";
    case Relation::violated: return "VIOLATED";
    case Relation::inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

struct PointRow {
  double x = 0.0;
  double s_lhs = 0.0;  // survival of the side expected smaller
  double s_rhs = 0.0;  // survival of the side expected larger
  double margin = 0.0;  // s_rhs - s_lhs; negative means violation
  double se = 0.0;      // of the margin (paired for MC)
  char method = 'Q';
};

struct DominanceVerdict {
  Relation relation = Relation::inconclusive;
  std::vector<PointRow> rows;
  std::optional<PointRow> witness;
  double tolerance = kCheckTol;

  bool dominates() const { return relation == Relation::dominates_on_grid; }
  bool violated() const { return relation == Relation::violated; }
};

inline DominanceVerdict finalize_verdict(std::vector<PointRow> rows, double tol = kCheckTol) {
  DominanceVerdict v;
  v.rows = std::move(rows);
  v.tolerance = tol;
  bool all_clean_nonneg = true;
  bool any_significant_pos = false;
  const PointRow* worst = nullptr;
  for (const PointRow& r : v.rows) {
    const double thresh = std::max(tol, 3.0 * r.se);
    if (r.margin < -thresh && (!worst || r.margin < worst->margin)) worst = &r;
    if (r.margin < -tol) all_clean_nonneg = false;
    if (r.margin > thresh) any_significant_pos = true;
  }
  if (worst) {
    v.relation = Relation::violated;
    v.witness = *worst;
    return v;
  }
  if (all_clean_nonneg || any_significant_pos) {
    v.relation = Relation::dominates_on_grid;
    return v;
  }
  v.relation = Relation::inconclusive;
  return v;
}

// Default comparison abscissae: quantile images of the first component with
// tail levels log-spaced down to 1e-4, plus a few body points below the
// median so counterexamples living between the lower quantiles are visible.
inline std::vector<double> default_x_grid(const Distribution& f, int n_tail = 40,
                                          int n_body = 8) {
  std::vector<double> xs;
  for (int i = 0; i < n_body; ++i) {
    const double u = 0.05 + (0.45 - 0.05) * i / (n_body - 1);
    xs.push_back(f.quantile(u));
  }
  const double g0 = std::log(0.5), g1 = std::log(1e-4);
  for (int i = 0; i < n_tail; ++i) {
    const double g = std::exp(g0 + (g1 - g0) * i / (n_tail - 1));
    xs.push_back(f.quantile(1.0 - g));
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

namespace detail {

inline void require_majorized(const WeightVector& small, const WeightVector& big) {
  const MajOrder m = majorizes(small, big);
  require(m == MajOrder::b_majorizes_a || m == MajOrder::equal, errc::not_comparable,
          "weights are not majorization-ordered as required");
}

inline WeightVector sorted_weights(const WeightVector& w) {
  std::vector<double> v = w.w;
  std::sort(v.begin(), v.end());
  return WeightVector(std::move(v));
}

}  // namespace detail

// ------------------------------------------------------------ (SD)

// iid components under two majorization-ordered weightings: the less spread
// weights give the stochastically smaller sum when the law is in the concave
// class. Weights are canonicalized by sorting (components are iid).
inline DominanceVerdict check_SD(const Distribution& f, const WeightVector& theta,
                                 const WeightVector& eta, const std::vector<double>& xs,
                                 const Method& method = {}, double tol = kCheckTol) {
  detail::require_majorized(theta, eta);
  const WeightVector th = detail::sorted_weights(theta);
  const WeightVector et = detail::sorted_weights(eta);
  std::vector<PointRow> rows;
  if (method.kind == Method::Kind::quad) {
    require(th.size() == 2, errc::unsupported_quad, "quadrature path supports n = 2 only");
    for (double x : xs) {
      const double lhs = survival_weighted_sum_quad(f, f, et.w[0], et.w[1], x, method.quad);
      const double rhs = survival_weighted_sum_quad(f, f, th.w[0], th.w[1], x, method.quad);
      rows.push_back({x, lhs, rhs, rhs - lhs, 0.0, 'Q'});
    }
    return finalize_verdict(std::move(rows), tol);
  }
  detail::CurveAccum acc(xs);
  std::vector<RngStream> streams;
  for (std::size_t i = 0; i < th.size(); ++i) streams.emplace_back(method.seed, i);
  std::vector<double> draw(th.size());
  for (std::int64_t k = 0; k < method.n; ++k) {
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < th.size(); ++i) {
      draw[i] = f.sample(streams[i]);
      lhs += et.w[i] * draw[i];
      rhs += th.w[i] * draw[i];
    }
    acc.add(lhs, rhs);
  }
  for (std::size_t i = 0; i < acc.xs.size(); ++i) {
    const double n = static_cast<double>(acc.n);
    const double sl = acc.cnt_lhs[i] / n;
    const double sr = acc.cnt_rhs[i] / n;
    const double margin = sr - sl;
    const double var = std::max(0.0, acc.cnt_diff[i] / n - margin * margin);
    rows.push_back({acc.xs[i], sl, sr, margin, std::sqrt(var / n), 'M'});
  }
  return finalize_verdict(std::move(rows), tol);
}

// ------------------------------------------------------------ (SD*)

// Diversified sum against the single scaled loss (sum of weights) * X1.
inline DominanceVerdict check_SDstar(const Distribution& f, const WeightVector& theta,
                                     const std::vector<double>& xs, const Method& method = {},
                                     double tol = kCheckTol) {
  const double wsum = theta.sum();
  require(wsum > 0.0, errc::zero_weights, "all weights are zero");
  std::vector<PointRow> rows;
  if (method.kind == Method::Kind::quad) {
    require(theta.size() == 2, errc::unsupported_quad, "quadrature path supports n = 2 only");
    for (double x : xs) {
      const double lhs = f.survival(x / wsum);
      const double rhs =
          survival_weighted_sum_quad(f, f, theta.w[0], theta.w[1], x, method.quad);
      rows.push_back({x, lhs, rhs, rhs - lhs, 0.0, 'Q'});
    }
    return finalize_verdict(std::move(rows), tol);
  }
  detail::CurveAccum acc(xs);
  std::vector<RngStream> streams;
  for (std::size_t i = 0; i < theta.size(); ++i) streams.emplace_back(method.seed, i);
  for (std::int64_t k = 0; k < method.n; ++k) {
    double rhs = 0.0;
    double first = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double xi = f.sample(streams[i]);
      if (i == 0) first = xi;
      rhs += theta.w[i] * xi;
    }
    acc.add(wsum * first, rhs);
  }
  for (std::size_t i = 0; i < acc.xs.size(); ++i) {
    const double n = static_cast<double>(acc.n);
    const double sl = acc.cnt_lhs[i] / n;
    const double sr = acc.cnt_rhs[i] / n;
    const double margin = sr - sl;
    const double var = std::max(0.0, acc.cnt_diff[i] / n - margin * margin);
    rows.push_back({acc.xs[i], sl, sr, margin, std::sqrt(var / n), 'M'});
  }
  return finalize_verdict(std::move(rows), tol);
}

// ------------------------------------------------------------ (SD_cp)

// Concentrated portfolio (all exposure on one component drawn with the
// weights as probabilities) against the diversified weighted sum.
// Independent, possibly heterogeneous components.
inline DominanceVerdict check_SDcp(const std::vector<Distribution>& fs, const WeightVector& theta,
                                   const std::vector<double>& xs, const Method& method,
                                   double tol = kCheckTol,
                                   std::vector<CheckReport>* v_prechecks = nullptr) {
  require(fs.size() == theta.size(), errc::length_mismatch,
          "components and weights differ in length");
  require(theta.normalized(1e-9), errc::bad_weights, "weights must sum to 1");
  require(method.kind == Method::Kind::mc, errc::unsupported_quad,
          "concentrated-portfolio comparison is Monte Carlo only");
  if (v_prechecks)
    for (const auto& f : fs) v_prechecks->push_back(check_V(f));

  detail::CurveAccum acc(xs);
  std::vector<RngStream> streams;
  for (std::size_t i = 0; i < fs.size(); ++i) streams.emplace_back(method.seed, i);
  RngStream pick(method.seed, fs.size() + 1);
  std::vector<double> draw(fs.size());
  for (std::int64_t k = 0; k < method.n; ++k) {
    double rhs = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      draw[i] = fs[i].sample(streams[i]);
      rhs += theta.w[i] * draw[i];
    }
    double u = pick.uniform01();
    std::size_t j = fs.size() - 1;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (u < theta.w[i]) {
        j = i;
        break;
      }
      u -= theta.w[i];
    }
    acc.add(draw[j], rhs);
  }
  std::vector<PointRow> rows;
  for (std::size_t i = 0; i < acc.xs.size(); ++i) {
    const double n = static_cast<double>(acc.n);
    const double sl = acc.cnt_lhs[i] / n;
    const double sr = acc.cnt_rhs[i] / n;
    const double margin = sr - sl;
    const double var = std::max(0.0, acc.cnt_diff[i] / n - margin * margin);
    rows.push_back({acc.xs[i], sl, sr, margin, std::sqrt(var / n), 'M'});
  }
  return finalize_verdict(std::move(rows), tol);
}

// ------------------------------------------------------------ triggered losses

struct TriggerModel {
  enum class Dep { independent, comonotone, joint_table };
  int n = 2;
  double p = 0.5;
  Dep dep = Dep::independent;
  std::vector<double> table;  // 2^n atom probabilities, bit i set = event i fires

  void validate() const {
    require(n >= 1, errc::bad_joint, "need at least one event");
    require(p >= 0.0 && p <= 1.0, errc::param_out_of_range, "event probability outside [0,1]");
    if (dep != Dep::joint_table) return;
    require(table.size() == (std::size_t{1} << n), errc::bad_joint,
            "joint table must list all 2^n atoms");
    double s = 0.0;
    for (double q : table) {
      require(q >= -1e-15, errc::bad_joint, "joint table entries must be >= 0");
      s += q;
    }
    require(std::fabs(s - 1.0) <= 1e-9, errc::bad_joint, "joint table must sum to 1");
    for (int i = 0; i < n; ++i) {
      double mi = 0.0;
      for (std::size_t mask = 0; mask < table.size(); ++mask)
        if (mask & (std::size_t{1} << i)) mi += table[mask];
      require(std::fabs(mi - p) <= 1e-9, errc::bad_joint,
              "joint table marginal differs from the stated event probability");
    }
  }

  double prob_all_of(std::size_t mask) const {
    switch (dep) {
      case Dep::independent: {
        int bits = 0;
        for (std::size_t m = mask; m; m >>= 1) bits += static_cast<int>(m & 1);
        return std::pow(p, bits);
      }
      case Dep::comonotone: return mask == 0 ? 1.0 : p;
      case Dep::joint_table: {
        double s = 0.0;
        for (std::size_t m = 0; m < table.size(); ++m)
          if ((m & mask) == mask) s += table[m];
        return s;
      }
    }
    return 0.0;
  }

  std::size_t sample(RngStream& rng) const {
    switch (dep) {
      case Dep::independent: {
        std::size_t mask = 0;
        for (int i = 0; i < n; ++i)
          if (rng.uniform01() < p) mask |= (std::size_t{1} << i);
        return mask;
      }
      case Dep::comonotone:
        return rng.uniform01() < p ? (std::size_t{1} << n) - 1 : 0;
      case Dep::joint_table: {
        double u = rng.uniform01();
        for (std::size_t m = 0; m < table.size(); ++m) {
          if (u < table[m]) return m;
          u -= table[m];
        }
        return table.size() - 1;
      }
    }
    return 0;
  }
};

// P(sum_i theta_i 1_{A_i} X_i > x). For n = 2 the decomposition over the four
// trigger outcomes is exact (joint-loss term by quadrature); larger n goes
// through Monte Carlo.
inline SurvivalValue triggered_survival(const Distribution& f, const TriggerModel& trig,
                                        const WeightVector& theta, double x,
                                        const Method& method = {}) {
  trig.validate();
  require(static_cast<int>(theta.size()) == trig.n, errc::length_mismatch,
          "weights and trigger count differ");
  if (x < 0.0) return {1.0, 0.0};
  if (trig.n == 2 && method.kind == Method::Kind::quad) {
    const double q11 = trig.prob_all_of(0b11);
    const double q1 = trig.p - q11;  // exactly one of the two fires
    const double joint =
        q11 > 0.0 ? survival_weighted_sum_quad(f, f, theta.w[0], theta.w[1], x, method.quad)
                  : 0.0;
    const double one0 = theta.w[0] > 0.0 ? f.survival(x / theta.w[0]) : (x < 0.0 ? 1.0 : 0.0);
    const double one1 = theta.w[1] > 0.0 ? f.survival(x / theta.w[1]) : (x < 0.0 ? 1.0 : 0.0);
    return {q11 * joint + q1 * (one0 + one1), 0.0};
  }
  std::vector<RngStream> streams;
  for (int i = 0; i < trig.n; ++i) streams.emplace_back(method.seed, static_cast<std::size_t>(i));
  RngStream trigger_stream(method.seed, static_cast<std::size_t>(trig.n) + 7);
  std::int64_t hits = 0;
  for (std::int64_t k = 0; k < method.n; ++k) {
    const std::size_t mask = trig.sample(trigger_stream);
    double s = 0.0;
    for (int i = 0; i < trig.n; ++i) {
      const double xi = f.sample(streams[static_cast<std::size_t>(i)]);
      if (mask & (std::size_t{1} << i)) s += theta.w[static_cast<std::size_t>(i)] * xi;
    }
    hits += (s > x);
  }
  const MCEstimate e = make_indicator_estimate(static_cast<double>(hits), method.n, method.seed);
  return {e.value, e.std_error};
}

inline DominanceVerdict check_SD_triggered(const Distribution& f, const TriggerModel& trig,
                                           const WeightVector& theta, const WeightVector& eta,
                                           const std::vector<double>& xs,
                                           const Method& method = {}, double tol = kCheckTol) {
  detail::require_majorized(theta, eta);
  std::vector<PointRow> rows;
  if (trig.n == 2 && method.kind == Method::Kind::quad) {
    const WeightVector th = detail::sorted_weights(theta);
    const WeightVector et = detail::sorted_weights(eta);
    for (double x : xs) {
      const double lhs = triggered_survival(f, trig, et, x, method).value;
      const double rhs = triggered_survival(f, trig, th, x, method).value;
      rows.push_back({x, lhs, rhs, rhs - lhs, 0.0, 'Q'});
    }
    return finalize_verdict(std::move(rows), tol);
  }
  detail::CurveAccum acc(xs);
  std::vector<RngStream> streams;
  for (int i = 0; i < trig.n; ++i) streams.emplace_back(method.seed, static_cast<std::size_t>(i));
  RngStream trigger_stream(method.seed, static_cast<std::size_t>(trig.n) + 7);
  for (std::int64_t k = 0; k < method.n; ++k) {
    const std::size_t mask = trig.sample(trigger_stream);
    double lhs = 0.0, rhs = 0.0;
    for (int i = 0; i < trig.n; ++i) {
      const double xi = f.sample(streams[static_cast<std::size_t>(i)]);
      if (mask & (std::size_t{1} << i)) {
        lhs += eta.w[static_cast<std::size_t>(i)] * xi;
        rhs += theta.w[static_cast<std::size_t>(i)] * xi;
      }
    }
    acc.add(lhs, rhs);
  }
  for (std::size_t i = 0; i < acc.xs.size(); ++i) {
    const double n = static_cast<double>(acc.n);
    const double sl = acc.cnt_lhs[i] / n;
    const double sr = acc.cnt_rhs[i] / n;
    const double margin = sr - sl;
    const double var = std::max(0.0, acc.cnt_diff[i] / n - margin * margin);
    rows.push_back({acc.xs[i], sl, sr, margin, std::sqrt(var / n), 'M'});
  }
  return finalize_verdict(std::move(rows), tol);
}

// Variant with the single triggered loss 1_{A_1} X_1 on the smaller side.
inline DominanceVerdict check_SD_triggered_single(const Distribution& f, const TriggerModel& trig,
                                                  const WeightVector& theta,
                                                  const std::vector<double>& xs,
                                                  const Method& method = {},
                                                  double tol = kCheckTol) {
  require(theta.normalized(1e-9), errc::bad_weights, "weights must sum to 1");
  std::vector<PointRow> rows;
  for (double x : xs) {
    const double lhs = x < 0.0 ? 1.0 : trig.p * f.survival(x);
    const SurvivalValue rhs = triggered_survival(f, trig, theta, x, method);
    rows.push_back({x, lhs, rhs.value, rhs.value - lhs, rhs.se,
                    method.kind == Method::Kind::quad ? 'Q' : 'M'});
  }
  return finalize_verdict(std::move(rows), tol);
}

// ------------------------------------------------------------ truncated losses

struct TruncatedVerdict {
  DominanceVerdict verdict;
  double region_hi = 0.0;  // comparisons are valid on [0, region_hi) only
  double bound = 0.0;      // the truncation level used
};

// Components truncated at c compared on [0, c/b) with b = 1/min(eta); the
// identity with the untruncated sums holds exactly on that region, so the
// checker refuses to report anything beyond it.
inline TruncatedVerdict check_SD_truncated(const Distribution& f, double c,
                                           const WeightVector& theta, const WeightVector& eta,
                                           const std::vector<double>& xs,
                                           const Method& method = {}, double tol = kCheckTol) {
  require(c > 0.0, errc::non_positive_param, "truncation bound must be > 0");
  detail::require_majorized(theta, eta);
  const double eta_min = eta.min();
  require(eta_min > 0.0, errc::region_empty, "smallest weight must be positive");
  const double b = 1.0 / eta_min;
  require(c > b, errc::region_empty, "truncation bound must exceed 1/min(eta)");
  const double region_hi = c / b;
  std::vector<double> clipped;
  for (double x : xs)
    if (x >= 0.0 && x < region_hi) clipped.push_back(x);
  require(!clipped.empty(), errc::region_empty, "no grid points inside [0, c/b)");
  const Distribution y = truncate_upper(f, c);
  TruncatedVerdict out;
  out.region_hi = region_hi;
  out.bound = c;
  out.verdict = check_SD(y, theta, eta, clipped, method, tol);
  return out;
}

// ------------------------------------------------------------ tail-type comparisons (n = 2)

enum class TailTypePart { weighted_pair, against_single };

struct TailTypeVerdict {
  DominanceVerdict verdict;
  CheckReport tail_precheck;  // concavity/subadditivity of the tail region
  double threshold = 0.0;
};

inline TailTypeVerdict check_tail_type(const Distribution& g, double c, const WeightVector& theta,
                                       const WeightVector& eta, const std::vector<double>& xs,
                                       const Method& method = {},
                                       TailTypePart part = TailTypePart::weighted_pair,
                                       double tol = kCheckTol) {
  require(c > 0.0, errc::non_positive_param, "threshold must be > 0");
  require(theta.size() == 2 && eta.size() == 2, errc::n_unsupported,
          "tail-type comparison is n = 2 only");
  std::vector<double> clipped;
  for (double x : xs)
    if (x >= c) clipped.push_back(x);
  require(!clipped.empty(), errc::bad_grid, "no grid points at or beyond the threshold");

  TailTypeVerdict out;
  out.threshold = c;
  // Restrict the membership probe to the tail region (eta-domain x <= 1/c).
  GridSpec tail_grid{std::min(1e-6, 0.5 / c), 1.0 / c, 256, Spacing::log};
  out.tail_precheck = part == TailTypePart::weighted_pair
                          ? check_H(g, tail_grid, HMode::concavity, tol)
                          : check_Hstar(g, tail_grid, tol);

  std::vector<PointRow> rows;
  if (part == TailTypePart::weighted_pair) {
    detail::require_majorized(theta, eta);
    const WeightVector th = detail::sorted_weights(theta);
    const WeightVector et = detail::sorted_weights(eta);
    for (double x : clipped) {
      const SurvivalValue lhs = survival_weighted_sum({g, g}, et, x, method);
      const SurvivalValue rhs = survival_weighted_sum({g, g}, th, x, method);
      rows.push_back({x, lhs.value, rhs.value, rhs.value - lhs.value,
                      std::sqrt(lhs.se * lhs.se + rhs.se * rhs.se),
                      method.kind == Method::Kind::quad ? 'Q' : 'M'});
    }
  } else {
    require(theta.normalized(1e-9), errc::bad_weights, "weights must sum to 1");
    for (double x : clipped) {
      const double lhs = g.survival(x);
      const SurvivalValue rhs = survival_weighted_sum({g, g}, theta, x, method);
      rows.push_back({x, lhs, rhs.value, rhs.value - lhs, rhs.se,
                      method.kind == Method::Kind::quad ? 'Q' : 'M'});
    }
  }
  out.verdict = finalize_verdict(std::move(rows), tol);
  return out;
}

// ------------------------------------------------------------ VaR

inline double var_quantile(const Distribution& f, double alpha) {
  require(alpha >= 0.0 && alpha <= 1.0, errc::param_out_of_range,
          "confidence level outside [0,1]");
  return f.quantile(alpha);
}

struct VarProbeRow {
  double alpha = 0.0;
  double var_sum = 0.0;  // VaR of the weighted sum
  double sum_var = 0.0;  // weighted sum of the marginal VaRs
  double gap = 0.0;      // var_sum - sum_var; > 0 means superadditive here
};

enum class VarDependence { independent, comonotone };

// Reports the sign of the additivity gap only; no ordering is asserted.
inline std::vector<VarProbeRow> var_additivity_probe(const std::vector<Distribution>& fs,
                                                     const WeightVector& theta,
                                                     const std::vector<double>& alphas,
                                                     const Method& method = {},
                                                     VarDependence dep = VarDependence::independent) {
  require(fs.size() == theta.size(), errc::length_mismatch,
          "components and weights differ in length");
  std::vector<VarProbeRow> rows;
  std::vector<double> mc_sums;
  if (dep == VarDependence::independent && method.kind == Method::Kind::mc) {
    std::vector<RngStream> streams;
    for (std::size_t i = 0; i < fs.size(); ++i) streams.emplace_back(method.seed, i);
    mc_sums.resize(static_cast<std::size_t>(method.n));
    for (auto& s : mc_sums) {
      s = 0.0;
      for (std::size_t i = 0; i < fs.size(); ++i) s += theta.w[i] * fs[i].sample(streams[i]);
    }
    std::sort(mc_sums.begin(), mc_sums.end());
  }
  for (double a : alphas) {
    VarProbeRow r;
    r.alpha = a;
    for (std::size_t i = 0; i < fs.size(); ++i) r.sum_var += theta.w[i] * var_quantile(fs[i], a);
    if (dep == VarDependence::comonotone) {
      r.var_sum = r.sum_var;  // comonotone quantiles add exactly
    } else if (method.kind == Method::Kind::mc) {
      const auto idx = static_cast<std::size_t>(
          std::min<double>(static_cast<double>(mc_sums.size() - 1),
                           std::floor(a * static_cast<double>(mc_sums.size()))));
      r.var_sum = mc_sums[idx];
    } else {
      require(fs.size() == 2, errc::unsupported_quad, "quadrature path supports n = 2 only");
      double lo = 0.0, hi = 1.0;
      auto cdf_sum = [&](double x) {
        return 1.0 - survival_weighted_sum_quad(fs[0], fs[1], theta.w[0], theta.w[1], x,
                                                method.quad);
      };
      while (cdf_sum(hi) < a) {
        hi *= 2.0;
        require(hi < 1e300, errc::internal, "sum quantile bracketing failed");
      }
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cdf_sum(mid) >= a)
          hi = mid;
        else
          lo = mid;
        if (hi - lo <= 1e-10 * std::max(1.0, hi)) break;
      }
      r.var_sum = hi;
    }
    r.gap = r.var_sum - r.sum_var;
    rows.push_back(r);
  }
  return rows;
}

// ------------------------------------------------------------ mixing-weight monotonicity

struct MixMonotoneResult {
  CheckReport report;                   // pairwise decrease check over the a-grid
  std::vector<std::pair<double, double>> values;  // (a, H(a))
  CheckReport concavity_precheck;
};

// H(a) = P(a X1 + (1-a) X2 <= x) for iid X with density: under the concave
// class this is decreasing in a on (0, 1/2]; evaluated by direct quadrature.
inline MixMonotoneResult check_mix_cdf_monotone(const Distribution& f, double x,
                                                const std::vector<double>& a_grid,
                                                const QuadOptions& opt = {},
                                                double tol = kCheckTol) {
  require(f.has_density_part() && f.atoms().empty(), errc::no_density,
          "the monotonicity check needs a density");
  MixMonotoneResult out;
  out.concavity_precheck = check_H(f);
  for (double a : a_grid) {
    require(a > 0.0 && a <= 0.5, errc::param_out_of_range, "a must lie in (0, 1/2]");
    const Support sp = f.support();
    const double hi = std::min(x / a, std::isfinite(sp.upper) ? sp.upper : x / a);
    double val = 0.0;
    if (hi > sp.lower) {
      std::vector<double> breaks = f.kinks();
      for (double k : f.kinks()) breaks.push_back((x - (1.0 - a) * k) / a);
      val = integrate(
          [&](double t) { return f.density_part(t) * f.cdf((x - a * t) / (1.0 - a)); }, sp.lower,
          hi, std::move(breaks), opt);
    }
    out.values.emplace_back(a, val);
  }
  CheckReport rep;
  rep.klass = "mix_cdf_monotone";
  rep.tolerance = tol;
  double worst = -kInf;
  Witness w;
  for (std::size_t i = 1; i < out.values.size(); ++i) {
    const auto& [a0, h0] = out.values[i - 1];
    const auto& [a1, h1] = out.values[i];
    const double margin = h1 - h0;  // increase = violation
    if (margin > worst) {
      worst = margin;
      w = {WitnessKind::pair, a0, a1, 0.0, h1, h0, margin};
    }
  }
  rep.worst_margin = worst;
  if (worst > tol) {
    rep.verdict = Verdict::violated;
    rep.witness = w;
  }
  out.report = rep;
  return out;
}

// ------------------------------------------------------------ serialization

inline nlohmann::json to_json(const PointRow& r) {
  return nlohmann::json{{"x", r.x},
                        {"s_lhs", r.s_lhs},
                        {"s_rhs", r.s_rhs},
                        {"margin", r.margin},
                        {"se", r.se},
                        {"method", std::string(1, r.method)}};
}

inline nlohmann::json to_json(const DominanceVerdict& v) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : v.rows) rows.push_back(to_json(r));
  nlohmann::json j{{"relation", to_string(v.relation)},
                   {"tolerance", v.tolerance},
                   {"points", rows}};
  if (v.witness) j["witness"] = to_json(*v.witness);
  return j;
}

}  // namespace htd

#pragma once

// Compound binomial / Poisson aggregate losses, the Bernoulli-thinning
// representation of the binomial case, the small-frequency expansion check,
// and the dominance sweep over frequency parameters.

#include <cmath>
#include <cstdint>
#include <vector>

#include "htd/dominance.hpp"

namespace htd {

struct CompoundSpec {
  enum class Freq { binomial, poisson };
  Freq freq = Freq::binomial;
  int m = 1;            // binomial trials
  double p = 0.5;       // binomial success probability
  double lambda = 1.0;  // poisson rate
  Distribution severity;

  void validate() const {
    if (freq == Freq::binomial) {
      require(m >= 1, errc::param_out_of_range, "binomial m must be >= 1");
      require(p >= 0.0 && p <= 1.0, errc::param_out_of_range, "binomial p outside [0,1]");
    } else {
      require(lambda > 0.0, errc::non_positive_param, "poisson rate must be > 0");
    }
    require(!severity.degenerate() || severity.support().lower >= 0.0, errc::degenerate,
            "severity must be a nonnegative law");
  }
};

inline double compound_sample(const CompoundSpec& spec, RngStream& rng) {
  spec.validate();
  int n = 0;
  if (spec.freq == CompoundSpec::Freq::binomial) {
    for (int i = 0; i < spec.m; ++i) n += (rng.uniform01() < spec.p);
  } else {
    std::poisson_distribution<int> pois(spec.lambda);
    n = pois(rng.engine());
  }
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += spec.severity.sample(rng);
  return s;
}

namespace detail {

// P(Z_1 + ... + Z_k > x) for iid severities: exact for k <= 1 and point-mass
// severities, quadrature for k = 2 with a density, Monte Carlo beyond.
inline SurvivalValue kfold_tail(const Distribution& sev, int k, double x, std::int64_t mc_n,
                                std::uint64_t seed) {
  if (k == 0) return {x < 0.0 ? 1.0 : 0.0, 0.0};
  if (k == 1) return {sev.survival(x), 0.0};
  if (sev.degenerate()) {
    const double c = sev.support().lower;
    return {k * c > x ? 1.0 : 0.0, 0.0};
  }
  if (k == 2 && sev.has_density_part() && sev.atoms().empty())
    return {survival_weighted_sum_quad(sev, sev, 1.0, 1.0, x), 0.0};
  RngStream rng(seed, 1000 + static_cast<std::uint64_t>(k));
  std::int64_t hits = 0;
  for (std::int64_t r = 0; r < mc_n; ++r) {
    double s = 0.0;
    for (int i = 0; i < k; ++i) s += sev.sample(rng);
    hits += (s > x);
  }
  const MCEstimate e = make_indicator_estimate(static_cast<double>(hits), mc_n, seed);
  return {e.value, e.std_error};
}

inline double binom_coeff(int m, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (m - k + i) / i;
  return c;
}

}  // namespace detail

enum class CompoundMethod { representation, mc };

// Survival of the compound law. The representation path conditions on the
// number of active indicators: sum_k C(m,k) p^k (1-p)^(m-k) P(S_k > x).
inline SurvivalValue compound_survival(const CompoundSpec& spec, double x,
                                       CompoundMethod method = CompoundMethod::representation,
                                       std::int64_t mc_n = 1'000'000,
                                       std::uint64_t seed = 20'250'809ULL) {
  spec.validate();
  if (x < 0.0) return {1.0, 0.0};
  if (method == CompoundMethod::representation) {
    require(spec.freq == CompoundSpec::Freq::binomial, errc::unsupported,
            "the thinning representation applies to the binomial frequency only");
    double val = 0.0, var = 0.0;
    const std::int64_t per_k = std::max<std::int64_t>(10'000, mc_n / spec.m);
    for (int k = 1; k <= spec.m; ++k) {
      const double w = detail::binom_coeff(spec.m, k) * std::pow(spec.p, k) *
                       std::pow(1.0 - spec.p, spec.m - k);
      if (w <= 0.0) continue;
      const SurvivalValue t = detail::kfold_tail(spec.severity, k, x, per_k, seed);
      val += w * t.value;
      var += w * w * t.se * t.se;
    }
    return {val, std::sqrt(var)};
  }
  RngStream rng(seed, 0);
  std::int64_t hits = 0;
  for (std::int64_t r = 0; r < mc_n; ++r) hits += (compound_sample(spec, rng) > x);
  const MCEstimate e = make_indicator_estimate(static_cast<double>(hits), mc_n, seed);
  return {e.value, e.std_error};
}

// Compound law as a Distribution (representation-backed survival for the
// binomial frequency, Monte Carlo for the Poisson one).
class CompoundModel final : public DistModel {
 public:
  explicit CompoundModel(CompoundSpec spec, std::int64_t eval_n = 400'000,
                         std::uint64_t seed = 0xc0417ULL)
      : spec_(std::move(spec)), eval_n_(eval_n), seed_(seed) {
    spec_.validate();
  }
  double survival(double x) const override { return eval(x).value; }
  double cdf(double x) const override { return 1.0 - eval(x).value; }
  double survival_se(double x) const override { return eval(x).se; }
  Support support() const override { return {0.0, kInf}; }
  std::vector<Atom> atoms() const override { return {{0.0, mass_at_zero()}}; }
  double sample(RngStream& rng) const override { return compound_sample(spec_, rng); }
  const CompoundSpec& spec() const { return spec_; }

 private:
  SurvivalValue eval(double x) const {
    if (spec_.freq == CompoundSpec::Freq::binomial)
      return compound_survival(spec_, x, CompoundMethod::representation, eval_n_, seed_);
    return compound_survival(spec_, x, CompoundMethod::mc, eval_n_, seed_);
  }
  double mass_at_zero() const {
    return spec_.freq == CompoundSpec::Freq::binomial ? std::pow(1.0 - spec_.p, spec_.m)
                                                      : std::exp(-spec_.lambda);
  }
  CompoundSpec spec_;
  std::int64_t eval_n_;
  std::uint64_t seed_;
};

inline Distribution make_compound(CompoundSpec spec) {
  return make_distribution<CompoundModel>(std::move(spec));
}

// ------------------------------------------------------------ small-p expansion

struct ExpansionRow {
  double p = 0.0;
  std::int64_t n = 0;
  double estimate = 0.0;
  double estimate_se = 0.0;
  double target = 0.0;  // m p (F-bar(x/w1) + F-bar(x/w2))
  double ratio = 0.0;
  double ratio_se = 0.0;
};

struct ExpansionReport {
  std::vector<ExpansionRow> rows;  // in the given (decreasing) p order
  bool pass = false;
};

// P(w1 Y1 + w2 Y2 > x) against the first-order frequency expansion; budgets
// scale like 1/p with a hard cap, and the pass rule reads the two smallest p.
inline ExpansionReport small_p_expansion_check(int m, const Distribution& severity,
                                               std::pair<double, double> weights, double x,
                                               const std::vector<double>& p_list,
                                               std::int64_t n_base = 40'000,
                                               std::uint64_t seed = 20'250'809ULL) {
  require(m >= 1, errc::param_out_of_range, "m must be >= 1");
  require(!p_list.empty(), errc::param_out_of_range, "need at least one p");
  const auto [w1, w2] = weights;
  ExpansionReport rep;
  for (double p : p_list) {
    require(p > 0.0 && p < 1.0, errc::param_out_of_range, "p must lie in (0,1)");
    const double want = static_cast<double>(n_base) / p;
    require(want <= 1e8, errc::budget_exceeded, "sample budget beyond the 1e8 cap");
    const auto n = static_cast<std::int64_t>(want);
    RngStream rng(seed, 17);
    const CompoundSpec spec{CompoundSpec::Freq::binomial, m, p, 1.0, severity};
    std::int64_t hits = 0;
    for (std::int64_t r = 0; r < n; ++r) {
      const double y1 = compound_sample(spec, rng);
      const double y2 = compound_sample(spec, rng);
      hits += (w1 * y1 + w2 * y2 > x);
    }
    const MCEstimate e = make_indicator_estimate(static_cast<double>(hits), n, seed);
    ExpansionRow row;
    row.p = p;
    row.n = n;
    row.estimate = e.value;
    row.estimate_se = e.std_error;
    const double t1 = w1 > 0.0 ? severity.survival(x / w1) : 0.0;
    const double t2 = w2 > 0.0 ? severity.survival(x / w2) : 0.0;
    row.target = m * p * (t1 + t2);
    row.ratio = row.target > 0.0 ? row.estimate / row.target : kInf;
    row.ratio_se = row.target > 0.0 ? row.estimate_se / row.target : kInf;
    rep.rows.push_back(row);
  }
  const ExpansionRow& last = rep.rows.back();
  bool within_ci = std::fabs(last.ratio - 1.0) <= 3.0 * last.ratio_se;
  bool approaching = true;
  if (rep.rows.size() >= 2) {
    const ExpansionRow& prev = rep.rows[rep.rows.size() - 2];
    approaching = std::fabs(last.ratio - 1.0) <=
                  std::fabs(prev.ratio - 1.0) + 3.0 * (last.ratio_se + prev.ratio_se);
  }
  rep.pass = within_ci && approaching;
  return rep;
}

// ------------------------------------------------------------ dominance over p

struct CompoundSdRow {
  double p = 0.0;
  DominanceVerdict verdict;
};

enum class CompoundDirection { sd, sd_star };

// Sufficiency sweep: two iid compound losses compared under theta vs eta
// (or against the single scaled loss), shared draws across the two sides.
inline std::vector<CompoundSdRow> check_compound_dominance(
    int m, const Distribution& severity, CompoundDirection dir, const std::vector<double>& p_list,
    const std::vector<double>& xs, const WeightVector& theta, const WeightVector& eta,
    const Method& method, double tol = kCheckTol) {
  require(theta.size() == 2 && eta.size() == 2, errc::bad_weights,
          "compound comparison is pairwise (two weights)");
  if (dir == CompoundDirection::sd) detail::require_majorized(theta, eta);
  std::vector<CompoundSdRow> out;
  for (double p : p_list) {
    const CompoundSpec spec{CompoundSpec::Freq::binomial, m, p, 1.0, severity};
    detail::CurveAccum acc(xs);
    RngStream s1(method.seed, 1), s2(method.seed, 2);
    const double wsum = theta.sum();
    for (std::int64_t k = 0; k < method.n; ++k) {
      const double y1 = compound_sample(spec, s1);
      const double y2 = compound_sample(spec, s2);
      const double rhs = theta.w[0] * y1 + theta.w[1] * y2;
      const double lhs =
          dir == CompoundDirection::sd ? eta.w[0] * y1 + eta.w[1] * y2 : wsum * y1;
      acc.add(lhs, rhs);
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
    out.push_back({p, finalize_verdict(std::move(rows), tol)});
  }
  return out;
}

// Search for a Schur-concavity violation of eta(a) + eta(b) vs the balanced
// midpoint; feeds the necessity direction of the compound dominance result.
struct SchurWitness {
  double a = 0.0, b = 0.0;
  double margin = 0.0;  // eta(a) + eta(b) - 2 eta((a+b)/2)
  WeightVector theta{0.5, 0.5};
  WeightVector eta_w{0.5, 0.5};
  double x = 0.0;
};

inline std::optional<SchurWitness> find_schur_violation(const Distribution& f,
                                                        const GridSpec& spec = GridSpec::two_d(),
                                                        double tol = kCheckTol) {
  const auto xs = build_inverse_domain_grid(f, spec, false);
  SchurWitness best;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const double a = xs[i], b = xs[j];
      const double margin = f.eta(a) + f.eta(b) - 2.0 * f.eta(0.5 * (a + b));
      if (margin > best.margin) {
        best.a = a;
        best.b = b;
        best.margin = margin;
      }
    }
  if (best.margin <= tol) return std::nullopt;
  const double s = best.a + best.b;
  best.eta_w = WeightVector{best.a / s, best.b / s};
  best.theta = WeightVector{0.5, 0.5};
  best.x = 1.0 / s;
  return best;
}

struct NecessityRow {
  double p = 0.0;
  double gap = 0.0;  // S_theta(x*) - S_eta(x*); significantly negative = reversal
  double se = 0.0;
};

struct NecessityReport {
  SchurWitness witness;
  std::vector<NecessityRow> rows;
  bool reversal_found = false;
};

// Necessity direction: at a Schur violation of the severity, the compound
// dominance reverses for small p at the witness point.
inline NecessityReport compound_necessity_probe(int m, const Distribution& severity,
                                                const SchurWitness& w,
                                                const std::vector<double>& p_list,
                                                const Method& method, double tol = kCheckTol) {
  NecessityReport rep;
  rep.witness = w;
  for (double p : p_list) {
    const CompoundSpec spec{CompoundSpec::Freq::binomial, m, p, 1.0, severity};
    RngStream s1(method.seed, 1), s2(method.seed, 2);
    std::int64_t diff_pos = 0, diff_neg = 0;
    for (std::int64_t k = 0; k < method.n; ++k) {
      const double y1 = compound_sample(spec, s1);
      const double y2 = compound_sample(spec, s2);
      const bool rhs = w.theta.w[0] * y1 + w.theta.w[1] * y2 > w.x;
      const bool lhs = w.eta_w.w[0] * y1 + w.eta_w.w[1] * y2 > w.x;
      diff_pos += (rhs && !lhs);
      diff_neg += (lhs && !rhs);
    }
    const double n = static_cast<double>(method.n);
    const double gap = (diff_pos - diff_neg) / n;
    const double var = std::max(0.0, (diff_pos + diff_neg) / n - gap * gap);
    const double se = std::sqrt(var / n);
    rep.rows.push_back({p, gap, se});
    if (gap < -std::max(tol, 3.0 * se)) rep.reversal_found = true;
  }
  return rep;
}

}  // namespace htd

#pragma once

// Numerical certifiers for the four distribution classes, the concave-log
// sufficient condition, and the convex transform order. Every VIOLATED
// verdict carries a witness whose two sides were re-evaluated pointwise, so
// the verdict survives grid refinement.

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "htd/examples.hpp"
#include "htd/report.hpp"
#include "htd/transforms.hpp"

namespace htd {

using ProbePairs = std::vector<std::pair<double, double>>;

namespace detail {

inline void reject_degenerate(const Distribution& f) {
  if (f.degenerate()) raise(errc::degenerate, "certifiers need a non-degenerate law");
}

// Interior point mass, exact by construction. Jumps rule the law out of the
// subadditive classes outright.
inline std::optional<Atom> interior_atom(const Distribution& f) {
  for (const Atom& a : f.atoms())
    if (a.x > 0.0 && std::isfinite(a.x) && a.mass > kCheckTol) return a;
  return std::nullopt;
}

// Monotone nondecreasing check over values at grid points (value-based, so
// the 1e-9 kink offsets participate directly).
inline CheckReport monotone_nondecreasing(std::string klass, const std::vector<double>& xs,
                                          const std::function<double(double)>& val,
                                          const std::function<double(double)>& se,
                                          const GridSpec& spec, double tol) {
  CheckReport rep;
  rep.klass = std::move(klass);
  rep.grid = spec;
  rep.tolerance = tol;
  double prev = val(xs.front());
  double prev_x = xs.front();
  Witness worst;
  double worst_margin = -kInf;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double cur = val(xs[i]);
    const double margin = prev - cur;  // > 0 means a decrease
    if (margin > worst_margin) {
      worst_margin = margin;
      worst = {WitnessKind::pair, prev_x, xs[i], 0.0, prev, cur, margin};
    }
    prev = cur;
    prev_x = xs[i];
  }
  const double noise = se ? 3.0 * (se(worst.x) + se(worst.y)) : 0.0;
  rep.worst_margin = worst_margin;
  if (worst_margin > tol + noise) {
    rep.verdict = Verdict::violated;
    rep.witness = worst;
  }
  return rep;
}

// Concavity of a scalar function via nonincreasing chord slopes. Slopes are
// formed only across segments wider than the kink-offset clusters, otherwise
// fp noise on the 1e-9 segments would swamp the tolerance.
inline CheckReport slopes_nonincreasing(std::string klass, const std::vector<double>& xs_in,
                                        const std::function<double(double)>& val,
                                        const GridSpec& spec, double tol, bool flip) {
  CheckReport rep;
  rep.klass = std::move(klass);
  rep.grid = spec;
  rep.tolerance = tol;

  std::vector<double> xs;
  xs.reserve(xs_in.size());
  for (double x : xs_in) {
    const double wmin = 1e-8 * std::max(1.0, std::fabs(x));
    if (xs.empty() || x - xs.back() >= wmin) xs.push_back(x);
  }
  require(xs.size() >= 3, errc::bad_grid, "not enough usable grid points");

  std::vector<double> vs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) vs[i] = val(xs[i]);

  Witness worst;
  double worst_margin = -kInf;
  for (std::size_t i = 2; i < xs.size(); ++i) {
    const double h1 = xs[i - 1] - xs[i - 2];
    const double h2 = xs[i] - xs[i - 1];
    const double s1 = (vs[i - 1] - vs[i - 2]) / h1;
    const double s2 = (vs[i] - vs[i - 1]) / h2;
    double margin = flip ? (s1 - s2) : (s2 - s1);
    const double noise = 64.0 * 2.2e-16 *
                         (std::fabs(vs[i - 2]) + std::fabs(vs[i - 1]) + std::fabs(vs[i])) *
                         (1.0 / h1 + 1.0 / h2);
    const double scale = std::max(1.0, std::max(std::fabs(s1), std::fabs(s2)));
    margin = margin / scale;
    if (margin - noise / scale > worst_margin) {
      worst_margin = margin - noise / scale;
      worst = {WitnessKind::triple, xs[i - 2], xs[i], xs[i - 1], flip ? s1 : s2, flip ? s2 : s1,
               margin};
    }
  }
  rep.worst_margin = worst_margin;
  if (worst_margin > tol) {
    rep.verdict = Verdict::violated;
    rep.witness = worst;
  }
  return rep;
}

inline CheckReport subadditive_on_pairs(std::string klass, const std::vector<double>& xs,
                                        const std::function<double(double)>& val,
                                        const std::function<double(double)>& se,
                                        const GridSpec& spec, double tol,
                                        const ProbePairs& probes) {
  CheckReport rep;
  rep.klass = std::move(klass);
  rep.grid = spec;
  rep.tolerance = tol;

  std::vector<double> vs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) vs[i] = val(xs[i]);

  Witness worst;
  double worst_margin = -kInf;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i; j < xs.size(); ++j) {
      const double lhs = val(xs[i] + xs[j]);
      const double rhs = vs[i] + vs[j];
      const double margin = lhs - rhs;
      if (margin > worst_margin) {
        worst_margin = margin;
        worst = {WitnessKind::pair, xs[i], xs[j], 0.0, lhs, rhs, margin};
      }
    }
  }
  rep.worst_margin = worst_margin;
  double noise = 0.0;
  if (se) noise = 3.0 * (se(worst.x + worst.y) + se(worst.x) + se(worst.y));
  if (worst_margin > tol + noise) {
    rep.verdict = Verdict::violated;
    rep.witness = worst;
  }
  for (const auto& [px, py] : probes) {
    const double lhs = val(px + py);
    const double rhs = val(px) + val(py);
    rep.probes.push_back({WitnessKind::pair, px, py, 0.0, lhs, rhs, lhs - rhs});
  }
  return rep;
}

}  // namespace detail

// x * survival(x) nondecreasing <=> completely subscalable.
inline CheckReport check_V(const Distribution& f, const GridSpec& spec = GridSpec::one_d(),
                           double tol = kCheckTol) {
  detail::reject_degenerate(f);
  const auto xs = build_direct_domain_grid(f, spec);
  return detail::monotone_nondecreasing(
      "V", xs, [&](double x) { return x * f.survival(x); },
      [&](double x) { return x * f.survival_se(x); }, spec, tol);
}

enum class HMode { concavity, density };

// survival(1/x) concave in x; with a density, equivalently x^2 f(x)
// nondecreasing.
inline CheckReport check_H(const Distribution& f, const GridSpec& spec = GridSpec::one_d(),
                           HMode mode = HMode::concavity, double tol = kCheckTol) {
  detail::reject_degenerate(f);
  if (mode == HMode::density) {
    require(f.has_density_part() && f.atoms().empty(), errc::no_density,
            "density mode needs a density");
    const auto xs = build_direct_domain_grid(f, spec);
    return detail::monotone_nondecreasing(
        "H", xs, [&](double x) { return x * x * f.density_part(x); }, nullptr, spec, tol);
  }
  const auto xs = build_inverse_domain_grid(f, spec, false);
  return detail::slopes_nonincreasing(
      "H", xs, [&](double x) { return f.eta(x); }, spec, tol, false);
}

// survival(1/x) subadditive. Interior jumps disqualify immediately: a law in
// this class is continuous on the positive axis.
inline CheckReport check_Hstar(const Distribution& f, const GridSpec& spec = GridSpec::two_d(),
                               double tol = kCheckTol, const ProbePairs& probes = {}) {
  detail::reject_degenerate(f);
  if (auto a = detail::interior_atom(f)) {
    CheckReport rep;
    rep.klass = "Hstar";
    rep.grid = spec;
    rep.tolerance = tol;
    rep.verdict = Verdict::violated;
    rep.witness = {WitnessKind::jump, a->x, 0.0, 0.0, a->mass, 0.0, a->mass};
    return rep;
  }
  const auto xs = build_inverse_domain_grid(f, spec, true);
  return detail::subadditive_on_pairs(
      "Hstar", xs, [&](double x) { return f.eta(x); },
      [&](double x) { return x > 0.0 ? f.survival_se(1.0 / x) : 0.0; }, spec, tol, probes);
}

// -log cdf(1/x) subadditive. A positive essential infimum short-circuits to
// VIOLATED: the class requires the support to reach zero.
inline CheckReport check_G(const Distribution& f, const GridSpec& spec = GridSpec::two_d(),
                           double tol = kCheckTol, const ProbePairs& probes = {}) {
  detail::reject_degenerate(f);
  CheckReport rep;
  rep.klass = "G";
  rep.grid = spec;
  rep.tolerance = tol;
  const double lower = f.support().lower;
  if (lower > 0.0) {
    rep.verdict = Verdict::violated;
    rep.witness = {WitnessKind::ess_inf, lower, 0.0, 0.0, lower, 0.0, lower};
    for (const auto& [px, py] : probes) {
      const double lhs = f.lambda(px + py);
      const double rhs = f.lambda(px) + f.lambda(py);
      rep.probes.push_back({WitnessKind::pair, px, py, 0.0, lhs, rhs, lhs - rhs});
    }
    return rep;
  }
  if (auto a = detail::interior_atom(f)) {
    rep.verdict = Verdict::violated;
    rep.witness = {WitnessKind::jump, a->x, 0.0, 0.0, a->mass, 0.0, a->mass};
    return rep;
  }
  const auto xs = build_inverse_domain_grid(f, spec, true);
  return detail::subadditive_on_pairs(
      "G", xs, [&](double x) { return f.lambda(x); }, nullptr, spec, tol, probes);
}

// Concavity of -log cdf(1/x); the sufficient condition under which cdf powers
// with exponent below one stay inside the concave/subscalable classes.
inline CheckReport check_concave_lambda(const Distribution& f,
                                        const GridSpec& spec = GridSpec::one_d(),
                                        double tol = kCheckTol) {
  detail::reject_degenerate(f);
  auto all = build_inverse_domain_grid(f, spec, false);
  std::vector<double> xs;
  for (double x : all)
    if (std::isfinite(f.lambda(x))) xs.push_back(x);
  require(xs.size() >= 3, errc::bad_grid, "log-cdf finite on too few grid points");
  return detail::slopes_nonincreasing(
      "concave_lambda", xs, [&](double x) { return f.lambda(x); }, spec, tol, false);
}

// Convexity of quantile_g(cdf_f(x)): f below g in the convex transform order.
// Points with cdf within 1e-9 of 1 are skipped (the quantile composition
// loses too many digits there to support a 1e-9 slope test), hence the wider
// default tolerance. Zero-cdf points survive only where the base is genuinely
// below its support, where the flat map segment is real.
inline CheckReport check_convex_transform_order(const Distribution& f, const Distribution& g,
                                                const GridSpec& spec = GridSpec::one_d(),
                                                double tol = 1e-6) {
  detail::reject_degenerate(f);
  detail::reject_degenerate(g);
  std::vector<double> xs0 = build_direct_domain_grid(f, spec);
  if (f.support().lower == -kInf) {
    std::vector<double> sym;
    for (auto it = xs0.rbegin(); it != xs0.rend(); ++it) sym.push_back(-*it);
    sym.push_back(0.0);
    for (double x : xs0) sym.push_back(x);
    xs0 = std::move(sym);
  }
  const double f_lower = f.support().lower;
  std::vector<double> xs;
  for (double x : xs0) {
    const double u = f.cdf(x);
    if (u >= 1.0 - 1e-9) continue;
    if (u < 1e-12 && x > f_lower) continue;  // underflow zone, not a real flat
    xs.push_back(x);
  }
  require(xs.size() >= 3, errc::range, "cdf leaves (0,1) on almost the whole grid");
  const double g_lower = g.support().lower;
  return detail::slopes_nonincreasing(
      "convex_transform_order", xs,
      [&](double x) {
        const double u = f.cdf(x);
        return u <= 0.0 ? g_lower : g.quantile(u);
      },
      spec, tol, /*flip=*/true);
}

inline CheckReport is_super_pareto(const Distribution& g, const GridSpec& spec = GridSpec::one_d(),
                                   double tol = 1e-6) {
  CheckReport r = check_convex_transform_order(make_pareto(1.0), g, spec, tol);
  r.klass = "super_pareto";
  return r;
}

inline CheckReport is_super_frechet(const Distribution& g, const GridSpec& spec = GridSpec::one_d(),
                                    double tol = 1e-6) {
  CheckReport r = check_convex_transform_order(make_frechet(1.0), g, spec, tol);
  r.klass = "super_frechet";
  return r;
}

inline CheckReport is_super_cauchy(const Distribution& g, const GridSpec& spec = GridSpec::one_d(),
                                   double tol = 1e-6) {
  CheckReport r = check_convex_transform_order(make_cauchy_std(), g, spec, tol);
  r.klass = "super_cauchy";
  return r;
}

// Pointwise re-confirmation helpers (witnesses must not depend on the grid).
inline double eta_subadditivity_margin(const Distribution& f, double x, double y) {
  return f.eta(x + y) - f.eta(x) - f.eta(y);
}

inline double lambda_subadditivity_margin(const Distribution& f, double x, double y) {
  return f.lambda(x + y) - f.lambda(x) - f.lambda(y);
}

struct Classification {
  CheckReport h, v, hstar, g;

  const CheckReport& of(const std::string& name) const {
    if (name == "H") return h;
    if (name == "V") return v;
    if (name == "Hstar") return hstar;
    if (name == "G") return g;
    raise(errc::unknown_name, "unknown class " + name);
  }
};

// All four certifiers at identical grid and tolerance, plus the inclusion
// lattice sanity: pass(H) => pass(V) => pass(Hstar), pass(G) => pass(Hstar).
inline Classification classify(const Distribution& f, const GridSpec& one_d = GridSpec::one_d(),
                               const GridSpec& two_d = GridSpec::two_d(),
                               double tol = kCheckTol) {
  Classification c{check_H(f, one_d, HMode::concavity, tol), check_V(f, one_d, tol),
                   check_Hstar(f, two_d, tol), check_G(f, two_d, tol)};
  if (c.h.passed() && !c.v.passed())
    raise(errc::internal, "lattice inconsistency: H passed but V violated");
  if (c.v.passed() && !c.hstar.passed())
    raise(errc::internal, "lattice inconsistency: V passed but Hstar violated");
  if (c.g.passed() && !c.hstar.passed())
    raise(errc::internal, "lattice inconsistency: G passed but Hstar violated");
  return c;
}

inline nlohmann::json to_json(const Classification& c) {
  return nlohmann::json{{"H", to_json(c.h)},
                        {"V", to_json(c.v)},
                        {"Hstar", to_json(c.hstar)},
                        {"G", to_json(c.g)}};
}

}  // namespace htd

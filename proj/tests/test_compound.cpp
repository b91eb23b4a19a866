#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace htd;
using Catch::Matchers::WithinAbs;

TEST_CASE("compound sampling", "[compound]") {
  RngStream rng(1, 0);
  const CompoundSpec zero{CompoundSpec::Freq::binomial, 3, 0.0, 1.0, make_pareto(1.0)};
  for (int i = 0; i < 100; ++i) CHECK(compound_sample(zero, rng) == 0.0);

  // m = 1, p = 1 reduces to a single severity draw
  const auto one = make_compound({CompoundSpec::Freq::binomial, 1, 1.0, 1.0, make_pareto(1.0)});
  CHECK(test::ks_stat(one, 100000, 3) < 2.0 / std::sqrt(1e5));
}

TEST_CASE("degenerate severity collapses to the counting law", "[compound]") {
  const CompoundSpec spec{CompoundSpec::Freq::binomial, 3, 0.5, 1.0, make_point_mass(1.0)};
  const double p2 = compound_survival(spec, 1.5).value - compound_survival(spec, 2.5).value;
  CHECK_THAT(p2, WithinAbs(0.375, 1e-12));
  const double p0 = 1.0 - compound_survival(spec, 0.5).value;
  CHECK_THAT(p0, WithinAbs(0.125, 1e-12));
}

TEST_CASE("thinning representation", "[compound]") {
  // two-term case with the closed-form pareto(1) convolution at x = 4
  const CompoundSpec spec{CompoundSpec::Freq::binomial, 2, 0.5, 1.0, make_pareto(1.0)};
  const double want = 2.0 * 0.25 * 0.25 + 0.25 * (0.5 + 0.125 * std::log(3.0));
  CHECK_THAT(compound_survival(spec, 4.0).value, WithinAbs(want, 1e-7));

  CHECK(compound_survival(spec, -1.0).value == 1.0);
  const CompoundSpec single{CompoundSpec::Freq::binomial, 1, 1.0, 1.0, make_pareto(1.0)};
  CHECK_THAT(compound_survival(single, 3.0).value, WithinAbs(make_pareto(1.0).survival(3.0),
                                                             1e-12));

  const CompoundSpec pois{CompoundSpec::Freq::poisson, 1, 0.5, 2.0, make_pareto(1.0)};
  CHECK_THROWS_AS(compound_survival(pois, 1.0, CompoundMethod::representation), error);
  CHECK(compound_survival(pois, 1.0, CompoundMethod::mc, 50000, 5).value > 0.0);
}

TEST_CASE("representation agrees with Monte Carlo", "[compound][property]") {
  for (int m : {1, 2, 3}) {
    for (double p : {0.1, 0.5, 0.9}) {
      for (const auto& sev : {make_pareto(1.0), make_frechet(1.0)}) {
        const CompoundSpec spec{CompoundSpec::Freq::binomial, m, p, 1.0, sev};
        for (int i = 0; i < 20; i += 4) {
          const double x = sev.quantile(0.2 + 0.039 * i);
          const auto rep = compound_survival(spec, x, CompoundMethod::representation, 600000, 5);
          const auto mc = compound_survival(spec, x, CompoundMethod::mc, 200000, 7);
          const double se = std::hypot(rep.se, mc.se) + 1e-9;
          CHECK(std::fabs(rep.value - mc.value) <= 3.5 * se + 2e-3);
        }
      }
    }
  }
}

TEST_CASE("compound survival is monotone in p", "[compound]") {
  double prev = 0.0;
  for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const CompoundSpec spec{CompoundSpec::Freq::binomial, 2, p, 1.0, make_pareto(1.0)};
    const double v = compound_survival(spec, 3.0).value;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("small-frequency expansion", "[compound]") {
  const auto rep = small_p_expansion_check(2, make_pareto(0.5), {0.25, 0.75}, 2.0,
                                           {0.1, 0.03, 0.01}, 40000, 17);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.pass);
  // ratios drift toward one as p shrinks
  CHECK(std::fabs(rep.rows[2].ratio - 1.0) < std::fabs(rep.rows[0].ratio - 1.0));

  // single-weight reduction: the expansion is m p F-bar(x)
  const auto one = small_p_expansion_check(2, make_pareto(0.5), {1.0, 0.0}, 2.0, {0.05, 0.01},
                                           40000, 23);
  CHECK(one.pass);

  CHECK_THROWS_AS(small_p_expansion_check(2, make_pareto(0.5), {0.5, 0.5}, 2.0, {1e-6}, 40000, 1),
                  error);  // budget beyond the cap
}

TEST_CASE("first-order tail asymptotics at a fixed point", "[compound]") {
  // x * G_p(x) tail over m p approaches x * F-bar(x) as p drops
  const auto sev = make_pareto(0.5);
  const double x = 4.0;
  double prev_err = kInf;
  for (double p : {0.2, 0.05, 0.0125}) {
    const CompoundSpec spec{CompoundSpec::Freq::binomial, 2, p, 1.0, sev};
    const double lhs = x * compound_survival(spec, x).value / (2.0 * p);
    const double err = std::fabs(lhs - x * sev.survival(x));
    CHECK(err < prev_err + 1e-3);
    prev_err = err;
  }
  CHECK(prev_err < 0.05);
}

TEST_CASE("compound dominance sweep", "[compound]") {
  const auto rows = check_compound_dominance(2, make_pareto(0.5), CompoundDirection::sd,
                                             {0.1, 0.5}, default_x_grid(make_pareto(0.5), 16, 0),
                                             WeightVector{0.4, 0.6}, WeightVector{0.2, 0.8},
                                             Method::mc(400000, 13));
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) CHECK(r.verdict.dominates());

  const auto star = check_compound_dominance(2, make_pareto(0.5), CompoundDirection::sd_star,
                                             {0.3}, default_x_grid(make_pareto(0.5), 16, 0),
                                             WeightVector{0.4, 0.6}, WeightVector{0.4, 0.6},
                                             Method::mc(400000, 14));
  CHECK(star[0].verdict.dominates());
}

TEST_CASE("necessity: a Schur violation reverses the compound order", "[compound]") {
  const auto sev = make_example(Example::ex_v_not_h);
  const auto wit = find_schur_violation(sev);
  REQUIRE(wit.has_value());
  CHECK(wit->margin > 1e-3);
  const auto rep = compound_necessity_probe(2, sev, *wit, {0.1, 0.03, 0.01},
                                            Method::mc(1000000, 19));
  CHECK(rep.reversal_found);
  for (const auto& r : rep.rows) CHECK(r.gap < 0.0);

  // no witness exists for a concave-class severity
  CHECK_FALSE(find_schur_violation(make_pareto(0.5)).has_value());
}

TEST_CASE("m = 1 compound equals an independently triggered loss", "[compound]") {
  const auto sev = make_pareto(0.7);
  const CompoundSpec spec{CompoundSpec::Freq::binomial, 1, 0.3, 1.0, sev};
  TriggerModel trig{2, 0.3, TriggerModel::Dep::independent, {}};
  RngStream s1(42, 1), s2(42, 2);
  for (double x : {1.0, 2.0, 5.0, 20.0}) {
    // P(w1 Y1 + w2 Y2 > x) with Y ~ C_b(1, p) vs the triggered pair
    std::int64_t hits = 0;
    const std::int64_t n = 400000;
    for (std::int64_t k = 0; k < n; ++k) {
      const double y1 = compound_sample(spec, s1);
      const double y2 = compound_sample(spec, s2);
      hits += (0.4 * y1 + 0.6 * y2 > x);
    }
    const double mc = hits / static_cast<double>(n);
    const double exact = triggered_survival(sev, trig, WeightVector{0.4, 0.6}, x).value;
    const double se = std::sqrt(mc * (1.0 - mc) / n) + 1e-9;
    CHECK(std::fabs(mc - exact) <= 3.5 * se);
  }
}

TEST_CASE("compound law as a distribution", "[compound]") {
  const auto y = make_compound({CompoundSpec::Freq::binomial, 2, 0.5, 1.0, make_pareto(1.0)});
  REQUIRE(y.atoms().size() == 1);
  CHECK(y.atoms()[0].x == 0.0);
  CHECK_THAT(y.atoms()[0].mass, WithinAbs(0.25, 1e-12));
  CHECK(y.density(1.0) == std::nullopt);
  CHECK(y.quantile(0.2) == 0.0);  // inside the zero atom
  test::InvariantOptions opt;
  opt.check_density = false;
  test::check_distribution_invariants(y, opt);
}

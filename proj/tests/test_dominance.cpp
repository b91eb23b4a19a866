#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace htd;
using Catch::Matchers::WithinAbs;

TEST_CASE("weighted-sum survival by quadrature", "[dominance]") {
  const auto F = make_example(Example::ex_sd_counter);
  CHECK_THAT(survival_weighted_sum_quad(F, F, 0.25, 0.75, 1.5),
             WithinAbs(0.75 + std::log(2.5) / 12.0, 1e-9));
  CHECK_THAT(survival_weighted_sum_quad(F, F, 0.4, 0.6, 1.5),
             WithinAbs(0.7 + (8.0 / 75.0) * std::log(22.0 / 7.0), 1e-9));

  // degenerate weights give the single-component tail exactly
  const auto one = survival_weighted_sum({F, F}, WeightVector{1.0, 0.0}, 2.5);
  CHECK_THAT(one.value, WithinAbs(F.survival(2.5), 1e-15));

  // iid pareto(1) halves at x = 2: the closed convolution form at 4
  const auto p1 = make_pareto(1.0);
  const double want = sum_iid_closed(Sum2Case::pareto1).survival(4.0);
  CHECK_THAT(survival_weighted_sum_quad(p1, p1, 0.5, 0.5, 2.0), WithinAbs(want, 1e-6));
  CHECK_THAT(want, WithinAbs(0.5 + 0.125 * std::log(3.0), 1e-12));

  CHECK_THROWS_AS(survival_weighted_sum_quad(p1, p1, 0.0, 0.0, 1.0), error);
  CHECK_THROWS_AS(
      survival_weighted_sum({p1, p1, p1}, WeightVector{0.3, 0.3, 0.4}, 1.0, Method{}), error);
}

TEST_CASE("quadrature matches Monte Carlo", "[dominance][property]") {
  const auto F = make_example(Example::ex_sd_counter);
  const auto xs = default_x_grid(F, 12, 8);
  for (double x : xs) {
    const double q = survival_weighted_sum_quad(F, F, 0.3, 0.7, x);
    const auto mc = survival_weighted_sum_mc({F, F}, WeightVector{0.3, 0.7}, x, 400000, 77);
    CHECK(std::fabs(q - mc.value) <= 3.0 * mc.std_error + 1e-9);
  }
}

TEST_CASE("positive homogeneity of the exceedance event", "[dominance][property]") {
  const auto F = make_example(Example::ex_sd_counter);
  for (double c : {0.5, 2.0, 7.0})
    CHECK_THAT(survival_weighted_sum_quad(F, F, 0.3 * c, 0.7 * c, 2.0 * c),
               WithinAbs(survival_weighted_sum_quad(F, F, 0.3, 0.7, 2.0), 1e-12));
}

TEST_CASE("plain dominance check", "[dominance]") {
  const auto F = make_example(Example::ex_sd_counter);
  std::vector<double> xs;
  for (int i = 0; i < 16; ++i) xs.push_back(1.5 + 0.5 * i);
  const auto v = check_SD(F, WeightVector{0.4, 0.6}, WeightVector{0.25, 0.75}, xs);
  REQUIRE(v.violated());
  CHECK_THAT(v.witness->x, WithinAbs(1.5, 1e-12));
  CHECK_THAT(v.witness->s_lhs, WithinAbs(0.826358, 1e-5));
  CHECK_THAT(v.witness->s_rhs, WithinAbs(0.822147, 1e-5));

  // equal weights: margins identically zero, still a (weak) dominance
  const auto eq = check_SD(F, WeightVector{0.4, 0.6}, WeightVector{0.6, 0.4}, xs);
  CHECK(eq.dominates());
  for (const auto& r : eq.rows) CHECK(r.margin == 0.0);

  // a concave-class law orders the right way at every grid point
  const auto pos = check_SD(make_pareto(0.5), WeightVector{0.4, 0.6}, WeightVector{0.25, 0.75},
                            default_x_grid(make_pareto(0.5)));
  CHECK(pos.dominates());
  for (const auto& r : pos.rows) CHECK(r.margin > 0.0);

  CHECK_THROWS_AS(
      check_SD(F, WeightVector{0.25, 0.75}, WeightVector{0.4, 0.6}, xs), error);
}

TEST_CASE("chain reduction to pairwise transfers", "[dominance][property]") {
  const auto chain = t_transform_chain(WeightVector{1.0 / 3, 1.0 / 3, 1.0 / 3},
                                       WeightVector{0.6, 0.3, 0.1});
  const auto xs = default_x_grid(make_pareto(0.5), 12, 4);
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const auto link =
        check_SD(make_pareto(0.5), chain[i - 1], chain[i], xs, Method::mc(400000, 5));
    CHECK_FALSE(link.violated());
  }
  const auto ends = check_SD(make_pareto(0.5), chain.front(), chain.back(), xs,
                             Method::mc(400000, 6));
  CHECK(ends.dominates());
}

TEST_CASE("all-weights variant against the scaled single loss", "[dominance]") {
  // single nonzero weight: both sides coincide
  const auto single = check_SDstar(make_pareto(1.0), WeightVector{1.0, 0.0},
                                   default_x_grid(make_pareto(1.0), 16, 4));
  CHECK(single.dominates());
  for (const auto& r : single.rows) CHECK(r.margin == 0.0);

  const auto pos = check_SDstar(make_frechet(0.8), WeightVector{1.0 / 3, 1.0 / 3, 1.0 / 3},
                                default_x_grid(make_frechet(0.8), 20, 0),
                                Method::mc(1000000, 7));
  CHECK(pos.dominates());

  // finite mean: the diversified tail eventually drops below the single loss
  const auto neg = check_SDstar(make_pareto(2.0), WeightVector{0.5, 0.5},
                                default_x_grid(make_pareto(2.0)));
  REQUIRE(neg.violated());
}

TEST_CASE("concentrated versus diversified portfolio", "[dominance]") {
  std::vector<Distribution> fs{make_pareto(0.6), make_frechet(0.9), make_lomax(0.8)};
  std::vector<CheckReport> pre;
  const auto v = check_SDcp(fs, WeightVector{0.2, 0.3, 0.5}, default_x_grid(fs[0], 20, 0),
                            Method::mc(400000, 11), kCheckTol, &pre);
  CHECK(v.dominates());
  REQUIRE(pre.size() == 3);
  for (const auto& r : pre) CHECK(r.passed());

  // n = 1: the two sides share the same draw, margins vanish
  const auto same = check_SDcp({make_pareto(0.6)}, WeightVector{1.0},
                               default_x_grid(make_pareto(0.6), 12, 4), Method::mc(100000, 2));
  CHECK_FALSE(same.violated());

  // iid components: agrees with the scaled-single-loss variant within noise
  const auto f = make_pareto(0.7);
  const auto xs = default_x_grid(f, 12, 4);
  const auto a = check_SDcp({f, f}, WeightVector{0.3, 0.7}, xs, Method::mc(400000, 21));
  const auto b = check_SDstar(f, WeightVector{0.3, 0.7}, xs, Method::mc(400000, 22));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double se = std::hypot(a.rows[i].se, b.rows[i].se) + 1e-3;
    CHECK(std::fabs(a.rows[i].s_lhs - b.rows[i].s_lhs) <= 5.0 * se);
  }

  CHECK_THROWS_AS(check_SDcp(fs, WeightVector{0.2, 0.3, 0.6}, default_x_grid(fs[0], 12, 4),
                             Method::mc(1000, 1)),
                  error);
}

TEST_CASE("inconclusive verdicts are first class", "[dominance]") {
  // equal laws sampled on independent streams: every margin is pure noise
  const auto f = make_pareto(0.7);
  const auto v = check_SDstar(f, WeightVector{0.0, 1.0}, default_x_grid(f, 8, 4),
                              Method::mc(20000, 9));
  CHECK(v.relation == Relation::inconclusive);
}

TEST_CASE("triggered losses", "[dominance]") {
  const auto F = make_pareto(0.5);

  // p = 1: triggers always fire, so this is the plain weighted sum
  TriggerModel always{2, 1.0, TriggerModel::Dep::independent, {}};
  CHECK_THAT(triggered_survival(F, always, WeightVector{0.3, 0.7}, 5.0).value,
             WithinAbs(survival_weighted_sum_quad(F, F, 0.3, 0.7, 5.0), 1e-12));

  // exact two-event path increases with the balance of the weights
  TriggerModel trig{2, 0.3, TriggerModel::Dep::independent, {}};
  for (double u : {0.8, 0.95, 0.99}) {
    const double x = F.quantile(u);
    double prev = -1.0;
    for (double lam = 0.05; lam <= 0.501; lam += 0.05) {
      const double s = triggered_survival(F, trig, WeightVector{lam, 1.0 - lam}, x).value;
      CHECK(s > prev + 1e-9);
      prev = s;
    }
  }

  // comonotone triggers collapse to p times the untriggered survival
  TriggerModel com{2, 0.4, TriggerModel::Dep::comonotone, {}};
  CHECK_THAT(triggered_survival(F, com, WeightVector{0.3, 0.7}, 10.0).value,
             WithinAbs(0.4 * survival_weighted_sum_quad(F, F, 0.3, 0.7, 10.0), 1e-12));

  // joint tables validate their marginals
  TriggerModel bad{2, 0.4, TriggerModel::Dep::joint_table, {0.5, 0.2, 0.1, 0.2}};
  CHECK_THROWS_AS(bad.validate(), error);

  // exact decomposition against Monte Carlo on random admissible tables
  RngStream rng(12345, 0);
  for (int trial = 0; trial < 5; ++trial) {
    const double p = 0.2 + 0.5 * rng.uniform01();
    const double q11 = p * (0.3 + 0.7 * rng.uniform01());
    TriggerModel t{2, p, TriggerModel::Dep::joint_table,
                   {1.0 - 2.0 * p + q11, p - q11, p - q11, q11}};
    t.validate();
    const double x = F.quantile(0.7 + 0.25 * rng.uniform01());
    const double exact = triggered_survival(F, t, WeightVector{0.5, 0.5}, x).value;
    const auto mc =
        triggered_survival(F, t, WeightVector{0.5, 0.5}, x, Method::mc(400000, 31 + trial));
    CHECK(std::fabs(exact - mc.value) <= 3.0 * mc.se + 1e-9);
  }
}

TEST_CASE("triggered dominance checks", "[dominance]") {
  const auto F = make_pareto(0.5);
  std::vector<double> xs;
  for (int i = 1; i <= 12; ++i) xs.push_back(F.quantile(0.5 + 0.04 * i));

  TriggerModel t{2, 0.4, TriggerModel::Dep::joint_table, {0.45, 0.15, 0.15, 0.25}};
  const auto v = check_SD_triggered(F, t, WeightVector{0.5, 0.5}, WeightVector{0.2, 0.8}, xs);
  CHECK(v.dominates());

  const auto eq = check_SD_triggered(F, t, WeightVector{0.5, 0.5}, WeightVector{0.5, 0.5}, xs);
  CHECK(eq.dominates());
  for (const auto& r : eq.rows) CHECK(r.margin == 0.0);

  TriggerModel ind{2, 0.2, TriggerModel::Dep::independent, {}};
  const auto single = check_SD_triggered_single(make_frechet(1.0), ind, WeightVector{0.5, 0.5},
                                                default_x_grid(make_frechet(1.0), 12, 4),
                                                Method::mc(1000000, 21));
  CHECK(single.dominates());
}

TEST_CASE("truncated components on the protected region", "[dominance]") {
  const auto F = make_pareto(0.5);
  std::vector<double> xs;
  for (int i = 0; i < 20; ++i) xs.push_back(i * 1.0);

  const auto tv = check_SD_truncated(F, 100.0, WeightVector{0.5, 0.5}, WeightVector{0.2, 0.8}, xs);
  CHECK_THAT(tv.region_hi, WithinAbs(20.0, 1e-12));
  CHECK(tv.verdict.dominates());
  for (const auto& r : tv.verdict.rows) CHECK(r.x < tv.region_hi);

  // on the region the truncated and untruncated sums have identical laws
  const auto y = truncate_upper(F, 100.0);
  for (double x : xs) {
    const double st = survival_weighted_sum_quad(y, y, 0.2, 0.8, x);
    const double su = survival_weighted_sum_quad(F, F, 0.2, 0.8, x);
    CHECK(std::fabs(st - su) < 1e-8);
  }

  CHECK_THROWS_AS(
      check_SD_truncated(F, 4.0, WeightVector{0.5, 0.5}, WeightVector{0.2, 0.8}, xs), error);
}

TEST_CASE("tail-type comparisons", "[dominance]") {
  // body: uniform mass below one; tail: the unit-threshold pareto exceedance
  const auto g = mixture({0.5, 0.5}, {make_uniform(0.0, 1.0),
                                      condition_exceed(make_pareto(0.5), 1.0)});
  std::vector<double> xs;
  for (int i = 0; i < 16; ++i) xs.push_back(1.0 + 0.75 * i);

  const auto t1 = check_tail_type(g, 1.0, WeightVector{0.5, 0.5}, WeightVector{0.25, 0.75}, xs);
  CHECK(t1.tail_precheck.passed());
  CHECK(t1.verdict.dominates());

  const auto t2 = check_tail_type(g, 1.0, WeightVector{0.25, 0.75}, WeightVector{0.25, 0.75}, xs,
                                  Method{}, TailTypePart::against_single);
  CHECK(t2.verdict.dominates());

  // a globally concave-class law is consistent with the plain check beyond c
  const auto f = make_pareto(0.5);
  const auto t3 = check_tail_type(f, 2.0, WeightVector{0.4, 0.6}, WeightVector{0.25, 0.75},
                                  default_x_grid(f, 16, 0));
  CHECK(t3.verdict.dominates());

  CHECK_THROWS_AS(check_tail_type(g, 1.0, WeightVector{0.2, 0.3, 0.5},
                                  WeightVector{0.1, 0.2, 0.7}, xs),
                  error);
}

TEST_CASE("value-at-risk quantiles and the additivity probe", "[dominance]") {
  CHECK_THAT(var_quantile(make_pareto(1.0), 0.9), WithinAbs(10.0, 1e-12));
  CHECK(var_quantile(make_pareto(1.0), 0.0) == 1.0);  // left endpoint convention
  CHECK_THAT(var_quantile(make_frechet(1.0), std::exp(-1.0)), WithinAbs(1.0, 1e-12));
  CHECK_THROWS_AS(var_quantile(make_pareto(1.0), 1.5), error);

  const auto rows = var_additivity_probe({make_pareto(0.5), make_pareto(0.5)},
                                         WeightVector{0.5, 0.5}, {0.95});
  CHECK(rows[0].gap > 0.0);  // superadditive for the infinite-mean pair

  const auto com = var_additivity_probe({make_pareto(0.5), make_pareto(0.5)},
                                        WeightVector{0.5, 0.5}, {0.95}, Method{},
                                        VarDependence::comonotone);
  CHECK(com[0].gap == 0.0);

  // finite mean: sign reported, nothing asserted
  const auto fin = var_additivity_probe({make_pareto(2.0), make_pareto(2.0)},
                                        WeightVector{0.5, 0.5}, {0.99});
  CHECK(std::isfinite(fin[0].gap));
}

TEST_CASE("mixing-weight monotonicity of the two-asset cdf", "[dominance]") {
  std::vector<double> a_grid;
  for (int i = 1; i <= 10; ++i) a_grid.push_back(0.05 * i);

  const auto res = check_mix_cdf_monotone(make_pareto(1.0), 3.0, a_grid);
  CHECK(res.concavity_precheck.passed());
  CHECK(res.report.passed());
  for (std::size_t i = 1; i < res.values.size(); ++i)
    CHECK(res.values[i].second < res.values[i - 1].second);

  // consistency with the weighted-sum survival
  for (const auto& [a, h] : res.values) {
    const double s = survival_weighted_sum_quad(make_pareto(1.0), make_pareto(1.0), a, 1.0 - a,
                                                3.0);
    CHECK(std::fabs(h - (1.0 - s)) < 1e-6);
  }

  // outside the concave class the sequence is reported, not asserted
  const auto res2 = check_mix_cdf_monotone(make_example(Example::ex_v_not_h), 3.0, a_grid);
  CHECK(res2.concavity_precheck.violated());
  CHECK(res2.values.size() == a_grid.size());

  CHECK_THROWS_AS(check_mix_cdf_monotone(truncate_upper(make_pareto(1.0), 10.0), 3.0, a_grid),
                  error);
}

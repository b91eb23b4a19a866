#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace htd;
using Catch::Matchers::WithinAbs;

TEST_CASE("invariant battery on the core families", "[distribution]") {
  test::check_distribution_invariants(make_pareto(0.5));
  test::check_distribution_invariants(make_pareto(1.0));
  test::check_distribution_invariants(make_frechet(0.8));
  test::check_distribution_invariants(make_lomax(1.0));
  test::check_distribution_invariants(make_logcauchy());
  test::check_distribution_invariants(make_eta1());
  test::check_distribution_invariants(make_eta2());
  test::check_distribution_invariants(make_example(Example::ex_sd_counter));
  test::check_distribution_invariants(make_example(Example::sqrt_lambda));
  test::check_distribution_invariants(make_example(Example::ex_v_not_h));
  test::check_distribution_invariants(make_example(Example::trunc_frechet, 1.0));
}

TEST_CASE("inverse-transform sampling matches the cdf", "[distribution][sampling]") {
  const double bound = 2.0 / std::sqrt(1e5);
  for (const auto& d : {make_pareto(1.0), make_frechet(0.8), make_lomax(1.0), make_logcauchy(),
                        make_eta1(), sum_iid_closed(Sum2Case::lomax1),
                        truncate_upper(make_pareto(1.0), 10.0)}) {
    int pass = 0;
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) pass += (test::ks_stat(d, 100000, seed) < bound);
    CHECK(pass >= 4);
  }
}

TEST_CASE("empirical survival tracks the closed form", "[distribution][sampling]") {
  test::InvariantOptions opt;
  opt.check_sampling = true;
  opt.check_density = false;
  test::check_distribution_invariants(make_pareto(0.7), opt);
  test::check_distribution_invariants(make_frechet(1.0), opt);
  test::check_distribution_invariants(make_eta2(), opt);
}

TEST_CASE("capped truncated means keep growing", "[distribution][sampling]") {
  const std::vector<std::int64_t> ns{1000, 10000, 100000, 1000000};
  for (const auto& d : {make_pareto(1.0), make_pareto(0.5), make_frechet(1.0), make_lomax(1.0),
                        make_logcauchy()}) {
    for (std::uint64_t seed : {101, 202, 303}) {
      const auto means = test::capped_means(d, seed, ns);
      for (std::size_t i = 1; i < means.size(); ++i) CHECK(means[i] > means[i - 1]);
    }
  }
}

TEST_CASE("eta and lambda coordinates", "[distribution]") {
  const auto p = make_pareto(1.0);
  CHECK_THAT(p.eta(0.5), WithinAbs(0.5, 1e-15));  // survival(2)
  CHECK_THAT(p.lambda(0.5), WithinAbs(-std::log(0.5), 1e-15));
  CHECK(p.lambda(2.0) == kInf);  // cdf(1/2) = 0, log 0 = -inf convention

  const auto fr = make_frechet(1.0);
  CHECK_THAT(fr.lambda(3.0), WithinAbs(3.0, 1e-12));  // -log exp(-x)
  CHECK_THAT(fr.lambda(1e6), WithinAbs(1e6, 1e-3));   // stable log-cdf, no underflow
}

TEST_CASE("quantile conventions", "[distribution]") {
  CHECK(make_pareto(2.0).quantile(0.0) == 1.0);
  CHECK(make_frechet(1.0).quantile(0.0) == 0.0);
  CHECK(make_eta2().quantile(0.0) == 0.25);  // essential infimum
  CHECK(make_pareto(1.0).quantile(1.0) == kInf);
  CHECK_THROWS_AS(make_pareto(1.0).quantile(1.5), error);
}

TEST_CASE("quantile bisection agrees with closed forms", "[distribution]") {
  const auto d = make_pareto(0.5);
  for (double u : {0.1, 0.5, 0.75, 0.99}) {
    double lo = 1.0, hi = 1.0;
    while (d.cdf(hi) < u) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (d.cdf(mid) >= u ? hi : lo) = mid;
    }
    CHECK_THAT(d.quantile(u), WithinAbs(hi, 1e-8 * hi));
  }
}

TEST_CASE("degenerate laws are flagged", "[distribution]") {
  CHECK(make_point_mass(2.0).degenerate());
  CHECK_THROWS_AS(check_V(make_point_mass(2.0)), error);
  CHECK_FALSE(make_pareto(1.0).degenerate());
}

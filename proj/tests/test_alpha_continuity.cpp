#include <catch_amalgamated.hpp>

#include <cmath>

#include "fdbo/alpha_continuity.hpp"
#include "fdbo/data.hpp"

using namespace fdbo;
using namespace fdbo::alpha;
using Catch::Approx;

TEST_CASE("uniform bound g") {
  CHECK(uniform_bound_g(0.0, 0.7, 3.0) == 0.7);
  const double t = 2.0 / 2.0 * std::log(1.2);
  CHECK(uniform_bound_g(t, 1.0, 2.0) == Approx(1.5).epsilon(1e-14));
  double prev = 0.0;
  const double tb = g_blowup_time(0.5, 1.0);
  CHECK(tb == Approx(2.0 * std::log(3.0)));
  for (int i = 0; i < 50; ++i) {
    const double g = uniform_bound_g(tb * i / 50.0, 0.5, 1.0);
    CHECK(g > prev);
    prev = g;
  }
  CHECK_THROWS_AS(uniform_bound_g(tb, 0.5, 1.0), std::domain_error);
}

TEST_CASE("growth term A") {
  CHECK(growth_term_A(1.9, 2.0) == Approx(std::pow(0.95, 19) * 0.05).epsilon(1e-12));
  CHECK(growth_term_A(1.9, 2.0) == Approx(0.0189).epsilon(0.01));
  CHECK(growth_term_A(2.0, 2.0) == 0.0);
  CHECK(growth_term_A(1.99, 2.0) < growth_term_A(1.9, 2.0));
}

TEST_CASE("family run and convergence study") {
  const Grid g(32, 2.0 * kPi);
  const SpectralField u0 = random_smooth_datum(g, 0.1, 2);
  FamilyConfig fc;
  fc.beta = 2.0;
  fc.alphas = {1.0, 1.5, 1.75, 1.9, 1.99, 2.0};
  fc.T = 0.5;
  fc.solver.dt = 2e-3;
  fc.solver.record_every = 5;
  const auto run = run_family(u0, fc);
  CHECK(run.envelope_ok);
  CHECK(run.c > 0.0);
  REQUIRE(run.trajectories.size() == 6);
  const auto& bo = run.trajectories.back();
  for (const auto& u : bo.states) CHECK(sobolev_norm(u, 0.0) == Approx(sobolev_norm(u0, 0.0)).epsilon(1e-8));

  const auto rep = convergence_study(run, 1.5);
  CHECK(rep.D.back() == 0.0);
  CHECK(rep.A.back() == 0.0);
  CHECK(rep.B.back() == 0.0);
  CHECK(rep.tail_monotone);
  CHECK(rep.dissipative);
  for (size_t i = 0; i + 1 < rep.alphas.size(); ++i) CHECK(rep.D[i] * rep.D[i] <= rep.fitted_C * (rep.A[i] + rep.B[i]) * (1 + 1e-12));
  for (size_t i = 1; i + 1 < rep.B.size(); ++i) CHECK(rep.B[i] < rep.B[i - 1]);
  CHECK_THROWS(convergence_study(run, 2.5));
}

TEST_CASE("family config validation") {
  const Grid g(32, 2.0 * kPi);
  const SpectralField u0 = random_smooth_datum(g, 0.1, 2);
  FamilyConfig fc;
  fc.alphas = {1.0, 1.5};
  CHECK_THROWS(run_family(u0, fc));
}

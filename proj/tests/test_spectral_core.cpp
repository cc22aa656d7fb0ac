#include <catch_amalgamated.hpp>

#include <cmath>

#include "fdbo/data.hpp"
#include "fdbo/spectral_core.hpp"

using namespace fdbo;
using Catch::Approx;

TEST_CASE("hilbert symbol is -i sgn") {
  CHECK(hilbert_symbol(2.0) == cplx(0.0, -1.0));
  CHECK(hilbert_symbol(0.0) == cplx(0.0, 0.0));
  CHECK(hilbert_symbol(-3.5) == cplx(0.0, 1.0));
}

TEST_CASE("growth-dissipation symbol values") {
  for (auto ab : {std::pair{1.0, 2.0}, {1.0, 4.0}, {1.5, 2.0}, {0.5, 3.0}}) {
    const SymbolParams p(ab.first, ab.second);
    CHECK(growth_dissipation_symbol(1.0, p) == 0.0);
    CHECK(growth_dissipation_symbol(-1.0, p) == 0.0);
    CHECK(growth_dissipation_symbol(0.0, p) == 0.0);
  }
  CHECK(growth_dissipation_symbol(0.5, SymbolParams(1, 2)) == Approx(0.25).epsilon(1e-15));
  CHECK(max_growth(SymbolParams(1, 2)) == Approx(0.25).epsilon(1e-14));
}

TEST_CASE("grid maximum of the symbol stays below the analytic maximum") {
  for (auto ab : {std::pair{1.0, 2.0}, {1.0, 3.0}, {1.5, 2.0}, {0.3, 1.2}}) {
    const SymbolParams p(ab.first, ab.second);
    const Grid g(4096, 400.0 * kPi);
    double best = -1.0;
    for (int i = 0; i < g.n(); ++i) best = std::max(best, growth_dissipation_symbol(g.k(i), p));
    const double r = p.alpha / p.beta;
    const double analytic = std::pow(r, p.alpha / (p.beta - p.alpha)) - std::pow(r, p.beta / (p.beta - p.alpha));
    CHECK(best <= analytic + 1e-12);
    CHECK(best >= analytic - 1e-3);
    CHECK(max_growth(p) == Approx(analytic).epsilon(1e-13));
  }
}

TEST_CASE("symbol parameters are validated") {
  CHECK_THROWS(SymbolParams(2.0, 1.0));
  CHECK_THROWS(SymbolParams(0.0, 1.0));
  CHECK(SymbolParams(1.5, 1.5).pure_bo());
  CHECK_THROWS(Grid(6, 1.0));
  CHECK_THROWS(Grid(7, 1.0));
  CHECK_THROWS(Grid(16, -1.0));
}

TEST_CASE("dispersion phase is -xi|xi|") {
  CHECK(dispersion_phase(2.0) == -4.0);
  CHECK(dispersion_phase(-2.0) == 4.0);
  CHECK(dispersion_phase(0.0) == 0.0);
}

TEST_CASE("sobolev norm of one mode") {
  const Grid g(64, 2.0 * kPi);
  const SpectralField u = single_mode(g, 3, 0.7);
  const double l2 = std::sqrt(g.period() * 2.0 * 0.49);
  CHECK(sobolev_norm(u, 0.0) == Approx(l2).epsilon(1e-14));
  CHECK(sobolev_norm(u, 1.0) == Approx(l2 * japanese(3.0)).epsilon(1e-14));
  CHECK(sobolev_norm(u, -1.5) == Approx(l2 * std::pow(japanese(3.0), -1.5)).epsilon(1e-14));
}

TEST_CASE("Parseval against collocation and round trip") {
  const Grid g(128, 3.0);
  const SpectralField u = random_smooth_datum(g, 1.3, 7);
  const auto x = to_physical(u);
  CHECK(collocation_l2(g, x) == Approx(sobolev_norm(u, 0.0)).epsilon(1e-10));
  const SpectralField back = from_physical(g, x);
  CHECK(sobolev_norm(back - u, 0.0) <= 1e-12 * sobolev_norm(u, 0.0));
  CHECK(u.is_hermitian());
}

TEST_CASE("dx of constants, modes and sines") {
  const Grid g(32, 2.0 * kPi);
  SpectralField c(g);
  c[0] = 2.5;
  CHECK(sobolev_norm(dx(c), 0.0) == 0.0);

  SpectralField e(g);
  e[g.slot(3)] = cplx(0.4, -0.1);
  CHECK(std::abs(dx(e).mode(3) - cplx(0, 3) * cplx(0.4, -0.1)) < 1e-15);

  std::vector<double> s(g.n()), cs(g.n());
  for (int i = 0; i < g.n(); ++i) {
    const double x = g.period() * i / g.n();
    s[i] = std::sin(5 * x);
    cs[i] = 5 * std::cos(5 * x);
  }
  const auto d = to_physical(dx(from_physical(g, s)));
  for (int i = 0; i < g.n(); ++i) CHECK(d[i] == Approx(cs[i]).margin(1e-12));
}

TEST_CASE("nonlinearity of cos x is -sin(2x)/2") {
  const Grid g(32, 2.0 * kPi);
  SpectralField u(g);
  u[g.slot(1)] = 0.5;
  u[g.slot(-1)] = 0.5;
  CHECK(sobolev_norm(nonlinearity(SpectralField(g), true), 0.0) == 0.0);
  for (bool dl : {true, false}) {
    const auto x = to_physical(nonlinearity(u, dl));
    for (int i = 0; i < g.n(); ++i) {
      const double xx = g.period() * i / g.n();
      CHECK(x[i] == Approx(-0.5 * std::sin(2 * xx)).margin(1e-14));
    }
  }
}

TEST_CASE("nonlinearity has zero mean") {
  const Grid g(64, 5.0);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SpectralField u = random_smooth_datum(g, 2.0, seed);
    u[0] = 0.3;
    CHECK(nonlinearity(u, true)[0] == cplx(0.0, 0.0));
    CHECK(nonlinearity(u, false)[0] == cplx(0.0, 0.0));
  }
}

TEST_CASE("dealiasing removes the upper third") {
  const Grid g(48, 2.0 * kPi);
  SpectralField u = white_noise(g, 3);
  dealias(u);
  for (int i = 0; i < g.n(); ++i)
    if (std::abs(g.signed_mode(i)) > g.n() / 3) CHECK(u[i] == cplx(0.0, 0.0));
  CHECK(u.is_hermitian());
}

TEST_CASE("hermitian check and symmetrize") {
  const Grid g(16, 1.0);
  SpectralField u(g);
  u[g.slot(2)] = cplx(1.0, 1.0);
  CHECK_FALSE(u.is_hermitian());
  u.symmetrize();
  CHECK(u.is_hermitian());
  CHECK(u.mode(-2) == cplx(0.5, -0.5));
}

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fdbo/dyadic_blocks.hpp"
#include "fdbo/picard_illposedness.hpp"

using namespace fdbo;
using namespace fdbo::illposed;
using Catch::Approx;

namespace {

double rel_l2(const SpectralField& a, const SpectralField& b) {
  return sobolev_norm(a - b, 0.0) / sobolev_norm(b, 0.0);
}

}  // namespace

TEST_CASE("datum kinds parse") {
  CHECK(parse_kind("line-pair") == DatumKind::LinePair);
  CHECK(kind_name(parse_kind("torus-two-mode")) == "torus-two-mode");
  CHECK_THROWS(parse_kind("gaussian"));
}

TEST_CASE("line-pair datum") {
  const Grid g(1024, 2.0 * kPi * 16);  // dk = 1/16
  const InflationDatum d{DatumKind::LinePair, 12.0, 0.5, -1.25};
  const SpectralField u = build_datum(d, g);
  CHECK(u.is_hermitian());
  for (int i = 0; i < g.n(); ++i) {
    const double k = std::abs(g.k(i));
    if (k < d.N - 1e-12 || k > d.N + 4 * d.omega + 1e-12) CHECK(u[i] == cplx(0.0, 0.0));
  }
  // H^s norm against a direct quadrature of <xi>^{2s} |u0^|^2 over the support
  double direct = 0.0;
  for (const auto& b : datum_bands(d)) {
    const int m = 20000;
    for (int i = 0; i < m; ++i) {
      const double x = b.lo + (i + 0.5) * (b.hi - b.lo) / m;
      direct += std::pow(japanese(x), 2 * d.s) * b.amp * b.amp * (b.hi - b.lo) / m;
    }
  }
  CHECK(sobolev_norm(u, d.s) == Approx(std::sqrt(direct)).epsilon(0.1));
  for (double N : {64.0, 1024.0}) {
    const InflationDatum e{DatumKind::LinePair, N, 1.0, -1.25};
    double mass = 0.0;
    for (const auto& b : datum_bands(e)) mass += std::pow(japanese(0.5 * (b.lo + b.hi)), 2 * e.s) * b.amp * b.amp * (b.hi - b.lo);
    CHECK(std::sqrt(mass) > 0.5);
    CHECK(std::sqrt(mass) < 4.0);
  }
  CHECK_THROWS(build_datum({DatumKind::LinePair, 12.0, 0.2, 0.0}, g));
  CHECK_THROWS(build_datum({DatumKind::LinePair, 60.0, 0.5, 0.0}, g));
}

TEST_CASE("torus datum") {
  const Grid g(256, 2.0 * kPi);
  const SpectralField u = build_datum({DatumKind::TorusTwoMode, 64.0, 0.0, 0.0}, g);
  CHECK(sobolev_norm(u, 0.0) == Approx(2.0 * std::sqrt(2.0 * kPi)).epsilon(1e-14));
  CHECK(u.mode(64) == 1.0);
  CHECK(u.mode(-63) == 1.0);
  CHECK(u.is_hermitian());
  CHECK_THROWS(build_datum({DatumKind::TorusTwoMode, 64.0, 0.0, 0.0}, Grid(256, 7.0)));
}

TEST_CASE("sigma identities") {
  const SymbolParams p(1.0, 2.0);
  CHECK(std::abs(sigma(2.3, 2.3, p)) < 1e-15);
  for (int N = 2; N <= 50; ++N) CHECK(std::abs(sigma(1, N, p) - sigma(1, 1 - N, p)) < 1e-9 * N * N);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-40.0, 40.0);
  for (int i = 0; i < 200; ++i) {
    const double xi = U(rng), xi1 = U(rng);
    // the skew part is the resonance function of (xi1, xi - xi1, -xi)
    const double h = dyadic::resonance(xi1, xi - xi1, -xi);
    CHECK(std::abs(sigma(xi, xi1, p).imag() - h) <= 1e-12 * std::max(1.0, xi * xi));
    const auto r = resonance_eval(xi, xi1, U(rng), p);
    CHECK(r.eta == r.sigma_outer + r.sigma_inner);
  }
}

TEST_CASE("sigma scales like N^beta") {
  const SymbolParams p(1.0, 2.0);
  double lo = INFINITY, hi = 0.0;
  for (double N = 64; N <= 4096; N *= 2) {
    const auto b = sigma_bracket(N, 1.0, p);
    CHECK(b.samples > 0);
    lo = std::min(lo, b.lo);
    hi = std::max(hi, b.hi);
  }
  CHECK(lo > 0.5);
  CHECK(hi < 4.0);
  const double N = 1024;
  CHECK(std::abs(sigma(1, N, p)) / (N * N) == Approx(2.0).epsilon(0.01));
}

TEST_CASE("eta brackets on the upper window are stable in N") {
  const SymbolParams p(1.0, 1.5);
  double im_lo = INFINITY, im_hi = 0.0, re_lo = INFINITY, re_hi = 0.0;
  for (double N = 64; N <= 4096; N *= 2) {
    const auto e = eta_brackets(N, std::pow(N, 0.75), p);
    im_lo = std::min(im_lo, e.im_over_omega2.lo);
    im_hi = std::max(im_hi, e.im_over_omega2.hi);
    re_lo = std::min(re_lo, e.re_over_Nbeta.lo);
    re_hi = std::max(re_hi, e.re_over_Nbeta.hi);
  }
  CHECK(im_lo > 0.0);
  CHECK(im_hi / im_lo < 100.0);
  CHECK(re_hi < 50.0);
  CHECK(sigma_outer_sign_check(1024, 1024.0 / 64, SymbolParams(1.0, 2.5)));
}

TEST_CASE("Duhamel factor series crossover") {
  const double t = 0.37;
  for (double mag : {0.999e-4, 1.001e-4}) {
    for (double ang : {0.0, 1.0, 2.5, -1.2}) {
      const cplx z = std::polar(mag / t, ang);
      const cplx direct = (std::exp(z * t) - 1.0) / z;
      CHECK(std::abs(duhamel_factor(z, t) - direct) <= 1e-12 * std::abs(direct));
    }
  }
  CHECK(duhamel_factor(0.0, t) == cplx(t));
  // divided difference equals its integral definition, including b -> 0
  const cplx a(-3.0, 20.0);
  for (cplx b : {cplx(2.0, -5.0), cplx(1e-9, 2e-9), cplx(0.0)}) {
    cplx acc = 0.0;
    const int m = 20000;
    for (int i = 0; i < m; ++i) {
      const double tau = (i + 0.5) * t / m;
      acc += std::exp(a * tau) * duhamel_factor(b, tau) * (t / m);
    }
    CHECK(std::abs(duhamel_divided_difference(a, b, t) - acc) <= 1e-6 * std::abs(acc));
  }
}

TEST_CASE("Taylor remainder at t_N") {
  const SymbolParams p(1.0, 2.0);
  const double eps = 0.05;
  for (double N = 64; N <= 4096; N *= 2) {
    const double t = std::pow(N, -p.beta - eps);
    const cplx sg = sigma(1, N, p);
    const double rem = std::abs(duhamel_factor(sg, t) - t) / std::pow(N, -p.beta - 2 * eps);
    CHECK(rem <= 0.5 * std::abs(sg) / std::pow(N, p.beta) * (1 + 1e-9));
  }
}

TEST_CASE("closed forms vanish at t = 0") {
  const SymbolParams p(1.0, 2.0);
  const auto bands = datum_bands({DatumKind::LinePair, 64.0, 1.0, -1.0});
  for (auto v : u2_closed_form(bands, 0.0, {0.0, 0.3, 129.0}, p)) CHECK(v == cplx(0.0));
  for (auto v : u3_closed_form(bands, 0.0, {64.5, 194.0}, p)) CHECK(v == cplx(0.0));
}

TEST_CASE("lattice closed forms match the time-quadrature oracle") {
  const SymbolParams p(1.0, 2.0);
  const Grid g(256, 2.0 * kPi);
  const SpectralField u0 = build_datum({DatumKind::LinePair, 17.0, 5.0, -0.7}, g);
  const double t = std::pow(17.0, -2.05);
  const auto oracle = picard_derivatives(u0, t, p);
  CHECK(rel_l2(oracle.u1, oracle.u1) == 0.0);
  CHECK(rel_l2(u2_closed_form_lattice(u0, t, p), oracle.u2) <= 1e-6);
  CHECK(rel_l2(u3_closed_form_lattice(u0, t, p), oracle.u3) <= 1e-5);
}

TEST_CASE("torus u2 at mode 1") {
  const SymbolParams p(1.0, 2.0);
  const Grid g(64, 2.0 * kPi);
  const double N = 10, s = -0.8, t = 0.02;
  const SpectralField u0 = build_datum({DatumKind::TorusTwoMode, N, 0.0, s}, g);
  const cplx expect = cplx(0, -2) * std::pow(N, -2 * s) * std::exp(cplx(0, -t)) * duhamel_factor(sigma(1, N, p), t);
  CHECK(std::abs(u2_closed_form_lattice(u0, t, p).mode(1) - expect) <= 1e-12 * std::abs(expect));
  CHECK(std::abs(picard_derivatives(u0, t, p).u2.mode(1) - expect) <= 1e-8 * std::abs(expect));
}

TEST_CASE("continuous closed forms approach the lattice sums on a fine box") {
  const SymbolParams p(1.0, 2.0);
  const double period = 2.0 * kPi * 32;
  const Grid g(2048, period);
  const InflationDatum d{DatumKind::LinePair, 8.0, 0.5, -0.5};
  const SpectralField u0 = build_datum(d, g);
  const double t = 0.01;
  const auto l2 = u2_closed_form_lattice(u0, t, p);
  const auto l3 = u3_closed_form_lattice(u0, t, p);
  const double scale = period / std::sqrt(2.0 * kPi);
  const std::vector<int> j2 = {3, 10, 16 * 32 + 20}, j3 = {8 * 32 + 10, 24 * 32 + 40};
  std::vector<double> x2, x3;
  for (int j : j2) x2.push_back(j * g.dk());
  for (int j : j3) x3.push_back(j * g.dk());
  const auto c2 = u2_closed_form(datum_bands(d), t, x2, p);
  const auto c3 = u3_closed_form(datum_bands(d), t, x3, p);
  for (size_t i = 0; i < j2.size(); ++i) CHECK(std::abs(scale * l2.mode(j2[i]) - c2[i]) <= 0.05 * std::abs(c2[i]));
  for (size_t i = 0; i < j3.size(); ++i) CHECK(std::abs(scale * l3.mode(j3[i]) - c3[i]) <= 0.1 * std::abs(c3[i]));
}

TEST_CASE("loglog slope") {
  CHECK(loglog_slope({1, 2, 4, 8}, {3, 6, 12, 24}) == Approx(1.0));
  CHECK(loglog_slope({10, 100}, {1, 0.01}) == Approx(-2.0));
}

TEST_CASE("theoretical slopes") {
  InflationConfig c;
  c.s = -1.25;
  CHECK(theoretical_slope(c) == Approx(0.45));
  c.order = 3;
  c.beta = 1.5;
  c.s = -0.5;
  CHECK(theoretical_slope(c) == Approx(0.2));
  c.beta = 2.5;
  c.s = -1.25;
  CHECK(theoretical_slope(c) == Approx(0.4));
  c.order = 2;
  c.kind = DatumKind::LineAsym;
  c.alpha = 0.25;
  c.beta = 0.5;
  CHECK(theoretical_slope(c) == Approx(0.2));
}

TEST_CASE("torus inflation slope") {
  InflationConfig c;
  c.kind = DatumKind::TorusTwoMode;
  c.s = -1.25;
  const auto r = inflation_sweep(c);
  CHECK(r.entries.size() == 7);
  CHECK(r.monotone);
  CHECK(std::abs(r.fitted_slope - r.theoretical_slope) <= 0.1);
}

TEST_CASE("line-pair C2 inflation on a short sweep") {
  InflationConfig c;
  c.s = -1.25;
  c.N_list = {64, 256, 1024};
  const auto up = inflation_sweep(c);
  CHECK(up.fitted_slope >= 0.2);
  CHECK(up.refinement_change < 1e-3);
  c.s = -0.5;
  CHECK(inflation_sweep(c).fitted_slope <= 0.0);
}

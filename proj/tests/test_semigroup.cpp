#include <catch_amalgamated.hpp>

#include <cmath>

#include "fdbo/data.hpp"
#include "fdbo/semigroup.hpp"

using namespace fdbo;
using Catch::Approx;

TEST_CASE("psi envelope values") {
  const SymbolParams p(1.0, 2.0);
  CHECK(psi_envelope(0.0, p) == 1.0);
  CHECK(psi_envelope(1.0, p) == Approx(std::exp(0.5)).epsilon(1e-14));
  CHECK(psi_envelope(3.0, SymbolParams(1.2, 1.2)) == 1.0);
}

TEST_CASE("psi is the sup of the half-dissipated multiplier") {
  const SymbolParams p(1.0, 2.0);
  for (double t : {0.1, 1.0, 4.0}) {
    double best = 0.0;
    for (int i = 0; i <= 200000; ++i) {
      const double x = 3.0 * i / 200000.0;
      best = std::max(best, std::exp((std::pow(x, p.alpha) - 0.5 * std::pow(x, p.beta)) * t));
    }
    CHECK(best == Approx(psi_envelope(t, p)).epsilon(1e-9));
  }
}

TEST_CASE("mode-wise envelope on a fine grid") {
  const Grid g(2048, 64.0 * kPi);
  for (auto ab : {std::pair{1.0, 2.0}, {1.0, 3.0}, {1.0, 4.0}, {1.5, 2.0}}) {
    const SymbolParams p(ab.first, ab.second);
    for (double t : log_time_grid(1e-3, 5.0, 5)) {
      const double psi = psi_envelope(t, p);
      for (int i = 0; i < g.n(); ++i) {
        const double k = g.k(i);
        CHECK(std::abs(semigroup_multiplier(k, t, p)) <= psi * std::exp(-0.5 * std::pow(std::abs(k), p.beta) * t) + 1e-12);
      }
    }
  }
}

TEST_CASE("apply_semigroup identities") {
  const Grid g(64, 2.0 * kPi);
  const SymbolParams p(1.0, 2.0);
  const SpectralField u = random_smooth_datum(g, 1.0, 11);
  CHECK(sobolev_norm(apply_semigroup(u, 0.0, p) - u, 0.0) == 0.0);
  CHECK_THROWS(apply_semigroup(u, -0.1, p));

  const SpectralField one = single_mode(g, 1);
  const SpectralField r = apply_semigroup(one, 0.7, p);
  CHECK(std::abs(r.mode(1)) == Approx(1.0).epsilon(1e-15));
  CHECK(std::arg(r.mode(1)) == Approx(-0.7).epsilon(1e-14));

  const double a = 0.3, b = 0.45;
  const auto lhs = apply_semigroup(apply_semigroup(u, a, p), b, p);
  CHECK(sobolev_norm(lhs - apply_semigroup(u, a + b, p), 0.0) <= 1e-10 * sobolev_norm(u, 0.0));
  CHECK(apply_semigroup(u, 0.5, p).is_hermitian());
}

TEST_CASE("L2 bound by psi for random data on a line box") {
  const Grid g(256, 20.0 * kPi);
  const SymbolParams p(1.0, 2.0);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SpectralField u = white_noise(g, seed);
    for (double t : {0.0, 0.1, 0.5, 1.0})
      CHECK(sobolev_norm(apply_semigroup(u, t, p), 0.0) <= psi_envelope(t, p) * sobolev_norm(u, 0.0) * (1 + 1e-14));
  }
}

TEST_CASE("periodic contractivity and pure BO isometry") {
  const Grid g(128, 2.0 * kPi);
  for (double t : {0.01, 0.5, 2.0}) {
    for (int i = 0; i < g.n(); ++i) {
      CHECK(std::abs(semigroup_multiplier(g.k(i), t, SymbolParams(1.0, 2.0))) <= 1.0);
      CHECK(std::abs(semigroup_multiplier(g.k(i), t, SymbolParams(0.5, 3.0))) <= 1.0);
      CHECK(std::abs(semigroup_multiplier(g.k(i), t, SymbolParams(1.3, 1.3))) == Approx(1.0).epsilon(1e-15));
    }
  }
}

TEST_CASE("kernel norm matches an independent quadrature") {
  // homogeneous weight |xi|^s; the kink of |xi|^alpha at 0 limits agreement to O(dk^2)
  const SymbolParams p(1.0, 2.0);
  const Grid g(1 << 14, 200.0 * kPi);
  for (double s : {0.0, 1.0}) {
    const double t = 1.0;
    // trapezoid on a much finer mesh
    double acc = 0.0;
    const int m = 400000;
    const double X = 40.0, h = 2 * X / m;
    for (int i = 0; i <= m; ++i) {
      const double x = -X + i * h;
      const double f = std::pow(std::abs(x), 2 * s) * std::exp(2 * growth_dissipation_symbol(x, p) * t);
      acc += (i == 0 || i == m ? 0.5 : 1.0) * f * h;
    }
    CHECK(kernel_l2_norm(s, t, p, g) == Approx(std::sqrt(acc)).epsilon(1e-5));
  }
  CHECK_THROWS(weighted_kernel_l2_norm(0.0, 2.0, p, g));
}

TEST_CASE("kernel norm ratio is bounded and stable under refinement") {
  const SymbolParams p(1.0, 2.0);
  const Grid a(4096, 20.0 * kPi), b(8192, 40.0 * kPi);
  const double t = 0.01, s = 1.0;
  const double ref = psi_envelope(t, p) * std::pow(t, -0.75);
  const double ra = kernel_l2_norm(s, t, p, a) / ref, rb = kernel_l2_norm(s, t, p, b) / ref;
  CHECK(ra < 5.0);
  CHECK(std::abs(ra - rb) / rb < 0.01);
}

TEST_CASE("weighted kernel rates") {
  const SymbolParams p(1.0, 2.0);
  const Grid g(8192, 40.0 * kPi);
  std::vector<double> ts = {1.0, 0.1, 0.01, 0.001}, w;
  for (double t : ts) w.push_back(weighted_kernel_l2_norm(0.0, t, p, g));
  const double slope = std::log(w.back() / w.front()) / std::log(ts.back() / ts.front());
  CHECK(-slope <= 0.75 + 0.05);
  // s = -3/2: growth slower than any t^{-r/2}
  const double r = 0.2;
  double prev = 0.0;
  for (double t : ts) {
    const double v = weighted_kernel_l2_norm(-1.5, t, p, g) * std::pow(t, 0.5 * r);
    if (prev > 0.0) CHECK(v <= prev * 1.5);
    prev = v;
  }
}

TEST_CASE("smoothing check") {
  const SymbolParams p(1.0, 2.0);
  const Grid g(256, 2.0 * kPi);
  const auto times = log_time_grid(1e-3, 1.0, 8);
  CHECK(times.size() == 25);
  CHECK(times.front() == Approx(1e-3));
  CHECK(times.back() == Approx(1.0));
  const SpectralField u = random_band_limited(g, 16, 5);
  const auto r0 = smoothing_check(u, 0.0, 0.0, p, times);
  for (double r : r0.ratio_samples) CHECK(r <= 1.0 + 1e-10);
  const auto r2 = smoothing_check(u, 0.0, p.beta, p, times);
  CHECK(r2.ratio_samples.front() < r2.ratio_samples[8]);
  CHECK(smoothing_check(u, 0.0, p.beta, p, {1e-7}).sup_ratio < 1e-3);

  // white noise only has a finite H^s norm for s < -1/2
  const auto w1 = smoothing_check(white_noise(Grid(512, 2.0 * kPi), 9), -1.0, p.beta, p, times).sup_ratio;
  const auto w2 = smoothing_check(white_noise(Grid(1024, 2.0 * kPi), 9), -1.0, p.beta, p, times).sup_ratio;
  CHECK(std::abs(w1 - w2) / w2 < 0.2);
}

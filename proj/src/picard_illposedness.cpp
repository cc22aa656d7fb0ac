#include "fdbo/picard_illposedness.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fdbo/duhamel.hpp"
#include "fdbo/parallel.hpp"
#include "fdbo/quadrature.hpp"

namespace fdbo::illposed {
namespace {

cplx cexp(cplx z) { return std::exp(z.real()) * cplx(std::cos(z.imag()), std::sin(z.imag())); }

// e^w - 1 without cancellation for small |w|.
cplx cexpm1(cplx w) {
  const double x = w.real(), y = w.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

// ∫_0^1 s^m e^{zs} ds
cplx moment(int m, cplx z) {
  if (std::abs(z) <= 2.0) {
    cplx term = 1.0, acc = 0.0;
    for (int k = 0; k < 60; ++k) {
      const cplx add = term / static_cast<double>(m + k + 1);
      acc += add;
      if (std::abs(add) < 1e-17 * std::abs(acc)) break;
      term *= z / static_cast<double>(k + 1);
    }
    return acc;
  }
  cplx g = cexpm1(z) / z;
  const cplx ez = cexp(z);
  for (int j = 1; j <= m; ++j) g = (ez - static_cast<double>(j) * g) / z;
  return g;
}

struct Piece {
  double lo, hi;
};

void gl_nodes(double lo, double hi, int panels, int order, std::vector<double>& x, std::vector<double>& w) {
  quad::composite(lo, hi, panels, quad::gauss_legendre(order), x, w);
}

int slot_checked(const Grid& g, long j) {
  if (2 * std::abs(j) >= g.n()) throw std::invalid_argument("lattice closed form: output mode outside the grid");
  return g.slot(static_cast<int>(j));
}

std::vector<int> nonzero_slots(const SpectralField& u) {
  std::vector<int> out;
  for (int i = 0; i < u.grid.n(); ++i)
    if (u.coeffs[i] != cplx(0.0, 0.0)) out.push_back(i);
  return out;
}

}  // namespace

DatumKind parse_kind(const std::string& name) {
  if (name == "line-pair") return DatumKind::LinePair;
  if (name == "line-asym") return DatumKind::LineAsym;
  if (name == "torus-two-mode") return DatumKind::TorusTwoMode;
  throw std::invalid_argument("unknown datum kind '" + name + "'");
}

std::string kind_name(DatumKind k) {
  switch (k) {
    case DatumKind::LinePair: return "line-pair";
    case DatumKind::LineAsym: return "line-asym";
    case DatumKind::TorusTwoMode: return "torus-two-mode";
  }
  return "unknown";
}

void InflationDatum::validate() const {
  if (!(N > 0.0) || !std::isfinite(N)) throw std::invalid_argument("datum: N must be positive");
  if (kind == DatumKind::TorusTwoMode) {
    if (N < 2.0 || N != std::floor(N)) throw std::invalid_argument("datum: torus N must be an integer >= 2");
    return;
  }
  if (!(omega > 0.0)) throw std::invalid_argument("datum: omega must be positive");
  if (kind == DatumKind::LineAsym && !(omega < N)) throw std::invalid_argument("datum: line-asym needs omega < N");
  if (kind == DatumKind::LinePair && !(2.0 * omega < N)) throw std::invalid_argument("datum: line-pair bands overlap");
}

std::vector<Band> datum_bands(const InflationDatum& d) {
  d.validate();
  std::vector<Band> b;
  const double w = d.omega;
  if (d.kind == DatumKind::LinePair) {
    const double a = std::pow(d.N, -d.s) / std::sqrt(w);
    b.push_back({d.N, d.N + 2.0 * w, a});
    b.push_back({-d.N - 2.0 * w, -d.N, a});
  } else if (d.kind == DatumKind::LineAsym) {
    const double a1 = 1.0 / std::sqrt(w);
    const double a2 = std::pow(d.N, -d.s) / std::sqrt(w);
    b.push_back({0.5 * w, w, a1});
    b.push_back({-w, -0.5 * w, a1});
    b.push_back({d.N, d.N + w, a2});
    b.push_back({-d.N - w, -d.N, a2});
  } else {
    throw std::invalid_argument("datum_bands: torus datum has no bands");
  }
  return b;
}

SpectralField build_datum(const InflationDatum& d, const Grid& grid) {
  d.validate();
  SpectralField u(grid);
  if (d.kind == DatumKind::TorusTwoMode) {
    if (std::abs(grid.period() - 2.0 * kPi) > 1e-12) throw std::invalid_argument("build_datum: torus datum needs period 2π");
    const long N = static_cast<long>(d.N);
    if (2 * N >= grid.n()) throw std::invalid_argument("build_datum: grid does not contain mode N");
    const double a = std::pow(d.N, -d.s);
    for (long j : {N, -N, N - 1, 1 - N}) u[grid.slot(static_cast<int>(j))] = a;
    return u;
  }
  if (d.omega < 4.0 * grid.dk()) throw std::invalid_argument("build_datum: omega below 4 frequency spacings");
  if (d.N + 4.0 * d.omega > grid.k_max()) throw std::invalid_argument("build_datum: grid does not resolve N + 4 omega");
  const auto bands = datum_bands(d);
  const double scale = std::sqrt(2.0 * kPi) / grid.period();
  for (int i = 0; i < grid.n(); ++i) {
    if (grid.is_nyquist(i)) continue;
    const double k = grid.k(i);
    double v = 0.0;
    for (const auto& b : bands)
      if (k >= b.lo && k <= b.hi) v += b.amp;
    u[i] = scale * v;
  }
  return u;
}

cplx sigma(double xi, double xi1, const SymbolParams& p) {
  return linear_symbol(xi - xi1, p) + linear_symbol(xi1, p) - linear_symbol(xi, p);
}

ResonanceEval resonance_eval(double xi, double xi1, double xi2, const SymbolParams& p) {
  ResonanceEval r{xi, xi1, xi2, sigma(xi, xi2, p), sigma(xi2, xi1, p), {}};
  r.eta = r.sigma_outer + r.sigma_inner;
  return r;
}

cplx duhamel_factor(cplx z, double t) {
  const cplx w = z * t;
  if (std::abs(w) < 1e-4) return t * (1.0 + w * (0.5 + w * (1.0 / 6.0 + w * (1.0 / 24.0 + w / 120.0))));
  return cexpm1(w) / z;
}

cplx duhamel_divided_difference(cplx a, cplx b, double t) {
  const cplx bt = b * t;
  if (std::abs(bt) >= 1e-3) return (duhamel_factor(a + b, t) - duhamel_factor(a, t)) / b;
  // Σ_n b^n t^{n+2} g_{n+1}(at) / (n+1)!
  const cplx at = a * t;
  cplx acc = 0.0, pw = t * t;
  double fact = 1.0;
  for (int n = 0; n < 6; ++n) {
    fact *= (n + 1);
    acc += pw / fact * moment(n + 1, at);
    pw *= bt;
  }
  return acc;
}

std::vector<cplx> u2_closed_form(const std::vector<Band>& bands, double t, const std::vector<double>& xi,
                                 const SymbolParams& p, const LineQuadrature& q) {
  std::vector<cplx> out(xi.size());
  if (t == 0.0) return out;
  parallel_for(xi.size(), [&](size_t idx) {
    const double x = xi[idx];
    const cplx px = linear_symbol(x, p);
    cplx acc = 0.0;
    std::vector<double> nodes, weights;
    for (const auto& A : bands) {    // ξ - ξ₁ ∈ A
      for (const auto& B : bands) {  // ξ₁ ∈ B
        const double lo = std::max(B.lo, x - A.hi);
        const double hi = std::min(B.hi, x - A.lo);
        if (!(hi > lo)) continue;
        auto f = [&](double x1) {
          return duhamel_factor(linear_symbol(x - x1, p) + linear_symbol(x1, p) - px, t);
        };
        cplx part;
        if (q.adaptive) {
          part = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, q.tol);
        } else {
          gl_nodes(lo, hi, q.panels, q.order, nodes, weights);
          for (size_t m = 0; m < nodes.size(); ++m) part += weights[m] * f(nodes[m]);
        }
        acc += A.amp * B.amp * part;
      }
    }
    out[idx] = cplx(0.0, -x / std::sqrt(2.0 * kPi)) * cexp(px * t) * acc;
  });
  return out;
}

std::vector<cplx> u3_closed_form(const std::vector<Band>& bands, double t, const std::vector<double>& xi,
                                 const SymbolParams& p, const LineQuadrature& q) {
  std::vector<cplx> out(xi.size());
  if (t == 0.0) return out;
  parallel_for(xi.size(), [&](size_t idx) {
    const double x = xi[idx];
    const cplx px = linear_symbol(x, p);
    cplx acc = 0.0;
    std::vector<double> an, aw, bn, bw;
    for (const auto& A : bands) {        // ξ₁
      for (const auto& B : bands) {      // ξ₂ - ξ₁
        for (const auto& C : bands) {    // ξ - ξ₂
          const double slo = x - C.hi, shi = x - C.lo;  // range of ξ₂
          const double alo = std::max(A.lo, slo - B.hi);
          const double ahi = std::min(A.hi, shi - B.lo);
          if (!(ahi > alo)) continue;
          std::vector<double> cuts = {alo, ahi};
          for (double c : {slo - B.lo, shi - B.hi})
            if (c > alo && c < ahi) cuts.push_back(c);
          std::sort(cuts.begin(), cuts.end());
          cplx part = 0.0;
          for (size_t c = 0; c + 1 < cuts.size(); ++c) {
            if (!(cuts[c + 1] > cuts[c])) continue;
            gl_nodes(cuts[c], cuts[c + 1], q.panels, q.order, an, aw);
            for (size_t i = 0; i < an.size(); ++i) {
              const double a = an[i];
              const double blo = std::max(B.lo, slo - a);
              const double bhi = std::min(B.hi, shi - a);
              if (!(bhi > blo)) continue;
              const cplx pa = linear_symbol(a, p);
              gl_nodes(blo, bhi, q.panels, q.order, bn, bw);
              cplx inner = 0.0;
              for (size_t m = 0; m < bn.size(); ++m) {
                const double b = bn[m];
                const double x2 = a + b;
                const cplx p2 = linear_symbol(x2, p);
                const cplx s_in = linear_symbol(b, p) + pa - p2;
                const cplx s_out = linear_symbol(x - x2, p) + p2 - px;
                inner += bw[m] * x2 * duhamel_divided_difference(s_out, s_in, t);
              }
              part += aw[i] * inner;
            }
          }
          acc += A.amp * B.amp * C.amp * part;
        }
      }
    }
    out[idx] = (-3.0 * x / (2.0 * kPi)) * cexp(px * t) * acc;
  });
  return out;
}

double line_hs_norm(int k, const std::vector<Band>& bands, double t, double s, const SymbolParams& p,
                    const LineQuadrature& q) {
  if (k != 2 && k != 3) throw std::invalid_argument("line_hs_norm: order must be 2 or 3");
  std::vector<double> edges;
  for (const auto& b : bands) {
    edges.push_back(b.lo);
    edges.push_back(b.hi);
  }
  std::vector<Piece> ranges;
  std::vector<double> cuts;
  const size_t nb = bands.size(), ne = edges.size();
  if (k == 2) {
    for (size_t i = 0; i < nb; ++i)
      for (size_t j = i; j < nb; ++j) ranges.push_back({bands[i].lo + bands[j].lo, bands[i].hi + bands[j].hi});
    for (size_t i = 0; i < ne; ++i)
      for (size_t j = i; j < ne; ++j) cuts.push_back(edges[i] + edges[j]);
  } else {
    for (size_t i = 0; i < nb; ++i)
      for (size_t j = i; j < nb; ++j)
        for (size_t l = j; l < nb; ++l)
          ranges.push_back({bands[i].lo + bands[j].lo + bands[l].lo, bands[i].hi + bands[j].hi + bands[l].hi});
    for (size_t i = 0; i < ne; ++i)
      for (size_t j = i; j < ne; ++j)
        for (size_t l = j; l < ne; ++l) cuts.push_back(edges[i] + edges[j] + edges[l]);
  }
  // the field is real, so integrate over ξ > 0 and double
  for (auto& r : ranges) r.lo = std::max(r.lo, 0.0);
  cuts.push_back(0.0);
  for (const auto& r : ranges) {
    cuts.push_back(r.lo);
    cuts.push_back(r.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  double span = 0.0;
  for (double c : cuts) span = std::max(span, std::abs(c));
  std::vector<double> uniq;
  for (double c : cuts)
    if (c >= 0.0 && (uniq.empty() || c - uniq.back() > 1e-12 * span)) uniq.push_back(c);

  std::vector<double> xs, ws, nodes, weights;
  for (size_t i = 0; i + 1 < uniq.size(); ++i) {
    const double mid = 0.5 * (uniq[i] + uniq[i + 1]);
    const bool inside = std::any_of(ranges.begin(), ranges.end(), [&](const Piece& r) { return mid > r.lo && mid < r.hi; });
    if (!inside) continue;
    gl_nodes(uniq[i], uniq[i + 1], q.output_panels, q.output_order, nodes, weights);
    xs.insert(xs.end(), nodes.begin(), nodes.end());
    ws.insert(ws.end(), weights.begin(), weights.end());
  }
  const auto vals = k == 2 ? u2_closed_form(bands, t, xs, p, q) : u3_closed_form(bands, t, xs, p, q);
  double acc = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) acc += ws[i] * std::pow(japanese(xs[i]), 2.0 * s) * std::norm(vals[i]);
  return std::sqrt(2.0 * acc);
}

SpectralField u2_closed_form_lattice(const SpectralField& u0, double t, const SymbolParams& p) {
  const Grid& g = u0.grid;
  SpectralField out(g);
  if (t == 0.0) return out;
  const auto nz = nonzero_slots(u0);
  std::vector<cplx> acc(g.n(), 0.0);
  for (int i1 : nz) {
    for (int i2 : nz) {
      const long j = static_cast<long>(g.signed_mode(i1)) + g.signed_mode(i2);
      const int slot = slot_checked(g, j);
      const double x = g.dk() * j;
      acc[slot] += u0[i1] * u0[i2] * duhamel_factor(sigma(x, g.k(i2), p), t);
    }
  }
  for (int i = 0; i < g.n(); ++i) {
    const double x = g.k(i);
    out[i] = cplx(0.0, -x) * cexp(linear_symbol(x, p) * t) * acc[i];
  }
  return out;
}

SpectralField u3_closed_form_lattice(const SpectralField& u0, double t, const SymbolParams& p) {
  const Grid& g = u0.grid;
  SpectralField out(g);
  if (t == 0.0) return out;
  const auto nz = nonzero_slots(u0);
  std::vector<cplx> acc(g.n(), 0.0);
  for (int i1 : nz) {
    const double a = g.k(i1);
    for (int i2 : nz) {
      const long j2 = static_cast<long>(g.signed_mode(i1)) + g.signed_mode(i2);
      const double x2 = g.dk() * j2;
      const cplx s_in = sigma(x2, a, p);
      const cplx c12 = u0[i1] * u0[i2];
      for (int i3 : nz) {
        const long j = j2 + g.signed_mode(i3);
        const int slot = slot_checked(g, j);
        const double x = g.dk() * j;
        acc[slot] += c12 * u0[i3] * x2 * duhamel_divided_difference(sigma(x, x2, p), s_in, t);
      }
    }
  }
  for (int i = 0; i < g.n(); ++i) {
    const double x = g.k(i);
    out[i] = (-3.0 * x) * cexp(linear_symbol(x, p) * t) * acc[i];
  }
  return out;
}

int support_radius(const SpectralField& u, double rel_tol) {
  double scale = 0.0;
  for (const auto& c : u.coeffs) scale = std::max(scale, std::abs(c));
  int r = 0;
  for (int i = 0; i < u.grid.n(); ++i)
    if (std::abs(u[i]) > rel_tol * scale && scale > 0.0) r = std::max(r, std::abs(u.grid.signed_mode(i)));
  return r;
}

PicardDerivatives picard_derivatives(const SpectralField& u0, double t, const SymbolParams& p, int panels, int order) {
  const int K = support_radius(u0);
  if (6 * K >= u0.grid.n()) throw std::invalid_argument("picard_derivatives: grid too small for alias-free cubic products");
  DuhamelPlan plan(u0.grid, p, t, panels, order);
  const auto u1 = plan.free_evolution(u0);
  const int nodes = plan.node_count();
  std::vector<SpectralField> f(nodes, SpectralField(u0.grid));
  for (int k = 0; k < nodes; ++k) {
    f[k] = nonlinearity(u1.at_nodes[k], false);
    f[k] *= -2.0;
  }
  const auto u2 = plan.integrate(f);
  for (int k = 0; k < nodes; ++k) {
    f[k] = bilinear_flux(u1.at_nodes[k], u2.at_nodes[k], false);
    f[k] *= -6.0;
  }
  const auto u3 = plan.integrate(f);
  return {u1.at_end, u2.at_end, u3.at_end};
}

Bracket sigma_bracket(double N, double omega, const SymbolParams& p, int per_axis) {
  Bracket br{1e300, 0.0, 0};
  const double nb = std::pow(N, p.beta);
  for (int i = 0; i < per_axis; ++i) {
    const double x = -0.5 * omega + omega * (i + 0.5) / per_axis;
    // ξ₁ ∈ I_N with ξ - ξ₁ ∈ -I_N, and the mirrored piece
    for (int sgn : {1, -1}) {
      const double lo = sgn > 0 ? std::max(N, x + N) : std::max(-N - 2 * omega, x - N - 2 * omega);
      const double hi = sgn > 0 ? std::min(N + 2 * omega, x + N + 2 * omega) : std::min(-N, x - N);
      if (!(hi > lo)) continue;
      for (int j = 0; j < per_axis; ++j) {
        const double x1 = lo + (hi - lo) * (j + 0.5) / per_axis;
        const double r = std::abs(sigma(x, x1, p)) / nb;
        br.lo = std::min(br.lo, r);
        br.hi = std::max(br.hi, r);
        ++br.samples;
      }
    }
  }
  return br;
}

namespace {

// Calls f(piece, ξ, ξ₁, ξ₂) on midpoint samples of the three mixed-sign pieces
// with ξ ∈ [N+3ω, N+4ω]. Piece 0 is (+,+,-), pieces 1 and 2 are (+,-,+), (-,+,+).
template <typename F>
void sample_mixed_pieces(double N, double omega, int per_axis, F&& f) {
  const double lo = N, hi = N + 2 * omega;
  const int signs[3][3] = {{1, 1, -1}, {1, -1, 1}, {-1, 1, 1}};
  for (int piece = 0; piece < 3; ++piece) {
    const int sa = signs[piece][0], sb = signs[piece][1], sc = signs[piece][2];
    for (int ix = 0; ix < per_axis; ++ix) {
      const double x = N + 3 * omega + omega * (ix + 0.5) / per_axis;
      for (int ia = 0; ia < per_axis; ++ia) {
        const double a = sa * (lo + (hi - lo) * (ia + 0.5) / per_axis);
        for (int ib = 0; ib < per_axis; ++ib) {
          const double b = sb * (lo + (hi - lo) * (ib + 0.5) / per_axis);
          const double c = sc * (x - a - b);
          if (c < lo || c > hi) continue;
          f(piece, x, a, a + b);
        }
      }
    }
  }
}

}  // namespace

EtaBrackets eta_brackets(double N, double omega, const SymbolParams& p, int per_axis) {
  EtaBrackets out{{1e300, 0.0, 0}, {1e300, 0.0, 0}};
  const double nb = std::pow(N, p.beta);
  sample_mixed_pieces(N, omega, per_axis, [&](int, double x, double x1, double x2) {
    const cplx eta = resonance_eval(x, x1, x2, p).eta;
    const double ri = std::abs(eta.imag()) / (omega * omega);
    const double rr = std::abs(eta.real()) / nb;
    out.im_over_omega2.lo = std::min(out.im_over_omega2.lo, ri);
    out.im_over_omega2.hi = std::max(out.im_over_omega2.hi, ri);
    out.re_over_Nbeta.lo = std::min(out.re_over_Nbeta.lo, rr);
    out.re_over_Nbeta.hi = std::max(out.re_over_Nbeta.hi, rr);
    ++out.im_over_omega2.samples;
    ++out.re_over_Nbeta.samples;
  });
  return out;
}

bool sigma_outer_sign_check(double N, double omega, const SymbolParams& p, double floor, int per_axis) {
  const double nb = std::pow(N, p.beta);
  int sign[2] = {0, 0};
  bool ok = true;
  int hits = 0;
  sample_mixed_pieces(N, omega, per_axis, [&](int piece, double x, double, double x2) {
    const double r = sigma(x, x2, p).real() / nb;
    const int group = piece == 0 ? 0 : 1;
    const int sg = r > 0 ? 1 : -1;
    if (std::abs(r) < floor) ok = false;
    if (sign[group] == 0) sign[group] = sg;
    if (sign[group] != sg) ok = false;
    ++hits;
  });
  return ok && hits > 0;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("loglog_slope: need at least two points");
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

double theoretical_slope(const InflationConfig& c) {
  const double b = c.beta, s = c.s, e = c.epsilon;
  if (c.order == 2) {
    if (c.kind == DatumKind::LineAsym) return (1.0 - b) / 2.0 - e;
    return -2.0 * s - b - e;
  }
  if (b < 2.0) return -2.0 * s - b / 2.0 - e;
  return -2.0 * s + 3.0 - 2.0 * b - 2.0 * e;
}

namespace {

double omega_for(const InflationConfig& c, double N, double eps1) {
  if (c.kind == DatumKind::LineAsym) return std::pow(N, c.beta - 1.0);
  if (c.order == 3) return c.beta < 2.0 ? std::pow(N, c.beta / 2.0) : eps1 * N;
  return c.omega;
}

double measure(const InflationConfig& c, double N, double omega, double tN, const LineQuadrature& q) {
  const SymbolParams p(c.alpha, c.beta);
  if (c.kind == DatumKind::TorusTwoMode) {
    const long n_int = static_cast<long>(N);
    int n = 16;
    while (n <= 4 * n_int + 8) n *= 2;
    const Grid g(n, 2.0 * kPi);
    InflationDatum d{c.kind, N, 0.0, c.s};
    const auto u2 = u2_closed_form_lattice(build_datum(d, g), tN, p);
    return std::abs(u2.mode(1));
  }
  InflationDatum d{c.kind, N, omega, c.s};
  return line_hs_norm(c.order, datum_bands(d), tN, c.s, p, q);
}

}  // namespace

InflationReport inflation_sweep(const InflationConfig& c) {
  if (c.order != 2 && c.order != 3) throw std::invalid_argument("inflation: order must be 2 or 3");
  if (c.order == 3 && c.kind != DatumKind::LinePair) throw std::invalid_argument("inflation: order 3 uses the line-pair datum");
  if (c.N_list.size() < 2) throw std::invalid_argument("inflation: need at least two N values");
  const SymbolParams p(c.alpha, c.beta);
  InflationReport rep;
  rep.kind = kind_name(c.kind);
  rep.order = c.order;
  rep.alpha = c.alpha;
  rep.beta = c.beta;
  rep.s = c.s;
  rep.epsilon = c.epsilon;
  rep.theoretical_slope = theoretical_slope(c);
  if (c.kind == DatumKind::TorusTwoMode) rep.omega_rule = "none";
  else if (c.kind == DatumKind::LineAsym) rep.omega_rule = "N^(beta-1)";
  else if (c.order == 2) rep.omega_rule = "fixed";
  else rep.omega_rule = c.beta < 2.0 ? "N^(beta/2)" : "eps1*N";

  double eps1 = c.eps1;
  if (c.order == 3 && c.beta >= 2.0) {
    for (;;) {
      bool ok = true;
      for (double N : c.N_list) ok = ok && sigma_outer_sign_check(N, eps1 * N, p);
      if (ok) break;
      if (rep.eps1_halvings >= 6) throw std::runtime_error("inflation: sign check on Re sigma failed after 6 halvings of eps1");
      eps1 *= 0.5;
      ++rep.eps1_halvings;
    }
  }
  rep.eps1 = eps1;

  const size_t m = c.N_list.size();
  rep.entries.resize(m);
  for (size_t i = 0; i < m; ++i) {
    const double N = c.N_list[i];
    const double tN = std::pow(N, -c.beta - c.epsilon);
    const double om = c.kind == DatumKind::TorusTwoMode ? 0.0 : omega_for(c, N, eps1);
    rep.entries[i] = {N, tN, om, measure(c, N, om, tN, c.quad)};
  }
  std::vector<double> xs, ys;
  for (const auto& e : rep.entries) {
    xs.push_back(e.N);
    ys.push_back(e.norm);
  }
  rep.fitted_slope = loglog_slope(xs, ys);
  bool up = true, down = true;
  for (size_t i = 1; i < m; ++i) {
    up = up && ys[i] >= ys[i - 1];
    down = down && ys[i] <= ys[i - 1];
  }
  rep.monotone = up || down;
  if (c.kind != DatumKind::TorusTwoMode) {
    LineQuadrature fine = c.quad;
    fine.panels *= 2;
    fine.output_panels *= 2;
    const auto& last = rep.entries.back();
    const double v = measure(c, last.N, last.omega, last.t_N, fine);
    rep.refinement_change = std::abs(v - last.norm) / v;
  }
  return rep;
}

}  // namespace fdbo::illposed

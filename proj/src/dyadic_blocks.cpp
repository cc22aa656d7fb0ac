#include "fdbo/dyadic_blocks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "fdbo/parallel.hpp"

namespace fdbo::dyadic {
namespace {

double h0(double x) { return -x * std::abs(x); }

bool sim(double a, double b) { return std::max(a, b) < 4.0 * std::min(a, b); }

std::array<double, 3> sorted(std::array<double, 3> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Cells of one function: res/2 cells on each of ±(X/2, X].
struct Axis {
  double base;
  double width;
  int per_sign;

  Axis() = default;
  Axis(double X, int res) : base(0.5 * X), width(X / res), per_sign(res / 2) {}

  // signed lower edge of cell i
  double lo(int i) const {
    return i < per_sign ? -(base + (per_sign - i) * width) : base + (i - per_sign) * width;
  }
  // cells meeting the open interval (A, B), as [first, last] on each sign
  void overlapping(double A, double B, int out[2][2]) const {
    const double starts[2] = {-2.0 * base, base};
    for (int side = 0; side < 2; ++side) {
      const double s0 = starts[side];
      const int f = std::max(0, static_cast<int>(std::floor((A - s0) / width)));
      const int l = std::min(per_sign - 1, static_cast<int>(std::ceil((B - s0) / width)) - 1);
      out[side][0] = f + side * per_sign;
      out[side][1] = l + side * per_sign;
    }
  }
  int index(double x) const {
    const double a = std::abs(x);
    if (!(a > base && a <= 2.0 * base)) return -1;
    const int k = std::min(per_sign - 1, static_cast<int>((a - base) / width));
    return x < 0 ? per_sign - 1 - k : per_sign + k;
  }
};

double ramp2(double y) { return y > 0.0 ? 0.5 * y * y : 0.0; }
double ramp3(double y) { return y > 0.0 ? y * y * y / 6.0 : 0.0; }

// Area of {(x, y) in [a1, b1] x [a2, b2] : x + y <= z}, and its antiderivative in z.
double box_sum_cdf(double a1, double b1, double a2, double b2, double z) {
  return ramp2(z - a1 - a2) - ramp2(z - b1 - a2) - ramp2(z - a1 - b2) + ramp2(z - b1 - b2);
}
double box_sum_cdf_integral(double a1, double b1, double a2, double b2, double z) {
  return ramp3(z - a1 - a2) - ramp3(z - b1 - a2) - ramp3(z - a1 - b2) + ramp3(z - b1 - b2);
}

struct Kernel {
  std::vector<std::uint16_t> i1, i2, i3;
  std::vector<double> w;
  int cells = 0;
};

constexpr int kXi1Samples = 4;  // midpoints per ξ₁ cell
constexpr int kXi2Pieces = 2;   // linear pieces of h per ξ₂ segment

// A stretch of ξ₂ on which h runs linearly over [lo, hi] (dudh = |dξ₂/dh|
// times the ξ₁ weight), or a flat one with h = lo and weight len.
struct HPiece {
  double lo, hi, dudh, len;
  bool flat;
};

// Entries are the measure of the support inside each cell triple over sqrt of
// the cell areas, i.e. the form restricted to L²-normalized piecewise
// constants. ξ₁ is sampled at midpoints; along ξ₂ the resonance is linearized
// and the λ overlap integrated in closed form.
// probe: stop at the first nonzero entry
Kernel build_kernel(const BlockSpec& b, const EstimateOptions& opt, bool probe = false) {
  const int res = opt.resolution;
  if (res < 2 || res % 2 != 0) throw std::invalid_argument("estimate_block_norm: resolution must be even and >= 2");
  if (opt.xi_refinement < 1) throw std::invalid_argument("estimate_block_norm: xi_refinement must be >= 1");
  const int rx = res * opt.xi_refinement;
  if (rx * res > 65536) throw std::invalid_argument("estimate_block_norm: too many cells");
  Axis xa[3], la[3];
  for (int j = 0; j < 3; ++j) {
    xa[j] = Axis(b.N[j], rx);
    la[j] = Axis(b.L[j], res);
  }
  const double norm = 1.0 / std::sqrt(xa[0].width * la[0].width * xa[1].width * la[1].width * xa[2].width * la[2].width);
  const double s1 = xa[0].width / kXi1Samples;
  const double shells[2][2] = {{0.5 * b.H, b.H}, {-b.H, -0.5 * b.H}};

  Kernel k;
  k.cells = rx * res;
  std::vector<double> acc(static_cast<size_t>(res) * res * res);
  std::vector<std::vector<HPiece>> by_x3(rx);
  std::vector<int> touched;
  for (int x1 = 0; x1 < rx; ++x1) {
    for (int x2 = 0; x2 < rx; ++x2) {
      for (auto& v : by_x3) v.clear();
      const double a2 = xa[1].lo(x2), b2 = a2 + xa[1].width;
      for (int i = 0; i < kXi1Samples; ++i) {
        const double xi1 = xa[0].lo(x1) + (i + 0.5) * s1;
        auto h = [&](double xi2) { return h0(xi1) + h0(xi2) + h0(-xi1 - xi2); };
        for (int x3 = 0; x3 < rx; ++x3) {
          const double lo3 = xa[2].lo(x3);
          const double u0 = std::max(a2, -xi1 - lo3 - xa[2].width), u1 = std::min(b2, -xi1 - lo3);
          if (!(u1 > u0)) continue;
          for (int p = 0; p < kXi2Pieces; ++p) {
            const double ua = u0 + (u1 - u0) * p / kXi2Pieces, ub = u0 + (u1 - u0) * (p + 1) / kXi2Pieces;
            const double ha = h(ua), hb = h(ub);
            const double hmin = std::min(ha, hb), hmax = std::max(ha, hb);
            if (hmax - hmin <= 1e-12 * std::max(1.0, std::abs(ha))) {
              const double hm = 0.5 * (ha + hb);
              if (std::abs(hm) > 0.5 * b.H && std::abs(hm) <= b.H) by_x3[x3].push_back({hm, hm, 0.0, s1 * (ub - ua), true});
              continue;
            }
            const double dudh = s1 * (ub - ua) / (hmax - hmin);
            for (const auto& sh : shells) {
              const double lo = std::max(hmin, sh[0]), hi = std::min(hmax, sh[1]);
              if (hi > lo) by_x3[x3].push_back({lo, hi, dudh, 0.0, false});
            }
          }
        }
      }
      for (int x3 = 0; x3 < rx; ++x3) {
        if (by_x3[x3].empty()) continue;
        touched.clear();
        for (const auto& pc : by_x3[x3]) {
          for (int l1 = 0; l1 < res; ++l1) {
            const double c1 = la[0].lo(l1), d1 = c1 + la[0].width;
            int range2[2][2];
            la[1].overlapping(-pc.hi - d1 - b.L[2], -pc.lo - c1 + b.L[2], range2);
            for (const auto& rg2 : range2)
            for (int l2 = rg2[0]; l2 <= rg2[1]; ++l2) {
              const double c2 = la[1].lo(l2), d2 = c2 + la[1].width;
              // λ₃ = -λ₁-λ₂-h ranges over [-hi-d1-d2, -lo-c1-c2]
              const double lam_lo = -pc.hi - d1 - d2, lam_hi = -pc.lo - c1 - c2;
              int range[2][2];
              la[2].overlapping(lam_lo, lam_hi, range);
              for (const auto& rg : range)
              for (int l3 = rg[0]; l3 <= rg[1]; ++l3) {
                const double c3 = la[2].lo(l3), d3 = c3 + la[2].width;
                if (d3 <= lam_lo || c3 >= lam_hi) continue;
                // λ₁+λ₂ ∈ [-h-d3, -h-c3]
                double m;
                if (pc.flat) {
                  m = pc.len * (box_sum_cdf(c1, d1, c2, d2, -pc.lo - c3) - box_sum_cdf(c1, d1, c2, d2, -pc.lo - d3));
                } else {
                  auto F = [&](double z) { return box_sum_cdf_integral(c1, d1, c2, d2, z); };
                  m = pc.dudh * ((F(-pc.lo - c3) - F(-pc.hi - c3)) - (F(-pc.lo - d3) - F(-pc.hi - d3)));
                }
                if (!(m > 0.0)) continue;
                if (probe) {
                  k.w.push_back(m);
                  return k;
                }
                const int idx = (l1 * res + l2) * res + l3;
                if (acc[idx] == 0.0) touched.push_back(idx);
                acc[idx] += m;
              }
            }
          }
        }
        std::sort(touched.begin(), touched.end());
        for (int idx : touched) {
          k.i1.push_back(static_cast<std::uint16_t>(x1 * res + idx / (res * res)));
          k.i2.push_back(static_cast<std::uint16_t>(x2 * res + (idx / res) % res));
          k.i3.push_back(static_cast<std::uint16_t>(x3 * res + idx % res));
          k.w.push_back(acc[idx] * norm);
          acc[idx] = 0.0;
        }
      }
    }
  }
  return k;
}

double normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  if (s > 0.0)
    for (double& x : v) x /= s;
  return s;
}

}  // namespace

double resonance(double xi1, double xi2, double xi3) {
  const double scale = std::max({std::abs(xi1), std::abs(xi2), std::abs(xi3), 1.0});
  if (std::abs(xi1 + xi2 + xi3) > 1e-12 * scale) throw std::invalid_argument("resonance: frequencies must sum to zero");
  return h0(xi1) + h0(xi2) + h0(xi3);
}

Regime parse_regime(const std::string& name) {
  if (name == "high-mod") return Regime::HighModulation;
  if (name == "++") return Regime::PlusPlus;
  if (name == "+-") return Regime::PlusMinus;
  throw std::invalid_argument("unknown regime '" + name + "' (expected high-mod, ++ or +-)");
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::HighModulation: return "high-mod";
    case Regime::PlusPlus: return "++";
    case Regime::PlusMinus: return "+-";
  }
  return "unknown";
}

bool BlockSpec::frequencies_admissible() const {
  const auto n = sorted(N);
  return n[2] < 4.0 * n[1];
}

bool BlockSpec::modulations_admissible() const {
  const auto l = sorted(L);
  return sim(l[2], std::max(H, l[1]));
}

bool BlockSpec::resonance_admissible() const {
  const auto n = sorted(N);
  return sim(H, n[2] * n[0]);
}

bool BlockSpec::admissible() const {
  return frequencies_admissible() && modulations_admissible() && resonance_admissible();
}

bool BlockSpec::in_regime(Regime r) const {
  if (!admissible()) return false;
  const auto l = sorted(L);
  const auto n = sorted(N);
  if (r == Regime::HighModulation) return sim(l[2], l[1]) && l[1] >= 4.0 * H;
  if (!sim(l[2], H)) return false;
  if (r == Regime::PlusPlus) return n[2] < 4.0 * n[0];
  if (n[2] < 4.0 * n[0]) return false;
  int imin = 0;
  for (int j = 1; j < 3; ++j)
    if (N[j] < N[imin]) imin = j;
  for (int j = 0; j < 3; ++j)
    if (j != imin && (N[j] == N[imin] || L[j] > L[imin])) return false;
  return sim(L[imin], H);
}

double block_bound(const BlockSpec& b, Regime r, double gamma) {
  const auto n = sorted(b.N);
  const auto l = sorted(b.L);
  const double root_lmin = std::sqrt(l[0]);
  switch (r) {
    case Regime::HighModulation: return root_lmin * std::sqrt(n[0]);
    case Regime::PlusPlus: return root_lmin * std::pow(l[1], 0.25);
    case Regime::PlusMinus: {
      if (!(gamma > 0.0)) throw std::invalid_argument("block_bound: gamma must be positive");
      const double e = 1.0 / (2.0 * gamma);
      const double second = std::pow(n[2], 0.5 - e) * std::pow(n[0], -e) * std::pow(l[1], e);
      return root_lmin * std::min(std::sqrt(n[0]), second);
    }
  }
  return 0.0;
}

NormEstimate estimate_block_norm(const BlockSpec& b, Regime r, double gamma, const EstimateOptions& opt) {
  NormEstimate out;
  out.block = b;
  out.bound = block_bound(b, r, gamma);
  const Kernel k = build_kernel(b, opt);
  out.samples = static_cast<long>(k.w.size());
  if (k.w.empty()) return out;

  std::vector<double> a[3];
  // The kernel is invariant under (ξ, λ) -> (-ξ, -λ) and the mirror-symmetric
  // start sits on a saddle, so weight ξ > 0 cells more.
  for (auto& v : a) {  // cells below k.cells/2 have ξ < 0
    v.assign(k.cells, 1.0);
    for (int c = 0; c < k.cells / 2; ++c) v[c] = 0.5;
  }
  if (opt.seed != 0) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> U(0.05, 1.0);
    for (auto& v : a)
      for (double& x : v) x = U(rng);
  }
  for (auto& v : a) normalize(v);
  const size_t m = k.w.size();
  std::vector<double> g(k.cells);
  double value = 0.0;
  bool done = false;
  for (int sweep = 1; sweep <= opt.max_sweeps; ++sweep) {
    std::fill(g.begin(), g.end(), 0.0);
    for (size_t e = 0; e < m; ++e) g[k.i1[e]] += k.w[e] * a[1][k.i2[e]] * a[2][k.i3[e]];
    a[0] = g;
    normalize(a[0]);
    std::fill(g.begin(), g.end(), 0.0);
    for (size_t e = 0; e < m; ++e) g[k.i2[e]] += k.w[e] * a[0][k.i1[e]] * a[2][k.i3[e]];
    a[1] = g;
    normalize(a[1]);
    std::fill(g.begin(), g.end(), 0.0);
    for (size_t e = 0; e < m; ++e) g[k.i3[e]] += k.w[e] * a[0][k.i1[e]] * a[1][k.i2[e]];
    a[2] = g;
    const double next = normalize(a[2]);
    out.sweeps = sweep;
    if (std::abs(next - value) <= opt.tol * next) {
      value = next;
      done = true;
      break;
    }
    value = next;
  }
  if (!done) throw NonConvergenceError("estimate_block_norm: power iteration did not converge");
  out.estimate = value;
  out.ratio = out.bound > 0.0 ? value / out.bound : 0.0;
  return out;
}

std::vector<BlockSpec> enumerate_blocks(Regime r, int scales, int max_blocks, const EstimateOptions& opt) {
  if (scales < 1 || scales > 8) throw std::invalid_argument("enumerate_blocks: scales must be in 1..8");
  std::vector<double> ns, ls;
  for (int i = 0; i < scales; ++i) ns.push_back(std::ldexp(1.0, i));
  for (int i = 0; i <= 2 * scales; ++i) ls.push_back(std::ldexp(1.0, i));
  std::vector<BlockSpec> candidates;
  for (double n1 : ns)
    for (double n2 : ns)
      for (double n3 : ns)
        for (double l1 : ls)
          for (double l2 : ls)
            for (double l3 : ls)
              for (double h : ls) {
                BlockSpec b{{n1, n2, n3}, {l1, l2, l3}, h};
                if (b.in_regime(r)) candidates.push_back(b);
              }
  std::vector<BlockSpec> out;
  if (candidates.empty()) return out;
  const size_t stride = std::max<size_t>(1, candidates.size() / (2 * static_cast<size_t>(max_blocks)));
  // later passes start at shifted offsets so empty supports cannot starve the list
  for (size_t start = 0; start < stride && static_cast<int>(out.size()) < max_blocks; ++start) {
    for (size_t i = start; i < candidates.size() && static_cast<int>(out.size()) < max_blocks; i += stride) {
      if (!build_kernel(candidates[i], opt, true).w.empty()) out.push_back(candidates[i]);
    }
  }
  return out;
}

std::vector<NormEstimate> estimate_all(const std::vector<BlockSpec>& blocks, Regime r, double gamma,
                                       const EstimateOptions& opt) {
  std::vector<NormEstimate> out(blocks.size());
  parallel_for(blocks.size(), [&](size_t i) { out[i] = estimate_block_norm(blocks[i], r, gamma, opt); });
  return out;
}

std::vector<NormEstimate> sweep_blocks(Regime r, int scales, double gamma, const EstimateOptions& opt, int max_blocks) {
  return estimate_all(enumerate_blocks(r, scales, max_blocks, opt), r, gamma, opt);
}

double sup_ratio(const std::vector<NormEstimate>& v) {
  double s = 0.0;
  for (const auto& e : v) s = std::max(s, e.ratio);
  return s;
}

}  // namespace fdbo::dyadic

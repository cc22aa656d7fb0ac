#include "fdbo/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fdbo::quad {
namespace {

template <int N>
Rule expand() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& a = G::abscissa();
  const auto& w = G::weights();
  Rule r;
  for (size_t i = 0; i < a.size(); ++i) {
    r.x.push_back(a[i]);
    r.w.push_back(w[i]);
    if (a[i] != 0.0) {
      r.x.push_back(-a[i]);
      r.w.push_back(w[i]);
    }
  }
  std::vector<size_t> idx(r.x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) { return r.x[i] < r.x[j]; });
  Rule out;
  for (size_t i : idx) {
    out.x.push_back(r.x[i]);
    out.w.push_back(r.w[i]);
  }
  return out;
}

Rule make(int order) {
  switch (order) {
    case 2: return expand<2>();
    case 3: return expand<3>();
    case 4: return expand<4>();
    case 5: return expand<5>();
    case 6: return expand<6>();
    case 7: return expand<7>();
    case 8: return expand<8>();
    case 9: return expand<9>();
    case 10: return expand<10>();
    case 12: return expand<12>();
    case 15: return expand<15>();
    case 16: return expand<16>();
    case 20: return expand<20>();
    case 24: return expand<24>();
    case 30: return expand<30>();
    default: throw std::invalid_argument("gauss_legendre: unsupported order " + std::to_string(order));
  }
}

}  // namespace

const Rule& gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make(order)).first;
  return it->second;
}

void composite(double a, double b, int panels, const Rule& r, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.clear();
  weights.clear();
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (size_t i = 0; i < r.x.size(); ++i) {
      nodes.push_back(lo + 0.5 * h * (1.0 + r.x[i]));
      weights.push_back(0.5 * h * r.w[i]);
    }
  }
}

}  // namespace fdbo::quad

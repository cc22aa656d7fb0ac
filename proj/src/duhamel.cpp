#include "fdbo/duhamel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fdbo/quadrature.hpp"

namespace fdbo {
namespace {

cplx cexp(cplx z) { return std::exp(z.real()) * cplx(std::cos(z.imag()), std::sin(z.imag())); }

}  // namespace

DuhamelPlan::DuhamelPlan(const Grid& grid, const SymbolParams& p, double T, int panels, int order)
    : grid_(grid), n_(grid.n()), T_(T), panels_(panels), order_(order), h_(T / panels) {
  if (!(T > 0.0) || panels < 1) throw std::invalid_argument("duhamel: need T > 0 and panels >= 1");
  const auto& rule = quad::gauss_legendre(order);
  const int q = order;
  lambda_.resize(n_);
  for (int i = 0; i < n_; ++i) {
    const double k = grid.k(i);
    lambda_[i] = grid.is_nyquist(i) ? cplx(growth_dissipation_symbol(k, p), 0.0) : linear_symbol(k, p);
  }
  for (int pp = 0; pp < panels; ++pp)
    for (int i = 0; i < q; ++i) times_.push_back(pp * h_ + 0.5 * h_ * (1.0 + rule.x[i]));

  auto table = [&](double dt) {
    std::vector<cplx> e(n_);
    for (int i = 0; i < n_; ++i) e[i] = cexp(lambda_[i] * dt);
    return e;
  };
  exp_h_ = table(h_);
  to_end_.resize(q);
  from_left_.resize(q);
  sub_w_.assign(q, std::vector<double>(q));
  lagrange_.assign(q, std::vector<std::vector<double>>(q, std::vector<double>(q)));
  sub_kernel_.resize(q);
  for (int j = 0; j < q; ++j) {
    const double tj = 0.5 * h_ * (1.0 + rule.x[j]);  // offset from the panel start
    to_end_[j] = table(h_ - tj);
    from_left_[j] = table(tj);
    sub_kernel_[j].resize(q);
    for (int m = 0; m < q; ++m) {
      const double tau = 0.5 * tj * (1.0 + rule.x[m]);
      sub_w_[j][m] = 0.5 * tj * rule.w[m];
      sub_kernel_[j][m] = table(tj - tau);
      const double xloc = 2.0 * tau / h_ - 1.0;
      for (int i = 0; i < q; ++i) {
        double l = 1.0;
        for (int r = 0; r < q; ++r)
          if (r != i) l *= (xloc - rule.x[r]) / (rule.x[i] - rule.x[r]);
        lagrange_[j][m][i] = l;
      }
    }
  }
}

DuhamelPlan::Result DuhamelPlan::integrate(const std::vector<SpectralField>& f) const {
  if (static_cast<int>(f.size()) != node_count()) throw std::invalid_argument("duhamel: forcing size mismatch");
  const auto& rule = quad::gauss_legendre(order_);
  const int q = order_;
  Result res{std::vector<SpectralField>(node_count(), SpectralField(grid_)), SpectralField(grid_)};
  std::vector<cplx> left(n_, cplx(0.0, 0.0));
  std::vector<cplx> interp(n_);
  for (int pp = 0; pp < panels_; ++pp) {
    const SpectralField* fp = &f[pp * q];
    for (int j = 0; j < q; ++j) {
      auto& out = res.at_nodes[pp * q + j].coeffs;
      for (int k = 0; k < n_; ++k) out[k] = from_left_[j][k] * left[k];
      for (int m = 0; m < q; ++m) {
        std::fill(interp.begin(), interp.end(), cplx(0.0, 0.0));
        for (int i = 0; i < q; ++i) {
          const double l = lagrange_[j][m][i];
          const auto& fc = fp[i].coeffs;
          for (int k = 0; k < n_; ++k) interp[k] += l * fc[k];
        }
        const double w = sub_w_[j][m];
        const auto& ker = sub_kernel_[j][m];
        for (int k = 0; k < n_; ++k) out[k] += w * ker[k] * interp[k];
      }
    }
    for (int k = 0; k < n_; ++k) {
      cplx acc = exp_h_[k] * left[k];
      for (int i = 0; i < q; ++i) acc += 0.5 * h_ * rule.w[i] * to_end_[i][k] * fp[i].coeffs[k];
      left[k] = acc;
    }
  }
  res.at_end.coeffs = left;
  return res;
}

DuhamelPlan::Result DuhamelPlan::free_evolution(const SpectralField& u0) const {
  Result res{std::vector<SpectralField>(node_count(), SpectralField(grid_)), SpectralField(grid_)};
  for (int idx = 0; idx < node_count(); ++idx)
    for (int k = 0; k < n_; ++k) res.at_nodes[idx].coeffs[k] = cexp(lambda_[k] * times_[idx]) * u0.coeffs[k];
  for (int k = 0; k < n_; ++k) res.at_end.coeffs[k] = cexp(lambda_[k] * T_) * u0.coeffs[k];
  return res;
}

}  // namespace fdbo

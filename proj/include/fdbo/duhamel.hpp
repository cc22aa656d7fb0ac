#pragma once

#include <vector>

#include "fdbo/spectral_core.hpp"

namespace fdbo {

// Time nodes for Duhamel integrals on [0, T]: `panels` equal panels with
// `order` Gauss-Legendre nodes each. Node (p, i) has flat index p*order + i.
class DuhamelPlan {
 public:
  DuhamelPlan(const Grid& grid, const SymbolParams& p, double T, int panels, int order);

  const std::vector<double>& node_times() const { return times_; }
  int node_count() const { return static_cast<int>(times_.size()); }
  double horizon() const { return T_; }
  const Grid& grid() const { return grid_; }

  struct Result {
    std::vector<SpectralField> at_nodes;
    SpectralField at_end;
  };

  // I(t) = ∫_0^t S(t-τ) f(τ) dτ given f at every node. Panel endpoints are
  // advanced exactly; interior values integrate the in-panel Lagrange
  // interpolant of f with a second Gauss rule.
  Result integrate(const std::vector<SpectralField>& f) const;

  // S(t)u0 at every node and at T.
  Result free_evolution(const SpectralField& u0) const;

 private:
  Grid grid_;
  int n_;
  double T_;
  int panels_;
  int order_;
  double h_;
  std::vector<double> times_;
  std::vector<cplx> lambda_;
  std::vector<cplx> exp_h_;                  // e^{λh}
  std::vector<std::vector<cplx>> to_end_;    // e^{λ(a_{p+1} - t_{p,i})}, by i
  std::vector<std::vector<cplx>> from_left_; // e^{λ(t_{p,j} - a_p)}, by j
  // sub-rule on [a_p, t_{p,j}]: weights, Lagrange values at sub-nodes and kernels
  std::vector<std::vector<double>> sub_w_;
  std::vector<std::vector<std::vector<double>>> lagrange_;  // [j][m][i]
  std::vector<std::vector<std::vector<cplx>>> sub_kernel_;  // [j][m][mode]
};

}  // namespace fdbo

#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdbo::dyadic {

// h₀(θ) = -θ|θ| summed over a zero-sum triple.
double resonance(double xi1, double xi2, double xi3);

enum class Regime { HighModulation, PlusPlus, PlusMinus };

Regime parse_regime(const std::string& name);
std::string regime_name(Regime r);

// Frequencies live on |ξ_j| ∈ (N_j/2, N_j], modulations λ_j = τ_j - h₀(ξ_j) on
// |λ_j| ∈ (L_j/2, L_j] and the resonance on |h| ∈ (H/2, H].
struct BlockSpec {
  std::array<double, 3> N{};
  std::array<double, 3> L{};
  double H = 1.0;

  // Size relations with "∼" read as "within a factor 4"; blocks failing them
  // are vacuous.
  bool frequencies_admissible() const;
  bool modulations_admissible() const;
  bool resonance_admissible() const;
  bool admissible() const;

  bool in_regime(Regime r) const;
};

// L_min^{1/2} N_min^{1/2}, L_min^{1/2} L_med^{1/4}, or
// L_min^{1/2} min(N_min^{1/2}, N_max^{1/2-1/(2γ)} N_min^{-1/(2γ)} L_med^{1/(2γ)}).
double block_bound(const BlockSpec& b, Regime r, double gamma = 1.0);

struct EstimateOptions {
  int resolution = 32;    // cells per signed λ axis for each function
  int xi_refinement = 2;  // ξ cells per signed axis = resolution * xi_refinement
  int max_sweeps = 2000;
  double tol = 1e-6;
  unsigned seed = 0;  // 0: fixed start, otherwise a random positive start
};

struct NormEstimate {
  BlockSpec block;
  double estimate = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  long samples = 0;  // nonzero kernel entries
  int sweeps = 0;
};

// Lower estimate of the trilinear-form norm of the block multiplier by
// alternating power iteration over piecewise-constant f₁, f₂, f₃. The kernel
// holds the measure of {ξ₃ = -ξ₁-ξ₂, λ₃ = -λ₁-λ₂-h} inside each cell triple, so
// refining the cells raises the estimate up to the ξ quadrature error.
NormEstimate estimate_block_norm(const BlockSpec& b, Regime r, double gamma, const EstimateOptions& opt = {});

class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Admissible blocks of the regime with N_j ∈ {1..2^{scales-1}} and L_j, H ∈
// {1..2^{2 scales}}, thinned to at most max_blocks by a fixed stride and kept
// only if their discretized support is nonempty.
std::vector<BlockSpec> enumerate_blocks(Regime r, int scales, int max_blocks, const EstimateOptions& opt);

std::vector<NormEstimate> sweep_blocks(Regime r, int scales, double gamma, const EstimateOptions& opt,
                                       int max_blocks = 120);

std::vector<NormEstimate> estimate_all(const std::vector<BlockSpec>& blocks, Regime r, double gamma,
                                       const EstimateOptions& opt);

double sup_ratio(const std::vector<NormEstimate>& v);

}  // namespace fdbo::dyadic

#pragma once

#include <vector>

namespace fdbo::quad {

struct Rule {
  std::vector<double> x;  // nodes on [-1, 1], ascending
  std::vector<double> w;
};

// Gauss-Legendre rule; supported orders are 2..10, 12, 15, 16, 20, 24, 30.
const Rule& gauss_legendre(int order);

// Composite rule on [a, b] with equal panels.
void composite(double a, double b, int panels, const Rule& r, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace fdbo::quad

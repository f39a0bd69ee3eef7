#pragma once

#include <vector>

namespace af {

// Nodes and weights on a reference interval. Gauss-Legendre rules live on
// [-1/2, 1/2] with weights summing to 1 so they produce cell means directly.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

}  // namespace af

#pragma once

#include <vector>

#include "coplanar/coaction.hpp"

// Brute-force cross-checks that avoid the Hopf machinery.
namespace coplanar::oracles {

// Rank of the average over G of the n-fold diagonal action on A^{(x)n}.
// Rejects coactions that were not built from a group action.
int group_average_dimension(const CoactionTable& c, int n, double threshold = 1e-8);

// Dimension of the unital *-algebra generated by tensors of one level.
int algebra_closure_dimension(const std::vector<Tensor>& generators, double threshold = 1e-8);

}  // namespace coplanar::oracles

#pragma once

#include <random>

#include "coplanar/algebra.hpp"

namespace testing_util {

inline coplanar::Tensor random_tensor(const coplanar::SpacePtr& space, std::mt19937& rng, double density = 0.6) {
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::bernoulli_distribution keep(density);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space->num_loops());
  for (int k = 0; k < v.size(); ++k)
    if (keep(rng)) v[k] = {val(rng), val(rng)};
  return coplanar::Tensor::from_vector(space, v);
}

inline double diff(const coplanar::Tensor& a, const coplanar::Tensor& b) { return (a - b).max_abs(); }

}  // namespace testing_util

#pragma once

#include <string>

#include "coplanar/algebra.hpp"

namespace coplanar {

enum class Role {
  Inclusion,
  ExpectationTilde,
  Jones,
  JonesTwisted,
  Expectation,
  JonesMinus,
  JonesPlus,
  ExpectationMinus,
  ExpectationPlus,
  Gamma,
  Multiplication,
  Theta,
  Identity,
  Composite,
};

std::string role_name(Role role);

// Linear map between two loop spaces, as a sparse matrix with one column per
// source loop and one row per target loop.
class TowerMap {
 public:
  using Emit = std::function<void(int bottom, int top, Complex c)>;
  using Rule = std::function<void(int bottom, int top, const Emit& emit)>;

  TowerMap(SpacePtr source, SpacePtr target, SparseCols matrix, Role role, std::string name = {});

  // Build from the image of every source loop. The rule receives the source
  // labels and reports target (bottom, top, coefficient) terms.
  static TowerMap from_rule(SpacePtr source, SpacePtr target, Role role, std::string name, const Rule& rule);
  static TowerMap identity(SpacePtr space);

  const SpacePtr& source() const { return source_; }
  const SpacePtr& target() const { return target_; }
  const SparseCols& matrix() const { return matrix_; }
  Role role() const { return role_; }
  const std::string& name() const { return name_; }

  Tensor apply(const Tensor& x) const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const { return matrix_ * x; }

  // (*this) o inner
  TowerMap after(const TowerMap& inner) const;
  TowerMap operator*(const TowerMap& inner) const { return after(inner); }
  TowerMap operator+(const TowerMap& other) const;
  TowerMap operator-(const TowerMap& other) const;
  TowerMap scaled(Complex s) const;

 private:
  SpacePtr source_;
  SpacePtr target_;
  SparseCols matrix_;
  Role role_;
  std::string name_;
};

struct MapDifference {
  double value = 0.0;
  std::string where;
};

// Largest entry of a - b, located by (source loop -> target loop).
MapDifference map_difference(const TowerMap& a, const TowerMap& b);

}  // namespace coplanar

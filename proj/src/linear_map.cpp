#include "coplanar/linear_map.hpp"

namespace coplanar {

std::string role_name(Role role) {
  switch (role) {
    case Role::Inclusion: return "I";
    case Role::ExpectationTilde: return "E~";
    case Role::Jones: return "J";
    case Role::JonesTwisted: return "J^q";
    case Role::Expectation: return "E";
    case Role::JonesMinus: return "J-";
    case Role::JonesPlus: return "J+";
    case Role::ExpectationMinus: return "E-";
    case Role::ExpectationPlus: return "E+";
    case Role::Gamma: return "Gamma";
    case Role::Multiplication: return "M";
    case Role::Theta: return "theta";
    case Role::Identity: return "id";
    case Role::Composite: return "composite";
  }
  return "?";
}

namespace {

void prune(SparseCols& m) {
  m.prune([](const int&, const int&, const Complex& v) { return std::abs(v) > kPruneThreshold; });
  m.makeCompressed();
}

}  // namespace

TowerMap::TowerMap(SpacePtr source, SpacePtr target, SparseCols matrix, Role role, std::string name)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)), role_(role),
      name_(std::move(name)) {
  if (matrix_.rows() != target_->num_loops() || matrix_.cols() != source_->num_loops())
    throw Error("map matrix does not match the loop bases of " + name_);
  prune(matrix_);
}

TowerMap TowerMap::from_rule(SpacePtr source, SpacePtr target, Role role, std::string name, const Rule& rule) {
  std::vector<Eigen::Triplet<Complex>> trip;
  for (int col = 0; col < source->num_loops(); ++col) {
    auto [b, t] = source->loop(col);
    rule(b, t, [&](int tb, int tt, Complex c) {
      auto row = target->loop_index(tb, tt);
      if (!row) throw Error(name + ": image term on an invalid loop");
      trip.emplace_back(*row, col, c);
    });
  }
  SparseCols m(target->num_loops(), source->num_loops());
  m.setFromTriplets(trip.begin(), trip.end());
  return TowerMap(std::move(source), std::move(target), std::move(m), role, std::move(name));
}

TowerMap TowerMap::identity(SpacePtr space) {
  SparseCols m(space->num_loops(), space->num_loops());
  m.setIdentity();
  return TowerMap(space, space, std::move(m), Role::Identity, "id");
}

Tensor TowerMap::apply(const Tensor& x) const {
  if (!x.space()->same_as(*source_)) throw Error(name_ + ": argument is not in the source space");
  return Tensor::from_vector(target_, matrix_ * x.to_vector());
}

TowerMap TowerMap::after(const TowerMap& inner) const {
  if (!inner.target_->same_as(*source_)) throw Error("cannot compose " + name_ + " after " + inner.name_);
  return TowerMap(inner.source_, target_, SparseCols(matrix_ * inner.matrix_), Role::Composite,
                  name_ + "." + inner.name_);
}

TowerMap TowerMap::operator+(const TowerMap& other) const {
  if (!source_->same_as(*other.source_) || !target_->same_as(*other.target_)) throw Error("adding incompatible maps");
  return TowerMap(source_, target_, SparseCols(matrix_ + other.matrix_), Role::Composite, name_ + "+" + other.name_);
}

TowerMap TowerMap::operator-(const TowerMap& other) const {
  if (!source_->same_as(*other.source_) || !target_->same_as(*other.target_)) throw Error("subtracting incompatible maps");
  return TowerMap(source_, target_, SparseCols(matrix_ - other.matrix_), Role::Composite, name_ + "-" + other.name_);
}

TowerMap TowerMap::scaled(Complex s) const { return TowerMap(source_, target_, SparseCols(matrix_ * s), role_, name_); }

MapDifference map_difference(const TowerMap& a, const TowerMap& b) {
  if (!a.source()->same_as(*b.source()) || !a.target()->same_as(*b.target()))
    throw Error("comparing maps with different shapes: " + a.name() + " vs " + b.name());
  SparseCols diff = a.matrix() - b.matrix();
  MapDifference out;
  for (int c = 0; c < diff.outerSize(); ++c)
    for (SparseCols::InnerIterator it(diff, c); it; ++it)
      if (std::abs(it.value()) > out.value) {
        out.value = std::abs(it.value());
        out.where = a.source()->describe_loop(c) + " -> " + a.target()->describe_loop(static_cast<int>(it.row()));
      }
  return out;
}

}  // namespace coplanar

#include <cmath>
#include <random>

#include "coplanar/catalog.hpp"
#include "coplanar/coaction.hpp"
#include "doctest.h"

using namespace coplanar;

namespace {

std::vector<CoactionTable> bundled() {
  return {catalog::trivial_c2(), catalog::z2_flip(), catalog::s3_permutation(), catalog::translation_z2(),
          catalog::m2_inner()};
}

const CheckRecord& find(const CheckList& list, const std::string& name) {
  for (const auto& r : list)
    if (r.name == name) return r;
  throw std::runtime_error("no record " + name);
}

int loop(const CoactionTable& c, int i, int j) { return *c.space()->loop_index(i, j); }

}  // namespace

TEST_CASE("flip coefficients") {
  auto flip = catalog::z2_flip();
  HElement v = flip.value(loop(flip, 1, 1), loop(flip, 0, 0));
  CHECK(std::abs(v[0]) == 0.0);
  CHECK(v[1] == Complex(1.0));
  HElement w = flip.value(loop(flip, 0, 0), loop(flip, 0, 0));
  CHECK(w[0] == Complex(1.0));
  CHECK(std::abs(w[1]) == 0.0);
  CHECK(flip.coefficients().nnz() == 4);
}

TEST_CASE("map and table round trip") {
  for (const auto& c : bundled()) {
    auto back = CoactionTable::from_map(c.algebra(), c.hopf_ptr(), c.degree(), c.to_map());
    double worst = 0.0;
    for (int out = 0; out < c.space()->num_loops(); ++out)
      for (int in = 0; in < c.space()->num_loops(); ++in)
        worst = std::max(worst, (back.value(out, in) - c.value(out, in)).cwiseAbs().maxCoeff());
    CHECK(worst < 1e-14);
  }
}

TEST_CASE("bundled coactions satisfy every coefficient condition") {
  for (const auto& c : bundled()) {
    for (const auto& r : check_axioms(c)) CHECK_MESSAGE(r.pass, r.name << " " << r.max_residual << " " << r.worst_index);
    for (const auto& r : check_operator_axioms(c)) CHECK_MESSAGE(r.pass, r.name << " " << r.max_residual);
    for (const auto& r : check_invariance(c)) CHECK_MESSAGE(r.pass, r.name << " " << r.max_residual);
    CHECK(check_modularity(c).pass);
    CHECK(check_f1(c).pass);
  }
}

TEST_CASE("coefficient and operator paths agree on random perturbations") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> pick(0, 1);
  std::uniform_real_distribution<double> amount(0.05, 0.5);
  auto flip = catalog::z2_flip();
  for (int trial = 0; trial < 10; ++trial) {
    HElement d = HElement::Zero(2);
    d[pick(rng) % 2] = amount(rng);
    auto bad = flip.perturbed(pick(rng), pick(rng), d);
    auto coeff = check_axioms(bad);
    auto op = check_operator_axioms(bad);
    CHECK(find(coeff, "epsilon").pass == find(op, "op_counit").pass);
    CHECK(find(coeff, "Delta").pass == find(op, "op_coassociative").pass);
    CHECK(find(coeff, "star").pass == find(op, "op_involutive").pass);
    CHECK(find(coeff, "u_circ").pass == find(op, "op_unital").pass);
    CHECK(find(coeff, "circ_m").pass == find(op, "op_multiplicative").pass);
    CHECK_FALSE(all_pass(coeff));
  }
}

TEST_CASE("corrupted flip fails") {
  auto bad = catalog::corrupted_flip();
  auto rec = check_axioms(bad);
  CHECK_FALSE(all_pass(rec));
  CHECK_FALSE(find(rec, "epsilon").pass);
  CHECK(find(rec, "epsilon").max_residual >= 0.05);
}

TEST_CASE("non-invariant flip fails invariance on both paths") {
  auto c = catalog::flip_nonuniform();
  for (const auto& r : check_axioms(c)) CHECK_MESSAGE(r.pass, r.name);
  auto inv = check_invariance(c);
  CHECK_FALSE(find(inv, "phi_invariance").pass);
  CHECK_FALSE(find(inv, "S").pass);
  CHECK(find(inv, "agreement").pass);
}

TEST_CASE("automorphism validation") {
  auto alg = catalog::uniform_commutative(2);
  Eigen::MatrixXcd id = automorphism_from_permutation(alg, {0, 1});
  Eigen::MatrixXcd swap = automorphism_from_permutation(alg, {1, 0});
  // Homomorphism property fails for Z_2 -> {id, id, ...} with wrong identity.
  CHECK_THROWS_AS(from_group_action(alg, Group::cyclic(2), {swap, id}), Error);
  CHECK_THROWS_AS(from_group_action(alg, Group::cyclic(2), {id}), Error);
  Eigen::MatrixXcd scaled = 2.0 * id;
  CHECK_THROWS_AS(from_group_action(alg, Group::cyclic(2), {id, scaled}), Error);
  auto skewed = IndexedAlgebra::build({1, 1}, {1.0 / 3, 2.0 / 3});
  CHECK_THROWS_AS(from_group_action(skewed, Group::cyclic(2),
                                    {automorphism_from_permutation(skewed, {0, 1}),
                                     automorphism_from_permutation(skewed, {1, 0})}),
                  Error);
}

TEST_CASE("translation coaction needs a commutative algebra") {
  auto h = std::make_shared<const HopfData>(HopfData::group_algebra(Group::symmetric3()));
  CHECK_THROWS_AS(translation_coaction(h), Error);
  auto z3 = translation_coaction(std::make_shared<const HopfData>(HopfData::function_algebra(Group::cyclic(3))));
  CHECK(z3.algebra().num_indices() == 3);
  for (int i = 0; i < 3; ++i) CHECK(z3.algebra().weight(i) == doctest::Approx(1.0 / 3));
  for (const auto& r : check_axioms(z3)) CHECK_MESSAGE(r.pass, r.name);
  for (const auto& r : check_invariance(z3)) CHECK_MESSAGE(r.pass, r.name);
}

TEST_CASE("explicit coefficient tables") {
  auto alg = catalog::uniform_commutative(2);
  auto h = std::make_shared<const HopfData>(HopfData::function_algebra(Group::cyclic(2)));
  std::vector<ExplicitEntry> flip{{0, 0, 0, 0, h->basis(0)}, {1, 1, 0, 0, h->basis(1)},
                                  {1, 1, 1, 1, h->basis(0)}, {0, 0, 1, 1, h->basis(1)}};
  auto c = explicit_coaction(alg, h, flip);
  for (const auto& r : check_axioms(c)) CHECK(r.pass);
  std::vector<ExplicitEntry> broken{{0, 1, 0, 0, h->basis(0)}};
  CHECK_THROWS_AS(explicit_coaction(alg, h, broken), Error);
}

TEST_CASE("cofaithfulness") {
  CHECK_FALSE(check_cofaithful(catalog::trivial_c2()).cofaithful);
  CHECK(check_cofaithful(catalog::trivial_c2()).dimension == 1);
  CHECK(check_cofaithful(catalog::z2_flip()).cofaithful);
  CHECK(check_cofaithful(catalog::s3_permutation()).cofaithful);
  CHECK(check_cofaithful(catalog::m2_inner()).cofaithful);
}

TEST_CASE("modularity for non-tracial phi") {
  auto alg = IndexedAlgebra::build({2}, {1.0 / 3, 2.0 / 3});
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(2, 2);
  u(1, 1) = -1.0;
  auto c = from_group_action(alg, Group::cyclic(2),
                             {automorphism_from_unitary(alg, Eigen::MatrixXcd::Identity(2, 2)),
                              automorphism_from_unitary(alg, u)});
  for (const auto& r : check_axioms(c)) CHECK(r.pass);
  for (const auto& r : check_invariance(c)) CHECK(r.pass);
  // A Kac coaction commutes with theta, so the condition forces theta^2 = id.
  auto m = check_modularity(c);
  CHECK_FALSE(m.pass);
  CHECK(m.max_residual > 1.0);
}

TEST_CASE("canonical Q") {
  for (int n : {2, 3}) {
    auto c = n == 2 ? catalog::z2_flip() : catalog::s3_permutation();
    auto q = canonical_Q(c);
    for (double s : q.block_scalars) CHECK(s == doctest::Approx(std::pow(n, -0.25)));
    for (const auto& r : q.records) CHECK_MESSAGE(r.pass, r.name);
  }
  auto m = canonical_Q(catalog::m2_inner());
  REQUIRE(m.block_scalars.size() == 1);
  CHECK(m.block_scalars[0] == doctest::Approx(std::pow(2.0, -0.25)));
  for (const auto& r : m.records) CHECK_MESSAGE(r.pass, r.name);
}

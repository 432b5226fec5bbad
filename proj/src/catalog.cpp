#include "coplanar/catalog.hpp"

namespace coplanar::catalog {

IndexedAlgebra uniform_commutative(int n) {
  return IndexedAlgebra::build(std::vector<int>(n, 1), std::vector<double>(n, 1.0 / n));
}

namespace {

CoactionTable flip_on(const IndexedAlgebra& alg, bool require_invariant) {
  Group z2 = Group::cyclic(2);
  std::vector<Eigen::MatrixXcd> maps{automorphism_from_permutation(alg, {0, 1}),
                                     automorphism_from_permutation(alg, {1, 0})};
  return from_group_action(alg, z2, maps, kDefaultTolerance, require_invariant);
}

}  // namespace

CoactionTable trivial_c2() {
  IndexedAlgebra alg = uniform_commutative(2);
  Eigen::MatrixXcd id = automorphism_from_permutation(alg, {0, 1});
  return from_group_action(alg, Group::cyclic(2), {id, id});
}

CoactionTable z2_flip() { return flip_on(uniform_commutative(2), true); }

CoactionTable s3_permutation() {
  IndexedAlgebra alg = uniform_commutative(3);
  Group s3 = Group::symmetric3();
  // Group::symmetric3 lists the permutations of {0,1,2} in lexicographic order.
  std::vector<std::vector<int>> perms{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<Eigen::MatrixXcd> maps;
  for (const auto& p : perms) maps.push_back(automorphism_from_permutation(alg, p));
  return from_group_action(alg, s3, maps);
}

CoactionTable translation_z2() {
  return translation_coaction(std::make_shared<const HopfData>(HopfData::function_algebra(Group::cyclic(2))));
}

CoactionTable m2_inner() {
  IndexedAlgebra alg = IndexedAlgebra::build({2}, {0.5, 0.5});
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(2, 2);
  u(1, 1) = -1.0;
  std::vector<Eigen::MatrixXcd> maps{automorphism_from_unitary(alg, Eigen::MatrixXcd::Identity(2, 2)),
                                     automorphism_from_unitary(alg, u)};
  return from_group_action(alg, Group::cyclic(2), maps);
}

CoactionTable corrupted_flip() {
  CoactionTable flip = z2_flip();
  int loop00 = flip.space()->loop_index_unchecked(0, 0);
  HElement bump = 0.1 * flip.hopf().basis(Group::cyclic(2).identity());
  return flip.perturbed(loop00, loop00, bump);
}

CoactionTable flip_nonuniform() {
  return flip_on(IndexedAlgebra::build({1, 1}, {1.0 / 3.0, 2.0 / 3.0}), false);
}

}  // namespace coplanar::catalog

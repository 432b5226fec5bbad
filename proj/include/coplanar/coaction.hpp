#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coplanar/algebra.hpp"
#include "coplanar/hopf.hpp"
#include "coplanar/report.hpp"

namespace coplanar {

struct HEntry {
  int row;
  HElement value;
};

// Square matrix over a loop basis whose entries are elements of H.
// Stored column by column, rows sorted, zero entries omitted.
class HMatrix {
 public:
  HMatrix(SpacePtr space, int hdim);

  void add(int row, int col, const HElement& value);
  void finalize();

  const SpacePtr& space() const { return space_; }
  int hdim() const { return hdim_; }
  int size() const { return static_cast<int>(cols_.size()); }
  const std::vector<HEntry>& column(int col) const { return cols_.at(col); }
  const HElement* find(int row, int col) const;
  HElement value(int row, int col) const;
  std::size_t nnz() const;

  // One sparse scalar matrix per basis element of H.
  std::vector<SparseCols> components() const;

 private:
  SpacePtr space_;
  int hdim_;
  std::vector<std::vector<HEntry>> cols_;
};

// Group acting on A by *-automorphisms, each given as a matrix on the loop
// basis of A.
struct GroupAction {
  Group group;
  std::vector<Eigen::MatrixXcd> maps;
};

// Coefficients V of a coaction of H on a level of the tower. Rows index the
// output matrix unit (k,l), columns the input (i,j), both as loops.
class CoactionTable {
 public:
  CoactionTable(IndexedAlgebra alg, std::shared_ptr<const HopfData> hopf, int degree, HMatrix coefficients);

  const IndexedAlgebra& algebra() const { return alg_; }
  const HopfData& hopf() const { return *hopf_; }
  const std::shared_ptr<const HopfData>& hopf_ptr() const { return hopf_; }
  int degree() const { return degree_; }
  const SpacePtr& space() const { return coeffs_.space(); }
  const HMatrix& coefficients() const { return coeffs_; }
  HElement value(int out, int in) const { return coeffs_.value(out, in); }

  // q_k^{-1} q_i q_j q_l^{-1} with loop weights of this level.
  double normalization(int out, int in) const;

  // The linear map v: column y holds v(y) as a combination of output loops.
  HMatrix to_map() const;
  static CoactionTable from_map(IndexedAlgebra alg, std::shared_ptr<const HopfData> hopf, int degree,
                                const HMatrix& map);

  // Copy with V[out, in] += delta.
  CoactionTable perturbed(int out, int in, const HElement& delta) const;

  const std::optional<GroupAction>& group_action() const { return action_; }
  void set_group_action(GroupAction action) { action_ = std::move(action); }

  std::string describe(int out, int in) const;

 private:
  IndexedAlgebra alg_;
  std::shared_ptr<const HopfData> hopf_;
  int degree_;
  HMatrix coeffs_;
  std::optional<GroupAction> action_;
};

// Automorphism of A induced by a permutation of the matrix-unit labels.
Eigen::MatrixXcd automorphism_from_permutation(const IndexedAlgebra& alg, const std::vector<int>& perm);
// Ad(U) for a unitary U over the flat index set.
Eigen::MatrixXcd automorphism_from_unitary(const IndexedAlgebra& alg, const Eigen::MatrixXcd& u);

// v(a) = sum_g alpha_g(a) (x) delta_g with H = C(G). With require_invariant
// false the phi-preservation check is skipped, which gives a coaction that
// does not preserve phi.
CoactionTable from_group_action(const IndexedAlgebra& alg, const Group& group,
                                const std::vector<Eigen::MatrixXcd>& maps, double tol = kDefaultTolerance,
                                bool require_invariant = true);

// v = comultiplication of a commutative H, on A = H with the Haar state.
CoactionTable translation_coaction(std::shared_ptr<const HopfData> hopf, double tol = kDefaultTolerance);

struct ExplicitEntry {
  int k, l, i, j;
  HElement value;
};

CoactionTable explicit_coaction(const IndexedAlgebra& alg, std::shared_ptr<const HopfData> hopf,
                                const std::vector<ExplicitEntry>& entries);

// Coefficient conditions (epsilon), (Delta), (*), (u°), (°m).
CheckList check_axioms(const CoactionTable& c, double tol = kDefaultTolerance);
// The same five properties checked on the map v directly: counit, coassociativity,
// multiplicativity, involutivity, unitality.
CheckList check_operator_axioms(const CoactionTable& c, double tol = kDefaultTolerance);
// (S), (°u), (m°), direct phi-invariance, and their agreement.
CheckList check_invariance(const CoactionTable& c, double tol = kDefaultTolerance);
CheckRecord check_modularity(const CoactionTable& c, double tol = kDefaultTolerance);
CheckRecord check_f1(const CoactionTable& c, double tol = kDefaultTolerance);

struct Cofaithfulness {
  bool cofaithful = false;
  int dimension = 0;
};
Cofaithfulness check_cofaithful(const CoactionTable& c);

struct CanonicalQ {
  Tensor q;
  std::vector<double> block_scalars;
  CheckList records;
};
CanonicalQ canonical_Q(const CoactionTable& c, double tol = kDefaultTolerance);

// Rank of a family of H-elements.
int span_dimension(const std::vector<HElement>& elements, double tol = 1e-8);

}  // namespace coplanar

#pragma once

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace coplanar {

using Complex = std::complex<double>;
using MultiIndex = std::vector<int>;
using SparseRows = Eigen::SparseMatrix<Complex, Eigen::RowMajor, int>;
using SparseCols = Eigen::SparseMatrix<Complex, Eigen::ColMajor, int>;

inline constexpr double kPruneThreshold = 1e-14;
inline constexpr double kDefaultTolerance = 1e-9;

// Raised whenever an input is rejected.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AlgebraData {
  int id = 0;
  std::vector<int> block_sizes;
  std::vector<int> block_of;
  std::vector<double> weights;  // q_i^4
  std::vector<double> q;
  std::optional<double> delta;
};

class LoopSpace;
using SpacePtr = std::shared_ptr<const LoopSpace>;

enum class SpaceKind { Tower, SecondRow };

// A finite-dimensional C*-algebra given by its matrix blocks, a flat list of
// matrix-unit labels and the fourth-root weights of a faithful state.
class IndexedAlgebra {
 public:
  static IndexedAlgebra build(std::vector<int> block_sizes,
                              std::vector<double> weights_fourth_power,
                              double tol = kDefaultTolerance);

  int num_indices() const { return static_cast<int>(data_->q.size()); }
  int num_blocks() const { return static_cast<int>(data_->block_sizes.size()); }
  const std::vector<int>& block_sizes() const { return data_->block_sizes; }
  int block_of(int i) const { return data_->block_of.at(i); }
  bool same_block(int i, int j) const { return block_of(i) == block_of(j); }
  std::vector<int> block_indices(int block) const;
  double q(int i) const { return data_->q.at(i); }
  double weight(int i) const { return data_->weights.at(i); }
  const std::vector<double>& weights() const { return data_->weights; }
  int dim() const;

  bool has_delta() const { return data_->delta.has_value(); }
  double delta() const;  // throws when the delta-form check failed
  std::optional<double> delta_if_any() const { return data_->delta; }

  // |sum q^4 - 1| and max over indices of |sum_{j~i} q_j^{-4} - s| where s is
  // the value on the first block.
  double normalization_residual() const;
  double block_inverse_spread() const;

  // Alternating loop weight q_(I).
  double loop_weight(const MultiIndex& labels) const;

  // Loop basis of A^{(x)n}.
  SpacePtr level(int n) const;
  // Loop basis of A (x) A^{(x)m}, the second row of the lattice.
  SpacePtr second_row(int m) const;

  const AlgebraData& data() const { return *data_; }
  int id() const { return data_->id; }
  bool operator==(const IndexedAlgebra& other) const { return id() == other.id(); }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<int, int>, SpacePtr> spaces;
  };
  std::shared_ptr<const AlgebraData> data_;
  std::shared_ptr<Cache> cache_;
};

// Valid multi-indices of one level, with their block decomposition and the
// induced enumeration of loops ordered by (bottom, top).
class LoopSpace {
 public:
  LoopSpace(std::shared_ptr<const AlgebraData> algebra, SpaceKind kind, int degree);

  SpaceKind kind() const { return kind_; }
  int degree() const { return degree_; }
  int label_length() const { return kind_ == SpaceKind::Tower ? degree_ : degree_ + 1; }
  const AlgebraData& algebra() const { return *algebra_; }
  bool same_as(const LoopSpace& other) const {
    return algebra_->id == other.algebra_->id && kind_ == other.kind_ &&
           degree_ == other.degree_;
  }

  int num_labels() const { return static_cast<int>(labels_.size()); }
  const MultiIndex& label(int l) const { return labels_.at(l); }
  int label_block(int l) const { return label_block_.at(l); }
  double label_weight(int l) const { return label_weight_.at(l); }
  std::optional<int> find_label(const MultiIndex& labels) const;
  int num_blocks() const { return static_cast<int>(block_labels_.size()); }
  const std::vector<int>& labels_in_block(int b) const { return block_labels_.at(b); }

  int num_loops() const { return num_loops_; }
  std::pair<int, int> loop(int index) const { return loops_.at(index); }
  bool valid(int bottom, int top) const { return label_block_[bottom] == label_block_[top]; }
  std::optional<int> loop_index(int bottom, int top) const;
  int loop_index_unchecked(int bottom, int top) const {
    return loop_offset_[bottom] + rank_in_block_[top];
  }

  std::string describe_label(int l) const;
  std::string describe_loop(int index) const;

 private:
  std::shared_ptr<const AlgebraData> algebra_;
  SpaceKind kind_;
  int degree_;
  std::vector<MultiIndex> labels_;
  std::map<MultiIndex, int> label_lookup_;
  std::vector<int> label_block_;
  std::vector<double> label_weight_;
  std::vector<std::vector<int>> block_labels_;
  std::vector<int> rank_in_block_;
  std::vector<int> loop_offset_;
  std::vector<std::pair<int, int>> loops_;
  int num_loops_ = 0;
};

struct TensorRecord {
  MultiIndex bottom;
  MultiIndex top;
  Complex value;
};

// Element of a loop space, stored as a sparse matrix with rows indexed by the
// bottom label and columns by the top label.
class Tensor {
 public:
  explicit Tensor(SpacePtr space);
  Tensor(SpacePtr space, SparseRows coeffs);

  static Tensor unit(SpacePtr space);
  static Tensor basis(SpacePtr space, int loop);
  static Tensor from_vector(SpacePtr space, const Eigen::VectorXcd& values);

  const SpacePtr& space() const { return space_; }
  int degree() const { return space_->degree(); }
  const SparseRows& matrix() const { return coeffs_; }
  Complex coeff(int bottom, int top) const { return coeffs_.coeff(bottom, top); }
  int nnz() const { return static_cast<int>(coeffs_.nonZeros()); }
  double max_abs() const;

  Eigen::VectorXcd to_vector() const;
  std::vector<TensorRecord> records() const;

  template <class F>
  void for_each(F&& f) const {
    for (int r = 0; r < coeffs_.outerSize(); ++r)
      for (SparseRows::InnerIterator it(coeffs_, r); it; ++it) f(r, static_cast<int>(it.col()), it.value());
  }

  Tensor operator+(const Tensor& other) const;
  Tensor operator-(const Tensor& other) const;
  Tensor operator*(const Tensor& other) const;
  Tensor operator*(Complex s) const;
  Tensor adjoint() const;

 private:
  void require_compatible(const Tensor& other, const char* what) const;
  void prune();

  SpacePtr space_;
  SparseRows coeffs_;
};

Tensor multiply(const Tensor& x, const Tensor& y);
Tensor involution(const Tensor& x);
Tensor unit(const IndexedAlgebra& alg, int n);

enum class FormKind { PhiTilde, Phi, Psi2, Psi };

struct WeightedForm {
  FormKind kind;
  int degree;
};

// delta^{1/2 -+ 1/2 - n}, the normalisation taking phi~_n to phi_n.
double phi_scale(int n, double delta);

std::vector<double> p_weights(const IndexedAlgebra& alg);

// Value of the form on each basis loop of its level.
Eigen::RowVectorXcd form_row(const IndexedAlgebra& alg, WeightedForm form);
Complex form_value(const IndexedAlgebra& alg, WeightedForm form, const Tensor& x);

// theta_n on a loop scales by q_(bottom)^4 q_(top)^{-4}.
Tensor theta(const Tensor& x);

// Matrix units (c_1,c_2), (c_3,c_4), ... read off the circular sequence
// c = (b_1..b_n, t_n..t_1) of a loop. Tower levels only.
std::vector<std::pair<int, int>> loop_factors(const LoopSpace& space, int bottom, int top);
std::optional<std::pair<int, int>> loop_from_factors(const LoopSpace& space,
                                                     const std::vector<std::pair<int, int>>& factors);

// <x, y> = phi~_n(y* x)
Complex gns_inner(const Tensor& x, const Tensor& y);

}  // namespace coplanar

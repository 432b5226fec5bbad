#include "coplanar/algebra.hpp"

#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>

#include "coplanar/parity.hpp"

namespace coplanar {

namespace {

std::atomic<int> next_algebra_id{1};

}  // namespace

IndexedAlgebra IndexedAlgebra::build(std::vector<int> block_sizes,
                                     std::vector<double> weights, double tol) {
  if (block_sizes.empty()) throw Error("algebra needs at least one block");
  int total = 0;
  for (int d : block_sizes) {
    if (d <= 0) throw Error("block sizes must be positive");
    total += d;
  }
  if (static_cast<int>(weights.size()) != total) {
    std::ostringstream msg;
    msg << "expected " << total << " weights (one per diagonal index), got " << weights.size();
    throw Error(msg.str());
  }
  auto data = std::make_shared<AlgebraData>();
  data->id = next_algebra_id++;
  data->block_sizes = block_sizes;
  for (int b = 0; b < static_cast<int>(block_sizes.size()); ++b)
    for (int k = 0; k < block_sizes[b]; ++k) data->block_of.push_back(b);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      std::ostringstream msg;
      msg << "weight " << i << " must be positive, got " << weights[i];
      throw Error(msg.str());
    }
    data->q.push_back(std::pow(weights[i], 0.25));
  }
  data->weights = std::move(weights);

  IndexedAlgebra alg;
  alg.data_ = data;
  alg.cache_ = std::make_shared<Cache>();
  double s = 0.0;
  for (int j : alg.block_indices(0)) s += 1.0 / data->weights[j];
  if (alg.normalization_residual() <= tol && alg.block_inverse_spread() <= tol * std::max(1.0, s))
    data->delta = std::sqrt(s);
  return alg;
}

std::vector<int> IndexedAlgebra::block_indices(int block) const {
  std::vector<int> out;
  for (int i = 0; i < num_indices(); ++i)
    if (data_->block_of[i] == block) out.push_back(i);
  return out;
}

int IndexedAlgebra::dim() const {
  int d = 0;
  for (int s : data_->block_sizes) d += s * s;
  return d;
}

double IndexedAlgebra::delta() const {
  if (!data_->delta) throw Error("weights do not define a delta-form");
  return *data_->delta;
}

double IndexedAlgebra::normalization_residual() const {
  double s = std::accumulate(data_->weights.begin(), data_->weights.end(), 0.0);
  return std::abs(s - 1.0);
}

double IndexedAlgebra::block_inverse_spread() const {
  std::vector<double> sums(num_blocks(), 0.0);
  for (int i = 0; i < num_indices(); ++i) sums[block_of(i)] += 1.0 / weight(i);
  double worst = 0.0;
  for (double s : sums) worst = std::max(worst, std::abs(s - sums[0]));
  return worst;
}

double IndexedAlgebra::loop_weight(const MultiIndex& labels) const {
  double w = 1.0;
  for (std::size_t p = 0; p < labels.size(); ++p) {
    int i = labels[p];
    if (i < 0 || i >= num_indices()) throw Error("unknown label " + std::to_string(i));
    w *= std::pow(q(i), parity::position_exponent(static_cast<int>(p) + 1));
  }
  return w;
}

SpacePtr IndexedAlgebra::level(int n) const {
  if (n < 0) throw Error("negative degree");
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto& slot = cache_->spaces[{0, n}];
  if (!slot) slot = std::make_shared<LoopSpace>(data_, SpaceKind::Tower, n);
  return slot;
}

SpacePtr IndexedAlgebra::second_row(int m) const {
  if (m < 0) throw Error("negative degree");
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto& slot = cache_->spaces[{1, m}];
  if (!slot) slot = std::make_shared<LoopSpace>(data_, SpaceKind::SecondRow, m);
  return slot;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<MultiIndex> tower_labels(const AlgebraData& a, int n) {
  std::vector<MultiIndex> current{MultiIndex{}};
  const int count = static_cast<int>(a.q.size());
  for (int pos = 1; pos <= n; ++pos) {
    std::vector<MultiIndex> next;
    for (const auto& prefix : current) {
      for (int l = 0; l < count; ++l) {
        if (parity::is_even(pos) && a.block_of[prefix.back()] != a.block_of[l]) continue;
        MultiIndex ext = prefix;
        ext.push_back(l);
        next.push_back(std::move(ext));
      }
    }
    current = std::move(next);
  }
  return current;
}

double weight_of(const AlgebraData& a, const MultiIndex& labels) {
  double w = 1.0;
  for (std::size_t p = 0; p < labels.size(); ++p)
    w *= std::pow(a.q[labels[p]], parity::position_exponent(static_cast<int>(p) + 1));
  return w;
}

}  // namespace

LoopSpace::LoopSpace(std::shared_ptr<const AlgebraData> algebra, SpaceKind kind, int degree)
    : algebra_(std::move(algebra)), kind_(kind), degree_(degree) {
  const AlgebraData& a = *algebra_;
  const int nb = static_cast<int>(a.block_sizes.size());
  auto block_in_tower = [&](const MultiIndex& l, int n) {
    if (n == 0 || parity::is_even(n)) return 0;
    return a.block_of[l[n - 1]];
  };
  int tower_blocks_for = 0;
  if (kind_ == SpaceKind::Tower) {
    labels_ = tower_labels(a, degree_);
    for (const auto& l : labels_) label_block_.push_back(block_in_tower(l, degree_));
    for (const auto& l : labels_) label_weight_.push_back(weight_of(a, l));
  } else {
    const int m = degree_;
    tower_blocks_for = (m == 0 || parity::is_even(m)) ? 1 : nb;
    auto tail = tower_labels(a, m);
    for (int head = 0; head < static_cast<int>(a.q.size()); ++head) {
      for (const auto& t : tail) {
        MultiIndex l{head};
        l.insert(l.end(), t.begin(), t.end());
        label_block_.push_back(a.block_of[head] * tower_blocks_for + block_in_tower(t, m));
        label_weight_.push_back(a.q[head] * weight_of(a, t));
        labels_.push_back(std::move(l));
      }
    }
  }
  int block_count = 0;
  for (int b : label_block_) block_count = std::max(block_count, b + 1);
  block_labels_.assign(block_count, {});
  rank_in_block_.resize(labels_.size());
  for (int l = 0; l < num_labels(); ++l) {
    auto& bucket = block_labels_[label_block_[l]];
    rank_in_block_[l] = static_cast<int>(bucket.size());
    bucket.push_back(l);
    label_lookup_[labels_[l]] = l;
  }
  loop_offset_.resize(labels_.size());
  for (int b = 0; b < num_labels(); ++b) {
    loop_offset_[b] = static_cast<int>(loops_.size());
    for (int t : block_labels_[label_block_[b]]) loops_.emplace_back(b, t);
  }
  num_loops_ = static_cast<int>(loops_.size());
}

std::optional<int> LoopSpace::find_label(const MultiIndex& labels) const {
  auto it = label_lookup_.find(labels);
  if (it == label_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> LoopSpace::loop_index(int bottom, int top) const {
  if (bottom < 0 || top < 0 || bottom >= num_labels() || top >= num_labels()) return std::nullopt;
  if (!valid(bottom, top)) return std::nullopt;
  return loop_index_unchecked(bottom, top);
}

std::string LoopSpace::describe_label(int l) const {
  std::ostringstream out;
  out << "(";
  const auto& lab = labels_.at(l);
  for (std::size_t p = 0; p < lab.size(); ++p) out << (p ? "," : "") << lab[p];
  out << ")";
  return out.str();
}

std::string LoopSpace::describe_loop(int index) const {
  auto [b, t] = loops_.at(index);
  return describe_label(t) + "/" + describe_label(b);
}

// ---------------------------------------------------------------------------

Tensor::Tensor(SpacePtr space) : space_(std::move(space)) {
  coeffs_.resize(space_->num_labels(), space_->num_labels());
}

Tensor::Tensor(SpacePtr space, SparseRows coeffs) : space_(std::move(space)), coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() != space_->num_labels() || coeffs_.cols() != space_->num_labels())
    throw Error("coefficient matrix does not match the loop space");
  prune();
  for_each([&](int b, int t, Complex) {
    if (!space_->valid(b, t)) throw Error("coefficient on invalid loop " + space_->describe_label(t) + "/" + space_->describe_label(b));
  });
  coeffs_.makeCompressed();
}

Tensor Tensor::unit(SpacePtr space) {
  std::vector<Eigen::Triplet<Complex>> trip;
  for (int l = 0; l < space->num_labels(); ++l) trip.emplace_back(l, l, 1.0);
  SparseRows m(space->num_labels(), space->num_labels());
  m.setFromTriplets(trip.begin(), trip.end());
  return Tensor(std::move(space), std::move(m));
}

Tensor Tensor::basis(SpacePtr space, int loop) {
  auto [b, t] = space->loop(loop);
  SparseRows m(space->num_labels(), space->num_labels());
  m.insert(b, t) = 1.0;
  return Tensor(std::move(space), std::move(m));
}

Tensor Tensor::from_vector(SpacePtr space, const Eigen::VectorXcd& values) {
  if (values.size() != space->num_loops()) throw Error("vector length does not match the loop count");
  std::vector<Eigen::Triplet<Complex>> trip;
  for (int k = 0; k < values.size(); ++k) {
    if (std::abs(values[k]) <= kPruneThreshold) continue;
    auto [b, t] = space->loop(k);
    trip.emplace_back(b, t, values[k]);
  }
  SparseRows m(space->num_labels(), space->num_labels());
  m.setFromTriplets(trip.begin(), trip.end());
  return Tensor(std::move(space), std::move(m));
}

double Tensor::max_abs() const {
  double m = 0.0;
  for_each([&](int, int, Complex v) { m = std::max(m, std::abs(v)); });
  return m;
}

Eigen::VectorXcd Tensor::to_vector() const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space_->num_loops());
  for_each([&](int b, int t, Complex c) { v[space_->loop_index_unchecked(b, t)] = c; });
  return v;
}

std::vector<TensorRecord> Tensor::records() const {
  std::vector<TensorRecord> out;
  for_each([&](int b, int t, Complex c) { out.push_back({space_->label(b), space_->label(t), c}); });
  return out;
}

void Tensor::require_compatible(const Tensor& other, const char* what) const {
  if (!space_->same_as(*other.space_))
    throw Error(std::string(what) + ": operands live in different loop spaces (degrees " +
                std::to_string(degree()) + " and " + std::to_string(other.degree()) + ")");
}

void Tensor::prune() {
  coeffs_.prune([](const int&, const int&, const Complex& v) { return std::abs(v) > kPruneThreshold; });
}

Tensor Tensor::operator+(const Tensor& other) const {
  require_compatible(other, "add");
  return Tensor(space_, SparseRows(coeffs_ + other.coeffs_));
}

Tensor Tensor::operator-(const Tensor& other) const {
  require_compatible(other, "subtract");
  return Tensor(space_, SparseRows(coeffs_ - other.coeffs_));
}

Tensor Tensor::operator*(const Tensor& other) const {
  require_compatible(other, "multiply");
  return Tensor(space_, SparseRows(coeffs_ * other.coeffs_));
}

Tensor Tensor::operator*(Complex s) const { return Tensor(space_, SparseRows(coeffs_ * s)); }

Tensor Tensor::adjoint() const { return Tensor(space_, SparseRows(coeffs_.adjoint())); }

Tensor multiply(const Tensor& x, const Tensor& y) { return x * y; }
Tensor involution(const Tensor& x) { return x.adjoint(); }
Tensor unit(const IndexedAlgebra& alg, int n) { return Tensor::unit(alg.level(n)); }

// ---------------------------------------------------------------------------

double phi_scale(int n, double delta) {
  double exponent = 0.5 - 0.5 * parity::pm(n) - n;
  return std::pow(delta, exponent);
}

std::vector<double> p_weights(const IndexedAlgebra& alg) {
  const double delta = alg.delta();
  std::vector<double> block_mass(alg.num_blocks(), 0.0);
  for (int i = 0; i < alg.num_indices(); ++i) block_mass[alg.block_of(i)] += alg.weight(i);
  std::vector<double> p;
  for (int i = 0; i < alg.num_indices(); ++i)
    p.push_back(std::pow(delta, -0.5) / alg.q(i) * std::pow(block_mass[alg.block_of(i)], 0.25));
  return p;
}

Eigen::RowVectorXcd form_row(const IndexedAlgebra& alg, WeightedForm form) {
  const int n = form.degree;
  if ((form.kind == FormKind::Psi && n != 1) || (form.kind == FormKind::Psi2 && n != 2))
    throw Error("form degree mismatch");
  SpacePtr space = alg.level(n);
  Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(space->num_loops());
  std::vector<double> p;
  if (form.kind == FormKind::Psi) p = p_weights(alg);
  for (int l = 0; l < space->num_labels(); ++l) {
    const int k = space->loop_index_unchecked(l, l);
    const double w4 = std::pow(space->label_weight(l), 4);
    switch (form.kind) {
      case FormKind::PhiTilde: row[k] = w4; break;
      case FormKind::Phi: row[k] = phi_scale(n, alg.delta()) * w4; break;
      case FormKind::Psi2: {
        const auto& lab = space->label(l);
        double d = alg.delta();
        row[k] = std::pow(d, -2) / alg.weight(lab[0]) * alg.weight(lab[1]);
        break;
      }
      case FormKind::Psi: row[k] = std::pow(p[space->label(l)[0]], 4); break;
    }
  }
  return row;
}

Complex form_value(const IndexedAlgebra& alg, WeightedForm form, const Tensor& x) {
  if (x.space()->kind() != SpaceKind::Tower || x.degree() != form.degree ||
      x.space()->algebra().id != alg.id())
    throw Error("form degree mismatch");
  Eigen::RowVectorXcd row = form_row(alg, form);
  return (row * x.to_vector())(0);
}

Tensor theta(const Tensor& x) {
  const auto& space = *x.space();
  std::vector<Eigen::Triplet<Complex>> trip;
  x.for_each([&](int b, int t, Complex c) {
    trip.emplace_back(b, t, c * std::pow(space.label_weight(b) / space.label_weight(t), 4));
  });
  SparseRows m(space.num_labels(), space.num_labels());
  m.setFromTriplets(trip.begin(), trip.end());
  return Tensor(x.space(), std::move(m));
}

std::vector<std::pair<int, int>> loop_factors(const LoopSpace& space, int bottom, int top) {
  const int n = space.degree();
  const auto& b = space.label(bottom);
  const auto& t = space.label(top);
  std::vector<int> c(b.begin(), b.end());
  for (int p = n - 1; p >= 0; --p) c.push_back(t[p]);
  std::vector<std::pair<int, int>> out;
  for (int p = 0; p < n; ++p) out.emplace_back(c[2 * p], c[2 * p + 1]);
  return out;
}

std::optional<std::pair<int, int>> loop_from_factors(const LoopSpace& space,
                                                     const std::vector<std::pair<int, int>>& factors) {
  const int n = space.degree();
  if (static_cast<int>(factors.size()) != n) return std::nullopt;
  std::vector<int> c;
  for (auto [x, y] : factors) {
    c.push_back(x);
    c.push_back(y);
  }
  MultiIndex b(c.begin(), c.begin() + n);
  MultiIndex t(c.rbegin(), c.rbegin() + n);
  auto bl = space.find_label(b);
  auto tl = space.find_label(t);
  if (!bl || !tl || !space.valid(*bl, *tl)) return std::nullopt;
  return std::make_pair(*bl, *tl);
}

Complex gns_inner(const Tensor& x, const Tensor& y) {
  if (!x.space()->same_as(*y.space())) throw Error("inner product of tensors from different spaces");
  const auto& space = *x.space();
  Complex s = 0.0;
  x.for_each([&](int b, int t, Complex c) {
    s += std::conj(y.coeff(b, t)) * c * std::pow(space.label_weight(t), 4);
  });
  return s;
}

}  // namespace coplanar

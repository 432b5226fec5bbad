#include "coplanar/coaction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace coplanar {

namespace {

double hnorm(const HElement& x) { return x.size() ? x.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

HMatrix::HMatrix(SpacePtr space, int hdim) : space_(std::move(space)), hdim_(hdim) {
  cols_.resize(space_->num_loops());
}

void HMatrix::add(int row, int col, const HElement& value) {
  auto& column = cols_.at(col);
  for (auto& e : column)
    if (e.row == row) {
      e.value += value;
      return;
    }
  column.push_back({row, value});
}

void HMatrix::finalize() {
  for (auto& column : cols_) {
    column.erase(std::remove_if(column.begin(), column.end(),
                                [](const HEntry& e) { return hnorm(e.value) <= kPruneThreshold; }),
                 column.end());
    std::sort(column.begin(), column.end(), [](const HEntry& a, const HEntry& b) { return a.row < b.row; });
  }
}

const HElement* HMatrix::find(int row, int col) const {
  const auto& column = cols_.at(col);
  auto it = std::lower_bound(column.begin(), column.end(), row,
                             [](const HEntry& e, int r) { return e.row < r; });
  if (it == column.end() || it->row != row) return nullptr;
  return &it->value;
}

HElement HMatrix::value(int row, int col) const {
  const HElement* v = find(row, col);
  return v ? *v : HElement::Zero(hdim_);
}

std::size_t HMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : cols_) n += c.size();
  return n;
}

std::vector<SparseCols> HMatrix::components() const {
  const int n = size();
  std::vector<std::vector<Eigen::Triplet<Complex>>> trips(hdim_);
  for (int col = 0; col < n; ++col)
    for (const auto& e : cols_[col])
      for (int a = 0; a < hdim_; ++a)
        if (e.value[a] != Complex(0.0)) trips[a].emplace_back(e.row, col, e.value[a]);
  std::vector<SparseCols> out;
  for (int a = 0; a < hdim_; ++a) {
    SparseCols m(n, n);
    m.setFromTriplets(trips[a].begin(), trips[a].end());
    out.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------

CoactionTable::CoactionTable(IndexedAlgebra alg, std::shared_ptr<const HopfData> hopf, int degree,
                             HMatrix coefficients)
    : alg_(std::move(alg)), hopf_(std::move(hopf)), degree_(degree), coeffs_(std::move(coefficients)) {
  if (!coeffs_.space()->same_as(*alg_.level(degree_))) throw Error("coefficient table is not over the requested level");
  if (coeffs_.hdim() != hopf_->dim()) throw Error("coefficient entries do not match the Hopf algebra dimension");
  coeffs_.finalize();
}

namespace {

double loop_normalization(const LoopSpace& s, int out, int in) {
  auto [k, l] = s.loop(out);
  auto [i, j] = s.loop(in);
  return s.label_weight(i) * s.label_weight(j) / (s.label_weight(k) * s.label_weight(l));
}

}  // namespace

double CoactionTable::normalization(int out, int in) const { return loop_normalization(*space(), out, in); }

HMatrix CoactionTable::to_map() const {
  HMatrix v(space(), hopf_->dim());
  for (int y = 0; y < coeffs_.size(); ++y)
    for (const auto& e : coeffs_.column(y)) v.add(e.row, y, normalization(e.row, y) * e.value);
  v.finalize();
  return v;
}

CoactionTable CoactionTable::from_map(IndexedAlgebra alg, std::shared_ptr<const HopfData> hopf, int degree,
                                      const HMatrix& map) {
  HMatrix V(map.space(), map.hdim());
  for (int y = 0; y < map.size(); ++y)
    for (const auto& e : map.column(y)) V.add(e.row, y, e.value / loop_normalization(*map.space(), e.row, y));
  return CoactionTable(std::move(alg), std::move(hopf), degree, std::move(V));
}

CoactionTable CoactionTable::perturbed(int out, int in, const HElement& delta) const {
  if (out < 0 || in < 0 || out >= coeffs_.size() || in >= coeffs_.size()) throw Error("perturbation outside the table");
  HMatrix V = coeffs_;
  V.add(out, in, delta);
  CoactionTable c(alg_, hopf_, degree_, std::move(V));
  c.action_ = std::nullopt;
  return c;
}

std::string CoactionTable::describe(int out, int in) const {
  const auto& s = *space();
  auto [k, l] = s.loop(out);
  auto [i, j] = s.loop(in);
  return "k=" + s.describe_label(k) + " l=" + s.describe_label(l) + " i=" + s.describe_label(i) +
         " j=" + s.describe_label(j);
}

// ---------------------------------------------------------------------------

Eigen::MatrixXcd automorphism_from_permutation(const IndexedAlgebra& alg, const std::vector<int>& perm) {
  const int n = alg.num_indices();
  if (static_cast<int>(perm.size()) != n) throw Error("permutation has the wrong length");
  std::vector<int> seen(n, 0);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]++) throw Error("not a permutation of the index set");
  }
  SpacePtr a = alg.level(1);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(a->num_loops(), a->num_loops());
  for (int y = 0; y < a->num_loops(); ++y) {
    auto [i, j] = a->loop(y);
    auto x = a->loop_index(perm[i], perm[j]);
    if (!x) throw Error("permutation does not respect the block structure");
    m(*x, y) = 1.0;
  }
  return m;
}

Eigen::MatrixXcd automorphism_from_unitary(const IndexedAlgebra& alg, const Eigen::MatrixXcd& u) {
  const int n = alg.num_indices();
  if (u.rows() != n || u.cols() != n) throw Error("unitary has the wrong size");
  if ((u * u.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9)
    throw Error("matrix is not unitary");
  SpacePtr a = alg.level(1);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(a->num_loops(), a->num_loops());
  // U e_ij U* = sum_{k,l} U_ki conj(U_lj) e_kl
  for (int y = 0; y < a->num_loops(); ++y) {
    auto [i, j] = a->loop(y);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        Complex c = u(k, i) * std::conj(u(l, j));
        if (std::abs(c) <= kPruneThreshold) continue;
        auto x = a->loop_index(k, l);
        if (!x) throw Error("unitary is not block diagonal");
        m(*x, y) += c;
      }
  }
  return m;
}

namespace {

Tensor image(const SpacePtr& a, const Eigen::MatrixXcd& m, int y) {
  return Tensor::from_vector(a, m.col(y));
}

}  // namespace

CoactionTable from_group_action(const IndexedAlgebra& alg, const Group& group,
                                const std::vector<Eigen::MatrixXcd>& maps, double tol, bool require_invariant) {
  SpacePtr a = alg.level(1);
  const int n = a->num_loops();
  const int order = group.order();
  if (static_cast<int>(maps.size()) != order) throw Error("need one automorphism per group element");
  Eigen::RowVectorXcd phi = form_row(alg, {FormKind::PhiTilde, 1});
  for (int g = 0; g < order; ++g) {
    const auto& m = maps[g];
    auto fail = [&](const std::string& what) {
      throw Error("group element " + std::to_string(g) + ": " + what);
    };
    if (m.rows() != n || m.cols() != n) fail("automorphism matrix has the wrong size");
    for (int x = 0; x < n; ++x) {
      Tensor ax = image(a, m, x);
      int xs_index = a->loop_index_unchecked(a->loop(x).second, a->loop(x).first);
      if ((image(a, m, xs_index) - ax.adjoint()).max_abs() > tol) fail("not *-preserving");
      for (int y = 0; y < n; ++y) {
        Tensor prod = Tensor::basis(a, x) * Tensor::basis(a, y);
        Eigen::VectorXcd lhs = m * prod.to_vector();
        Tensor rhs = ax * image(a, m, y);
        if ((lhs - rhs.to_vector()).cwiseAbs().maxCoeff() > tol) fail("not multiplicative");
      }
    }
    Eigen::VectorXcd one = Tensor::unit(a).to_vector();
    if ((m * one - one).cwiseAbs().maxCoeff() > tol) fail("not unital");
    if (require_invariant && (phi * m - phi).cwiseAbs().maxCoeff() > tol) fail("does not preserve phi");
    for (int h = 0; h < order; ++h)
      if ((maps[group.mul(g, h)] - m * maps[h]).cwiseAbs().maxCoeff() > tol)
        fail("action is not a homomorphism (with element " + std::to_string(h) + ")");
  }
  auto hopf = std::make_shared<const HopfData>(HopfData::function_algebra(group));
  HMatrix v(a, order);
  for (int g = 0; g < order; ++g)
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x)
        if (std::abs(maps[g](x, y)) > kPruneThreshold) v.add(x, y, maps[g](x, y) * hopf->basis(g));
  v.finalize();
  CoactionTable c = CoactionTable::from_map(alg, hopf, 1, v);
  c.set_group_action({group, maps});
  return c;
}

CoactionTable translation_coaction(std::shared_ptr<const HopfData> hopf, double tol) {
  const int d = hopf->dim();
  if (!hopf->commutative(tol))
    throw Error("translation coaction needs a commutative Hopf algebra; matrix units of a non-commutative H are not computed");
  // Minimal projections from the eigenvectors of multiplication by a generic element.
  HElement generic(d);
  for (int a = 0; a < d; ++a) generic[a] = 1.0 / (a + 3.14159265358979);
  Eigen::MatrixXcd left(d, d);
  for (int b = 0; b < d; ++b) left.col(b) = hopf->multiply(generic, hopf->basis(b));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(left);
  std::vector<HElement> proj;
  for (int k = 0; k < d; ++k) {
    HElement p = es.eigenvectors().col(k);
    HElement p2 = hopf->multiply(p, p);
    int pivot = 0;
    p.cwiseAbs().maxCoeff(&pivot);
    if (std::abs(p2[pivot]) < 1e-12) throw Error("translation coaction: degenerate spectral decomposition");
    Complex scale = p[pivot] / p2[pivot];
    proj.push_back(p * scale);
  }
  auto pivot_of = [](const HElement& p) {
    int idx = 0;
    p.cwiseAbs().maxCoeff(&idx);
    return idx;
  };
  std::sort(proj.begin(), proj.end(), [&](const HElement& x, const HElement& y) { return pivot_of(x) < pivot_of(y); });
  HElement sum = HElement::Zero(d);
  for (int k = 0; k < d; ++k) {
    sum += proj[k];
    if (hnorm(hopf->star(proj[k]) - proj[k]) > 1e-8) throw Error("translation coaction: projections are not self-adjoint");
    for (int l = 0; l < d; ++l) {
      HElement prod = hopf->multiply(proj[k], proj[l]);
      HElement want = (k == l) ? proj[k] : HElement::Zero(d);
      if (hnorm(prod - want) > 1e-8) throw Error("translation coaction: projections are not orthogonal idempotents");
    }
  }
  if (hnorm(sum - hopf->unit()) > 1e-8) throw Error("translation coaction: projections do not sum to one");

  HFunctional h = haar(*hopf);
  std::vector<double> weights;
  for (const auto& p : proj) weights.push_back(h(p).real());
  IndexedAlgebra alg = IndexedAlgebra::build(std::vector<int>(d, 1), weights);

  // Coordinates in the projection basis: e_b = sum_j coords(j, b) P_j.
  Eigen::MatrixXcd basis_change(d, d);
  for (int k = 0; k < d; ++k) basis_change.col(k) = proj[k];
  Eigen::MatrixXcd coords = basis_change.fullPivLu().solve(Eigen::MatrixXcd::Identity(d, d));

  SpacePtr a = alg.level(1);
  HMatrix v(a, d);
  for (int i = 0; i < d; ++i) {
    HPair D = hopf->coproduct(proj[i]);
    Eigen::MatrixXcd first = coords * D;  // (j, c): coefficient of P_j (x) e_c
    int y = a->loop_index_unchecked(i, i);
    for (int j = 0; j < d; ++j) {
      HElement row = first.row(j).transpose();
      if (hnorm(row) > kPruneThreshold) v.add(a->loop_index_unchecked(j, j), y, row);
    }
  }
  v.finalize();
  CoactionTable out = CoactionTable::from_map(alg, hopf, 1, v);
  if (hopf->kind() == HopfKind::FunctionAlgebra && hopf->group()) {
    // right translation, alpha_k(delta_g) = delta_{g k^{-1}}
    const Group& g = *hopf->group();
    GroupAction act{g, {}};
    for (int k = 0; k < g.order(); ++k) {
      std::vector<int> perm(d);
      for (int x = 0; x < d; ++x) perm[x] = g.mul(x, g.inverse(k));
      act.maps.push_back(automorphism_from_permutation(alg, perm));
    }
    out.set_group_action(std::move(act));
  }
  return out;
}

CoactionTable explicit_coaction(const IndexedAlgebra& alg, std::shared_ptr<const HopfData> hopf,
                                const std::vector<ExplicitEntry>& entries) {
  SpacePtr a = alg.level(1);
  HMatrix V(a, hopf->dim());
  for (const auto& e : entries) {
    const int n = alg.num_indices();
    for (int idx : {e.k, e.l, e.i, e.j})
      if (idx < 0 || idx >= n) throw Error("explicit coaction: label out of range");
    auto out = a->loop_index(e.k, e.l);
    auto in = a->loop_index(e.i, e.j);
    if (!out || !in) throw Error("explicit coaction: entry on a nonexistent matrix unit");
    if (e.value.size() != hopf->dim()) throw Error("explicit coaction: h_coeffs has the wrong length");
    V.add(*out, *in, e.value);
  }
  return CoactionTable(alg, std::move(hopf), 1, std::move(V));
}

// ---------------------------------------------------------------------------

namespace {

struct Context {
  const CoactionTable& c;
  const LoopSpace& s;
  const HopfData& h;
  const HMatrix& V;
  Context(const CoactionTable& table)
      : c(table), s(*table.space()), h(table.hopf()), V(table.coefficients()) {}
  double w(int label) const { return s.label_weight(label); }
  int loop(int b, int t) const { return s.loop_index_unchecked(b, t); }
  int transpose(int x) const {
    auto [b, t] = s.loop(x);
    return s.loop_index_unchecked(t, b);
  }
  bool diagonal(int x) const {
    auto [b, t] = s.loop(x);
    return b == t;
  }
};

Residual check_epsilon(const Context& ctx, const HMatrix& V) {
  Residual r;
  for (int y = 0; y < V.size(); ++y) {
    bool saw_diag = false;
    for (const auto& e : V.column(y)) {
      double want = (e.row == y) ? 1.0 : 0.0;
      saw_diag = saw_diag || e.row == y;
      r.update(std::abs(ctx.h.counit(e.value) - want), [&] { return ctx.c.describe(e.row, y); });
    }
    if (!saw_diag) r.update(1.0, [&] { return ctx.c.describe(y, y); });
  }
  return r;
}

// Delta V[x,y] = sum_z V[x,z] (x) V[z,y]
Residual check_delta(const Context& ctx, const HMatrix& V) {
  Residual r;
  const int d = ctx.h.dim();
  for (int y = 0; y < V.size(); ++y) {
    std::map<int, HPair> acc;
    for (const auto& zy : V.column(y))
      for (const auto& xz : V.column(zy.row)) {
        auto it = acc.try_emplace(xz.row, HPair::Zero(d, d)).first;
        it->second += xz.value * zy.value.transpose();
      }
    for (const auto& xy : V.column(y)) {
      auto it = acc.try_emplace(xy.row, HPair::Zero(d, d)).first;
      it->second -= ctx.h.coproduct(xy.value);
    }
    for (const auto& [x, m] : acc) r.update(m.cwiseAbs().maxCoeff(), [&] { return ctx.c.describe(x, y); });
  }
  return r;
}

Residual check_star(const Context& ctx) {
  Residual r;
  for (int y = 0; y < ctx.V.size(); ++y)
    for (const auto& e : ctx.V.column(y)) {
      HElement other = ctx.V.value(ctx.transpose(e.row), ctx.transpose(y));
      r.update(hnorm(ctx.h.star(e.value) - other), [&] { return ctx.c.describe(e.row, y); });
    }
  return r;
}

// sum_i w_i^2 V[(k,l),(i,i)] = delta_kl w_k^2
Residual check_u_circ(const Context& ctx) {
  Residual r;
  const int d = ctx.h.dim();
  std::map<int, HElement> acc;
  for (int i = 0; i < ctx.s.num_labels(); ++i) {
    int y = ctx.loop(i, i);
    for (const auto& e : ctx.V.column(y)) {
      auto it = acc.try_emplace(e.row, HElement::Zero(d)).first;
      it->second += std::pow(ctx.w(i), 2) * e.value;
    }
  }
  for (int k = 0; k < ctx.s.num_labels(); ++k) {
    auto it = acc.try_emplace(ctx.loop(k, k), HElement::Zero(d)).first;
    it->second -= std::pow(ctx.w(k), 2) * ctx.h.unit();
  }
  for (const auto& [x, v] : acc) r.update(hnorm(v), [&] { return "output " + ctx.s.describe_loop(x); });
  return r;
}

// sum_i w_i^2 V[(i,i),(k,l)] = delta_kl w_k^2
Residual check_circ_u(const Context& ctx) {
  Residual r;
  for (int y = 0; y < ctx.V.size(); ++y) {
    HElement acc = HElement::Zero(ctx.h.dim());
    for (const auto& e : ctx.V.column(y))
      if (ctx.diagonal(e.row)) acc += std::pow(ctx.w(ctx.s.loop(e.row).first), 2) * e.value;
    if (ctx.diagonal(y)) acc -= std::pow(ctx.w(ctx.s.loop(y).first), 2) * ctx.h.unit();
    r.update(hnorm(acc), [&] { return "input " + ctx.s.describe_loop(y); });
  }
  return r;
}

// sum_s w_s^{-2} V[(k,s),(g,h)] V[(s,l),(i,j)] = delta_hi w_i^{-2} V[(k,l),(g,j)]
Residual check_circ_m(const Context& ctx) {
  Residual r;
  const auto& s = ctx.s;
  const int d = ctx.h.dim();
  // Entries grouped by the bottom label of their output loop.
  struct Hit {
    int col, top;
    const HElement* value;
  };
  std::vector<std::vector<Hit>> by_bottom(s.num_labels());
  for (int y = 0; y < ctx.V.size(); ++y)
    for (const auto& e : ctx.V.column(y)) {
      auto [b, t] = s.loop(e.row);
      by_bottom[b].push_back({y, t, &e.value});
    }
  for (int y1 = 0; y1 < ctx.V.size(); ++y1) {
    auto [g, h] = s.loop(y1);
    std::map<std::pair<int, int>, HElement> acc;  // (y2, output loop)
    for (const auto& e : ctx.V.column(y1)) {
      auto [k, sl] = s.loop(e.row);
      double scale = std::pow(ctx.w(sl), -2);
      for (const auto& hit : by_bottom[sl]) {
        auto key = std::make_pair(hit.col, ctx.loop(k, hit.top));
        auto it = acc.try_emplace(key, HElement::Zero(d)).first;
        it->second += scale * ctx.h.multiply(e.value, *hit.value);
      }
    }
    for (int j : s.labels_in_block(s.label_block(h))) {
      int y2 = ctx.loop(h, j);
      int gj = ctx.loop(g, j);
      for (const auto& e : ctx.V.column(gj)) {
        auto it = acc.try_emplace({y2, e.row}, HElement::Zero(d)).first;
        it->second -= std::pow(ctx.w(h), -2) * e.value;
      }
    }
    for (const auto& [key, v] : acc)
      r.update(hnorm(v), [&] {
        return "input1 " + s.describe_loop(y1) + " input2 " + s.describe_loop(key.first) + " output " +
               s.describe_loop(key.second);
      });
  }
  return r;
}

// sum_s w_s^{-2} V[(k,h),(g,s)] V[(i,l),(s,j)] = delta_hi w_i^{-2} V[(k,l),(g,j)]
Residual check_m_circ(const Context& ctx) {
  Residual r;
  const auto& s = ctx.s;
  const int d = ctx.h.dim();
  for (int gj = 0; gj < ctx.V.size(); ++gj) {
    auto [g, j] = s.loop(gj);
    std::map<std::pair<int, int>, HElement> acc;  // (x1, x2)
    for (int sl : s.labels_in_block(s.label_block(g))) {
      double scale = std::pow(ctx.w(sl), -2);
      for (const auto& a : ctx.V.column(ctx.loop(g, sl)))
        for (const auto& b : ctx.V.column(ctx.loop(sl, j))) {
          auto it = acc.try_emplace({a.row, b.row}, HElement::Zero(d)).first;
          it->second += scale * ctx.h.multiply(a.value, b.value);
        }
    }
    for (const auto& e : ctx.V.column(gj)) {
      auto [k, l] = s.loop(e.row);
      for (int i : s.labels_in_block(s.label_block(k))) {
        auto it = acc.try_emplace({ctx.loop(k, i), ctx.loop(i, l)}, HElement::Zero(d)).first;
        it->second -= std::pow(ctx.w(i), -2) * e.value;
      }
    }
    for (const auto& [key, v] : acc)
      r.update(hnorm(v), [&] {
        return "input " + s.describe_loop(gj) + " outputs " + s.describe_loop(key.first) + " " +
               s.describe_loop(key.second);
      });
  }
  return r;
}

// S V[(k,l),(i,j)] = w_k^2 w_i^{-2} w_j^2 w_l^{-2} V[(j,i),(l,k)]
Residual check_antipode(const Context& ctx) {
  Residual r;
  const auto& s = ctx.s;
  auto eval = [&](int x, int y) {
    auto [k, l] = s.loop(x);
    auto [i, j] = s.loop(y);
    double f = std::pow(ctx.w(k) * ctx.w(j) / (ctx.w(i) * ctx.w(l)), 2);
    HElement lhs = ctx.h.antipode(ctx.V.value(x, y));
    HElement rhs = f * ctx.V.value(ctx.loop(j, i), ctx.loop(l, k));
    r.update(hnorm(lhs - rhs), [&] { return ctx.c.describe(x, y); });
  };
  for (int y = 0; y < ctx.V.size(); ++y)
    for (const auto& e : ctx.V.column(y)) {
      eval(e.row, y);
      auto [k, l] = s.loop(e.row);
      auto [i, j] = s.loop(y);
      eval(ctx.loop(j, i), ctx.loop(l, k));
    }
  return r;
}

Residual check_phi_direct(const Context& ctx) {
  Residual r;
  HMatrix v = ctx.c.to_map();
  for (int y = 0; y < v.size(); ++y) {
    HElement acc = HElement::Zero(ctx.h.dim());
    for (const auto& e : v.column(y))
      if (ctx.diagonal(e.row)) acc += std::pow(ctx.w(ctx.s.loop(e.row).first), 4) * e.value;
    if (ctx.diagonal(y)) acc -= std::pow(ctx.w(ctx.s.loop(y).first), 4) * ctx.h.unit();
    r.update(hnorm(acc), [&] { return "input " + ctx.s.describe_loop(y); });
  }
  return r;
}

}  // namespace

CheckList check_axioms(const CoactionTable& c, double tol) {
  Context ctx(c);
  const int n = c.degree();
  return {make_record("coaction", "epsilon", n, check_epsilon(ctx, ctx.V), tol),
          make_record("coaction", "Delta", n, check_delta(ctx, ctx.V), tol),
          make_record("coaction", "star", n, check_star(ctx), tol),
          make_record("coaction", "u_circ", n, check_u_circ(ctx), tol),
          make_record("coaction", "circ_m", n, check_circ_m(ctx), tol)};
}

CheckList check_operator_axioms(const CoactionTable& c, double tol) {
  Context ctx(c);
  const auto& s = ctx.s;
  const HopfData& h = ctx.h;
  const int d = h.dim();
  const int n = s.num_loops();
  HMatrix v = c.to_map();
  std::vector<SparseCols> comp = v.components();

  Residual counit;
  {
    SparseCols sum(n, n);
    for (int a = 0; a < d; ++a) sum += h.constants().counit[a] * comp[a];
    SparseCols id(n, n);
    id.setIdentity();
    SparseCols diff = sum - id;
    for (int col = 0; col < diff.outerSize(); ++col)
      for (SparseCols::InnerIterator it(diff, col); it; ++it)
        counit.update(std::abs(it.value()), [&] { return s.describe_loop(col); });
  }

  Residual coassoc;
  for (int b = 0; b < d; ++b)
    for (int e = 0; e < d; ++e) {
      SparseCols lhs(n, n);
      for (int a = 0; a < d; ++a) {
        Complex coef = h.constants().comult[a](b, e);
        if (coef != Complex(0.0)) lhs += coef * comp[a];
      }
      SparseCols diff = lhs - SparseCols(comp[b] * comp[e]);
      for (int col = 0; col < diff.outerSize(); ++col)
        for (SparseCols::InnerIterator it(diff, col); it; ++it)
          coassoc.update(std::abs(it.value()), [&] {
            return s.describe_loop(col) + " component " + h.label(b) + "," + h.label(e);
          });
    }

  Residual mult;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      std::map<int, HElement> acc;
      for (const auto& a : v.column(x))
        for (const auto& b : v.column(y)) {
          auto [ab, at] = s.loop(a.row);
          auto [bb, bt] = s.loop(b.row);
          if (at != bb) continue;
          auto it = acc.try_emplace(ctx.loop(ab, bt), HElement::Zero(d)).first;
          it->second += h.multiply(a.value, b.value);
        }
      auto [xb, xt] = s.loop(x);
      auto [yb, yt] = s.loop(y);
      if (xt == yb)
        for (const auto& e : v.column(ctx.loop(xb, yt))) {
          auto it = acc.try_emplace(e.row, HElement::Zero(d)).first;
          it->second -= e.value;
        }
      for (const auto& [z, val] : acc)
        mult.update(hnorm(val), [&] { return s.describe_loop(x) + " * " + s.describe_loop(y); });
    }

  Residual invol;
  for (int x = 0; x < n; ++x) {
    std::map<int, HElement> acc;
    for (const auto& e : v.column(ctx.transpose(x))) acc.try_emplace(e.row, HElement::Zero(d)).first->second += e.value;
    for (const auto& e : v.column(x))
      acc.try_emplace(ctx.transpose(e.row), HElement::Zero(d)).first->second -= h.star(e.value);
    for (const auto& [z, val] : acc) invol.update(hnorm(val), [&] { return s.describe_loop(x); });
  }

  Residual unital;
  {
    std::map<int, HElement> acc;
    for (int l = 0; l < s.num_labels(); ++l) {
      for (const auto& e : v.column(ctx.loop(l, l)))
        acc.try_emplace(e.row, HElement::Zero(d)).first->second += e.value;
      acc.try_emplace(ctx.loop(l, l), HElement::Zero(d)).first->second -= h.unit();
    }
    for (const auto& [z, val] : acc) unital.update(hnorm(val), [&] { return s.describe_loop(z); });
  }

  const int deg = c.degree();
  return {make_record("coaction", "op_counit", deg, counit, tol),
          make_record("coaction", "op_coassociative", deg, coassoc, tol),
          make_record("coaction", "op_multiplicative", deg, mult, tol),
          make_record("coaction", "op_involutive", deg, invol, tol),
          make_record("coaction", "op_unital", deg, unital, tol)};
}

CheckList check_invariance(const CoactionTable& c, double tol) {
  Context ctx(c);
  const int n = c.degree();
  CheckList out{make_record("invariance", "S", n, check_antipode(ctx), tol),
                make_record("invariance", "circ_u", n, check_circ_u(ctx), tol),
                make_record("invariance", "m_circ", n, check_m_circ(ctx), tol),
                make_record("invariance", "phi_invariance", n, check_phi_direct(ctx), tol)};
  bool first = out[0].pass;
  bool agree = true;
  for (const auto& r : out) agree = agree && (r.pass == first);
  CheckRecord rec;
  rec.suite = "invariance";
  rec.name = "agreement";
  rec.degree = n;
  rec.pass = agree;
  rec.max_residual = agree ? 0.0 : 1.0;
  rec.note = first ? "all invariance conditions hold" : "all invariance conditions fail";
  if (!agree) rec.note = "invariance conditions disagree";
  out.push_back(rec);
  return out;
}

CheckRecord check_modularity(const CoactionTable& c, double tol) {
  Context ctx(c);
  Eigen::MatrixXcd sigma = modular_sigma(ctx.h);
  Residual r;
  for (int y = 0; y < ctx.V.size(); ++y)
    for (const auto& e : ctx.V.column(y)) {
      auto [k, l] = ctx.s.loop(e.row);
      auto [i, j] = ctx.s.loop(y);
      double f = std::pow(ctx.w(k) * ctx.w(i) / (ctx.w(l) * ctx.w(j)), 4);
      r.update(hnorm(sigma * e.value - f * e.value), [&] { return c.describe(e.row, y); });
    }
  return make_record("coaction", "sigma_modularity", c.degree(), r, tol);
}

CheckRecord check_f1(const CoactionTable& c, double tol) {
  Context ctx(c);
  HFunctional f1 = character_f(ctx.h, 1.0);
  Residual r;
  for (int y = 0; y < ctx.V.size(); ++y) {
    auto [i, j] = ctx.s.loop(y);
    double want = std::pow(ctx.w(i) / ctx.w(j), 4);
    bool saw = false;
    for (const auto& e : ctx.V.column(y)) {
      double target = (e.row == y) ? want : 0.0;
      saw = saw || e.row == y;
      r.update(std::abs(f1(e.value) - target), [&] { return c.describe(e.row, y); });
    }
    if (!saw) r.update(want, [&] { return c.describe(y, y); });
  }
  return make_record("f1", "f1", c.degree(), r, tol);
}

int span_dimension(const std::vector<HElement>& elements, double tol) {
  if (elements.empty()) return 0;
  Eigen::MatrixXcd m(elements.front().size(), elements.size());
  for (std::size_t k = 0; k < elements.size(); ++k) m.col(k) = elements[k];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  int rank = 0;
  for (int k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()[k] > tol) ++rank;
  return rank;
}

Cofaithfulness check_cofaithful(const CoactionTable& c) {
  const HopfData& h = c.hopf();
  std::vector<HElement> basis;  // orthonormal basis of the current span
  auto absorb = [&](HElement v) {
    for (const auto& b : basis) v -= b.dot(v) * b;
    double nrm = v.norm();
    if (nrm <= 1e-8) return false;
    basis.push_back(v / nrm);
    return true;
  };
  absorb(h.unit());
  for (int y = 0; y < c.coefficients().size(); ++y)
    for (const auto& e : c.coefficients().column(y)) {
      absorb(e.value);
      absorb(h.star(e.value));
    }
  bool grew = true;
  while (grew && static_cast<int>(basis.size()) < h.dim()) {
    grew = false;
    auto snapshot = basis;
    for (const auto& a : snapshot)
      for (const auto& b : snapshot) grew = absorb(h.multiply(a, b)) || grew;
  }
  return {static_cast<int>(basis.size()) == h.dim(), static_cast<int>(basis.size())};
}

CanonicalQ canonical_Q(const CoactionTable& c, double tol) {
  const IndexedAlgebra& alg = c.algebra();
  if (c.degree() != 1) throw Error("canonical Q is defined for the coaction on A");
  HFunctional f = character_f(c.hopf(), 0.25);
  SpacePtr a = alg.level(1);
  const int n = a->num_loops();
  HMatrix v = c.to_map();
  // T = (id (x) f) v as a matrix on A.
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n, n);
  for (int y = 0; y < n; ++y)
    for (const auto& e : v.column(y)) t(e.row, y) = f(e.value);

  // Q y - T(y) Q = 0 for every basis y, linear in the coordinates of Q.
  Eigen::MatrixXcd system = Eigen::MatrixXcd::Zero(n * n, n);
  for (int y = 0; y < n; ++y) {
    Tensor ey = Tensor::basis(a, y);
    Tensor ty = Tensor::from_vector(a, t.col(y));
    for (int u = 0; u < n; ++u) {
      Tensor eu = Tensor::basis(a, u);
      Eigen::VectorXcd col = (eu * ey).to_vector() - (ty * eu).to_vector();
      system.block(y * n, u, n, 1) = col;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(system);
  int null_dim = 0;
  for (int k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()[k] <= 1e-9) ++null_dim;

  std::vector<int> dims = alg.block_sizes();
  double sum_sq = 0.0;
  for (int d : dims) sum_sq += static_cast<double>(d) * d;
  CanonicalQ out{Tensor(a), {}, {}};
  std::vector<Eigen::Triplet<Complex>> trip;
  for (int b = 0; b < alg.num_blocks(); ++b) {
    double lambda = std::pow(dims[b] / sum_sq, 0.25);
    out.block_scalars.push_back(lambda);
    for (int i : alg.block_indices(b)) trip.emplace_back(i, i, lambda);
  }
  SparseRows qm(a->num_labels(), a->num_labels());
  qm.setFromTriplets(trip.begin(), trip.end());
  out.q = Tensor(a, qm);

  Residual intertwiner;
  Eigen::VectorXcd qv = out.q.to_vector();
  Eigen::VectorXcd res = system * qv;
  for (int k = 0; k < res.size(); ++k)
    intertwiner.update(std::abs(res[k]), [&] { return "equation row " + std::to_string(k); });
  if (intertwiner.value > tol) throw Error("canonical Q: no positive central solution of the intertwiner equation");

  Residual trace_q4;
  double tr = 0.0;
  for (int b = 0; b < alg.num_blocks(); ++b) tr += dims[b] * std::pow(out.block_scalars[b], 4);
  trace_q4.update(std::abs(tr - 1.0), [] { return std::string("Tr(Q^4)"); });
  Residual block_spread;
  double first = dims[0] * std::pow(out.block_scalars[0], -4);
  for (int b = 0; b < alg.num_blocks(); ++b)
    block_spread.update(std::abs(dims[b] * std::pow(out.block_scalars[b], -4) - first),
                        [&] { return "block " + std::to_string(b); });
  Residual uniqueness;
  uniqueness.value = (null_dim == alg.num_blocks()) ? 0.0 : 1.0;
  if (uniqueness.value > 0) uniqueness.where = "solution space dimension " + std::to_string(null_dim);
  Residual phi_match;
  for (int i = 0; i < alg.num_indices(); ++i)
    phi_match.update(std::abs(alg.weight(i) - std::pow(out.block_scalars[alg.block_of(i)], 4)),
                     [&] { return "index " + std::to_string(i); });

  out.records = {make_record("canonical_Q", "intertwiner", 1, intertwiner, tol),
                 make_record("canonical_Q", "trace_Q4", 1, trace_q4, tol),
                 make_record("canonical_Q", "block_trace_inverse", 1, block_spread, tol),
                 make_record("canonical_Q", "central_solution_space", 1, uniqueness, tol),
                 make_record("canonical_Q", "phi_equals_TrQ4", 1, phi_match, tol)};
  return out;
}

}  // namespace coplanar

#include "coplanar/tower.hpp"

#include <cmath>
#include <map>

#include "coplanar/annular.hpp"
#include "coplanar/parity.hpp"

namespace coplanar {

namespace {

double hnorm(const HElement& x) { return x.size() ? x.cwiseAbs().maxCoeff() : 0.0; }

int unit_loop(const LoopSpace& a, int i, int j) { return *a.loop_index(*a.find_label({i}), *a.find_label({j})); }

std::pair<int, int> unit_of_loop(const LoopSpace& a, int loop) {
  auto [b, t] = a.loop(loop);
  return {a.label(b)[0], a.label(t)[0]};
}

std::vector<std::pair<int, int>> display_pairs(const MultiIndex& k, const MultiIndex& l) {
  const int n = static_cast<int>(k.size());
  std::vector<std::pair<int, int>> out;
  for (int p = 0; p + 1 < n; p += 2) out.emplace_back(k[p], k[p + 1]);
  if (n % 2 == 1) out.emplace_back(k[n - 1], l[n - 1]);
  for (int p = (n / 2) * 2 - 2; p >= 0; p -= 2) out.emplace_back(l[p + 1], l[p]);
  return out;
}

std::pair<MultiIndex, MultiIndex> from_display_pairs(const std::vector<std::pair<int, int>>& pairs) {
  const int n = static_cast<int>(pairs.size());
  MultiIndex k(n), l(n);
  int f = 0;
  for (int p = 0; p + 1 < n; p += 2, ++f) {
    k[p] = pairs[f].first;
    k[p + 1] = pairs[f].second;
  }
  if (n % 2 == 1) {
    k[n - 1] = pairs[f].first;
    l[n - 1] = pairs[f].second;
    ++f;
  }
  for (int p = (n / 2) * 2 - 2; p >= 0; p -= 2, ++f) {
    l[p + 1] = pairs[f].first;
    l[p] = pairs[f].second;
  }
  return {k, l};
}

std::vector<Eigen::MatrixXcd> dense_components(const HMatrix& m) {
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& c : m.components()) out.emplace_back(Eigen::MatrixXcd(c));
  return out;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double max_abs(const SparseCols& m) {
  double r = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseCols::InnerIterator it(m, k); it; ++it) r = std::max(r, std::abs(it.value()));
  return r;
}

CheckRecord skipped(std::string suite, std::string name, int degree, std::string note) {
  CheckRecord r;
  r.suite = std::move(suite);
  r.name = std::move(name);
  r.degree = degree;
  r.skipped = true;
  r.informational = true;
  r.note = std::move(note);
  return r;
}

bool tracial(const IndexedAlgebra& alg, double tol) {
  for (int i = 0; i < alg.num_indices(); ++i)
    for (int j : alg.block_indices(alg.block_of(i)))
      if (std::abs(alg.weight(i) - alg.weight(j)) > tol) return false;
  return true;
}

Eigen::VectorXcd outside(const TowerMap& gamma_n, const Eigen::VectorXcd& x) { return x - gamma_n.apply(x); }

double vmax(const Eigen::VectorXcd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

CoactionTable tower_coaction(const CoactionTable& base, int n) {
  if (base.degree() != 1) throw Error("tower coaction: base table must act on A");
  if (n < 0) throw Error("tower coaction: negative degree");
  const IndexedAlgebra& alg = base.algebra();
  const HopfData& h = base.hopf();
  SpacePtr s = alg.level(n);
  HMatrix V(s, h.dim());
  if (n == 0) {
    V.add(0, 0, h.unit());
    return CoactionTable(alg, base.hopf_ptr(), 0, std::move(V));
  }
  if (n == 1) return CoactionTable(alg, base.hopf_ptr(), 1, base.coefficients());
  const LoopSpace& a = *alg.level(1);
  const HMatrix& V1 = base.coefficients();

  for (int y = 0; y < s->num_loops(); ++y) {
    auto [i, j] = s->loop(y);
    auto in_pairs = display_pairs(s->label(i), s->label(j));
    std::vector<const std::vector<HEntry>*> cols;
    bool empty = false;
    for (auto [x, z] : in_pairs) {
      cols.push_back(&V1.column(unit_loop(a, x, z)));
      empty = empty || cols.back()->empty();
    }
    if (empty) continue;
    std::vector<std::size_t> pos(n, 0);
    while (true) {
      HElement value = (*cols[0])[pos[0]].value;
      std::vector<std::pair<int, int>> out_pairs{unit_of_loop(a, (*cols[0])[pos[0]].row)};
      for (int p = 1; p < n; ++p) {
        const HEntry& e = (*cols[p])[pos[p]];
        value = h.multiply(value, e.value);
        out_pairs.push_back(unit_of_loop(a, e.row));
      }
      auto [k, l] = from_display_pairs(out_pairs);
      auto kb = s->find_label(k), lt = s->find_label(l);
      if (!kb || !lt || !s->valid(*kb, *lt)) throw Error("tower coaction: output pattern is not a loop");
      if (hnorm(value) > kPruneThreshold) V.add(s->loop_index_unchecked(*kb, *lt), y, value);
      int p = n - 1;
      while (p >= 0 && ++pos[p] == cols[p]->size()) pos[p--] = 0;
      if (p < 0) break;
    }
  }
  CoactionTable out(alg, base.hopf_ptr(), n, std::move(V));
  return out;
}

CoactionTable tensor_power_coaction(const CoactionTable& base, int n) {
  if (base.degree() != 1) throw Error("tensor power: base table must act on A");
  if (n < 1) throw Error("tensor power: degree must be positive");
  const IndexedAlgebra& alg = base.algebra();
  const HopfData& h = base.hopf();
  const int d = h.dim();
  const LoopSpace& a = *alg.level(1);
  const int L = a.num_loops();
  int N = 1;
  for (int p = 0; p < n; ++p) N *= L;
  auto digit = [&](int idx, int p) {
    for (int q = n - 1; q > p; --q) idx /= L;
    return idx % L;
  };
  auto u_leg = [&](int p, int c, const Eigen::MatrixXcd& vc) {
    (void)c;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(N, N);
    int stride = 1;
    for (int q = n - 1; q > p; --q) stride *= L;
    for (int col = 0; col < N; ++col) {
      int dp = digit(col, p);
      int rest = col - dp * stride;
      for (int r = 0; r < L; ++r)
        if (vc(r, dp) != Complex(0.0)) m(rest + r * stride, col) = vc(r, dp);
    }
    return m;
  };
  auto v1 = dense_components(base.coefficients());

  std::vector<Eigen::MatrixXcd> acc;
  for (int c = 0; c < d; ++c) acc.push_back(u_leg(0, c, v1[c]));
  const auto& mult = h.constants().mult;
  for (int p = 1; p < n; ++p) {
    std::vector<Eigen::MatrixXcd> leg;
    for (int c = 0; c < d; ++c) leg.push_back(u_leg(p, c, v1[c]));
    std::vector<Eigen::MatrixXcd> next(d, Eigen::MatrixXcd::Zero(N, N));
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y) {
        bool any = false;
        for (int c = 0; c < d; ++c) any = any || mult[c](x, y) != Complex(0.0);
        if (!any) continue;
        Eigen::MatrixXcd prod = acc[x] * leg[y];
        for (int c = 0; c < d; ++c)
          if (mult[c](x, y) != Complex(0.0)) next[c] += mult[c](x, y) * prod;
      }
    acc = std::move(next);
  }

  SpacePtr s = alg.level(n);
  auto to_loop = [&](int idx) {
    std::vector<std::pair<int, int>> f;
    for (int p = 0; p < n; ++p) f.push_back(unit_of_loop(a, digit(idx, p)));
    auto bt = loop_from_factors(*s, f);
    if (!bt) throw Error("tensor power: tuple of matrix units is not a loop");
    return s->loop_index_unchecked(bt->first, bt->second);
  };
  HMatrix V(s, d);
  for (int col = 0; col < N; ++col)
    for (int row = 0; row < N; ++row) {
      HElement value(d);
      for (int c = 0; c < d; ++c) value[c] = acc[c](row, col);
      if (hnorm(value) > kPruneThreshold) V.add(to_loop(row), to_loop(col), value);
    }
  return CoactionTable(alg, base.hopf_ptr(), n, std::move(V));
}

Residual table_difference(const CoactionTable& a, const CoactionTable& b) {
  if (!a.space()->same_as(*b.space())) throw Error("table difference: different levels");
  Residual r;
  for (int y = 0; y < a.coefficients().size(); ++y) {
    std::map<int, HElement> acc;
    for (const auto& e : a.coefficients().column(y)) acc.emplace(e.row, e.value);
    for (const auto& e : b.coefficients().column(y)) {
      auto it = acc.find(e.row);
      if (it == acc.end())
        acc.emplace(e.row, -e.value);
      else
        it->second -= e.value;
    }
    for (const auto& [row, v] : acc) r.update(hnorm(v), [&] { return a.describe(row, y); });
  }
  return r;
}

TowerMap gamma(const CoactionTable& vn) {
  HFunctional h = haar(vn.hopf());
  SpacePtr s = vn.space();
  HMatrix v = vn.to_map();
  std::vector<Eigen::Triplet<Complex>> trip;
  for (int y = 0; y < v.size(); ++y)
    for (const auto& e : v.column(y)) {
      Complex c = h(e.value);
      if (std::abs(c) > kPruneThreshold) trip.emplace_back(e.row, y, c);
    }
  SparseCols m(s->num_loops(), s->num_loops());
  m.setFromTriplets(trip.begin(), trip.end());
  return TowerMap(s, s, std::move(m), Role::Gamma, "Gamma_" + std::to_string(vn.degree()));
}

namespace {

int kernel_dimension(const CoactionTable& vn) {
  const HopfData& h = vn.hopf();
  const int N = vn.space()->num_loops();
  auto comps = vn.to_map().components();
  HElement one = h.unit();
  Eigen::MatrixXcd stack(N * h.dim(), N);
  for (int c = 0; c < h.dim(); ++c)
    stack.block(c * N, 0, N, N) = Eigen::MatrixXcd(comps[c]) - one[c] * Eigen::MatrixXcd::Identity(N, N);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(stack);
  int rank = 0;
  for (int k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()[k] > kRankThreshold) ++rank;
  return N - rank;
}

}  // namespace

FixedPointSpace fixed_point_basis(const CoactionTable& vn, const TowerMap& gamma_n) {
  SpacePtr s = vn.space();
  const int N = s->num_loops();
  Eigen::VectorXd dw(N);
  for (int k = 0; k < N; ++k) dw[k] = std::pow(s->label_weight(s->loop(k).second), 2);
  Eigen::MatrixXcd g = dw.asDiagonal() * Eigen::MatrixXcd(gamma_n.matrix());
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(g, Eigen::ComputeThinU);
  FixedPointSpace out;
  out.degree = vn.degree();
  for (int k = 0; k < svd.singularValues().size(); ++k) {
    if (svd.singularValues()[k] <= kRankThreshold) continue;
    Eigen::VectorXcd x = svd.matrixU().col(k).cwiseQuotient(dw.cast<Complex>());
    out.basis.push_back(Tensor::from_vector(s, x));
  }
  out.dimension = static_cast<int>(out.basis.size());
  out.kernel_dimension = kernel_dimension(vn);
  return out;
}

FixedPointSpace fixed_point_basis(const CoactionTable& vn) { return fixed_point_basis(vn, gamma(vn)); }

Residual fixed_residual(const CoactionTable& vn, const Tensor& x) {
  auto comps = vn.to_map().components();
  HElement one = vn.hopf().unit();
  Eigen::VectorXcd xv = x.to_vector();
  Residual r;
  for (int c = 0; c < vn.hopf().dim(); ++c)
    r.update(vmax(comps[c] * xv - one[c] * xv), [&] { return "component " + vn.hopf().label(c); });
  return r;
}

Residual equivariance_residual(const CoactionTable& vn, const CoactionTable& vm, const TowerMap& t) {
  if (!t.source()->same_as(*vn.space()) || !t.target()->same_as(*vm.space()))
    throw Error("equivariance: map does not match the coaction levels");
  auto cn = vn.to_map().components();
  auto cm = vm.to_map().components();
  Residual r;
  for (int c = 0; c < vn.hopf().dim(); ++c) {
    SparseCols diff = cm[c] * t.matrix() - t.matrix() * cn[c];
    r.update(max_abs(diff), [&] { return t.name() + " component " + vn.hopf().label(c); });
  }
  return r;
}

CheckList check_gamma(const CoactionTable& vn, const TowerMap& g, const FixedPointSpace& q, double tol) {
  const int n = vn.degree();
  Residual idem;
  {
    SparseCols d = g.matrix() * g.matrix() - g.matrix();
    idem.update(max_abs(d), [] { return std::string("Gamma^2 - Gamma"); });
  }
  Residual fixed;
  {
    auto comps = vn.to_map().components();
    HElement one = vn.hopf().unit();
    for (int c = 0; c < vn.hopf().dim(); ++c) {
      SparseCols d = comps[c] * g.matrix() - one[c] * g.matrix();
      fixed.update(max_abs(d), [&] { return "component " + vn.hopf().label(c); });
    }
  }
  Residual basis_fixed;
  for (const auto& x : q.basis) basis_fixed.merge(fixed_residual(vn, x));
  CheckRecord rank;
  rank.suite = "fixed_points";
  rank.name = "rank_vs_kernel";
  rank.degree = n;
  rank.pass = q.dimension == q.kernel_dimension;
  rank.max_residual = std::abs(q.dimension - q.kernel_dimension);
  rank.note = "rank " + std::to_string(q.dimension) + ", kernel " + std::to_string(q.kernel_dimension);
  return {make_record("fixed_points", "idempotent", n, idem, tol),
          make_record("fixed_points", "v_gamma", n, fixed, tol),
          make_record("fixed_points", "basis_fixed", n, basis_fixed, tol), rank};
}

// ---------------------------------------------------------------------------

Tower::Tower(const CoactionTable& base, int top) : base_(base) {
  if (top < 0) throw Error("tower: negative top degree");
  for (int n = 0; n <= top; ++n) {
    levels_.push_back(tower_coaction(base_, n));
    gammas_.push_back(coplanar::gamma(levels_.back()));
    fixed_.push_back(fixed_point_basis(levels_.back(), gammas_.back()));
  }
}

std::vector<int> Tower::poincare() const {
  std::vector<int> out;
  for (const auto& f : fixed_) out.push_back(f.dimension);
  return out;
}

CheckList check_tower(const Tower& t, int nmax, double tol) {
  CheckList out;
  for (int n = 1; n <= nmax; ++n) {
    for (auto list : {check_axioms(t.v(n), tol), check_operator_axioms(t.v(n), tol), check_invariance(t.v(n), tol)})
      for (auto& r : list) {
        r.suite = "tower";
        out.push_back(std::move(r));
      }
  }
  return out;
}

CheckList check_tensor_power(const Tower& t, int nmax, double tol) {
  CheckList out;
  for (int n = 1; n <= nmax; ++n)
    out.push_back(make_record("tower", "tensor_power", n, table_difference(t.v(n), tensor_power_coaction(t.base(), n)),
                              tol));
  return out;
}

CheckList check_fixed_points(const Tower& t, int nmax, double tol) {
  CheckList out;
  for (int n = 0; n <= nmax; ++n)
    for (auto& r : check_gamma(t.v(n), t.gamma(n), t.fixed(n), tol)) out.push_back(std::move(r));
  return out;
}

CheckList check_equivariance(const Tower& t, int nmax, double tol) {
  const IndexedAlgebra& alg = t.algebra();
  CheckList out;
  for (int n = 1; n <= nmax; ++n) {
    out.push_back(make_record("equivariance", "I", n,
                              equivariance_residual(t.v(n - 1), t.v(n), annular::inclusion(alg, n)), tol));
    out.push_back(make_record("equivariance", "E~", n,
                              equivariance_residual(t.v(n), t.v(n - 1), annular::expectation_tilde(alg, n)), tol));
    if (n >= 2)
      out.push_back(make_record("equivariance", "e~", n,
                                fixed_residual(t.v(n), annular::jones_projection_tilde(alg, n)), tol));
  }
  return out;
}

CheckList check_weak_equivariance(const Tower& t, int nmax, double tol) {
  const IndexedAlgebra& alg = t.algebra();
  CheckList out;
  CheckRecord mod = check_modularity(t.base(), tol);
  mod.suite = "weak_equivariance";
  mod.informational = true;
  out.push_back(mod);
  const bool trace = tracial(alg, tol);
  const bool commutative = t.base().hopf().commutative(tol);
  for (int n = 1; n <= nmax; ++n) {
    if (!mod.pass) {
      out.push_back(skipped("weak_equivariance", "J_Jq", n, "modularity condition fails"));
      continue;
    }
    TowerMap j = annular::shift(alg, n);
    TowerMap jq = annular::shift_twisted(alg, n);
    MapDifference d = map_difference(t.gamma(n + 1) * jq, j * t.gamma(n - 1));
    out.push_back(make_record("weak_equivariance", "J_Jq", n, {d.value, d.where}, tol));
    if (trace) {
      MapDifference dj = map_difference(t.gamma(n + 1) * j, j * t.gamma(n - 1));
      out.push_back(make_record("weak_equivariance", "J_trace", n, {dj.value, dj.where}, tol));
      MapDifference same = map_difference(j, jq);
      out.push_back(make_record("weak_equivariance", "Jq_equals_J", n, {same.value, same.where}, tol));
    }
    if (commutative)
      out.push_back(
          make_record("weak_equivariance", "J_full", n, equivariance_residual(t.v(n - 1), t.v(n + 1), j), tol));
  }
  return out;
}

CheckList check_Q_closure(const Tower& t, int nmax, double tol) {
  const IndexedAlgebra& alg = t.algebra();
  const bool normalized = alg.has_delta();
  CheckList out;
  for (int n = 1; n <= nmax; ++n) {
    const auto& qn = t.fixed(n).basis;
    const auto& qprev = t.fixed(n - 1).basis;
    const TowerMap& g = t.gamma(n);

    Residual inc;
    TowerMap in = annular::inclusion(alg, n);
    for (std::size_t k = 0; k < qprev.size(); ++k)
      inc.update(vmax(outside(g, in.apply(qprev[k].to_vector()))), [&] { return "Q basis " + std::to_string(k); });
    out.push_back(make_record("Q", "I_preserves", n, inc, tol));

    Residual exp;
    TowerMap e = normalized ? annular::expectation(alg, n) : annular::expectation_tilde(alg, n);
    for (std::size_t k = 0; k < qn.size(); ++k)
      exp.update(vmax(outside(t.gamma(n - 1), e.apply(qn[k].to_vector()))),
                 [&] { return "Q basis " + std::to_string(k); });
    out.push_back(make_record("Q", "E_preserves", n, exp, tol));

    Residual sh;
    TowerMap j = annular::shift(alg, n);
    for (std::size_t k = 0; k < qprev.size(); ++k)
      sh.update(vmax(outside(t.gamma(n + 1), j.apply(qprev[k].to_vector()))),
                [&] { return "Q basis " + std::to_string(k); });
    out.push_back(make_record("Q", "J_preserves", n, sh, tol));

    if (n >= 2) {
      Tensor en = normalized ? annular::jones_projection(alg, n) : annular::jones_projection_tilde(alg, n);
      Residual mem;
      mem.update(vmax(outside(g, en.to_vector())), [] { return std::string("e_n"); });
      out.push_back(make_record("Q", "e_member", n, mem, tol));
    }

    Residual th;
    for (std::size_t k = 0; k < qn.size(); ++k)
      th.update((theta(qn[k]) - qn[k]).max_abs(), [&] { return "Q basis " + std::to_string(k); });
    out.push_back(make_record("Q", "theta_fixed", n, th, tol));

    Residual prod, adj;
    for (std::size_t a = 0; a < qn.size(); ++a) {
      adj.update(vmax(outside(g, qn[a].adjoint().to_vector())), [&] { return "Q basis " + std::to_string(a); });
      for (std::size_t b = 0; b < qn.size(); ++b)
        prod.update(vmax(outside(g, (qn[a] * qn[b]).to_vector())),
                    [&] { return "Q basis " + std::to_string(a) + " * " + std::to_string(b); });
    }
    out.push_back(make_record("Q", "product_closed", n, prod, tol));
    out.push_back(make_record("Q", "adjoint_closed", n, adj, tol));

    if (n == 2) {
      if (!normalized) {
        out.push_back(skipped("Q", "phi2_psi2", 2, "no delta-form"));
      } else {
        Eigen::RowVectorXcd diff = form_row(alg, {FormKind::Phi, 2}) - form_row(alg, {FormKind::Psi2, 2});
        Residual r;
        for (std::size_t k = 0; k < qn.size(); ++k)
          r.update(std::abs((diff * qn[k].to_vector())(0)), [&] { return "Q basis " + std::to_string(k); });
        out.push_back(make_record("Q", "phi2_psi2", 2, r, tol));
      }
    }
  }
  return out;
}

CheckList check_theta_f1(const Tower& t, int nmax, double tol) {
  CheckList out;
  for (int n = 1; n <= nmax; ++n) {
    CheckRecord f1 = check_f1(t.v(n), tol);
    out.push_back(f1);
    if (!f1.pass) {
      out.push_back(skipped("f1", "theta_is_f1_v", n, "f1 condition fails"));
      continue;
    }
    HFunctional f = character_f(t.base().hopf(), 1.0);
    auto comps = t.v(n).to_map().components();
    SparseCols m = annular::theta_map(t.algebra(), n).matrix();
    for (int c = 0; c < t.base().hopf().dim(); ++c) m -= f.values[c] * comps[c];
    Residual r;
    r.update(max_abs(m), [] { return std::string("theta - (id x f1) v"); });
    out.push_back(make_record("f1", "theta_is_f1_v", n, r, tol));
  }
  return out;
}

CheckList check_w_corepresentation(const Tower& t, double tol) {
  const IndexedAlgebra& alg = t.algebra();
  const HopfData& h = t.base().hopf();
  const LoopSpace& a = *alg.level(1);
  SpacePtr s2 = alg.level(2);
  const int N = s2->num_labels();
  const HMatrix& V = t.base().coefficients();

  std::vector<std::vector<HElement>> W(N, std::vector<HElement>(N, h.zero()));
  for (int b = 0; b < N; ++b)
    for (int c = 0; c < N; ++c) {
      const auto& lb = s2->label(b);
      const auto& lc = s2->label(c);
      double norm = alg.q(lb[1]) * alg.q(lc[0]) / (alg.q(lb[0]) * alg.q(lc[1]));
      W[b][c] = norm * V.value(unit_loop(a, lb[0], lb[1]), unit_loop(a, lc[0], lc[1]));
    }
  auto where = [&](int b, int c) { return "W(" + s2->describe_label(b) + ", " + s2->describe_label(c) + ")"; };

  Residual eps, del, anti;
  for (int b = 0; b < N; ++b)
    for (int c = 0; c < N; ++c) {
      eps.update(std::abs(h.counit(W[b][c]) - (b == c ? 1.0 : 0.0)), [&] { return where(b, c); });
      HPair lhs = h.coproduct(W[b][c]);
      for (int m = 0; m < N; ++m) lhs -= W[b][m] * W[m][c].transpose();
      del.update(max_abs(lhs), [&] { return where(b, c); });
      anti.update(hnorm(h.antipode(W[b][c]) - h.star(W[c][b])), [&] { return where(b, c); });
    }

  Residual ad;
  HMatrix v2 = t.v(2).to_map();
  for (int b = 0; b < N; ++b)
    for (int c = 0; c < N; ++c) {
      int y = s2->loop_index_unchecked(b, c);
      for (int p = 0; p < N; ++p)
        for (int r = 0; r < N; ++r) {
          HElement want = h.multiply(W[p][b], h.star(W[r][c]));
          HElement got = v2.value(s2->loop_index_unchecked(p, r), y);
          ad.update(hnorm(got - want), [&] { return "v_2 on " + s2->describe_loop(y); });
        }
    }

  CheckList out{make_record("W", "counit", 2, eps, tol), make_record("W", "coproduct", 2, del, tol),
                make_record("W", "antipode_adjoint", 2, anti, tol), make_record("W", "v2_is_adW", 2, ad, tol)};

  std::vector<double> qw(N);
  for (int b = 0; b < N; ++b) {
    const auto& lb = s2->label(b);
    qw[b] = std::pow(alg.q(lb[0]) / alg.q(lb[1]), 2);
  }
  CheckRecord f1 = check_f1(t.base(), tol);
  if (f1.pass) {
    HFunctional f = character_f(h, 0.5);
    Residual qr;
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c)
        qr.update(std::abs(f(W[b][c]) - (b == c ? qw[b] : 0.0)), [&] { return where(b, c); });
    out.push_back(make_record("W", "Q_W", 2, qr, tol));
  } else {
    out.push_back(skipped("W", "Q_W", 2, "f1 condition fails"));
  }

  if (!alg.has_delta()) {
    out.push_back(skipped("W", "trace_forms", 2, "no delta-form"));
    return out;
  }
  const double d2 = alg.delta() * alg.delta();
  Eigen::RowVectorXcd phi2 = form_row(alg, {FormKind::Phi, 2});
  Eigen::RowVectorXcd psi2 = form_row(alg, {FormKind::Psi2, 2});
  Residual tr_phi, tr_psi;
  for (int k = 0; k < s2->num_loops(); ++k) {
    auto [b, c] = s2->loop(k);
    double plus = (b == c) ? qw[b] * qw[b] : 0.0;
    double minus = (b == c) ? 1.0 / (qw[b] * qw[b]) : 0.0;
    tr_phi.update(std::abs(plus - d2 * phi2[k]), [&] { return s2->describe_loop(k); });
    tr_psi.update(std::abs(minus - d2 * psi2[k]), [&] { return s2->describe_loop(k); });
  }
  out.push_back(make_record("W", "trace_QW2_phi2", 2, tr_phi, tol));
  out.push_back(make_record("W", "trace_QWm2_psi2", 2, tr_psi, tol));

  Residual on_q;
  for (const auto& x : t.fixed(2).basis)
    on_q.update(std::abs(((phi2 - psi2) * x.to_vector())(0)), [] { return std::string("Q_2 basis"); });
  out.push_back(make_record("W", "phi2_psi2_Q2", 2, on_q, tol));
  return out;
}

}  // namespace coplanar

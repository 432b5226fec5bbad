#include "coplanar/annular.hpp"

#include <cmath>

#include "coplanar/parity.hpp"

namespace coplanar::annular {

namespace {

std::optional<int> appended(const LoopSpace& s, const MultiIndex& base, int l) {
  MultiIndex m = base;
  m.push_back(l);
  return s.find_label(m);
}

std::optional<int> prepended(const LoopSpace& s, std::initializer_list<int> head, const MultiIndex& tail) {
  MultiIndex m(head);
  m.insert(m.end(), tail.begin(), tail.end());
  return s.find_label(m);
}

MultiIndex drop_front(const MultiIndex& m, int k) { return MultiIndex(m.begin() + k, m.end()); }

void require_level(int n, int lowest, const char* what) {
  if (n < lowest) throw Error(std::string(what) + ": degree " + std::to_string(n) + " out of range");
}

TowerMap append_rule(SpacePtr src, SpacePtr dst, Role role, const std::string& name, int indices) {
  return TowerMap::from_rule(src, dst, role, name, [&](int b, int t, const TowerMap::Emit& emit) {
    for (int l = 0; l < indices; ++l) {
      auto nb = appended(*dst, src->label(b), l);
      auto nt = appended(*dst, src->label(t), l);
      if (nb && nt && dst->valid(*nb, *nt)) emit(*nb, *nt, 1.0);
    }
  });
}

TowerMap drop_last_rule(const IndexedAlgebra& alg, SpacePtr src, SpacePtr dst, Role role, const std::string& name,
                        const std::function<double(int)>& factor) {
  return TowerMap::from_rule(src, dst, role, name, [&](int b, int t, const TowerMap::Emit& emit) {
    const auto& lb = src->label(b);
    const auto& lt = src->label(t);
    if (lb.back() != lt.back()) return;
    MultiIndex nb(lb.begin(), lb.end() - 1), nt(lt.begin(), lt.end() - 1);
    emit(*dst->find_label(nb), *dst->find_label(nt), factor(lb.back()));
    (void)alg;
  });
}

}  // namespace

TowerMap inclusion(const IndexedAlgebra& alg, int n) {
  require_level(n, 1, "I_n");
  return append_rule(alg.level(n - 1), alg.level(n), Role::Inclusion, "I_" + std::to_string(n), alg.num_indices());
}

TowerMap inclusion_second_row(const IndexedAlgebra& alg, int m) {
  require_level(m, 1, "id(x)I_m");
  return append_rule(alg.second_row(m - 1), alg.second_row(m), Role::Inclusion, "idxI_" + std::to_string(m),
                     alg.num_indices());
}

TowerMap unit_map(const IndexedAlgebra& alg, const SpacePtr& target) {
  SpacePtr c = alg.level(0);
  Tensor one = Tensor::unit(target);
  SparseCols m(target->num_loops(), 1);
  Eigen::VectorXcd v = one.to_vector();
  for (int k = 0; k < v.size(); ++k)
    if (v[k] != Complex(0.0)) m.insert(k, 0) = v[k];
  return TowerMap(c, target, std::move(m), Role::Inclusion, "unit");
}

TowerMap expectation_tilde(const IndexedAlgebra& alg, int n) {
  require_level(n, 1, "E~_n");
  const double e = -4.0 * parity::pm(n);
  return drop_last_rule(alg, alg.level(n), alg.level(n - 1), Role::ExpectationTilde, "E~_" + std::to_string(n),
                        [&](int i) { return std::pow(alg.q(i), e); });
}

TowerMap expectation(const IndexedAlgebra& alg, int n) {
  require_level(n, 1, "E_n");
  const double e = -4.0 * parity::pm(n);
  const double scale = std::pow(alg.delta(), -1.0 - parity::pm(n));
  return drop_last_rule(alg, alg.level(n), alg.level(n - 1), Role::Expectation, "E_" + std::to_string(n),
                        [&](int i) { return scale * std::pow(alg.q(i), e); });
}

TowerMap expectation_second_row(const IndexedAlgebra& alg, int m) {
  require_level(m, 1, "id(x)E_m");
  const double e = -4.0 * parity::pm(m);
  const double scale = std::pow(alg.delta(), -1.0 - parity::pm(m));
  return drop_last_rule(alg, alg.second_row(m), alg.second_row(m - 1), Role::Expectation,
                        "idxE_" + std::to_string(m), [&](int i) { return scale * std::pow(alg.q(i), e); });
}

namespace {

TowerMap shift_with(const IndexedAlgebra& alg, int n, Role role, const std::string& name,
                    const std::function<double(int, int)>& spin) {
  require_level(n, 1, name.c_str());
  SpacePtr src = alg.level(n - 1), dst = alg.level(n + 1);
  return TowerMap::from_rule(src, dst, role, name, [&](int b, int t, const TowerMap::Emit& emit) {
    for (int l = 0; l < alg.num_indices(); ++l)
      for (int k : alg.block_indices(alg.block_of(l))) {
        auto nb = prepended(*dst, {l, k}, src->label(b));
        auto nt = prepended(*dst, {l, k}, src->label(t));
        if (nb && nt && dst->valid(*nb, *nt)) emit(*nb, *nt, spin(l, k));
      }
  });
}

}  // namespace

TowerMap shift(const IndexedAlgebra& alg, int n) {
  return shift_with(alg, n, Role::Jones, "J_" + std::to_string(n), [](int, int) { return 1.0; });
}

TowerMap shift_twisted(const IndexedAlgebra& alg, int n) {
  return shift_with(alg, n, Role::JonesTwisted, "J^q_" + std::to_string(n),
                    [&](int l, int k) { return std::pow(alg.q(k) / alg.q(l), 8); });
}

TowerMap shift_minus(const IndexedAlgebra& alg, int n) {
  require_level(n, 1, "J^-_n");
  SpacePtr src = alg.level(n - 1), dst = alg.second_row(n - 1);
  return TowerMap::from_rule(src, dst, Role::JonesMinus, "J-_" + std::to_string(n),
                             [&](int b, int t, const TowerMap::Emit& emit) {
                               for (int g = 0; g < alg.num_indices(); ++g)
                                 emit(*prepended(*dst, {g}, src->label(b)), *prepended(*dst, {g}, src->label(t)), 1.0);
                             });
}

TowerMap shift_plus(const IndexedAlgebra& alg, int n) {
  require_level(n, 1, "J^+_n");
  SpacePtr src = alg.second_row(n - 1), dst = alg.level(n + 1);
  return TowerMap::from_rule(src, dst, Role::JonesPlus, "J+_" + std::to_string(n),
                             [&](int b, int t, const TowerMap::Emit& emit) {
                               const auto& lb = src->label(b);
                               const auto& lt = src->label(t);
                               for (int h : alg.block_indices(alg.block_of(lb.front()))) {
                                 MultiIndex nb{h}, nt{h};
                                 nb.insert(nb.end(), lb.begin(), lb.end());
                                 nt.insert(nt.end(), lt.begin(), lt.end());
                                 auto ib = dst->find_label(nb), it = dst->find_label(nt);
                                 if (ib && it && dst->valid(*ib, *it)) emit(*ib, *it, 1.0);
                               }
                             });
}

TowerMap expectation_minus(const IndexedAlgebra& alg, int n) {
  require_level(n, 1, "E^-_n");
  SpacePtr src = alg.second_row(n - 1), dst = alg.level(n - 1);
  return TowerMap::from_rule(src, dst, Role::ExpectationMinus, "E-_" + std::to_string(n),
                             [&](int b, int t, const TowerMap::Emit& emit) {
                               const auto& lb = src->label(b);
                               const auto& lt = src->label(t);
                               if (lb.front() != lt.front()) return;
                               emit(*dst->find_label(drop_front(lb, 1)), *dst->find_label(drop_front(lt, 1)),
                                    alg.weight(lb.front()));
                             });
}

TowerMap expectation_plus(const IndexedAlgebra& alg, int n) {
  require_level(n, 1, "E^+_n");
  const double d2 = std::pow(alg.delta(), -2);
  SpacePtr src = alg.level(n + 1), dst = alg.second_row(n - 1);
  return TowerMap::from_rule(src, dst, Role::ExpectationPlus, "E+_" + std::to_string(n),
                             [&](int b, int t, const TowerMap::Emit& emit) {
                               const auto& lb = src->label(b);
                               const auto& lt = src->label(t);
                               if (lb.front() != lt.front()) return;
                               emit(*dst->find_label(drop_front(lb, 1)), *dst->find_label(drop_front(lt, 1)),
                                    d2 / alg.weight(lb.front()));
                             });
}

TowerMap theta_map(const IndexedAlgebra& alg, int n) {
  SpacePtr s = alg.level(n);
  return TowerMap::from_rule(s, s, Role::Theta, "theta_" + std::to_string(n), [&](int b, int t, const TowerMap::Emit& emit) {
    emit(b, t, std::pow(s->label_weight(b) / s->label_weight(t), 4));
  });
}

TowerMap multiplication_tangle(const Tensor& x, const Tensor& y) {
  if (!x.space()->same_as(*y.space())) throw Error("multiplication tangle: x and y have different degrees");
  SpacePtr s = x.space();
  std::vector<Eigen::Triplet<Complex>> trip;
  for (int col = 0; col < s->num_loops(); ++col) {
    Tensor img = x * Tensor::basis(s, col) * y;
    img.for_each([&](int b, int t, Complex c) { trip.emplace_back(s->loop_index_unchecked(b, t), col, c); });
  }
  SparseCols m(s->num_loops(), s->num_loops());
  m.setFromTriplets(trip.begin(), trip.end());
  return TowerMap(s, s, std::move(m), Role::Multiplication, "M(x,y)");
}

Tensor jones_projection_tilde(const IndexedAlgebra& alg, int n) {
  require_level(n, 2, "e~_n");
  SpacePtr s = alg.level(n), base = alg.level(n - 2);
  const double e = 2.0 * parity::pm(n);
  SparseRows m(s->num_labels(), s->num_labels());
  std::vector<Eigen::Triplet<Complex>> trip;
  for (int g = 0; g < base->num_labels(); ++g)
    for (int i = 0; i < alg.num_indices(); ++i)
      for (int j = 0; j < alg.num_indices(); ++j) {
        MultiIndex lb = base->label(g), lt = base->label(g);
        lb.insert(lb.end(), {i, i});
        lt.insert(lt.end(), {j, j});
        auto ib = s->find_label(lb), it = s->find_label(lt);
        if (ib && it && s->valid(*ib, *it)) trip.emplace_back(*ib, *it, std::pow(alg.q(i) * alg.q(j), e));
      }
  m.setFromTriplets(trip.begin(), trip.end());
  return Tensor(s, std::move(m));
}

Tensor jones_projection(const IndexedAlgebra& alg, int n) {
  return jones_projection_tilde(alg, n) * Complex(std::pow(alg.delta(), -1.0 + parity::pm(n)));
}

Tensor d_element(const IndexedAlgebra& alg, int n) {
  require_level(n, 2, "d_n");
  SpacePtr s = alg.second_row(1);
  const double d2 = std::pow(alg.delta(), -2);
  std::vector<Eigen::Triplet<Complex>> trip;
  for (int i = 0; i < alg.num_indices(); ++i)
    for (int j : alg.block_indices(alg.block_of(i)))
      trip.emplace_back(*s->find_label({i, i}), *s->find_label({j, j}), d2 / (alg.q(i) * alg.q(i) * alg.q(j) * alg.q(j)));
  SparseRows m(s->num_labels(), s->num_labels());
  m.setFromTriplets(trip.begin(), trip.end());
  Tensor d(s, std::move(m));
  for (int k = 2; k <= n - 1; ++k) d = inclusion_second_row(alg, k).apply(d);
  return d;
}

Tensor f_element(const IndexedAlgebra& alg, int n) {
  require_level(n, 2, "f_n");
  return inclusions(alg, 2, n).apply(jones_projection(alg, 2));
}

TowerMap inclusions(const IndexedAlgebra& alg, int from, int to) {
  TowerMap out = TowerMap::identity(alg.level(from));
  for (int k = from + 1; k <= to; ++k) out = inclusion(alg, k) * out;
  return out;
}

TowerMap expectations(const IndexedAlgebra& alg, int from, int to) {
  TowerMap out = TowerMap::identity(alg.level(from));
  for (int k = from; k > to; --k) out = expectation(alg, k) * out;
  return out;
}

Eigen::RowVectorXcd second_row_form(const IndexedAlgebra& alg, int m) {
  SpacePtr s = alg.second_row(m);
  auto p = p_weights(alg);
  Eigen::RowVectorXcd tail = form_row(alg, {FormKind::Phi, m});
  SpacePtr lm = alg.level(m);
  Eigen::RowVectorXcd out = Eigen::RowVectorXcd::Zero(s->num_loops());
  for (int k = 0; k < s->num_loops(); ++k) {
    auto [b, t] = s->loop(k);
    const auto& lb = s->label(b);
    const auto& lt = s->label(t);
    if (lb.front() != lt.front()) continue;
    int tb = *lm->find_label(drop_front(lb, 1)), tt = *lm->find_label(drop_front(lt, 1));
    out[k] = std::pow(p[lb.front()], 4) * tail[*lm->loop_index(tb, tt)];
  }
  return out;
}

}  // namespace coplanar::annular

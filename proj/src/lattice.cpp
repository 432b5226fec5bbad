#include "coplanar/lattice.hpp"

#include <cmath>

#include "coplanar/annular.hpp"
#include "coplanar/linear_map.hpp"

namespace coplanar::lattice {

namespace an = annular;

namespace {

Residual gap(const TowerMap& a, const TowerMap& b) {
  MapDifference d = map_difference(a, b);
  Residual r;
  r.update(d.value, [&] { return d.where; });
  return r;
}

double tdiff(const Tensor& a, const Tensor& b) { return (a - b).max_abs(); }

std::string loop_name(const SpacePtr& s, int k) { return s->describe_loop(k); }

template <class F>
void for_basis(const SpacePtr& s, F&& f) {
  for (int k = 0; k < s->num_loops(); ++k) f(k, Tensor::basis(s, k));
}

CheckRecord skipped(std::string suite, std::string name, std::string note) {
  CheckRecord r;
  r.suite = std::move(suite);
  r.name = std::move(name);
  r.skipped = true;
  r.informational = true;
  r.note = std::move(note);
  return r;
}

// E(T(y) x) = y E(x) and E(x T(y)) = E(x) y over basis x of E's source and y of T's source.
void bimodule(const TowerMap& e, const TowerMap& t, const std::string& name, int n, double tol, CheckList& out) {
  Residual left, right;
  for_basis(t.source(), [&](int ky, const Tensor& y) {
    Tensor ty = t.apply(y);
    for_basis(e.source(), [&](int kx, const Tensor& x) {
      Tensor ex = e.apply(x);
      left.update(tdiff(e.apply(ty * x), y * ex),
                  [&] { return "y=" + loop_name(t.source(), ky) + " x=" + loop_name(e.source(), kx); });
      right.update(tdiff(e.apply(x * ty), ex * y),
                   [&] { return "y=" + loop_name(t.source(), ky) + " x=" + loop_name(e.source(), kx); });
    });
  });
  out.push_back(make_record("bimodule", name + "_left", n, left, tol));
  out.push_back(make_record("bimodule", name + "_right", n, right, tol));
}

void unital(const TowerMap& e, const std::string& name, int n, double tol, CheckList& out) {
  Residual r;
  r.update(tdiff(e.apply(Tensor::unit(e.source())), Tensor::unit(e.target())), [&] { return e.name(); });
  out.push_back(make_record("bimodule", name + "_unital", n, r, tol));
}

}  // namespace

CheckList verify_diagram_I(const IndexedAlgebra& alg, int nmax, double tol) {
  CheckList out;
  for (int n = 1; n <= nmax; ++n) {
    out.push_back(make_record("diagram_I", "JplusJminus", n,
                              gap(an::shift_plus(alg, n) * an::shift_minus(alg, n), an::shift(alg, n)), tol));
    if (n == 1) {
      out.push_back(make_record("diagram_I", "row1_square", 1,
                                gap(an::inclusion(alg, 2) * an::unit_map(alg, alg.level(1)),
                                    an::shift_plus(alg, 1) * an::unit_map(alg, alg.second_row(0))),
                                tol));
    } else {
      out.push_back(make_record("diagram_I", "row1_square", n,
                                gap(an::inclusion(alg, n + 1) * an::shift_plus(alg, n - 1),
                                    an::shift_plus(alg, n) * an::inclusion_second_row(alg, n - 1)),
                                tol));
    }
    out.push_back(make_record("diagram_I", "row2_square", n,
                              gap(an::inclusion_second_row(alg, n) * an::shift_minus(alg, n),
                                  an::shift_minus(alg, n + 1) * an::inclusion(alg, n)),
                              tol));
    out.push_back(make_record("diagram_I", "shift_square", n,
                              gap(an::inclusion(alg, n + 2) * an::shift(alg, n), an::shift(alg, n + 1) * an::inclusion(alg, n)),
                              tol));
  }
  return out;
}

CheckList verify_bimodule_E(const IndexedAlgebra& alg, int nmax, double tol) {
  CheckList out;
  for (int n = 1; n <= nmax; ++n) {
    TowerMap e = an::expectation(alg, n), em = an::expectation_minus(alg, n), ep = an::expectation_plus(alg, n);
    TowerMap er = an::expectation_second_row(alg, n);
    unital(e, "E", n, tol, out);
    unital(em, "Eminus", n, tol, out);
    unital(ep, "Eplus", n, tol, out);
    unital(er, "idE", n, tol, out);
    bimodule(e, an::inclusion(alg, n), "E", n, tol, out);
    bimodule(em, an::shift_minus(alg, n), "Eminus", n, tol, out);
    bimodule(ep, an::shift_plus(alg, n), "Eplus", n, tol, out);
    bimodule(er, an::inclusion_second_row(alg, n), "idE", n, tol, out);
    out.push_back(make_record("bimodule", "EplusJplus", n,
                              gap(ep * an::shift_plus(alg, n), TowerMap::identity(alg.second_row(n - 1))), tol));
  }
  return out;
}

CheckList verify_TL(const IndexedAlgebra& alg, int nmax, double tol) {
  CheckList out;
  const double d2 = std::pow(alg.delta(), -2);
  for (int level = 2; level <= nmax + 1; ++level) {
    // e_k lifted into the current level
    std::vector<Tensor> e;
    for (int k = 2; k <= level; ++k) e.push_back(an::inclusions(alg, k, level).apply(an::jones_projection(alg, k)));
    Residual proj, jones, far;
    for (std::size_t a = 0; a < e.size(); ++a) {
      auto name = [&](std::size_t k) { return "e_" + std::to_string(k + 2); };
      proj.update(tdiff(e[a] * e[a], e[a]), [&] { return name(a) + " squared"; });
      proj.update(tdiff(e[a].adjoint(), e[a]), [&] { return name(a) + " adjoint"; });
      for (std::size_t b = 0; b < e.size(); ++b) {
        if (a + 1 == b || b + 1 == a)
          jones.update(tdiff(e[a] * e[b] * e[a], e[a] * Complex(d2)),
                       [&] { return name(a) + " " + name(b) + " " + name(a); });
        else if (a != b)
          far.update(tdiff(e[a] * e[b], e[b] * e[a]), [&] { return name(a) + ", " + name(b); });
      }
    }
    out.push_back(make_record("TL", "projection", level, proj, tol));
    if (level >= 3) out.push_back(make_record("TL", "jones_relation", level, jones, tol));
    if (level >= 4) out.push_back(make_record("TL", "far_commutation", level, far, tol));
  }
  return out;
}

CheckList verify_pp(const IndexedAlgebra& alg, int nmax, double tol) {
  CheckList out;
  const Complex d2 = alg.delta() * alg.delta();
  const int top = nmax + 1;
  for (int n = 0; n + 2 <= top; ++n) {
    Tensor e = an::jones_projection(alg, n + 2);
    TowerMap i2 = an::inclusion(alg, n + 2);
    TowerMap i1 = an::inclusion(alg, n + 1);
    TowerMap e1 = an::expectation(alg, n + 1);
    TowerMap e2 = an::expectation(alg, n + 2);
    Residual first, second;
    for_basis(alg.level(n + 1), [&](int k, const Tensor& x) {
      first.update(tdiff(e * i2.apply(x) * e, i2.apply(i1.apply(e1.apply(x))) * e), [&] { return loop_name(alg.level(n + 1), k); });
    });
    for_basis(alg.level(n + 2), [&](int k, const Tensor& y) {
      second.update(tdiff(i2.apply(e2.apply(y * e)) * e * d2, y * e), [&] { return loop_name(alg.level(n + 2), k); });
    });
    out.push_back(make_record("pimsner_popa", "e_expectation", n, first, tol));
    out.push_back(make_record("pimsner_popa", "e_basis", n, second, tol));
  }
  for (int n = 0; n + 2 <= top; ++n) {
    Tensor f = an::f_element(alg, n + 2);
    TowerMap jp = an::shift_plus(alg, n + 1), jm = an::shift_minus(alg, n + 1);
    TowerMap em = an::expectation_minus(alg, n + 1), ep = an::expectation_plus(alg, n + 1);
    Residual first, second;
    for_basis(alg.second_row(n), [&](int k, const Tensor& x) {
      first.update(tdiff(f * jp.apply(x) * f, jp.apply(jm.apply(em.apply(x))) * f),
                   [&] { return loop_name(alg.second_row(n), k); });
    });
    for_basis(alg.level(n + 2), [&](int k, const Tensor& y) {
      second.update(tdiff(jp.apply(ep.apply(y * f)) * f * d2, y * f), [&] { return loop_name(alg.level(n + 2), k); });
    });
    out.push_back(make_record("pimsner_popa", "f_expectation", n, first, tol));
    out.push_back(make_record("pimsner_popa", "f_basis", n, second, tol));
  }
  for (int n = 0; n + 2 <= top; ++n) {
    Tensor d = an::d_element(alg, n + 2);
    TowerMap jm = an::shift_minus(alg, n + 2), em = an::expectation_minus(alg, n + 2);
    if (n >= 1) {
      TowerMap jp = an::shift_plus(alg, n), ep = an::expectation_plus(alg, n);
      Residual first;
      for_basis(alg.level(n + 1), [&](int k, const Tensor& x) {
        first.update(tdiff(d * jm.apply(x) * d, jm.apply(jp.apply(ep.apply(x))) * d),
                     [&] { return loop_name(alg.level(n + 1), k); });
      });
      out.push_back(make_record("pimsner_popa", "d_expectation", n, first, tol));
    }
    Residual second;
    for_basis(alg.second_row(n + 1), [&](int k, const Tensor& y) {
      second.update(tdiff(jm.apply(em.apply(y * d)) * d * d2, y * d), [&] { return loop_name(alg.second_row(n + 1), k); });
    });
    out.push_back(make_record("pimsner_popa", "d_basis", n, second, tol));
  }
  return out;
}

CheckList verify_commuting_squares(const IndexedAlgebra& alg, int nmax, double tol) {
  CheckList out;
  const int top = nmax + 1;
  for (int n = 2; n + 1 <= top; ++n)
    out.push_back(make_record("commuting_squares", "IE_row1", n,
                              gap(an::expectation_plus(alg, n) * an::inclusion(alg, n + 1),
                                  an::inclusion_second_row(alg, n - 1) * an::expectation_plus(alg, n - 1)),
                              tol));
  for (int n = 1; n + 1 <= top; ++n)
    out.push_back(make_record("commuting_squares", "IE_row2", n,
                              gap(an::expectation_minus(alg, n + 1) * an::inclusion_second_row(alg, n),
                                  an::inclusion(alg, n) * an::expectation_minus(alg, n)),
                              tol));

  auto row_inclusions = [&](int from, int to) {
    TowerMap m = TowerMap::identity(alg.second_row(from));
    for (int k = from + 1; k <= to; ++k) m = an::inclusion_second_row(alg, k) * m;
    return m;
  };
  // commutator of the images of two maps into the same algebra
  auto corner = [&](const TowerMap& i, const TowerMap& j, Residual& r) {
    for_basis(i.source(), [&](int kx, const Tensor& x) {
      Tensor a = i.apply(x);
      for_basis(j.source(), [&](int ky, const Tensor& y) {
        Tensor b = j.apply(y);
        r.update(tdiff(a * b, b * a),
                 [&] { return i.source()->describe_loop(kx) + " vs " + j.source()->describe_loop(ky); });
      });
    });
  };
  Residual odd, even;
  for (int s = 1; 2 * s <= top; ++s)
    for (int k = 0; 2 * s + k <= top; ++k) {
      const int level = 2 * s + k;
      TowerMap i = an::inclusions(alg, 2 * s, level);
      TowerMap j = TowerMap::identity(alg.level(k));
      for (int m = k + 1; m <= level - 1; m += 2) j = an::shift(alg, m) * j;
      corner(i, j, odd);
      corner(row_inclusions(2 * s, level), an::shift_minus(alg, level + 1) * j, odd);
    }
  for (int s = 0; 2 * s + 2 <= top; ++s)
    for (int k = 0; 2 * s + k + 2 <= top; ++k) {
      const int level = 2 * s + k + 2;
      TowerMap i = an::inclusions(alg, 2 * s + 1, level);
      TowerMap j = an::shift_plus(alg, k + 1);
      for (int m = k + 3; m <= level - 1; m += 2) j = an::shift(alg, m) * j;
      corner(i, j, even);
      corner(row_inclusions(2 * s + 1, level), an::shift_minus(alg, level + 1) * j, even);
    }
  out.push_back(make_record("commuting_squares", "corner_odd", top, odd, tol));
  out.push_back(make_record("commuting_squares", "corner_even", top, even, tol));
  return out;
}

CheckList verify_phi_infty(const IndexedAlgebra& alg, int nmax, double tol) {
  CheckList out;
  auto phi = [&](int n) { return form_row(alg, {FormKind::Phi, n}); };
  auto row_gap = [&](const Eigen::RowVectorXcd& a, const Eigen::RowVectorXcd& b, const SpacePtr& s) {
    Residual r;
    for (int k = 0; k < a.size(); ++k) r.update(std::abs(a[k] - b[k]), [&] { return s->describe_loop(k); });
    return r;
  };
  auto through = [](const Eigen::RowVectorXcd& form, const TowerMap& m) -> Eigen::RowVectorXcd {
    return form * m.matrix();
  };
  const Eigen::RowVectorXcd psi2 = form_row(alg, {FormKind::Psi2, 2});
  for (int n = 1; n <= nmax + 1; ++n)
    out.push_back(make_record("phi_infty", "i_expectation", n,
                              row_gap(through(phi(n - 1), an::expectation(alg, n)), phi(n), alg.level(n)), tol));
  for (int n = 1; n <= nmax; ++n) {
    out.push_back(make_record("phi_infty", "ii_second_row", n,
                              row_gap(through(phi(n + 1), an::shift_plus(alg, n)), an::second_row_form(alg, n - 1),
                                      alg.second_row(n - 1)),
                              tol));
    out.push_back(make_record("phi_infty", "iii_shift", n,
                              row_gap(through(phi(n + 1), an::shift(alg, n)), phi(n - 1), alg.level(n - 1)), tol));
    out.push_back(make_record("phi_infty", "iv_second_row_E", n,
                              row_gap(through(an::second_row_form(alg, n - 1), an::expectation_second_row(alg, n)),
                                      an::second_row_form(alg, n), alg.second_row(n)),
                              tol));
    TowerMap e2n = an::expectations(alg, n + 1, 2);
    out.push_back(make_record(
        "phi_infty", "v_E_minus_plus", n,
        row_gap(through(phi(n - 1), an::expectation_minus(alg, n) * an::expectation_plus(alg, n)),
                through(psi2, e2n), alg.level(n + 1)),
        tol));
    TowerMap e1n = an::expectation(alg, 2) * e2n;
    out.push_back(make_record("phi_infty", "vi_second_row_E_plus", n,
                              row_gap(through(an::second_row_form(alg, n - 1), an::expectation_plus(alg, n)),
                                      through(psi2, an::inclusion(alg, 2) * e1n), alg.level(n + 1)),
                              tol));
  }
  return out;
}

CheckRecord verify_p_blocks(const IndexedAlgebra& alg, double tol) {
  auto p = p_weights(alg);
  Residual r;
  for (int i = 0; i < alg.num_indices(); ++i)
    for (int j : alg.block_indices(alg.block_of(i)))
      r.update(std::abs(std::pow(p[i] * alg.q(i), 4) - std::pow(p[j] * alg.q(j), 4)),
               [&] { return "indices " + std::to_string(i) + ", " + std::to_string(j); });
  return make_record("phi_infty", "p4q4_blocks", 1, r, tol);
}

CheckList verify_all(const IndexedAlgebra& alg, int nmax, double tol) {
  CheckList out = verify_diagram_I(alg, nmax, tol);
  if (!alg.has_delta()) {
    for (const char* suite : {"bimodule", "TL", "pimsner_popa", "commuting_squares", "phi_infty"})
      out.push_back(skipped(suite, "all", "no delta-form"));
    return out;
  }
  for (auto list : {verify_bimodule_E(alg, nmax, tol), verify_TL(alg, nmax, tol), verify_pp(alg, nmax, tol),
                    verify_commuting_squares(alg, nmax, tol), verify_phi_infty(alg, nmax, tol)})
    out.insert(out.end(), list.begin(), list.end());
  out.push_back(verify_p_blocks(alg, tol));
  return out;
}

}  // namespace coplanar::lattice

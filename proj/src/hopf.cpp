#include "coplanar/hopf.hpp"

#include <cmath>
#include <sstream>

namespace coplanar {

Group Group::from_table(std::vector<std::vector<int>> table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error("group table is empty");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw Error("group table is not square");
    for (int x : row)
      if (x < 0 || x >= n) throw Error("group table entry out of range");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          std::ostringstream msg;
          msg << "group table fails associativity at (" << a << "," << b << "," << c << ")";
          throw Error(msg.str());
        }
  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n; ++b) ok = ok && table[a][b] == b && table[b][a] == b;
    if (ok) e = a;
  }
  if (e < 0) throw Error("group table has no identity element");
  Group g;
  g.inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table[a][b] == e && table[b][a] == e) g.inverse_[a] = b;
    if (g.inverse_[a] < 0) throw Error("group table: element " + std::to_string(a) + " has no inverse");
  }
  g.table_ = std::move(table);
  g.identity_ = e;
  return g;
}

Group Group::cyclic(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return from_table(std::move(t));
}

Group Group::symmetric3() {
  // Permutations of {0,1,2} in lexicographic order of their images.
  std::vector<std::vector<int>> perms{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  auto index_of = [&](const std::vector<int>& p) {
    for (int k = 0; k < 6; ++k)
      if (perms[k] == p) return k;
    return -1;
  };
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::vector<int> comp(3);
      for (int x = 0; x < 3; ++x) comp[x] = perms[a][perms[b][x]];
      t[a][b] = index_of(comp);
    }
  return from_table(std::move(t));
}

// ---------------------------------------------------------------------------

namespace {

HopfData::Constants empty_constants(int d) {
  HopfData::Constants c;
  c.dim = d;
  c.mult.assign(d, Eigen::MatrixXcd::Zero(d, d));
  c.comult.assign(d, Eigen::MatrixXcd::Zero(d, d));
  c.unit = HElement::Zero(d);
  c.counit = HElement::Zero(d);
  c.antipode = Eigen::MatrixXcd::Zero(d, d);
  c.star = Eigen::MatrixXcd::Zero(d, d);
  return c;
}

}  // namespace

HopfData HopfData::function_algebra(const Group& g) {
  const int n = g.order();
  Constants c = empty_constants(n);
  for (int a = 0; a < n; ++a) {
    c.labels.push_back("delta_" + std::to_string(a));
    c.mult[a](a, a) = 1.0;
    c.unit[a] = 1.0;
    c.counit[a] = (a == g.identity()) ? 1.0 : 0.0;
    c.antipode(g.inverse(a), a) = 1.0;
    c.star(a, a) = 1.0;
  }
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k) c.comult[g.mul(h, k)](h, k) = 1.0;
  HopfData out;
  out.c_ = std::move(c);
  out.kind_ = HopfKind::FunctionAlgebra;
  out.group_ = g;
  out.index_terms();
  return out;
}

HopfData HopfData::group_algebra(const Group& g) {
  const int n = g.order();
  Constants c = empty_constants(n);
  for (int a = 0; a < n; ++a) {
    c.labels.push_back("lambda_" + std::to_string(a));
    for (int b = 0; b < n; ++b) c.mult[g.mul(a, b)](a, b) = 1.0;
    c.comult[a](a, a) = 1.0;
    c.counit[a] = 1.0;
    c.antipode(g.inverse(a), a) = 1.0;
    c.star(g.inverse(a), a) = 1.0;
  }
  c.unit[g.identity()] = 1.0;
  HopfData out;
  out.c_ = std::move(c);
  out.kind_ = HopfKind::GroupAlgebra;
  out.group_ = g;
  out.index_terms();
  return out;
}

HopfData HopfData::custom(Constants constants) {
  const int d = constants.dim;
  if (d <= 0) throw Error("Hopf algebra dimension must be positive");
  auto bad = [&](const std::string& what) { throw Error("custom Hopf data: " + what + " has the wrong shape"); };
  if (static_cast<int>(constants.mult.size()) != d) bad("m");
  for (const auto& m : constants.mult)
    if (m.rows() != d || m.cols() != d) bad("m");
  if (static_cast<int>(constants.comult.size()) != d) bad("delta");
  for (const auto& m : constants.comult)
    if (m.rows() != d || m.cols() != d) bad("delta");
  if (constants.unit.size() != d) bad("u");
  if (constants.counit.size() != d) bad("eps");
  if (constants.antipode.rows() != d || constants.antipode.cols() != d) bad("s");
  if (constants.star.rows() != d || constants.star.cols() != d) bad("star");
  if (constants.labels.empty())
    for (int a = 0; a < d; ++a) constants.labels.push_back("e_" + std::to_string(a));
  HopfData out;
  out.c_ = std::move(constants);
  out.kind_ = HopfKind::Custom;
  out.index_terms();
  return out;
}

void HopfData::index_terms() {
  terms_.clear();
  for (int c = 0; c < c_.dim; ++c)
    for (int a = 0; a < c_.dim; ++a)
      for (int b = 0; b < c_.dim; ++b)
        if (std::abs(c_.mult[c](a, b)) > 0.0) terms_.push_back({a, b, c, c_.mult[c](a, b)});
}

HElement HopfData::basis(int a) const {
  HElement e = HElement::Zero(c_.dim);
  e[a] = 1.0;
  return e;
}

HElement HopfData::multiply(const HElement& x, const HElement& y) const {
  HElement out = HElement::Zero(c_.dim);
  for (const auto& t : terms_) out[t.c] += t.coef * x[t.a] * y[t.b];
  return out;
}

HPair HopfData::coproduct(const HElement& x) const {
  HPair out = HPair::Zero(c_.dim, c_.dim);
  for (int a = 0; a < c_.dim; ++a)
    if (x[a] != Complex(0.0)) out += x[a] * c_.comult[a];
  return out;
}

HPair HopfData::multiply_pair(const HPair& x, const HPair& y) const {
  const int d = c_.dim;
  HPair out = HPair::Zero(d, d);
  for (const auto& s : terms_)
    for (const auto& t : terms_) {
      Complex w = s.coef * t.coef;
      out(s.c, t.c) += w * x(s.a, t.a) * y(s.b, t.b);
    }
  return out;
}

bool HopfData::commutative(double tol) const {
  for (int c = 0; c < c_.dim; ++c)
    if ((c_.mult[c] - c_.mult[c].transpose()).cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

// ---------------------------------------------------------------------------

double HopfAxioms::worst() const {
  return std::max({associativity, unit, coassociativity, counit, antipode, comultiplicative,
                   counit_multiplicative, star, coproduct_star, s_star});
}

CheckList HopfAxioms::records(double tol) const {
  CheckList out;
  auto add = [&](const char* name, double v) {
    Residual r;
    r.value = v;
    out.push_back(make_record("hopf", name, -1, r, tol));
  };
  add("associativity", associativity);
  add("unit", unit);
  add("coassociativity", coassociativity);
  add("counit", counit);
  add("antipode", antipode);
  add("comultiplication_multiplicative", comultiplicative);
  add("counit_multiplicative", counit_multiplicative);
  add("star_antimultiplicative_involutive", star);
  add("coproduct_star", coproduct_star);
  add("antipode_star", s_star);
  Residual s2;
  s2.value = s_squared;
  CheckRecord kac = make_record("hopf", "kac_s_squared", -1, s2, tol);
  kac.informational = true;
  out.push_back(kac);
  return out;
}

HopfAxioms check_hopf_axioms(const HopfData& h) {
  const int d = h.dim();
  const auto& c = h.constants();
  HopfAxioms r;
  auto norm = [](const auto& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; };

  std::vector<HElement> e;
  for (int a = 0; a < d; ++a) e.push_back(h.basis(a));

  for (int a = 0; a < d; ++a) {
    r.unit = std::max({r.unit, norm(h.multiply(h.unit(), e[a]) - e[a]), norm(h.multiply(e[a], h.unit()) - e[a])});
    for (int b = 0; b < d; ++b) {
      HElement ab = h.multiply(e[a], e[b]);
      for (int k = 0; k < d; ++k)
        r.associativity = std::max(r.associativity, norm(h.multiply(ab, e[k]) - h.multiply(e[a], h.multiply(e[b], e[k]))));
      r.comultiplicative = std::max(r.comultiplicative,
                                    norm(h.coproduct(ab) - h.multiply_pair(h.coproduct(e[a]), h.coproduct(e[b]))));
      r.counit_multiplicative = std::max(r.counit_multiplicative, std::abs(h.counit(ab) - h.counit(e[a]) * h.counit(e[b])));
      r.star = std::max(r.star, norm(h.star(ab) - h.multiply(h.star(e[b]), h.star(e[a]))));
    }
  }
  r.comultiplicative = std::max(r.comultiplicative, norm(h.coproduct(h.unit()) - h.unit() * h.unit().transpose()));
  r.counit_multiplicative = std::max(r.counit_multiplicative, std::abs(h.counit(h.unit()) - 1.0));

  for (int a = 0; a < d; ++a) {
    const HPair& D = c.comult[a];
    // (D (x) id) D versus (id (x) D) D as d x d x d arrays.
    for (int x = 0; x < d; ++x) {
      Eigen::MatrixXcd left = Eigen::MatrixXcd::Zero(d, d);   // (y, z) for fixed x
      Eigen::MatrixXcd right = Eigen::MatrixXcd::Zero(d, d);
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) {
          if (D(p, q) == Complex(0.0)) continue;
          // left: D(e_p)(x, y) * [q == z]
          for (int y = 0; y < d; ++y) left(y, q) += D(p, q) * c.comult[p](x, y);
          if (p == x) right += D(p, q) * c.comult[q];
        }
      r.coassociativity = std::max(r.coassociativity, norm(left - right));
    }
    HElement left_counit = HElement::Zero(d), right_counit = HElement::Zero(d);
    HElement left_s = HElement::Zero(d), right_s = HElement::Zero(d);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) {
        if (D(p, q) == Complex(0.0)) continue;
        left_counit += D(p, q) * c.counit[p] * e[q];
        right_counit += D(p, q) * c.counit[q] * e[p];
        left_s += D(p, q) * h.multiply(h.antipode(e[p]), e[q]);
        right_s += D(p, q) * h.multiply(e[p], h.antipode(e[q]));
      }
    r.counit = std::max({r.counit, norm(left_counit - e[a]), norm(right_counit - e[a])});
    HElement target = c.counit[a] * h.unit();
    r.antipode = std::max({r.antipode, norm(left_s - target), norm(right_s - target)});

    r.star = std::max(r.star, norm(h.star(h.star(e[a])) - e[a]));
    // D(x*) = (* (x) *) D(x)
    HPair conj_pair = HPair::Zero(d, d);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q)
        if (D(p, q) != Complex(0.0)) conj_pair += std::conj(D(p, q)) * h.star(e[p]) * h.star(e[q]).transpose();
    r.coproduct_star = std::max({r.coproduct_star, norm(h.coproduct(h.star(e[a])) - conj_pair),
                                 std::abs(h.counit(h.star(e[a])) - std::conj(c.counit[a]))});
    r.s_star = std::max(r.s_star, norm(h.star(h.antipode(h.star(h.antipode(e[a])))) - e[a]));
    r.s_squared = std::max(r.s_squared, norm(h.antipode(h.antipode(e[a])) - e[a]));
  }
  r.kac = r.s_squared < kDefaultTolerance;
  return r;
}

// ---------------------------------------------------------------------------

HFunctional haar(const HopfData& h) {
  const int d = h.dim();
  const auto& c = h.constants();
  // Unknown h in C^d: (id (x) h) D(e_a) = h_a 1 and (h (x) id) D(e_a) = h_a 1.
  Eigen::MatrixXcd system = Eigen::MatrixXcd::Zero(2 * d * d, d);
  int row = 0;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b, ++row) {
      for (int k = 0; k < d; ++k) system(row, k) += c.comult[a](b, k);
      system(row, a) -= c.unit[b];
    }
    for (int b = 0; b < d; ++b, ++row) {
      for (int k = 0; k < d; ++k) system(row, k) += c.comult[a](k, b);
      system(row, a) -= c.unit[b];
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(system, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int null_dim = 0;
  for (int k = 0; k < d; ++k)
    if (k >= s.size() || s[k] <= 1e-9) ++null_dim;
  if (null_dim != 1) {
    std::ostringstream msg;
    msg << "invariance system has a " << null_dim << "-dimensional solution space; no unique Haar functional";
    throw Error(msg.str());
  }
  Eigen::VectorXcd v = svd.matrixV().col(d - 1);
  Complex at_unit = (v.transpose() * c.unit)(0);
  if (std::abs(at_unit) < 1e-12) throw Error("invariant functional vanishes on the unit");
  HFunctional out;
  out.values = v / at_unit;
  return out;
}

Eigen::MatrixXcd modular_sigma(const HopfData& h) {
  const int d = h.dim();
  HFunctional hf = haar(h);
  Eigen::MatrixXcd gram(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) gram(a, b) = hf(h.multiply(h.basis(a), h.basis(b)));
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(gram);
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) throw Error("Haar functional is not faithful; modular map undetermined");
  // h(e_a e_b) = sum_c gram(b, c) sigma(c, a)
  return lu.solve(gram.transpose());
}

HFunctional character_f(const HopfData& h, double /*z*/) {
  if (!check_hopf_axioms(h).kac) throw Error("non-Kac finite-dimensional input unsupported");
  HFunctional f;
  f.values = h.constants().counit;
  return f;
}

CheckList check_characters(const HopfData& h, double tol) {
  const int d = h.dim();
  const auto& c = h.constants();
  HFunctional f0 = character_f(h, 0.0), f1 = character_f(h, 1.0), fm1 = character_f(h, -1.0);
  Residual f0_counit, additivity, antipode, sigma, s2;
  Eigen::MatrixXcd sig = modular_sigma(h);
  for (int a = 0; a < d; ++a) {
    f0_counit.update(std::abs(f0.values[a] - c.counit[a]), [&] { return h.label(a); });
    const HPair& D = c.comult[a];
    Complex conv = (f1.values.transpose() * D * fm1.values)(0);
    additivity.update(std::abs(conv - f0.values[a]), [&] { return h.label(a); });
    antipode.update(std::abs(f1(h.antipode(h.basis(a))) - fm1.values[a]), [&] { return h.label(a); });
    // (f (x) id (x) g) D^(2)(e_a) = sum_{p,q} D(p,q) f(e_p) (id (x) g) D(e_q)
    HElement twisted_sigma = HElement::Zero(d), twisted_s2 = HElement::Zero(d);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) {
        if (D(p, q) == Complex(0.0)) continue;
        twisted_sigma += D(p, q) * f1.values[p] * (c.comult[q] * f1.values);
        twisted_s2 += D(p, q) * f1.values[p] * (c.comult[q] * fm1.values);
      }
    sigma.update((twisted_sigma - sig.col(a)).cwiseAbs().maxCoeff(), [&] { return h.label(a); });
    s2.update((twisted_s2 - h.antipode(h.antipode(h.basis(a)))).cwiseAbs().maxCoeff(), [&] { return h.label(a); });
  }
  return {make_record("hopf", "f0_is_counit", -1, f0_counit, tol),
          make_record("hopf", "f_convolution_additive", -1, additivity, tol),
          make_record("hopf", "f_antipode", -1, antipode, tol),
          make_record("hopf", "sigma_from_f", -1, sigma, tol),
          make_record("hopf", "s_squared_from_f", -1, s2, tol)};
}

}  // namespace coplanar

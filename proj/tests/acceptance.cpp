// Runs each acceptance criterion once and prints one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "coplanar/annular.hpp"
#include "coplanar/catalog.hpp"
#include "coplanar/lattice.hpp"
#include "coplanar/oracles.hpp"
#include "coplanar/runner.hpp"
#include "coplanar/tower.hpp"

using namespace coplanar;

namespace {

constexpr double kTol = 1e-9;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tally {
 public:
  void require(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 4) failures_.push_back(what);
    if (!ok) pass_ = false;
  }
  // Every non-informational record passes with residual below kTol.
  void records(const CheckList& list, const std::string& label) {
    for (const auto& r : list) {
      if (r.informational || r.skipped) continue;
      require(r.pass && r.max_residual < kTol,
              label + " " + r.suite + "/" + r.name + " n=" + std::to_string(r.degree) + " residual " +
                  std::to_string(r.max_residual));
    }
  }
  Outcome outcome(const std::string& summary) const {
    Outcome o;
    o.pass = pass_;
    o.detail = summary + ", " + std::to_string(checks_) + " checks";
    for (const auto& f : failures_) o.detail += "; failed: " + f;
    return o;
  }

 private:
  bool pass_ = true;
  int checks_ = 0;
  std::vector<std::string> failures_;
};

std::vector<std::pair<std::string, CoactionTable>> examples() {
  return {{"trivial_c2", catalog::trivial_c2()},
          {"z2_flip", catalog::z2_flip()},
          {"s3_permutation", catalog::s3_permutation()},
          {"translation_z2", catalog::translation_z2()},
          {"m2_inner", catalog::m2_inner()}};
}

const CheckRecord* find(const CheckList& list, const std::string& name) {
  for (const auto& r : list)
    if (r.name == name) return &r;
  return nullptr;
}

Outcome coaction_axioms() {
  Tally t;
  const std::vector<std::pair<std::string, std::string>> pairs{{"epsilon", "op_counit"},
                                                               {"Delta", "op_coassociative"},
                                                               {"star", "op_involutive"},
                                                               {"u_circ", "op_unital"},
                                                               {"circ_m", "op_multiplicative"}};
  auto agreement = [&](const std::string& label, const CoactionTable& c) {
    CheckList coeff = check_axioms(c, kTol), op = check_operator_axioms(c, kTol);
    for (const auto& [a, b] : pairs) {
      const CheckRecord* x = find(coeff, a);
      const CheckRecord* y = find(op, b);
      t.require(x && y && x->pass == y->pass, label + " " + a + " vs " + b);
    }
  };
  for (const auto& [name, c] : examples()) {
    t.records(check_axioms(c, kTol), name);
    t.records(check_operator_axioms(c, kTol), name);
    t.records(check_invariance(c, kTol), name);
    agreement(name, c);
  }
  agreement("corrupted_flip", catalog::corrupted_flip());
  agreement("flip_nonuniform", catalog::flip_nonuniform());
  return t.outcome("five examples, both paths agree");
}

Outcome tower_suite() {
  Tally t;
  for (const auto& [name, c] : examples()) {
    Tower tw(c, 4);
    t.records(check_tower(tw, 4, kTol), name);
    CheckList tp = check_tensor_power(tw, 3, kTol);
    t.records(tp, name);
    for (int n = 1; n <= 3; ++n) {
      bool found = false;
      for (const auto& r : tp)
        if (r.degree == n && !r.informational) found = true;
      t.require(found, name + " tensor power n=" + std::to_string(n) + " present");
    }
  }
  return t.outcome("n <= 4, tensor power n <= 3");
}

Outcome equivariance_suite() {
  Tally t;
  int weak = 0;
  for (const auto& [name, c] : examples()) {
    Tower tw(c, 4);
    t.records(check_equivariance(tw, 4, kTol), name);
    CheckList w = check_weak_equivariance(tw, 3, kTol);
    t.records(w, name);
    const CheckRecord* mod = find(w, "sigma_modularity");
    t.require(mod != nullptr, name + " modularity recorded");
    if (mod && mod->pass) {
      t.require(find(w, "J_Jq") && !find(w, "J_Jq")->skipped, name + " J_Jq ran");
      t.require(find(w, "Jq_equals_J") && !find(w, "Jq_equals_J")->skipped, name + " Jq_equals_J ran");
      ++weak;
    }
  }
  return t.outcome("weak equivariance ran on " + std::to_string(weak) + " modular examples");
}

Outcome fixed_points() {
  Tally t;
  std::string series;
  for (const auto& [name, c] : examples()) {
    Tower tw(c, 4);
    t.records(check_fixed_points(tw, 4, kTol), name);
    for (int n = 0; n <= 4; ++n) {
      int oracle = oracles::group_average_dimension(c, n);
      t.require(oracle == tw.fixed(n).dimension, name + " n=" + std::to_string(n) + " oracle " +
                                                     std::to_string(oracle) + " rank " +
                                                     std::to_string(tw.fixed(n).dimension));
    }
    if (name == "z2_flip") {
      auto p = tw.poincare();
      for (int d : p) series += (series.empty() ? "" : ",") + std::to_string(d);
      t.require(p == std::vector<int>{1, 1, 2, 4, 8}, "flip series " + series);
    }
  }
  return t.outcome("flip series " + series);
}

Outcome lattice_suite() {
  Tally t;
  const std::set<std::string> families{"diagram_I", "bimodule", "TL", "pimsner_popa", "commuting_squares",
                                       "phi_infty"};
  auto run_on = [&](const std::string& label, const IndexedAlgebra& alg) {
    t.require(alg.has_delta(), label + " has a delta-form");
    CheckList list = lattice::verify_all(alg, 3, kTol);
    std::set<std::string> seen;
    for (const auto& r : list) {
      t.require(!r.skipped, label + " " + r.suite + "/" + r.name + " skipped");
      seen.insert(r.suite);
    }
    for (const auto& f : families) t.require(seen.count(f) == 1, label + " family " + f + " present");
    for (const std::string item : {"i_expectation", "ii_second_row", "iii_shift", "iv_second_row_E",
                                   "v_E_minus_plus", "vi_second_row_E_plus"})
      t.require(find(list, item) != nullptr, label + " " + item + " present");
    t.records(list, label);
  };
  IndexedAlgebra m2 = IndexedAlgebra::build({2}, {1.0 / 3.0, 2.0 / 3.0});
  t.require(std::abs(m2.delta() * m2.delta() - 4.5) < 1e-12, "delta^2 = 4.5");
  run_on("M2(1/3,2/3)", m2);
  run_on("C+M2", IndexedAlgebra::build({1, 2}, {0.2, 0.4, 0.4}));
  return t.outcome("non-tracial M2 and C+M2, n <= 3");
}

Outcome tl_dimension() {
  Tally t;
  IndexedAlgebra alg = catalog::uniform_commutative(4);
  t.require(std::abs(alg.delta() - 2.0) < 1e-12, "delta = 2");
  Tensor e2 = annular::inclusion(alg, 3).apply(annular::jones_projection(alg, 2));
  Tensor e3 = annular::jones_projection(alg, 3);
  int d23 = oracles::algebra_closure_dimension({e2, e3});
  int d2 = oracles::algebra_closure_dimension({annular::jones_projection(alg, 2)});
  t.require(d23 == 5, "dim <e2,e3> = " + std::to_string(d23));
  t.require(d2 == 2, "dim <e2> = " + std::to_string(d2));
  return t.outcome("dims " + std::to_string(d23) + " and " + std::to_string(d2));
}

Outcome q_premises() {
  Tally t;
  for (const auto& [name, c] : examples()) {
    if (name != "z2_flip" && name != "translation_z2") continue;
    Tower tw(c, 4);
    CheckList list = check_Q_closure(tw, 3, kTol);
    for (const std::string item : {"I_preserves", "E_preserves", "J_preserves", "e_member", "theta_fixed",
                                   "phi2_psi2"})
      t.require(find(list, item) != nullptr, name + " " + item + " present");
    t.records(list, name);
  }
  return t.outcome("flip and translation, n <= 3");
}

Outcome kac_suite() {
  Tally t;
  for (const auto& [name, c] : examples()) {
    CanonicalQ q = canonical_Q(c, kTol);
    t.records(q.records, name);
    for (const std::string item : {"trace_Q4", "block_trace_inverse"})
      t.require(find(q.records, item) != nullptr, name + " " + item + " present");
    Tower tw(c, 4);
    CheckList f1 = check_theta_f1(tw, 3, kTol);
    t.records(f1, name);
    CheckList w = check_w_corepresentation(tw, kTol);
    t.records(w, name);
    for (const std::string item : {"counit", "coproduct", "antipode_adjoint", "v2_is_adW", "phi2_psi2_Q2"})
      t.require(find(w, item) != nullptr && !find(w, item)->skipped, name + " " + item + " ran");
  }
  return t.outcome("five examples");
}

Outcome negative_controls() {
  Tally t;
  CoactionTable bad = catalog::corrupted_flip();
  const CheckRecord* delta = nullptr;
  CheckList ax = check_axioms(bad, kTol);
  delta = find(ax, "Delta");
  t.require(delta && !delta->pass && delta->max_residual >= 0.01, "Delta residual on corrupted flip");
  double delta_residual = delta ? delta->max_residual : 0.0;

  Report corrupted = run(load_spec(std::string(COPLANAR_DATA_DIR) + "/corrupted_flip.json"));
  t.require(!corrupted.all_pass && corrupted.exit_code != 0, "corrupted report fails with nonzero exit");

  CoactionTable skew = catalog::flip_nonuniform();
  for (const auto& r : check_axioms(skew, kTol)) t.require(r.pass, "non-invariant " + r.name + " should pass");
  for (const auto& r : check_invariance(skew, kTol))
    t.require(r.pass == (r.name == "agreement"), "non-invariant " + r.name + " should fail");
  Report nonuniform = run(load_spec(std::string(COPLANAR_DATA_DIR) + "/flip_nonuniform.json"));
  t.require(nonuniform.first_failing_suite == "invariance", "non-invariant report fails at invariance");

  std::ostringstream s;
  s << "Delta residual " << delta_residual << ", exit codes " << corrupted.exit_code << " and "
    << nonuniform.exit_code;
  return t.outcome(s.str());
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"coaction axioms, two-path agreement", coaction_axioms},
      {"tower coactions and tensor-power expansion", tower_suite},
      {"equivariance squares and weak equivariance", equivariance_suite},
      {"fixed points against group averaging", fixed_points},
      {"lattice suite on non-tracial delta-forms", lattice_suite},
      {"Temperley-Lieb dimensions", tl_dimension},
      {"planar algebra premises on Q_n", q_premises},
      {"Kac suite: Q, W and (f1)", kac_suite},
      {"negative controls", negative_controls},
  };
  const std::vector<double> budgets{10, 30, 0, 0, 60, 0, 0, 0, 0};
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budgets[k] > 0 && secs > budgets[k]) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(budgets[k])) + " s budget";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << "criterion " << k + 1 << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[k].first << "  ("
              << o.detail << ", " << timing << ")\n";
    if (!o.pass) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << "\n";
  return failed == 0 ? 0 : 1;
}

#include "coplanar/runner.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "coplanar/lattice.hpp"
#include "coplanar/oracles.hpp"
#include "coplanar/tower.hpp"

namespace coplanar {

namespace {

using nlohmann::json;

const std::map<std::string, std::vector<std::string>>& dependencies() {
  static const std::map<std::string, std::vector<std::string>> deps{
      {"hopf", {}},
      {"coaction", {"hopf"}},
      {"invariance", {"coaction"}},
      {"tower", {"invariance"}},
      {"equivariance", {"tower"}},
      {"fixed_points", {"tower"}},
      {"closure", {"fixed_points"}},
      {"kac", {"tower"}},
      {"lattice", {}},
  };
  return deps;
}

CheckRecord note_record(const std::string& suite, const std::string& name, const std::string& note) {
  CheckRecord r;
  r.suite = suite;
  r.name = name;
  r.skipped = true;
  r.informational = true;
  r.note = note;
  return r;
}

CheckList with_suite(CheckList list, const std::string& suite) {
  for (auto& r : list) r.suite = suite;
  return list;
}

// v_n(xy) = v_n(x) v_n(y) on seeded random elements.
CheckList random_multiplicativity(const Tower& t, int nmax, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  const HopfData& h = t.base().hopf();
  const auto& mult = h.constants().mult;
  CheckList out;
  for (int n = 1; n <= nmax; ++n) {
    SpacePtr s = t.v(n).space();
    auto comps = t.v(n).to_map().components();
    Residual r;
    for (int trial = 0; trial < 3; ++trial) {
      Eigen::VectorXcd xv(s->num_loops()), yv(s->num_loops());
      for (int k = 0; k < xv.size(); ++k) {
        xv[k] = {val(rng), val(rng)};
        yv[k] = {val(rng), val(rng)};
      }
      Tensor x = Tensor::from_vector(s, xv), y = Tensor::from_vector(s, yv);
      Eigen::VectorXcd xy = (x * y).to_vector();
      std::vector<Tensor> vx, vy;
      for (int c = 0; c < h.dim(); ++c) {
        vx.push_back(Tensor::from_vector(s, comps[c] * xv));
        vy.push_back(Tensor::from_vector(s, comps[c] * yv));
      }
      for (int c = 0; c < h.dim(); ++c) {
        Eigen::VectorXcd lhs = comps[c] * xy;
        for (int a = 0; a < h.dim(); ++a)
          for (int b = 0; b < h.dim(); ++b)
            if (mult[c](a, b) != Complex(0.0)) lhs -= mult[c](a, b) * (vx[a] * vy[b]).to_vector();
        r.update(lhs.cwiseAbs().maxCoeff(), [&] { return "trial " + std::to_string(trial) + " component " + h.label(c); });
      }
    }
    out.push_back(make_record("tower", "random_multiplicative", n, r, tol));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"hopf",         "coaction", "invariance", "tower",  "equivariance",
                                              "fixed_points", "closure",  "kac",        "lattice"};
  return names;
}

int suite_exit_code(const std::string& suite) {
  const auto& names = suite_names();
  auto it = std::find(names.begin(), names.end(), suite);
  if (it == names.end()) throw Error("unknown suite '" + suite + "'");
  return 2 + static_cast<int>(it - names.begin());
}

Report run(const SpecFile& spec) {
  const RunSettings& cfg = spec.run;
  const double tol = cfg.tolerance;
  const int nmax = cfg.n_max;
  for (const auto& s : cfg.suites) suite_exit_code(s);

  // requested suites plus everything they depend on
  std::set<std::string> wanted;
  std::function<void(const std::string&)> want = [&](const std::string& s) {
    if (!wanted.insert(s).second) return;
    for (const auto& d : dependencies().at(s)) want(d);
  };
  if (cfg.suites.empty())
    for (const auto& s : suite_names()) want(s);
  else
    for (const auto& s : cfg.suites) want(s);

  Report rep;
  rep.n_max = nmax;
  rep.tolerance = tol;
  rep.seed = cfg.seed;
  rep.delta = spec.algebra->delta_if_any();

  std::map<std::string, bool> ok;
  std::optional<Tower> tower;
  auto emit = [&](const std::string& suite, const CheckList& list) {
    for (const auto& r : list) rep.records.push_back(r);
    ok[suite] = all_pass(list);
  };
  auto blocked = [&](const std::string& suite) -> std::optional<std::string> {
    for (const auto& d : dependencies().at(suite))
      if (!ok.count(d) || !ok[d]) return d;
    return std::nullopt;
  };

  for (const auto& suite : suite_names()) {
    if (!wanted.count(suite)) continue;
    if (suite == "lattice") {
      const int cap = spec.algebra->dim() <= 4 ? 3 : 2;
      CheckList list = lattice::verify_all(*spec.algebra, std::min(nmax, cap), tol);
      for (auto& r : list) {
        r.name = r.suite + "." + r.name;
        r.suite = "lattice";
      }
      emit(suite, list);
      continue;
    }
    if (!spec.coaction) {
      rep.records.push_back(note_record(suite, "skipped", "no coaction in the input"));
      ok[suite] = false;
      continue;
    }
    if (auto dep = blocked(suite)) {
      rep.records.push_back(note_record(suite, "skipped", "depends on suite '" + *dep + "', which did not pass"));
      ok[suite] = false;
      continue;
    }
    const CoactionTable& c = *spec.coaction;
    CheckList list;
    if (suite == "hopf") {
      list = with_suite(check_hopf_axioms(c.hopf()).records(tol), "hopf");
      for (auto& r : with_suite(check_characters(c.hopf(), tol), "hopf")) list.push_back(r);
    } else if (suite == "coaction") {
      list = check_axioms(c, tol);
      for (auto& r : check_operator_axioms(c, tol)) list.push_back(r);
      CheckRecord mod = check_modularity(c, tol);
      mod.informational = true;
      list.push_back(mod);
      Cofaithfulness cf = check_cofaithful(c);
      CheckRecord cr;
      cr.name = "cofaithful";
      cr.pass = cf.cofaithful;
      cr.informational = true;
      cr.note = "coefficient algebra has dimension " + std::to_string(cf.dimension) + " of " +
                std::to_string(c.hopf().dim());
      list.push_back(cr);
      list = with_suite(list, "coaction");
    } else if (suite == "invariance") {
      list = check_invariance(c, tol);
    } else if (suite == "tower") {
      tower.emplace(c, nmax);
      list = check_tower(*tower, nmax, tol);
      for (auto& r : check_tensor_power(*tower, std::min(nmax, 3), tol)) list.push_back(r);
      for (auto& r : random_multiplicativity(*tower, nmax, cfg.seed, tol)) list.push_back(r);
    } else if (suite == "equivariance") {
      list = check_equivariance(*tower, nmax, tol);
      for (auto& r : with_suite(check_weak_equivariance(*tower, nmax - 1, tol), "equivariance")) list.push_back(r);
    } else if (suite == "fixed_points") {
      list = check_fixed_points(*tower, nmax, tol);
      rep.poincare = tower->poincare();
      if (c.group_action()) {
        for (int n = 0; n <= nmax; ++n) {
          int oracle = oracles::group_average_dimension(c, n);
          CheckRecord r;
          r.suite = "fixed_points";
          r.name = "group_average";
          r.degree = n;
          r.pass = oracle == tower->fixed(n).dimension;
          r.max_residual = std::abs(oracle - tower->fixed(n).dimension);
          r.note = "oracle " + std::to_string(oracle) + ", Gamma rank " + std::to_string(tower->fixed(n).dimension);
          list.push_back(r);
        }
      }
    } else if (suite == "closure") {
      list = check_Q_closure(*tower, nmax - 1, tol);
    } else if (suite == "kac") {
      try {
        CanonicalQ q = canonical_Q(c, tol);
        list = with_suite(q.records, "kac");
      } catch (const Error& e) {
        CheckRecord r;
        r.name = "canonical_Q";
        r.pass = false;
        r.note = e.what();
        list.push_back(r);
      }
      for (auto& r : check_theta_f1(*tower, nmax, tol)) list.push_back(r);
      for (auto& r : check_w_corepresentation(*tower, tol)) list.push_back(r);
    }
    emit(suite, with_suite(std::move(list), suite));
  }

  for (const auto& suite : suite_names()) {
    if (!wanted.count(suite)) continue;
    for (const auto& r : rep.records)
      if (r.suite == suite && !r.pass && !r.informational) {
        if (rep.all_pass) {
          rep.all_pass = false;
          rep.first_failing_suite = suite;
          rep.exit_code = suite_exit_code(suite);
        }
        break;
      }
  }
  if (rep.all_pass)
    for (const auto& suite : cfg.suites)
      if (suite != "lattice" && !spec.coaction) {
        rep.all_pass = false;
        rep.first_failing_suite = suite;
        rep.exit_code = suite_exit_code(suite);
        break;
      }
  return rep;
}

void write_report(std::ostream& out, const Report& rep) {
  for (const auto& r : rep.records) {
    json j{{"type", "record"},          {"suite", r.suite}, {"name", r.name},
           {"degree", r.degree},        {"max_residual", r.max_residual},
           {"worst_index", r.worst_index}, {"pass", r.pass}};
    if (r.skipped) j["skipped"] = true;
    if (r.informational) j["informational"] = true;
    if (!r.note.empty()) j["note"] = r.note;
    out << j.dump() << "\n";
  }
  json summary{{"type", "summary"},  {"all_pass", rep.all_pass}, {"poincare", rep.poincare},
               {"n_max", rep.n_max}, {"tolerance", rep.tolerance}, {"seed", rep.seed},
               {"exit_code", rep.exit_code}};
  summary["delta"] = rep.delta ? json(*rep.delta) : json(nullptr);
  summary["first_failing_suite"] = rep.first_failing_suite.empty() ? json(nullptr) : json(rep.first_failing_suite);
  out << summary.dump() << "\n";
}

}  // namespace coplanar

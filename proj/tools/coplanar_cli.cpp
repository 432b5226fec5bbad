#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "coplanar/runner.hpp"
#include "coplanar/tower.hpp"

using nlohmann::json;
using namespace coplanar;

namespace {

struct Options {
  std::string spec_path;
  std::optional<int> nmax;
  std::optional<double> tol;
  std::vector<std::string> suites;
  std::optional<std::uint64_t> seed;
  std::string out_path;
};

SpecFile load(const Options& o) {
  SpecFile spec = load_spec(o.spec_path);
  if (o.nmax) {
    if (*o.nmax < 1) throw Error("--nmax must be at least 1");
    spec.run.n_max = *o.nmax;
  }
  if (o.tol) {
    if (*o.tol <= 0) throw Error("--tol must be positive");
    spec.run.tolerance = *o.tol;
  }
  if (o.seed) spec.run.seed = *o.seed;
  if (!o.suites.empty()) {
    for (const auto& s : o.suites)
      if (!is_suite_name(s)) throw Error("unknown suite '" + s + "'");
    spec.run.suites = o.suites;
  }
  return spec;
}

const CoactionTable& require_coaction(const SpecFile& spec) {
  if (!spec.coaction) throw Error("this command needs a coaction section");
  return *spec.coaction;
}

json complex_json(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return json{{"re", z.real()}, {"im", z.imag()}};
}

json tensor_json(const Tensor& x) {
  json out = json::array();
  const LoopSpace& s = *x.space();
  x.for_each([&](int b, int t, Complex v) {
    out.push_back({{"bottom", s.label(b)}, {"top", s.label(t)}, {"value", complex_json(v)}});
  });
  return out;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_check(const Options& o) {
  SpecFile spec = load(o);
  Report rep = run(spec);
  Output out(o.out_path);
  write_report(out.stream(), rep);
  return rep.exit_code;
}

int cmd_poincare(const Options& o) {
  SpecFile spec = load(o);
  Tower t(require_coaction(spec), spec.run.n_max);
  Output out(o.out_path);
  out.stream() << json{{"poincare", t.poincare()}, {"n_max", spec.run.n_max}}.dump() << "\n";
  return 0;
}

int cmd_fixed_points(const Options& o) {
  SpecFile spec = load(o);
  Tower t(require_coaction(spec), spec.run.n_max);
  Output out(o.out_path);
  for (int n = 0; n <= spec.run.n_max; ++n) {
    const FixedPointSpace& f = t.fixed(n);
    json basis = json::array();
    for (const auto& x : f.basis) basis.push_back(tensor_json(x));
    out.stream() << json{{"degree", n}, {"dimension", f.dimension}, {"kernel_dimension", f.kernel_dimension},
                         {"basis", basis}}
                        .dump()
                 << "\n";
  }
  return 0;
}

int cmd_describe(const Options& o) {
  SpecFile spec = load(o);
  const IndexedAlgebra& alg = *spec.algebra;
  json j;
  j["algebra"] = {{"blocks", alg.block_sizes()}, {"weights", alg.weights()}, {"dim", alg.dim()}};
  j["delta"] = alg.has_delta() ? json(alg.delta()) : json(nullptr);
  j["normalization_residual"] = alg.normalization_residual();
  j["block_inverse_spread"] = alg.block_inverse_spread();
  j["p"] = p_weights(alg);
  j["run"] = {{"n_max", spec.run.n_max}, {"tolerance", spec.run.tolerance}, {"seed", spec.run.seed},
              {"suites", spec.run.suites}};
  if (spec.hopf) {
    const HopfData& h = *spec.hopf;
    std::vector<std::string> labels;
    for (int a = 0; a < h.dim(); ++a) labels.push_back(h.label(a));
    j["hopf"] = {{"dim", h.dim()}, {"labels", labels}};
  }
  if (spec.coaction) {
    j["coaction"] = {{"kind", spec.coaction_kind}, {"nonzero_coefficients", spec.coaction->coefficients().nnz()}};
    try {
      CanonicalQ q = canonical_Q(*spec.coaction, spec.run.tolerance);
      j["Q"] = {{"element", tensor_json(q.q)}, {"block_scalars", q.block_scalars}};
    } catch (const Error& e) {
      j["Q"] = {{"error", e.what()}};
    }
  }
  Output out(o.out_path);
  out.stream() << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-point towers of finite quantum group coactions"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("spec", o.spec_path, "input JSON file")->required();
    sub->add_option("--nmax", o.nmax, "highest tower level");
    sub->add_option("--tol", o.tol, "residual tolerance");
    sub->add_option("--seed", o.seed, "seed for randomized spot checks");
    sub->add_option("-o,--out", o.out_path, "write output here instead of stdout");
  };
  CLI::App* check = app.add_subcommand("check", "run verification suites and print a JSON-lines report");
  add_common(check);
  check->add_option("--suite", o.suites, "suite to run (repeatable)");
  CLI::App* poincare = app.add_subcommand("poincare", "print dim Q_n for n = 0..nmax");
  add_common(poincare);
  CLI::App* fixed = app.add_subcommand("fixed-points", "dump orthonormal bases of Q_n");
  add_common(fixed);
  CLI::App* describe = app.add_subcommand("describe", "echo the parsed input with derived data");
  add_common(describe);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*check) return cmd_check(o);
    if (*poincare) return cmd_poincare(o);
    if (*fixed) return cmd_fixed_points(o);
    if (*describe) return cmd_describe(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

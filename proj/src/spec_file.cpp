#include "coplanar/spec_file.hpp"

#include <algorithm>
#include <fstream>

namespace coplanar {

namespace {

using nlohmann::json;

struct Node {
  const json& j;
  std::string path;

  Node at(const std::string& key) const {
    if (!j.is_object() || !j.contains(key)) throw SpecError(path, "missing field '" + key + "'");
    return {j.at(key), path + "/" + key};
  }
  Node at(std::size_t k) const { return {j.at(k), path + "/" + std::to_string(k)}; }
  bool has(const std::string& key) const { return j.is_object() && j.contains(key); }
  [[noreturn]] void fail(const std::string& what) const { throw SpecError(path, what); }

  const json& array() const {
    if (!j.is_array()) fail("expected an array");
    return j;
  }
  std::size_t size() const { return array().size(); }
  double number() const {
    if (!j.is_number()) fail("expected a number");
    return j.get<double>();
  }
  int integer() const {
    if (!j.is_number_integer()) fail("expected an integer");
    return j.get<int>();
  }
  std::string string() const {
    if (!j.is_string()) fail("expected a string");
    return j.get<std::string>();
  }
  std::vector<int> ints() const {
    std::vector<int> out;
    for (std::size_t k = 0; k < size(); ++k) out.push_back(at(k).integer());
    return out;
  }
  std::vector<double> numbers() const {
    std::vector<double> out;
    for (std::size_t k = 0; k < size(); ++k) out.push_back(at(k).number());
    return out;
  }
  // Either a plain array of reals or {"re": [...], "im": [...]}.
  std::vector<Complex> complex_array(std::size_t expected) const {
    std::vector<Complex> out;
    if (j.is_array()) {
      for (double x : numbers()) out.emplace_back(x, 0.0);
    } else if (j.is_object()) {
      auto re = at("re").numbers();
      std::vector<double> im(re.size(), 0.0);
      if (has("im")) im = at("im").numbers();
      if (im.size() != re.size()) fail("re and im have different lengths");
      for (std::size_t k = 0; k < re.size(); ++k) out.emplace_back(re[k], im[k]);
    } else {
      fail("expected an array or an {re, im} object");
    }
    if (out.size() != expected)
      fail("expected " + std::to_string(expected) + " entries, got " + std::to_string(out.size()));
    return out;
  }
  // Square matrix given as rows, or {"re": rows, "im": rows}.
  Eigen::MatrixXcd matrix(int n) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    auto rows = [&](const Node& src, double scale_re, double scale_im) {
      if (static_cast<int>(src.size()) != n) src.fail("expected " + std::to_string(n) + " rows");
      for (int r = 0; r < n; ++r) {
        auto row = src.at(r).numbers();
        if (static_cast<int>(row.size()) != n) src.at(r).fail("expected " + std::to_string(n) + " columns");
        for (int c = 0; c < n; ++c) m(r, c) += Complex(scale_re * row[c], scale_im * row[c]);
      }
    };
    if (j.is_array()) {
      rows(*this, 1.0, 0.0);
    } else {
      rows(at("re"), 1.0, 0.0);
      if (has("im")) rows(at("im"), 0.0, 1.0);
    }
    return m;
  }
};

IndexedAlgebra parse_algebra(const Node& n) {
  auto blocks = n.at("blocks").ints();
  auto weights = n.at("weights").numbers();
  try {
    return IndexedAlgebra::build(blocks, weights);
  } catch (const SpecError&) {
    throw;
  } catch (const Error& e) {
    n.fail(e.what());
  }
}

Group parse_group(const Node& n) {
  std::vector<std::vector<int>> table;
  for (std::size_t r = 0; r < n.size(); ++r) table.push_back(n.at(r).ints());
  try {
    return Group::from_table(table);
  } catch (const Error& e) {
    n.fail(e.what());
  }
}

std::shared_ptr<const HopfData> parse_hopf(const Node& n) {
  const std::string kind = n.at("kind").string();
  if (kind == "function_algebra") return std::make_shared<HopfData>(HopfData::function_algebra(parse_group(n.at("group"))));
  if (kind == "group_algebra") return std::make_shared<HopfData>(HopfData::group_algebra(parse_group(n.at("group"))));
  if (kind != "custom") n.at("kind").fail("unknown Hopf algebra kind '" + kind + "'");

  const int d = n.at("dim").integer();
  if (d <= 0) n.at("dim").fail("dimension must be positive");
  const std::size_t dd = static_cast<std::size_t>(d);
  HopfData::Constants c;
  c.dim = d;
  auto m = n.at("m").complex_array(dd * dd * dd);
  auto delta = n.at("delta").complex_array(dd * dd * dd);
  c.mult.assign(d, Eigen::MatrixXcd::Zero(d, d));
  c.comult.assign(d, Eigen::MatrixXcd::Zero(d, d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int x = 0; x < d; ++x) {
        c.mult[x](a, b) = m[(a * d + b) * d + x];
        c.comult[a](b, x) = delta[(a * d + b) * d + x];
      }
  auto eps = n.at("eps").complex_array(dd);
  c.counit = Eigen::Map<const Eigen::VectorXcd>(eps.data(), d);
  c.antipode.resize(d, d);
  c.star.resize(d, d);
  auto s = n.at("s").complex_array(dd * dd);
  auto st = n.at("star").complex_array(dd * dd);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      c.antipode(b, a) = s[a * d + b];
      c.star(b, a) = st[a * d + b];
    }
  c.unit = Eigen::VectorXcd::Zero(d);
  if (n.has("u")) {
    auto u = n.at("u").complex_array(dd);
    c.unit = Eigen::Map<const Eigen::VectorXcd>(u.data(), d);
  } else {
    c.unit[0] = 1.0;
  }
  if (n.has("labels"))
    for (std::size_t k = 0; k < n.at("labels").size(); ++k) c.labels.push_back(n.at("labels").at(k).string());
  try {
    return std::make_shared<HopfData>(HopfData::custom(std::move(c)));
  } catch (const Error& e) {
    n.fail(e.what());
  }
}

Eigen::MatrixXcd parse_automorphism(const Node& n, const IndexedAlgebra& alg) {
  if (n.has("permutation")) {
    auto perm = n.at("permutation").ints();
    try {
      return automorphism_from_permutation(alg, perm);
    } catch (const Error& e) {
      n.at("permutation").fail(e.what());
    }
  }
  if (n.has("unitary")) {
    auto u = n.at("unitary").matrix(alg.num_indices());
    try {
      return automorphism_from_unitary(alg, u);
    } catch (const Error& e) {
      n.at("unitary").fail(e.what());
    }
  }
  if (n.has("matrix")) return n.at("matrix").matrix(alg.level(1)->num_loops());
  n.fail("expected one of 'permutation', 'unitary' or 'matrix'");
}

CoactionTable parse_coaction(const Node& n, SpecFile& spec) {
  const std::string kind = n.at("kind").string();
  spec.coaction_kind = kind;
  const double tol = spec.run.tolerance;
  if (kind == "translation") {
    if (spec.algebra) n.fail("the translation coaction acts on H itself; omit the algebra section");
    try {
      auto c = translation_coaction(spec.hopf, tol);
      spec.algebra = c.algebra();
      return c;
    } catch (const Error& e) {
      n.fail(e.what());
    }
  }
  if (!spec.algebra) n.fail("an algebra section is required for this coaction");
  const IndexedAlgebra& alg = *spec.algebra;
  if (kind == "group_action") {
    if (spec.hopf->kind() != HopfKind::FunctionAlgebra || !spec.hopf->group())
      n.fail("group actions need a function_algebra Hopf section");
    const Group& g = *spec.hopf->group();
    Node maps = n.at("maps");
    if (static_cast<int>(maps.size()) != g.order()) maps.fail("need one automorphism per group element");
    std::vector<Eigen::MatrixXcd> ms;
    for (std::size_t k = 0; k < maps.size(); ++k) ms.push_back(parse_automorphism(maps.at(k), alg));
    bool invariant = true;
    if (n.has("preserve_phi")) {
      if (!n.at("preserve_phi").j.is_boolean()) n.at("preserve_phi").fail("expected a boolean");
      invariant = n.at("preserve_phi").j.get<bool>();
    }
    try {
      return from_group_action(alg, g, ms, tol, invariant);
    } catch (const Error& e) {
      maps.fail(e.what());
    }
  }
  if (kind == "explicit") {
    Node entries = n.at("entries");
    std::vector<ExplicitEntry> list;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      Node e = entries.at(k);
      auto h = e.at("h_coeffs").complex_array(static_cast<std::size_t>(spec.hopf->dim()));
      list.push_back({e.at("k").integer(), e.at("l").integer(), e.at("i").integer(), e.at("j").integer(),
                      Eigen::Map<const Eigen::VectorXcd>(h.data(), spec.hopf->dim())});
    }
    try {
      return explicit_coaction(alg, spec.hopf, list);
    } catch (const Error& e) {
      entries.fail(e.what());
    }
  }
  n.at("kind").fail("unknown coaction kind '" + kind + "'");
}

}  // namespace

bool is_suite_name(const std::string& name) {
  static const std::vector<std::string> names{"hopf",         "coaction", "invariance", "tower",  "equivariance",
                                              "fixed_points", "closure",  "kac",        "lattice"};
  return std::find(names.begin(), names.end(), name) != names.end();
}

int default_n_max(const IndexedAlgebra& alg) { return alg.dim() <= 4 ? 4 : 3; }

SpecFile parse_spec(const json& doc) {
  Node root{doc, ""};
  if (!doc.is_object()) root.fail("expected a JSON object");
  SpecFile spec;
  if (root.has("run")) {
    Node run = root.at("run");
    if (run.has("n_max")) {
      spec.run.n_max = run.at("n_max").integer();
      if (spec.run.n_max < 1) run.at("n_max").fail("must be at least 1");
    }
    if (run.has("tolerance")) spec.run.tolerance = run.at("tolerance").number();
    if (spec.run.tolerance <= 0) run.at("tolerance").fail("must be positive");
    if (run.has("suites"))
      for (std::size_t k = 0; k < run.at("suites").size(); ++k) {
        Node name = run.at("suites").at(k);
        if (!is_suite_name(name.string())) name.fail("unknown suite '" + name.string() + "'");
        spec.run.suites.push_back(name.string());
      }
    if (run.has("seed")) {
      if (!run.at("seed").j.is_number_unsigned()) run.at("seed").fail("expected a non-negative integer");
      spec.run.seed = run.at("seed").j.get<std::uint64_t>();
    }
  }
  if (root.has("algebra")) spec.algebra = parse_algebra(root.at("algebra"));
  if (root.has("hopf")) spec.hopf = parse_hopf(root.at("hopf"));
  if (root.has("coaction")) {
    if (!spec.hopf) root.fail("a coaction needs a hopf section");
    spec.coaction = parse_coaction(root.at("coaction"), spec);
  }
  if (!spec.algebra) root.fail("no algebra: give an algebra section or a translation coaction");
  if (!root.has("run") || !root.at("run").has("n_max")) spec.run.n_max = default_n_max(*spec.algebra);
  return spec;
}

SpecFile load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path, "cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError(path, std::string("invalid JSON: ") + e.what());
  }
  return parse_spec(doc);
}

}  // namespace coplanar

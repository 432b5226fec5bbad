#include "coplanar/oracles.hpp"

namespace coplanar::oracles {

int group_average_dimension(const CoactionTable& c, int n, double threshold) {
  if (!c.group_action()) throw Error("group average oracle: coaction does not come from a group action");
  if (n < 0) throw Error("group average oracle: negative degree");
  const GroupAction& act = *c.group_action();
  const IndexedAlgebra& alg = c.algebra();
  if (n == 0) return 1;
  const LoopSpace& a = *alg.level(1);
  SpacePtr s = alg.level(n);
  const int N = s->num_loops();
  auto unit_of = [&](int loop) {
    auto [b, t] = a.loop(loop);
    return std::make_pair(a.label(b)[0], a.label(t)[0]);
  };
  auto loop_of = [&](std::pair<int, int> f) { return *a.loop_index(*a.find_label({f.first}), *a.find_label({f.second})); };

  Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(N, N);
  for (const auto& m : act.maps) {
    for (int y = 0; y < N; ++y) {
      auto [b, t] = s->loop(y);
      auto factors = loop_factors(*s, b, t);
      // expand the tensor product of the images of each factor
      std::vector<std::pair<std::vector<std::pair<int, int>>, Complex>> terms{{{}, 1.0}};
      for (auto f : factors) {
        Eigen::VectorXcd img = m.col(loop_of(f));
        std::vector<std::pair<std::vector<std::pair<int, int>>, Complex>> next;
        for (const auto& [fs, coef] : terms)
          for (int k = 0; k < img.size(); ++k)
            if (std::abs(img[k]) > kPruneThreshold) {
              auto g = fs;
              g.push_back(unit_of(k));
              next.emplace_back(std::move(g), coef * img[k]);
            }
        terms = std::move(next);
      }
      for (const auto& [fs, coef] : terms) {
        auto bt = loop_from_factors(*s, fs);
        if (!bt) throw Error("group average oracle: image is not a loop");
        avg(s->loop_index_unchecked(bt->first, bt->second), y) += coef;
      }
    }
  }
  avg /= static_cast<double>(act.maps.size());
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(avg);
  int rank = 0;
  for (int k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()[k] > threshold) ++rank;
  return rank;
}

int algebra_closure_dimension(const std::vector<Tensor>& generators, double threshold) {
  if (generators.empty()) return 1;
  SpacePtr s = generators.front().space();
  for (const auto& g : generators)
    if (!g.space()->same_as(*s)) throw Error("closure oracle: generators of different degrees");

  std::vector<Eigen::VectorXcd> ortho;
  std::vector<Tensor> span;
  auto absorb = [&](const Tensor& x) {
    Eigen::VectorXcd v = x.to_vector();
    for (const auto& o : ortho) v -= o.dot(v) * o;
    for (const auto& o : ortho) v -= o.dot(v) * o;
    double nrm = v.norm();
    if (nrm <= threshold) return false;
    ortho.push_back(v / nrm);
    span.push_back(x);
    return true;
  };
  std::vector<Tensor> gens;
  for (const auto& g : generators) {
    gens.push_back(g);
    gens.push_back(g.adjoint());
  }
  absorb(Tensor::unit(s));
  for (const auto& g : gens) absorb(g);
  for (std::size_t k = 0; k < span.size(); ++k)
    for (const auto& g : gens) absorb(span[k] * g);
  return static_cast<int>(span.size());
}

}  // namespace coplanar::oracles

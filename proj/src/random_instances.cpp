#include "speclab/random_instances.hpp"

#include <algorithm>
#include <functional>

namespace speclab {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

TreeCurve random_tree(Rng& rng, int components) {
  CurveSpec spec;
  for (int i = 1; i <= components; ++i) spec.components.push_back("v" + std::to_string(i));
  std::vector<std::vector<int>> used(static_cast<std::size_t>(components));
  auto fresh_point = [&](int v) {
    while (true) {
      int p = uniform(rng, -3, 3);
      if (std::find(used[v].begin(), used[v].end(), p) == used[v].end()) {
        used[v].push_back(p);
        return p;
      }
    }
  };
  for (int i = 1; i < components; ++i) {
    int parent = uniform(rng, 0, i - 1);
    // Seven coordinates per component bounds the degree at seven.
    if (used[parent].size() >= 7) parent = i - 1;
    int pp = fresh_point(parent);
    int pi = fresh_point(i);
    spec.edges.push_back({spec.components[parent], Rational(pp), spec.components[i], Rational(pi)});
  }
  return TreeCurve(spec);
}

Matrix<Rational> random_invertible(Rng& rng, int n) {
  while (true) {
    Matrix<Rational> m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = uniform(rng, -2, 2);
    if (!is_zero(determinant(m))) return m;
  }
}

GluedBundle random_bundle_on(Rng& rng, const TreeCurve& curve, int rank, int min_degree, int max_degree) {
  std::vector<std::vector<int>> summands;
  for (int v = 0; v < curve.num_components(); ++v) {
    std::vector<int> s;
    for (int i = 0; i < rank; ++i) s.push_back(uniform(rng, min_degree, max_degree));
    summands.push_back(std::move(s));
  }
  std::vector<Matrix<Rational>> gluings;
  for (int e = 0; e < curve.num_edges(); ++e) gluings.push_back(random_invertible(rng, rank));
  return GluedBundle(curve, std::move(summands), std::move(gluings));
}

GluedBundle random_bundle(Rng& rng, const BundleShape& shape) {
  int n = uniform(rng, 1, shape.max_components);
  int r = uniform(rng, 1, shape.max_rank);
  return random_bundle_on(rng, random_tree(rng, n), r, shape.min_degree, shape.max_degree);
}

Multidegree random_multidegree(Rng& rng, const TreeCurve& curve, int lo, int hi) {
  Multidegree md;
  for (int v = 0; v < curve.num_components(); ++v) md.degrees.push_back(uniform(rng, lo, hi));
  return md;
}

std::vector<SplittingType> splitting_types(int rank, int degree, int lo, int hi) {
  std::vector<SplittingType> out;
  std::vector<int> current;
  std::function<void(int, int, int)> go = [&](int left, int remaining, int cap) {
    if (left == 0) {
      if (remaining == 0) out.emplace_back(current);
      return;
    }
    for (int x = std::min(cap, hi); x >= lo; --x) {
      // The rest must fit between lo and x.
      if (remaining - x > (left - 1) * x || remaining - x < (left - 1) * lo) continue;
      current.push_back(x);
      go(left - 1, remaining - x, x);
      current.pop_back();
    }
  };
  go(rank, degree, hi);
  return out;
}

}  // namespace speclab

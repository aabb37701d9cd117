#pragma once

#include <random>
#include <vector>

#include "speclab/bundle.hpp"

namespace speclab {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi);

/// Components "v1".."vn"; component i attaches to a random earlier one.
/// Node coordinates are distinct integers in [-3, 3] on each component.
TreeCurve random_tree(Rng& rng, int components);

/// Entries in [-2, 2], redrawn until invertible.
Matrix<Rational> random_invertible(Rng& rng, int n);

struct BundleShape {
  int max_components = 4;
  int max_rank = 3;
  int min_degree = -3;
  int max_degree = 3;
};

GluedBundle random_bundle(Rng& rng, const BundleShape& shape);
GluedBundle random_bundle_on(Rng& rng, const TreeCurve& curve, int rank, int min_degree, int max_degree);

Multidegree random_multidegree(Rng& rng, const TreeCurve& curve, int lo, int hi);

/// Every weakly decreasing tuple of the given rank with entries in [lo, hi]
/// summing to degree, in decreasing lexicographic order.
std::vector<SplittingType> splitting_types(int rank, int degree, int lo, int hi);

}  // namespace speclab

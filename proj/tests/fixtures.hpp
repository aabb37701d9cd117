#pragma once

#include <random>
#include <string>
#include <vector>

#include "speclab/bundle.hpp"
#include "speclab/curve.hpp"

namespace fixtures {

using namespace speclab;

inline TreeCurve t2() { return TreeCurve(CurveSpec{{"v1", "v2"}, {{"v1", Rational(0), "v2", Rational(0)}}}); }

inline TreeCurve p3() {
  return TreeCurve(CurveSpec{{"v1", "v2", "v3"},
                             {{"v1", Rational(0), "v2", Rational(0)}, {"v2", Rational(1), "v3", Rational(0)}}});
}

inline Matrix<Rational> mat(std::vector<std::vector<int>> rows) {
  Matrix<Rational> m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

/// O(2,0) + O(0,2) on T2 with identity gluing.
inline GluedBundle ex() { return GluedBundle(t2(), {{2, 0}, {0, 2}}, {Matrix<Rational>::identity(2)}); }

inline GluedBundle trivial_rank2() { return GluedBundle(t2(), {{0, 0}, {0, 0}}, {Matrix<Rational>::identity(2)}); }

inline Multidegree md(std::vector<int> d) { return Multidegree{std::move(d)}; }

}  // namespace fixtures

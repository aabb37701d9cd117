#include <doctest.h>

#include <algorithm>

#include "speclab/random_instances.hpp"
#include "speclab/splitting.hpp"

using namespace speclab;

namespace {

SplittingType st(std::vector<int> d) { return SplittingType(std::move(d)); }

SplittingType random_type(Rng& rng, int rank, int lo, int hi) {
  std::vector<int> d;
  for (int i = 0; i < rank; ++i) d.push_back(uniform(rng, lo, hi));
  return SplittingType(d);
}

}  // namespace

TEST_CASE("construction sorts") {
  CHECK(st({1, 3}).degrees() == std::vector<int>{3, 1});
  CHECK(st({0, 2, -1}) == st({2, 0, -1}));
}

TEST_CASE("cohomology on the projective line") {
  CHECK(h0_p1(st({3, 1}), 0) == 6);
  CHECK(h0_p1(st({3, 1}), -4) == 0);
  CHECK(h0_p1(st({2, 0}), -1) == 2);
  CHECK(h1_p1(st({3, 1}), -4) == 2);
  CHECK(h1_p1(st({0}), 0) == 0);
  CHECK(h1_p1(st({2, 0}), -3) == 2);

  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    auto s = random_type(rng, uniform(rng, 1, 5), -6, 6);
    int e = uniform(rng, -10, 10);
    int chi = 0;
    for (int d : s.degrees()) chi += d + e + 1;
    CHECK(h0_p1(s, e) - h1_p1(s, e) == chi);
  }
}

TEST_CASE("dominance order") {
  CHECK(specializes_p1(st({2, 2}), st({3, 1})));
  CHECK_FALSE(specializes_p1(st({3, 1}), st({2, 2})));
  CHECK(specializes_p1(st({3, 1}), st({4, 0})));
  CHECK_FALSE(specializes_p1(st({3, 1}), st({3, 0})));
  CHECK_FALSE(specializes_p1(st({2, 2}), st({2, 1, 1})));
}

TEST_CASE("dominance is a partial order matching pointwise h0") {
  Rng rng(22);
  for (int i = 0; i < 300; ++i) {
    int r = uniform(rng, 1, 4);
    auto types = splitting_types(r, uniform(rng, -4, 4), -5, 5);
    if (types.empty()) continue;
    auto pick = [&] { return types[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(types.size()) - 1))]; };
    auto a = pick(), b = pick(), c = pick();
    CHECK(specializes_p1(a, a));
    if (specializes_p1(a, b) && specializes_p1(b, c)) CHECK(specializes_p1(a, c));
    if (specializes_p1(a, b) && specializes_p1(b, a)) CHECK(a == b);

    bool pointwise = true;
    for (int e = -12; e <= 12; ++e) pointwise = pointwise && h0_p1(a, e) <= h0_p1(b, e);
    CHECK(specializes_p1(a, b) == pointwise);
  }
}

TEST_CASE("splitting types from Hilbert functions") {
  auto h31 = HilbertFunction::tabulate(2, 4, -8, 2, [](int e) { return std::max(0, 4 + e) + std::max(0, 2 + e); });
  CHECK(splitting_from_hilbert(h31) == st({3, 1}));
  CHECK(splitting_from_hilbert(HilbertFunction::of(st({-2}))) == st({-2}));
  CHECK_THROWS_AS(splitting_from_hilbert(HilbertFunction(2, 0, 0, {0, 3})), Error);

  auto h = HilbertFunction::of(st({3, 1}));
  CHECK(h(-10) == 0);
  CHECK(h(5) == 4 + 2 * 6);

  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    auto s = random_type(rng, uniform(rng, 1, 5), -6, 6);
    CHECK(splitting_from_hilbert(HilbertFunction::of(s)) == s);
  }
}

TEST_CASE("merging in a line") {
  CHECK(merge_with_line(st({3, 1}), 3) == st({3, 1}));
  CHECK(merge_with_line(st({1, 1}), 2) == st({2, 0}));
  CHECK(merge_with_line(st({0, 0}), 0) == st({0, 0}));

  Rng rng(24);
  for (int i = 0; i < 200; ++i) {
    auto s = random_type(rng, uniform(rng, 1, 4), -4, 4);
    int d = s.largest() + uniform(rng, 0, 3);
    SplittingType merged({0});
    try {
      merged = merge_with_line(s, d);
    } catch (const Error&) {
      continue;
    }
    CHECK(specializes_p1(s, merged));
    for (int e = -10; e <= 10; ++e) CHECK(h0_p1(merged, e) == std::max(h0_p1(st({d}), e), h0_p1(s, e)));
  }
}

TEST_CASE("removing a line") {
  CHECK(remove_line(st({3, 1}), 3) == st({1}));
  CHECK(remove_line(st({2, 0}), 2) == st({0}));
  CHECK_THROWS_AS(remove_line(st({2, 0}), 1), Error);
}

#include <doctest.h>

#include <functional>
#include <set>

#include "fixtures.hpp"
#include "speclab/random_instances.hpp"

using namespace speclab;
using fixtures::ex;
using fixtures::mat;
using fixtures::md;
using fixtures::t2;

namespace {

// Every multidegree with entries in [lo, hi] summing to total.
void each_in_cube(int n, int lo, int hi, int total, const std::function<void(const Multidegree&)>& f) {
  Multidegree m{std::vector<int>(static_cast<std::size_t>(n), lo)};
  std::function<void(int, int)> go = [&](int v, int sum) {
    if (v == n) {
      if (sum == total) f(m);
      return;
    }
    for (int x = lo; x <= hi; ++x) {
      m.degrees[v] = x;
      go(v + 1, sum + x);
    }
  };
  go(0, 0);
}

GluedBundle small_random(Rng& rng) { return random_bundle(rng, BundleShape{3, 2, -2, 2}); }

}  // namespace

TEST_CASE("make_bundle validates its input") {
  auto c = t2();
  auto e = make_bundle(c, {{"v1", {2, 0}}, {"v2", {0, 2}}}, {{0, Matrix<Rational>::identity(2)}});
  CHECK(e == ex());
  CHECK(e.degree() == 4);
  CHECK_THROWS_AS(make_bundle(c, {{"v1", {2, 0}}, {"v2", {0, 2}}}, {{0, mat({{1, 0}, {0, 0}})}}), Error);
  CHECK_THROWS_AS(make_bundle(c, {{"v1", {2, 0}}, {"v2", {0, 2, 1}}}, {{0, Matrix<Rational>::identity(2)}}), Error);
  CHECK_THROWS_AS(make_bundle(c, {{"v1", {2, 0}}}, {{0, Matrix<Rational>::identity(2)}}), Error);
  CHECK_THROWS_AS(make_bundle(c, {{"v1", {2, 0}}, {"v2", {0, 2}}}, {{1, Matrix<Rational>::identity(2)}}), Error);
}

TEST_CASE("twisting shifts every summand") {
  auto t = twist(ex(), md({-2, -2}));
  CHECK(t.summands(0) == std::vector<int>{0, -2});
  CHECK(t.summands(1) == std::vector<int>{-2, 0});
  CHECK(twist(ex(), md({0, 0})) == ex());
  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    auto b = small_random(rng);
    auto m = random_multidegree(rng, b.curve(), -3, 3);
    CHECK(twist(twist(b, m), -m) == b);
  }
}

TEST_CASE("sections of the example bundle") {
  CHECK(section_basis(ex()).dimension() == 6);
  CHECK(h0(ex()) == 6);
  CHECK(h1(ex()) == 0);
  CHECK(section_basis(twist(ex(), md({-2, -2}))).dimension() == 0);
  CHECK(h0(twist(ex(), md({-2, -1}))) == 1);
  CHECK(h1(twist(ex(), md({-2, -2}))) == 2);
  CHECK(h0_oracle(ex()) == 6);
  CHECK(h0_oracle(twist(ex(), md({-2, -2}))) == 0);

  auto trivial_line = GluedBundle(t2(), {{0}, {0}}, {Matrix<Rational>::identity(1)});
  CHECK(h0(trivial_line) == 1);

  for (const auto& s : section_basis(ex()).sections) CHECK(is_global_section(ex(), s));
}

TEST_CASE("every basis element is a global section and the basis is independent") {
  Rng rng(32);
  for (int i = 0; i < 30; ++i) {
    auto b = small_random(rng);
    b = twist(b, random_multidegree(rng, b.curve(), -2, 2));
    auto basis = section_basis(b);
    CHECK(basis.dimension() == h0_oracle(b));
    for (const auto& s : basis.sections) CHECK(is_global_section(b, s));
  }
}

TEST_CASE("prime field ranks agree with rational ranks") {
  Rng rng(33);
  auto p = Field::parse("p:1000003");
  for (int i = 0; i < 40; ++i) {
    auto b = small_random(rng);
    b = twist(b, random_multidegree(rng, b.curve(), -2, 2));
    CHECK(h0(b, p) == h0(b));
  }
  CHECK_THROWS_AS(Field::parse("p:1000"), Error);
  CHECK_THROWS_AS(Field::parse("z"), Error);
}

TEST_CASE("pullback along an inserted bridge") {
  auto [t3, f] = insert_bridge(t2(), 0);
  auto pb = pullback(ex(), f);
  CHECK(pb.summands(2) == std::vector<int>{0, 0});
  CHECK(h0(pb) == 6);
  CHECK(pullback(ex(), identity_enlargement(t2())) == ex());
}

TEST_CASE("clamp boxes") {
  CHECK(clamp_floor(ex()) == std::vector<int>{-3, -3});
  CHECK(clamp_box(ex(), -4) == std::vector<Multidegree>{md({-3, -1}), md({-2, -2}), md({-1, -3})});
  CHECK(clamp_box(ex(), -7).empty());
  auto line = GluedBundle(TreeCurve::single("v1"), {{2}}, {});
  for (int e = -3; e < 3; ++e) CHECK(clamp_box(line, e) == std::vector<Multidegree>{md({e})});
}

TEST_CASE("dmax") {
  auto d = dmax(ex());
  CHECK(d.d == 3);
  CHECK(d.witness == md({-2, -2}));

  for (int deg = -3; deg <= 3; ++deg) CHECK(dmax(GluedBundle(TreeCurve::single("v1"), {{deg}}, {})).d == deg);

  auto triv = dmax(fixtures::trivial_rank2());
  CHECK(triv.d == 0);
  CHECK(triv.witness == md({-1, 0}));
}

TEST_CASE("dmax agrees with a search over a wide cube") {
  Rng rng(34);
  for (int i = 0; i < 25; ++i) {
    auto b = random_bundle(rng, BundleShape{3, 2, -2, 2});
    const int n = b.curve().num_components();
    auto all_positive = [&](int total) {
      bool ok = true;
      each_in_cube(n, -8, 8, total, [&](const Multidegree& m) { ok = ok && h0(twist(b, m)) > 0; });
      return ok;
    };
    auto [d, witness] = dmax(b);
    CHECK(all_positive(-d));
    CHECK_FALSE(all_positive(-d - 1));
    CHECK(witness.total() == -d - 1);
    CHECK(h0(twist(b, witness)) == 0);
  }
}

TEST_CASE("cohomology invariants on random bundles") {
  Rng rng(35);
  for (int i = 0; i < 60; ++i) {
    auto b = random_bundle(rng, BundleShape{});
    auto m = random_multidegree(rng, b.curve(), -3, 3);
    auto t = twist(b, m);
    const int h = h0(t);
    CAPTURE(i);

    CHECK(h == h0_oracle(t));
    CHECK(h - h1(t) == b.degree() + b.rank() * m.total() + b.rank());

    for (int v = 0; v < b.curve().num_components(); ++v) {
      auto up = twist(t, unit_multidegree(b.curve(), v));
      const int dh0 = h0(up) - h;
      const int dh1 = h1(up) - h1(t);
      CHECK(dh0 >= 0);
      CHECK(dh0 <= b.rank());
      CHECK(dh1 <= 0);
      CHECK(dh1 >= -b.rank());
    }

    auto lo = clamp_floor(b);
    for (int v = 0; v < b.curve().num_components(); ++v) {
      Multidegree below = m;
      below.degrees[v] = lo[v] - uniform(rng, 0, 3);
      Multidegree raised = below;
      raised.degrees[v] = lo[v];
      CHECK(h0(twist(b, below)) == h0(twist(b, raised)));
    }

    if (b.curve().num_edges() > 0) {
      int e = uniform(rng, 0, b.curve().num_edges() - 1);
      auto gl = b.gluings();
      gl[e] = scaled(gl[e], Rational(uniform(rng, 1, 5), uniform(rng, 1, 5)) * (uniform(rng, 0, 1) ? 1 : -1));
      GluedBundle rescaled(b.curve(), b.all_summands(), gl);
      CHECK(h0(twist(rescaled, m)) == h);

      auto [big, f] = insert_bridge(b.curve(), e);
      CHECK(h0(twist(pullback(b, f), pullback(m, f))) == h);
    }
  }
}

TEST_CASE("restriction keeps internal nodes only") {
  auto p = GluedBundle(fixtures::p3(), {{1, 0}, {0, 0}, {2, -1}}, {mat({{1, 1}, {0, 1}}), mat({{0, 1}, {1, 0}})});
  auto r = restrict_to(p, {1, 2});
  CHECK(r.bundle.curve().num_components() == 2);
  CHECK(r.sub.component_to_parent == std::vector<int>{1, 2});
  CHECK(r.bundle.gluing(0) == mat({{0, 1}, {1, 0}}));
  CHECK(r.bundle.summands(1) == std::vector<int>{2, -1});
}

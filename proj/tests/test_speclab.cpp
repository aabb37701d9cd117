#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "speclab/json_io.hpp"
#include "speclab/random_instances.hpp"
#include "speclab/speclab.hpp"

using namespace speclab;
using fixtures::ex;
using fixtures::mat;
using fixtures::md;
using fixtures::t2;

namespace {

SplittingType st(std::vector<int> d) { return SplittingType(std::move(d)); }

Poly lin(int c0, int c1) { return Poly({Rational(c0), Rational(c1)}); }

SplittingType random_source(Rng& rng, const GluedBundle& t, int spread) {
  const int r = t.rank(), deg = t.degree();
  const int mid = deg >= 0 ? deg / r : -((-deg + r - 1) / r);
  auto types = splitting_types(r, deg, mid - spread, mid + spread);
  return types[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(types.size()) - 1))];
}

template <class T>
const T* find_step(const Certificate& c) {
  for (const auto& s : c.steps)
    if (auto* p = std::get_if<T>(&s)) return p;
  return nullptr;
}

template <class T>
T* find_step(Certificate& c) {
  for (auto& s : c.steps)
    if (auto* p = std::get_if<T>(&s)) return p;
  return nullptr;
}

std::vector<Rational> at(const std::vector<Poly>& v, const Rational& x) {
  std::vector<Rational> out;
  for (const auto& p : v) out.push_back(p.eval(x));
  return out;
}

}  // namespace

TEST_CASE("decide on the example bundle") {
  CHECK(decide(ex(), st({3, 1})).yes());

  auto no = decide(ex(), st({4, 0}));
  REQUIRE(no.kind == Verdict::Kind::no);
  CHECK(no.witness->twist == md({-2, -2}));
  CHECK(no.witness->lhs == 0);
  CHECK(no.witness->rhs == 1);

  CHECK(decide(ex(), st({2, 2})).yes());
  CHECK(decide(ex(), st({3, 2})).kind == Verdict::Kind::mismatch);
  CHECK(decide(ex(), st({2, 1, 1})).kind == Verdict::Kind::mismatch);
}

TEST_CASE("find_line_subbundle on small bundles") {
  auto found = find_line_subbundle(ex());
  CHECK(found.enlargement.source.num_components() == 3);
  CHECK(found.enlargement.contracts(2));
  CHECK(found.sub.degrees == md({2, 2, -1}));
  CHECK(subbundle_violations(found.sub).empty());
  CHECK(found.sub.host == pullback(ex(), found.enlargement));

  auto triv = find_line_subbundle(fixtures::trivial_rank2());
  CHECK(triv.enlargement.is_identity());
  CHECK(triv.sub.degrees == md({0, 0}));
  for (const auto& emb : triv.sub.embedding)
    for (const auto& p : emb) CHECK(p.degree() <= 0);

  auto line = GluedBundle(fixtures::p3(), {{2}, {-1}, {0}}, {mat({{3}}), mat({{-1}})});
  auto l = find_line_subbundle(line);
  CHECK(l.enlargement.is_identity());
  CHECK(l.sub.degrees == md({2, -1, 0}));
}

TEST_CASE("find_line_subbundle reaches dmax on random bundles") {
  Rng rng(41);
  for (int i = 0; i < 40; ++i) {
    auto b = random_bundle(rng, BundleShape{3, 3, -2, 2});
    CAPTURE(i);
    auto found = find_line_subbundle(b);
    CHECK(found.sub.degree() == dmax(b).d);
    CHECK(subbundle_violations(found.sub).empty());
    CHECK(found.sub.host == pullback(b, found.enlargement));
    for (int v = 0; v < found.enlargement.source.num_components(); ++v)
      if (found.enlargement.contracts(v)) CHECK(found.sub.degrees[v] == -1);
  }
}

TEST_CASE("saturation") {
  auto plain = saturate(ex(), {{Poly::constant(1), Poly::constant(1)}, {Poly::constant(1), Poly::constant(1)}});
  CHECK(plain.degrees == md({0, 0}));
  CHECK(subbundle_violations(plain).empty());

  auto host = twist(fixtures::trivial_rank2(), md({1, 0}));
  auto raised = saturate(host, {{lin(-1, 1), lin(-1, 1)}, {Poly::constant(-1), Poly::constant(-1)}});
  CHECK(raised.degrees == md({1, 0}));
  CHECK(raised.embedding[0] == std::vector<Poly>{Poly::constant(1), Poly::constant(1)});
  CHECK(subbundle_violations(raised).empty());

  CHECK_THROWS_AS(saturate(ex(), {{Poly(), Poly()}, {Poly(), Poly()}}), Error);
  CHECK_THROWS_AS(saturate(ex(), {{Poly::constant(1), Poly()}, {Poly::constant(2), Poly()}}), Error);
}

TEST_CASE("quotients") {
  auto found = find_line_subbundle(ex());
  auto q = quotient_bundle(found.sub);
  CHECK(q.rank() == 1);
  CHECK(q.all_summands() == std::vector<std::vector<int>>{{0}, {0}, {1}});

  auto constant = saturate(fixtures::trivial_rank2(),
                           {{Poly::constant(1), Poly::constant(0)}, {Poly::constant(1), Poly::constant(0)}});
  auto q0 = quotient_bundle(constant);
  CHECK(q0.all_summands() == std::vector<std::vector<int>>{{0}, {0}});

  auto one = GluedBundle(TreeCurve::single("v1"), {{1, 0}}, {});
  LineSubbundle vanishing{one, md({0}), {{lin(0, 1), Poly()}}, {}};
  CHECK_FALSE(subbundle_violations(vanishing).empty());
  CHECK_THROWS_AS(quotient_bundle(vanishing), Error);
}

TEST_CASE("quotients are exact on fibers and additive in cohomology") {
  Rng rng(42);
  for (int i = 0; i < 25; ++i) {
    auto b = random_bundle(rng, BundleShape{3, 3, -2, 2});
    if (b.rank() < 2) continue;
    CAPTURE(i);
    auto found = find_line_subbundle(b);
    auto [q, proj] = quotient_with_projection(found.sub);
    const auto& host = found.sub.host;
    const auto& curve = host.curve();
    CHECK(q.degree() == host.degree() - found.sub.degree());

    for (int v = 0; v < curve.num_components(); ++v) {
      std::vector<Rational> points;
      for (int e : curve.incident(v)) points.push_back(curve.coordinate_on(e, v));
      for (int k = 0; k < 5; ++k) points.emplace_back(uniform(rng, -50, 50), uniform(rng, 1, 7));
      for (const auto& x : points) {
        auto line = at(found.sub.embedding[v], x);
        Matrix<Rational> p(static_cast<std::size_t>(q.rank()), static_cast<std::size_t>(host.rank()));
        for (int j = 0; j < q.rank(); ++j)
          for (int c = 0; c < host.rank(); ++c) p(j, c) = proj[v][j][c].eval(x);
        CHECK(rank(p) == static_cast<std::size_t>(q.rank()));
        for (const auto& y : p * line) CHECK(is_zero(y));
      }
    }

    auto l = split_bundle(curve, {found.sub.degrees});
    for (int k = 0; k < 4; ++k) {
      auto m = random_multidegree(rng, curve, -3, 2);
      auto L = twist(l, m), E = twist(host, m), Q = twist(q, m);
      CHECK(h0(L) - h0(E) + h0(Q) - h1(L) + h1(E) - h1(Q) == 0);
    }
  }
}

TEST_CASE("certify and verify the example") {
  auto cert = certify(ex(), st({3, 1}));
  REQUIRE(cert.steps.size() == 4);
  auto* dom = std::get_if<DominanceStep>(&cert.steps[0]);
  REQUIRE(dom);
  CHECK(dom->from == st({3, 1}));
  CHECK(dom->to == st({3, 1}));
  auto* enl = std::get_if<EnlargementStep>(&cert.steps[1]);
  REQUIRE(enl);
  CHECK(enl->map.source.num_components() == 3);
  auto* split = std::get_if<SplitOffStep>(&cert.steps[2]);
  REQUIRE(split);
  CHECK(split->sub.degrees == md({2, 2, -1}));
  CHECK(split->quotient.all_summands() == std::vector<std::vector<int>>{{0}, {0}, {1}});
  CHECK(split->qprime == st({1}));
  auto* base = std::get_if<RankOneBase>(&cert.steps[3]);
  REQUIRE(base);
  CHECK(base->degree == 1);
  CHECK(verify_certificate(cert).ok);

  auto refuted = certify(ex(), st({4, 0}));
  REQUIRE(refuted.refutation);
  CHECK(refuted.refutation->twist == md({-2, -2}));
  CHECK(refuted.steps.empty());
  CHECK(verify_certificate(refuted).ok);

  auto line = GluedBundle(TreeCurve::single("v1"), {{5}}, {});
  auto simple = certify(line, st({5}));
  REQUIRE(simple.steps.size() == 1);
  CHECK(std::holds_alternative<RankOneBase>(simple.steps[0]));
  CHECK(verify_certificate(simple).ok);

  CHECK_THROWS_AS(certify(ex(), st({5, 0})), Error);
}

TEST_CASE("tampered certificates are rejected") {
  auto good = certify(ex(), st({3, 1}));

  auto degrees = good;
  find_step<SplitOffStep>(degrees)->sub.degrees = md({2, 2, 0});
  CHECK_FALSE(verify_certificate(degrees).ok);

  auto dominance = good;
  find_step<DominanceStep>(dominance)->to = st({2, 2});
  CHECK_FALSE(verify_certificate(dominance).ok);

  auto quotient = good;
  auto& qs = find_step<SplitOffStep>(quotient)->quotient;
  auto sums = qs.all_summands();
  sums[2] = {0};
  sums[0] = {1};
  qs = GluedBundle(qs.curve(), sums, qs.gluings());
  CHECK_FALSE(verify_certificate(quotient).ok);

  auto base = good;
  find_step<RankOneBase>(base)->degree = 2;
  CHECK_FALSE(verify_certificate(base).ok);

  auto dropped = good;
  dropped.steps.erase(dropped.steps.begin() + 1);
  CHECK_FALSE(verify_certificate(dropped).ok);

  auto witness = certify(ex(), st({4, 0}));
  witness.refutation->twist = md({-1, -3});
  CHECK_FALSE(verify_certificate(witness).ok);

  auto claimed = certify(ex(), st({4, 0}));
  claimed.refutation.reset();
  CHECK_FALSE(verify_certificate(claimed).ok);
}

TEST_CASE("certificates round-trip on random yes instances") {
  Rng rng(43);
  int yes = 0, no = 0;
  for (int i = 0; i < 40; ++i) {
    auto t = random_bundle(rng, BundleShape{3, 3, -2, 2});
    auto s = random_source(rng, t, 3);
    CAPTURE(i);
    auto verdict = decide(t, s);
    auto cert = certify(t, s);
    CHECK(verify_certificate(cert).ok);
    if (verdict.yes()) {
      ++yes;
      CHECK_FALSE(cert.refutation);
    } else {
      ++no;
      REQUIRE(cert.refutation);
      CHECK(cert.refutation->lhs < cert.refutation->rhs);
      CHECK(h0(twist(t, cert.refutation->twist)) == cert.refutation->lhs);
      CHECK(h0_p1(s, cert.refutation->twist.total()) == cert.refutation->rhs);
    }
  }
  CHECK(yes > 0);
  CHECK(no > 0);
}

TEST_CASE("certify passes over a maximal subbundle whose quotient falls short") {
  // The first degree-6 subbundle found leaves a quotient that fails (2,-1);
  // one with bridges at both nodes does not.
  auto t = bundle_from_json(parse_json_text(
      R"({"curve":{"components":["v1","v2","v3"],"edges":[{"a":"v1","pa":"-3","b":"v2","pb":"-3"},)"
      R"({"a":"v2","pa":"3","b":"v3","pb":"-1"}]},"rank":3,"splittings":{"v1":[1,-1,2],"v2":[1,3,3],"v3":[-3,-2,3]},)"
      R"("gluings":[{"edge":0,"matrix":[["2","-2","-2"],["-1","2","-2"],["-1","1","0"]]},)"
      R"({"edge":1,"matrix":[["2","-1","1"],["-1","2","1"],["2","2","0"]]}]})"));
  SplittingType source({4, 4, -1});
  REQUIRE(decide(t, source).yes());
  auto first = find_line_subbundle(t);
  CHECK_FALSE(decide(quotient_bundle(first.sub), SplittingType({2, -1})).yes());

  auto cert = certify(t, source);
  CHECK_FALSE(cert.refutation);
  CHECK(verify_certificate(cert).ok);
}

TEST_CASE("decision properties") {
  Rng rng(44);
  for (int i = 0; i < 60; ++i) {
    auto t = random_bundle(rng, BundleShape{3, 3, -2, 2});
    auto s = random_source(rng, t, 3);
    auto verdict = decide(t, s);
    CAPTURE(i);

    auto l = random_multidegree(rng, t.curve(), -2, 2);
    auto shifted_verdict = decide(twist(t, l), shifted(s, l.total()));
    CHECK(shifted_verdict.kind == verdict.kind);

    if (verdict.yes()) CHECK(dmax(t).d >= s.largest());

    const int r = t.rank(), deg = t.degree();
    const int low = deg >= 0 ? deg / r : -((-deg + r - 1) / r);
    std::vector<int> even(static_cast<std::size_t>(r), low);
    for (int k = 0; k < deg - low * r; ++k) even[static_cast<std::size_t>(k)] += 1;
    CHECK(decide(t, SplittingType(even)).yes());
  }
}

TEST_CASE("decide on one component is dominance") {
  Rng rng(45);
  for (int i = 0; i < 100; ++i) {
    int r = uniform(rng, 1, 4);
    std::vector<int> td, sd;
    for (int k = 0; k < r; ++k) td.push_back(uniform(rng, -4, 4));
    int deg = 0;
    for (int d : td) deg += d;
    auto types = splitting_types(r, deg, -8, 8);
    auto s = types[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(types.size()) - 1))];
    GluedBundle t(TreeCurve::single("v1"), {td}, {});
    CHECK(decide(t, s).yes() == specializes_p1(s, SplittingType(td)));
  }
}

TEST_CASE("decide is transitive along dominance") {
  Rng rng(46);
  int checked = 0;
  for (int i = 0; i < 80; ++i) {
    auto t = random_bundle(rng, BundleShape{3, 3, -2, 2});
    auto types = splitting_types(t.rank(), t.degree(), -8, 8);
    auto b = types[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(types.size()) - 1))];
    if (!decide(t, b).yes()) continue;
    for (const auto& a : types)
      if (specializes_p1(a, b)) {
        CHECK(decide(t, a).yes());
        ++checked;
      }
  }
  CHECK(checked > 0);
}

TEST_CASE("failures in the clamp box are the clamped failures of a wider box") {
  Rng rng(47);
  for (int i = 0; i < 25; ++i) {
    auto t = random_bundle(rng, BundleShape{3, 2, -2, 2});
    auto s = random_source(rng, t, 4);
    std::set<Multidegree> inner, outer;
    for (const auto& w : failing_twists(t, s, 0)) inner.insert(w.twist);
    for (const auto& w : failing_twists(t, s, 3)) outer.insert(clamp_up(t, w.twist));
    CHECK(inner == outer);
    CHECK(decide(t, s).yes() == inner.empty());
  }
}

TEST_CASE("contract_pushforward") {
  auto [t3, f] = insert_bridge(t2(), 0);
  CHECK(contract_pushforward(pullback(ex(), f), f) == ex());

  auto m1 = mat({{1, 2}, {0, 1}});
  auto m2 = mat({{0, 1}, {-1, 3}});
  GluedBundle chain(t3, {{1, 0}, {2, -1}, {0, 0}}, {m1, m2});
  auto flat = contract_pushforward(chain, f);
  CHECK(flat.gluing(0) == m2 * m1);
  Rng rng(48);
  for (int k = 0; k < 6; ++k) {
    auto m = random_multidegree(rng, t2(), -3, 2);
    CHECK(h0(twist(flat, m)) == h0(twist(chain, pullback(m, f))));
  }

  GluedBundle bent(t3, {{1, 0}, {2, -1}, {1, -1}}, {m1, m2});
  CHECK_THROWS_AS(contract_pushforward(bent, f), Error);
}

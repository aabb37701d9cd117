#include <doctest.h>

#include <string>

#include "fixtures.hpp"
#include "speclab/dot.hpp"
#include "speclab/json_io.hpp"
#include "speclab/random_instances.hpp"

using namespace speclab;
using fixtures::ex;
using fixtures::t2;

namespace {

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::string error_of(const std::string& text) {
  try {
    bundle_from_json(parse_json_text(text));
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("curve and bundle JSON") {
  auto j = curve_to_json(t2());
  CHECK(j.dump() == R"({"components":["v1","v2"],"edges":[{"a":"v1","pa":"0","b":"v2","pb":"0"}]})");
  CHECK(curve_from_json(j) == t2());

  auto text = R"({"curve":{"components":["v1","v2"],"edges":[{"a":"v1","pa":"0","b":"v2","pb":"0"}]},)"
              R"("rank":2,"splittings":{"v1":[2,0],"v2":[0,2]},"gluings":[{"edge":0,"matrix":[["1","0"],["0","1"]]}]})";
  auto b = bundle_from_json(parse_json_text(text));
  CHECK(b == ex());
  CHECK(bundle_to_json(b).dump() == text);
}

TEST_CASE("field elements are canonical strings") {
  CHECK(format_rational(parse_rational("-6/4")) == "-3/2");
  CHECK(format_rational(parse_rational("4/2")) == "2");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
}

TEST_CASE("malformed input names the offending field") {
  CHECK(error_of("{").find("line") != std::string::npos);
  CHECK(error_of(R"({"curve":{"components":["v1"],"edges":[]},"rank":1,"splittings":{"v1":["x"]},"gluings":[]})")
            .find("splittings") != std::string::npos);
  CHECK(error_of(R"({"curve":{"components":["v1","v2"],"edges":[{"a":"v1","pa":"0","b":"v2","pb":"0"}]},)"
                 R"("rank":1,"splittings":{"v1":[0],"v2":[0]},"gluings":[{"edge":0,"matrix":[["1","2"]]}]})")
            .find("gluings[0]") != std::string::npos);
}

TEST_CASE("random bundles and certificates survive a JSON round trip") {
  Rng rng(51);
  for (int i = 0; i < 30; ++i) {
    auto b = random_bundle(rng, BundleShape{4, 3, -3, 3});
    auto j = bundle_to_json(b);
    CHECK(bundle_from_json(parse_json_text(j.dump())) == b);
  }

  auto cert = certify(ex(), SplittingType({3, 1}));
  auto j = certificate_to_json(cert);
  CHECK(j["claim"]["source"] == Json::array({3, 1}));
  CHECK(j["steps"][1]["kind"] == "enlarge");
  auto back = certificate_from_json(parse_json_text(j.dump()));
  CHECK(certificate_to_json(back).dump() == j.dump());
  CHECK(verify_certificate(back).ok);

  auto refuted = certificate_to_json(certify(ex(), SplittingType({4, 0})));
  CHECK(refuted["refutation"]["twist"] == Json{{"v1", -2}, {"v2", -2}});
  CHECK(certificate_to_json(certificate_from_json(refuted)).dump() == refuted.dump());
}

TEST_CASE("flag syntax") {
  auto c = t2();
  CHECK(parse_multidegree_flag(c, "v1:-2,v2:3") == Multidegree{{-2, 3}});
  CHECK(parse_multidegree_flag(c, "v2:1") == Multidegree{{0, 1}});
  CHECK(parse_multidegree_flag(c, "") == Multidegree{{0, 0}});
  CHECK_THROWS_AS(parse_multidegree_flag(c, "v9:1"), InputError);
  CHECK_THROWS_AS(parse_multidegree_flag(c, "v1=1"), InputError);
  CHECK(parse_splitting_flag("1,3") == SplittingType({3, 1}));
  CHECK_THROWS_AS(parse_splitting_flag("3,,1"), InputError);
}

TEST_CASE("DOT export") {
  auto dot = curve_to_dot(t2());
  CHECK(dot.rfind("graph curve {", 0) == 0);
  CHECK(count(dot, "[label=\"v") == 2);
  CHECK(count(dot, " -- ") == 1);
  CHECK(dot.find("\"0 | 0\"") != std::string::npos);

  auto cert = certify(ex(), SplittingType({3, 1}));
  auto* enl = std::get_if<EnlargementStep>(&cert.steps[1]);
  REQUIRE(enl);
  auto t3 = enlargement_to_dot(enl->map);
  CHECK(count(t3, " -- ") == 2);
  CHECK(count(t3, "fillcolor=gold") == 1);

  auto full = certificate_to_dot(cert);
  CHECK(full.find("cluster_step1") != std::string::npos);
  CHECK(count(full, "fillcolor=gold") == 1);

  Certificate empty{SplittingType({3, 1}), ex(), {}, std::nullopt};
  auto lone = certificate_to_dot(empty);
  CHECK(count(lone, "[label=") == 1);
  CHECK(lone.find("claim") != std::string::npos);
  CHECK(lone.find("->") == std::string::npos);
}

// speclab: command-line front end.
//
//   speclab h0 -i bundle.json [--twist v1:-2,v2:-2] [--field q|p:<prime>]
//   speclab h1 -i bundle.json [--twist ...]
//   speclab dmax -i bundle.json
//   speclab decide -i bundle.json --target 3,1
//   speclab certify -i bundle.json --target 3,1
//   speclab verify -i certificate.json
//   speclab box -i bundle.json --e -3
//   speclab oracle-check [--seed 1] [--cases 50]
//   speclab export-dot -i curve_or_bundle_or_certificate.json
//
// Results go to stdout as one JSON document (DOT for export-dot). Exit
// codes: 0 success, 1 malformed input, 2 rank/degree mismatch, 3 negative
// answer (decide says no, verify rejects, oracle-check finds a discrepancy).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "speclab/dot.hpp"
#include "speclab/json_io.hpp"
#include "speclab/random_instances.hpp"
#include "speclab/speclab.hpp"

using namespace speclab;

namespace {

struct Options {
  std::string input;
  std::string twist;
  std::string target;
  std::string field = "q";
  std::uint64_t seed = 1;
  int cases = 50;
  int e = 0;
};

Json read_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

void emit(const Json& j) { std::cout << j.dump() << '\n'; }

int cmd_cohomology(const Options& o) {
  auto bundle = bundle_from_json(read_input(o.input));
  auto field = Field::parse(o.field);
  auto twisted = twist(bundle, parse_multidegree_flag(bundle.curve(), o.twist));
  int h = h0(twisted, field);
  emit(Json{{"h0", h}, {"h1", h - euler_characteristic(twisted)}});
  return 0;
}

int cmd_dmax(const Options& o) {
  auto bundle = bundle_from_json(read_input(o.input));
  auto result = dmax(bundle, Field::parse(o.field));
  emit(Json{{"dmax", result.d}, {"witness", multidegree_to_json(bundle.curve(), result.witness)}});
  return 0;
}

int cmd_decide(const Options& o) {
  auto bundle = bundle_from_json(read_input(o.input));
  auto source = parse_splitting_flag(o.target);
  auto verdict = decide(bundle, source, Field::parse(o.field));
  switch (verdict.kind) {
    case Verdict::Kind::yes:
      emit(Json{{"verdict", "yes"}});
      return 0;
    case Verdict::Kind::no: {
      const auto& w = *verdict.witness;
      emit(Json{{"verdict", "no"},
                {"witness", multidegree_to_json(bundle.curve(), w.twist)},
                {"lhs", w.lhs},
                {"rhs", w.rhs}});
      return 3;
    }
    case Verdict::Kind::mismatch:
      emit(Json{{"verdict", "mismatch"}, {"reason", verdict.reason}});
      return 2;
  }
  return 1;
}

int cmd_certify(const Options& o) {
  auto bundle = bundle_from_json(read_input(o.input));
  auto source = parse_splitting_flag(o.target);
  auto verdict = decide(bundle, source);
  if (verdict.kind == Verdict::Kind::mismatch) {
    emit(Json{{"verdict", "mismatch"}, {"reason", verdict.reason}});
    return 2;
  }
  emit(certificate_to_json(certify(bundle, source)));
  return 0;
}

int cmd_verify(const Options& o) {
  auto cert = certificate_from_json(read_input(o.input));
  auto report = verify_certificate(cert);
  Json out{{"valid", report.ok}};
  if (!report.ok) out["problems"] = report.problems;
  emit(out);
  return report.ok ? 0 : 3;
}

int cmd_box(const Options& o) {
  auto bundle = bundle_from_json(read_input(o.input));
  auto field = Field::parse(o.field);
  const auto& curve = bundle.curve();
  Json floor = Json::object();
  auto lo = clamp_floor(bundle);
  for (int v = 0; v < curve.num_components(); ++v) floor[curve.id(v)] = lo[v];
  Json entries = Json::array();
  for (const auto& md : clamp_box(bundle, o.e))
    entries.push_back(Json{{"twist", multidegree_to_json(curve, md)}, {"h0", h0(twist(bundle, md), field)}});
  emit(Json{{"e", o.e}, {"floor", floor}, {"size", entries.size()}, {"box", entries}});
  return 0;
}

// h0 against the oracle on every case and box completeness on a random
// source type for every case of rank at most 2.
int cmd_oracle_check(const Options& o) {
  Rng rng(o.seed);
  Json h0_bad = Json::array();
  Json box_bad = Json::array();
  int h0_checks = 0, box_checks = 0;
  for (int c = 0; c < o.cases; ++c) {
    auto bundle = random_bundle(rng, BundleShape{});
    for (int k = 0; k < 5; ++k) {
      auto md = random_multidegree(rng, bundle.curve(), -3, 3);
      auto twisted = twist(bundle, md);
      int a = h0(twisted), b = h0_oracle(twisted);
      ++h0_checks;
      if (a != b)
        h0_bad.push_back(Json{{"case", c}, {"bundle", bundle_to_json(bundle)},
                              {"twist", multidegree_to_json(bundle.curve(), md)}, {"h0", a}, {"oracle", b}});
    }
    if (bundle.rank() > 2) continue;
    const int r = bundle.rank(), deg = bundle.degree();
    const int mid = deg >= 0 ? deg / r : -((-deg + r - 1) / r);
    auto types = splitting_types(r, deg, mid - 4, mid + 4);
    const auto& source = types[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(types.size()) - 1))];
    std::set<Multidegree> inner, outer;
    for (const auto& w : failing_twists(bundle, source, 0)) inner.insert(w.twist);
    for (const auto& w : failing_twists(bundle, source, 3)) outer.insert(clamp_up(bundle, w.twist));
    ++box_checks;
    if (inner != outer)
      box_bad.push_back(Json{{"case", c}, {"bundle", bundle_to_json(bundle)}, {"source", splitting_to_json(source)}});
  }
  emit(Json{{"seed", o.seed},
            {"cases", o.cases},
            {"h0_checks", h0_checks},
            {"h0_discrepancies", h0_bad},
            {"box_checks", box_checks},
            {"box_discrepancies", box_bad}});
  return h0_bad.empty() && box_bad.empty() ? 0 : 3;
}

int cmd_export_dot(const Options& o) {
  auto j = read_input(o.input);
  if (j.contains("claim"))
    std::cout << certificate_to_dot(certificate_from_json(j));
  else if (j.contains("map"))
    std::cout << enlargement_to_dot(enlargement_from_json(j));
  else if (j.contains("rank"))
    std::cout << curve_to_dot(bundle_from_json(j).curve());
  else
    std::cout << curve_to_dot(curve_from_json(j));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Specializations of vector bundles from P^1 to trees of rational curves"};
  app.require_subcommand(1);
  Options o;

  auto input = [&](CLI::App* sub) { sub->add_option("-i,--input", o.input, "input JSON file")->required(); };
  auto field = [&](CLI::App* sub) { sub->add_option("--field", o.field, "q or p:<prime>"); };

  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> verbs;
  auto* h0c = app.add_subcommand("h0", "sections of a twist");
  auto* h1c = app.add_subcommand("h1", "sections and first cohomology of a twist");
  for (auto* sub : {h0c, h1c}) {
    input(sub);
    field(sub);
    sub->add_option("--twist", o.twist, "multidegree as id:int,...");
    verbs.emplace_back(sub, cmd_cohomology);
  }
  auto* dm = app.add_subcommand("dmax", "maximal d with sections in every twist of total -d");
  input(dm);
  field(dm);
  verbs.emplace_back(dm, cmd_dmax);

  auto* dec = app.add_subcommand("decide", "decide whether a splitting type specializes to the bundle");
  input(dec);
  field(dec);
  dec->add_option("--target", o.target, "splitting type, e.g. 3,1")->required();
  verbs.emplace_back(dec, cmd_decide);

  auto* cert = app.add_subcommand("certify", "produce a certificate or a refutation");
  input(cert);
  cert->add_option("--target", o.target, "splitting type, e.g. 3,1")->required();
  verbs.emplace_back(cert, cmd_certify);

  auto* ver = app.add_subcommand("verify", "check a certificate");
  input(ver);
  verbs.emplace_back(ver, cmd_verify);

  auto* box = app.add_subcommand("box", "list the clamp box of a total degree with h0 values");
  input(box);
  field(box);
  box->add_option("--e", o.e, "total degree")->required();
  verbs.emplace_back(box, cmd_box);

  auto* orc = app.add_subcommand("oracle-check", "compare h0 with the oracle on seeded random bundles");
  orc->add_option("--seed", o.seed, "random seed");
  orc->add_option("--cases", o.cases, "number of random bundles")->check(CLI::NonNegativeNumber);
  verbs.emplace_back(orc, cmd_oracle_check);

  auto* dot = app.add_subcommand("export-dot", "render a curve, bundle, enlargement or certificate as DOT");
  input(dot);
  verbs.emplace_back(dot, cmd_export_dot);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "speclab: " << e.what() << '\n';
    return 1;
  }

  try {
    for (const auto& [sub, run] : verbs)
      if (sub->parsed()) return run(o);
  } catch (const Error& err) {
    emit(Json{{"error", err.what()}});
    std::cerr << "speclab: " << err.what() << '\n';
    return 1;
  }
  return 1;
}

#include "speclab/json_io.hpp"

#include <charconv>
#include <set>

namespace speclab {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) { throw InputError(path + ": " + what); }

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(path, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string child(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }
std::string child(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  auto v = j.get<long long>();
  if (v < -1'000'000 || v > 1'000'000) bad(path, "integer out of range");
  return static_cast<int>(v);
}

const std::string& as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get_ref<const std::string&>();
}

Rational as_rational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  try {
    return parse_rational(as_string(j, path));
  } catch (const InputError&) {
    throw;
  } catch (const Error& err) {
    bad(path, err.what());
  }
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  return j;
}

std::vector<int> int_list(const Json& j, const std::string& path) {
  std::vector<int> out;
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) out.push_back(as_int(j[i], child(path, i)));
  return out;
}

Json rational_to_json(const Rational& x) { return format_rational(x); }

Json poly_to_json(const Poly& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs()) out.push_back(rational_to_json(c));
  return out;
}

Poly poly_from_json(const Json& j, const std::string& path) {
  std::vector<Rational> coeffs;
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) coeffs.push_back(as_rational(j[i], child(path, i)));
  return Poly(std::move(coeffs));
}

Json matrix_to_json(const Matrix<Rational>& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rational_to_json(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix<Rational> matrix_from_json(const Json& j, const std::string& path, std::size_t n) {
  if (as_array(j, path).size() != n) bad(path, "expected " + std::to_string(n) + " rows");
  Matrix<Rational> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto rp = child(path, i);
    if (as_array(j[i], rp).size() != n) bad(rp, "expected " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = as_rational(j[i][k], child(rp, k));
  }
  return m;
}

int component(const TreeCurve& curve, const Json& j, const std::string& path) {
  const auto& id = as_string(j, path);
  int v = curve.index_of(id);
  if (v < 0) bad(path, "unknown component \"" + id + "\"");
  return v;
}

TreeCurve curve_at(const Json& j, const std::string& path) {
  CurveSpec spec;
  auto cp = child(path, "components");
  const auto& comps = as_array(field(j, "components", path), cp);
  for (std::size_t i = 0; i < comps.size(); ++i) spec.components.push_back(as_string(comps[i], child(cp, i)));
  auto ep = child(path, "edges");
  const auto& edges = as_array(field(j, "edges", path), ep);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto p = child(ep, i);
    NodeSpec node;
    node.a = as_string(field(edges[i], "a", p), child(p, "a"));
    node.b = as_string(field(edges[i], "b", p), child(p, "b"));
    for (auto [key, slot] : {std::pair{"pa", &node.pa}, std::pair{"pb", &node.pb}}) {
      const auto& x = field(edges[i], key, p);
      if (x.is_string() && (x.get<std::string>() == "inf" || x.get<std::string>() == "infinity"))
        *slot = std::nullopt;
      else
        *slot = as_rational(x, child(p, key));
    }
    spec.edges.push_back(std::move(node));
  }
  try {
    return TreeCurve(spec);
  } catch (const InvalidCurve& err) {
    bad(path.empty() ? "curve" : path, err.what());
  }
}

GluedBundle bundle_at(const Json& j, const std::string& path) {
  auto curve = curve_at(field(j, "curve", path), child(path, "curve"));
  const int rank = as_int(field(j, "rank", path), child(path, "rank"));
  if (rank < 1) bad(child(path, "rank"), "rank must be at least 1");
  auto sp = child(path, "splittings");
  const auto& splittings = field(j, "splittings", path);
  if (!splittings.is_object()) bad(sp, "expected an object keyed by component id");
  std::map<std::string, std::vector<int>> summands;
  for (auto it = splittings.begin(); it != splittings.end(); ++it) {
    auto p = child(sp, it.key().c_str());
    if (curve.index_of(it.key()) < 0) bad(p, "unknown component");
    auto list = int_list(it.value(), p);
    if (static_cast<int>(list.size()) != rank)
      bad(p, "rank mismatch: " + std::to_string(list.size()) + " summands, expected " + std::to_string(rank));
    summands[it.key()] = std::move(list);
  }
  for (const auto& id : curve.ids())
    if (!summands.count(id)) bad(sp, "no splitting for component \"" + id + "\"");
  auto gp = child(path, "gluings");
  const auto& gluings = as_array(field(j, "gluings", path), gp);
  std::map<int, Matrix<Rational>> mats;
  for (std::size_t i = 0; i < gluings.size(); ++i) {
    auto p = child(gp, i);
    int e = as_int(field(gluings[i], "edge", p), child(p, "edge"));
    if (e < 0 || e >= curve.num_edges()) bad(child(p, "edge"), "no edge " + std::to_string(e));
    if (mats.count(e)) bad(child(p, "edge"), "edge " + std::to_string(e) + " glued twice");
    mats.emplace(e, matrix_from_json(field(gluings[i], "matrix", p), child(p, "matrix"), static_cast<std::size_t>(rank)));
  }
  for (int e = 0; e < curve.num_edges(); ++e)
    if (!mats.count(e)) bad(gp, "no gluing for edge " + std::to_string(e));
  try {
    return make_bundle(curve, summands, mats);
  } catch (const InputError&) {
    throw;
  } catch (const Error& err) {
    bad(path.empty() ? "bundle" : path, err.what());
  }
}

Enlargement enlargement_at(const Json& j, const std::string& path) {
  Enlargement f{curve_at(field(j, "source", path), child(path, "source")),
                curve_at(field(j, "target", path), child(path, "target")),
                {}};
  auto mp = child(path, "map");
  const auto& map = field(j, "map", path);
  if (!map.is_object()) bad(mp, "expected an object keyed by source component id");
  for (const auto& id : f.source.ids()) {
    auto it = map.find(id);
    if (it == map.end()) bad(mp, "no image for source component \"" + id + "\"");
    if (it->is_null())
      f.component_map.push_back(std::nullopt);
    else
      f.component_map.push_back(component(f.target, *it, child(mp, id.c_str())));
  }
  if (map.size() != f.source.ids().size()) bad(mp, "map mentions components outside the source");
  try {
    validate_enlargement(f);
  } catch (const Error& err) {
    bad(path.empty() ? "enlargement" : path, err.what());
  }
  return f;
}

LineSubbundle subbundle_at(const Json& j, const std::string& path) {
  LineSubbundle sub{bundle_at(field(j, "host", path), child(path, "host")), {}, {}, {}};
  const auto& curve = sub.host.curve();
  sub.degrees = multidegree_from_json(curve, field(j, "degrees", path), child(path, "degrees"));
  auto ep = child(path, "embedding");
  const auto& emb = field(j, "embedding", path);
  if (!emb.is_object()) bad(ep, "expected an object keyed by component id");
  for (const auto& id : curve.ids()) {
    auto p = child(ep, id.c_str());
    auto it = emb.find(id);
    if (it == emb.end()) bad(ep, "no embedding on component \"" + id + "\"");
    if (as_array(*it, p).size() != static_cast<std::size_t>(sub.host.rank()))
      bad(p, "expected " + std::to_string(sub.host.rank()) + " polynomials");
    std::vector<Poly> polys;
    for (std::size_t i = 0; i < it->size(); ++i) polys.push_back(poly_from_json((*it)[i], child(p, i)));
    sub.embedding.push_back(std::move(polys));
  }
  auto sp = child(path, "scalars");
  const auto& scalars = as_array(field(j, "scalars", path), sp);
  sub.scalars.assign(static_cast<std::size_t>(curve.num_edges()), Rational(0));
  std::set<int> seen;
  for (std::size_t i = 0; i < scalars.size(); ++i) {
    auto p = child(sp, i);
    int e = as_int(field(scalars[i], "edge", p), child(p, "edge"));
    if (e < 0 || e >= curve.num_edges()) bad(child(p, "edge"), "no edge " + std::to_string(e));
    if (!seen.insert(e).second) bad(child(p, "edge"), "edge " + std::to_string(e) + " listed twice");
    sub.scalars[e] = as_rational(field(scalars[i], "scalar", p), child(p, "scalar"));
  }
  if (static_cast<int>(seen.size()) != curve.num_edges()) bad(sp, "every edge needs a scalar");
  return sub;
}

FailureWitness witness_at(const TreeCurve& curve, const Json& j, const std::string& path) {
  return {multidegree_from_json(curve, field(j, "twist", path), child(path, "twist")),
          as_int(field(j, "lhs", path), child(path, "lhs")), as_int(field(j, "rhs", path), child(path, "rhs"))};
}

}  // namespace

Json parse_json_text(const std::string& text, std::string_view source_name) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& err) {
    throw InputError(std::string(source_name) + ": " + err.what());
  }
}

Json curve_to_json(const TreeCurve& curve) {
  Json out;
  out["components"] = curve.ids();
  Json edges = Json::array();
  for (const auto& e : curve.edges())
    edges.push_back(Json{{"a", curve.id(e.a)}, {"pa", format_rational(e.pa)}, {"b", curve.id(e.b)}, {"pb", format_rational(e.pb)}});
  out["edges"] = std::move(edges);
  return out;
}

TreeCurve curve_from_json(const Json& j) { return curve_at(j, ""); }

Json splitting_to_json(const SplittingType& st) { return st.degrees(); }

SplittingType splitting_from_json(const Json& j, const std::string& path) {
  auto list = int_list(j, path);
  if (list.empty()) bad(path, "splitting type needs at least one entry");
  return SplittingType(std::move(list));
}

Json multidegree_to_json(const TreeCurve& curve, const Multidegree& md) {
  Json out = Json::object();
  for (int v = 0; v < curve.num_components(); ++v) out[curve.id(v)] = md[v];
  return out;
}

Multidegree multidegree_from_json(const TreeCurve& curve, const Json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object keyed by component id");
  Multidegree md = zero_multidegree(curve);
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto p = child(path, it.key().c_str());
    int v = curve.index_of(it.key());
    if (v < 0) bad(p, "unknown component");
    md.degrees[v] = as_int(it.value(), p);
  }
  return md;
}

Json bundle_to_json(const GluedBundle& bundle) {
  Json out;
  out["curve"] = curve_to_json(bundle.curve());
  out["rank"] = bundle.rank();
  Json splittings = Json::object();
  for (int v = 0; v < bundle.curve().num_components(); ++v) splittings[bundle.curve().id(v)] = bundle.summands(v);
  out["splittings"] = std::move(splittings);
  Json gluings = Json::array();
  for (int e = 0; e < bundle.curve().num_edges(); ++e)
    gluings.push_back(Json{{"edge", e}, {"matrix", matrix_to_json(bundle.gluing(e))}});
  out["gluings"] = std::move(gluings);
  return out;
}

GluedBundle bundle_from_json(const Json& j) { return bundle_at(j, ""); }

Json enlargement_to_json(const Enlargement& f) {
  Json map = Json::object();
  for (int v = 0; v < f.source.num_components(); ++v) {
    const auto& m = f.component_map[v];
    map[f.source.id(v)] = m ? Json(f.target.id(*m)) : Json(nullptr);
  }
  return Json{{"source", curve_to_json(f.source)}, {"target", curve_to_json(f.target)}, {"map", std::move(map)}};
}

Enlargement enlargement_from_json(const Json& j) { return enlargement_at(j, ""); }

Json subbundle_to_json(const LineSubbundle& sub) {
  const auto& curve = sub.host.curve();
  Json emb = Json::object();
  for (int v = 0; v < curve.num_components(); ++v) {
    Json polys = Json::array();
    for (const auto& p : sub.embedding[v]) polys.push_back(poly_to_json(p));
    emb[curve.id(v)] = std::move(polys);
  }
  Json scalars = Json::array();
  for (std::size_t e = 0; e < sub.scalars.size(); ++e)
    scalars.push_back(Json{{"edge", e}, {"scalar", format_rational(sub.scalars[e])}});
  return Json{{"host", bundle_to_json(sub.host)},
              {"degrees", multidegree_to_json(curve, sub.degrees)},
              {"embedding", std::move(emb)},
              {"scalars", std::move(scalars)}};
}

LineSubbundle subbundle_from_json(const Json& j) { return subbundle_at(j, ""); }

Json certificate_to_json(const Certificate& cert) {
  Json out;
  out["claim"] = Json{{"source", splitting_to_json(cert.source)}, {"target", bundle_to_json(cert.target)}};
  Json steps = Json::array();
  for (const auto& step : cert.steps) {
    if (auto* d = std::get_if<DominanceStep>(&step)) {
      steps.push_back(Json{{"kind", "dominance"}, {"from", splitting_to_json(d->from)}, {"to", splitting_to_json(d->to)}});
    } else if (auto* e = std::get_if<EnlargementStep>(&step)) {
      steps.push_back(Json{{"kind", "enlarge"}, {"enlargement", enlargement_to_json(e->map)}});
    } else if (auto* s = std::get_if<SplitOffStep>(&step)) {
      steps.push_back(Json{{"kind", "splitoff"},
                           {"subbundle", subbundle_to_json(s->sub)},
                           {"quotient", bundle_to_json(s->quotient)},
                           {"qprime", splitting_to_json(s->qprime)}});
    } else {
      steps.push_back(Json{{"kind", "rank1"}, {"degree", std::get<RankOneBase>(step).degree}});
    }
  }
  out["steps"] = std::move(steps);
  if (cert.refutation) {
    const auto& w = *cert.refutation;
    out["refutation"] = Json{{"twist", multidegree_to_json(cert.target.curve(), w.twist)}, {"lhs", w.lhs}, {"rhs", w.rhs}};
  }
  return out;
}

Certificate certificate_from_json(const Json& j) {
  const auto& claim = field(j, "claim", "");
  Certificate cert{splitting_from_json(field(claim, "source", "claim"), "claim.source"),
                   bundle_at(field(claim, "target", "claim"), "claim.target"),
                   {},
                   std::nullopt};
  const auto& steps = as_array(field(j, "steps", ""), "steps");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    auto p = child("steps", i);
    const auto& kind = as_string(field(steps[i], "kind", p), child(p, "kind"));
    if (kind == "dominance") {
      cert.steps.emplace_back(DominanceStep{splitting_from_json(field(steps[i], "from", p), child(p, "from")),
                                            splitting_from_json(field(steps[i], "to", p), child(p, "to"))});
    } else if (kind == "enlarge") {
      cert.steps.emplace_back(EnlargementStep{enlargement_at(field(steps[i], "enlargement", p), child(p, "enlargement"))});
    } else if (kind == "splitoff") {
      cert.steps.emplace_back(SplitOffStep{subbundle_at(field(steps[i], "subbundle", p), child(p, "subbundle")),
                                           bundle_at(field(steps[i], "quotient", p), child(p, "quotient")),
                                           splitting_from_json(field(steps[i], "qprime", p), child(p, "qprime"))});
    } else if (kind == "rank1") {
      cert.steps.emplace_back(RankOneBase{as_int(field(steps[i], "degree", p), child(p, "degree"))});
    } else {
      bad(child(p, "kind"), "unknown step kind \"" + kind + "\"");
    }
  }
  if (auto it = j.find("refutation"); it != j.end() && !it->is_null())
    cert.refutation = witness_at(cert.target.curve(), *it, "refutation");
  return cert;
}

Multidegree parse_multidegree_flag(const TreeCurve& curve, std::string_view text) {
  Multidegree md = zero_multidegree(curve);
  std::set<int> seen;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    auto colon = item.rfind(':');
    if (colon == std::string_view::npos) bad("--twist", "expected id:int, got \"" + std::string(item) + "\"");
    std::string id(item.substr(0, colon));
    auto number = item.substr(colon + 1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
    if (ec != std::errc{} || ptr != number.data() + number.size() || number.empty())
      bad("--twist", "malformed degree in \"" + std::string(item) + "\"");
    int v = curve.index_of(id);
    if (v < 0) bad("--twist", "unknown component \"" + id + "\"");
    if (!seen.insert(v).second) bad("--twist", "component \"" + id + "\" given twice");
    md.degrees[v] = value;
  }
  return md;
}

SplittingType parse_splitting_flag(std::string_view text) {
  std::vector<int> degrees;
  while (true) {
    auto comma = text.find(',');
    auto item = text.substr(0, comma);
    int value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
      bad("--target", "malformed splitting entry \"" + std::string(item) + "\"");
    degrees.push_back(value);
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return SplittingType(std::move(degrees));
}

}  // namespace speclab

#include "speclab/curve.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace speclab {

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    parent[static_cast<std::size_t>(y)] = x;
    return true;
  }
};

std::string fresh_id(const TreeCurve& curve) {
  if (curve.index_of("b") < 0) return "b";
  for (int k = 2;; ++k) {
    std::string candidate = "b" + std::to_string(k);
    if (curve.index_of(candidate) < 0) return candidate;
  }
}

}  // namespace

std::string ValidationReport::summary() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v;
  }
  return out;
}

ValidationReport validate_tree(const CurveSpec& spec) {
  ValidationReport report;
  auto& out = report.violations;
  if (spec.components.empty()) out.push_back("curve has no components");

  std::map<std::string, int> index;
  for (std::size_t i = 0; i < spec.components.size(); ++i) {
    if (spec.components[i].empty()) out.push_back("empty component id");
    if (!index.emplace(spec.components[i], static_cast<int>(i)).second)
      out.push_back("duplicate component id \"" + spec.components[i] + "\"");
  }

  DisjointSets sets(static_cast<int>(spec.components.size()));
  std::map<int, std::vector<std::pair<Rational, std::size_t>>> points;
  for (std::size_t e = 0; e < spec.edges.size(); ++e) {
    const auto& edge = spec.edges[e];
    auto ia = index.find(edge.a);
    auto ib = index.find(edge.b);
    const std::string label = "edge " + std::to_string(e);
    if (ia == index.end()) out.push_back(label + ": unknown component \"" + edge.a + "\"");
    if (ib == index.end()) out.push_back(label + ": unknown component \"" + edge.b + "\"");
    if (!edge.pa) out.push_back(label + ": node at infinity on \"" + edge.a + "\"");
    if (!edge.pb) out.push_back(label + ": node at infinity on \"" + edge.b + "\"");
    if (ia == index.end() || ib == index.end()) continue;
    if (ia->second == ib->second) {
      out.push_back(label + ": cycle detected (self-node on \"" + edge.a + "\")");
      continue;
    }
    if (!sets.unite(ia->second, ib->second)) out.push_back(label + ": cycle detected");
    if (edge.pa) points[ia->second].emplace_back(*edge.pa, e);
    if (edge.pb) points[ib->second].emplace_back(*edge.pb, e);
  }

  std::set<int> roots;
  for (std::size_t i = 0; i < spec.components.size(); ++i) roots.insert(sets.find(static_cast<int>(i)));
  if (roots.size() > 1) out.push_back("curve is disconnected (" + std::to_string(roots.size()) + " pieces)");

  for (auto& [v, pts] : points) {
    std::sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) {
      return x.first < y.first || (x.first == y.first && x.second < y.second);
    });
    for (std::size_t k = 1; k < pts.size(); ++k)
      if (pts[k].first == pts[k - 1].first)
        out.push_back("coincident node points " + format_rational(pts[k].first) + " on \"" +
                      spec.components[static_cast<std::size_t>(v)] + "\" (edges " + std::to_string(pts[k - 1].second) +
                      " and " + std::to_string(pts[k].second) + ")");
  }
  return report;
}

InvalidCurve::InvalidCurve(ValidationReport report)
    : Error("invalid curve: " + report.summary()), report_(std::move(report)) {}

TreeCurve::TreeCurve(const CurveSpec& spec) {
  auto report = validate_tree(spec);
  if (!report.ok()) throw InvalidCurve(std::move(report));
  ids_ = spec.components;
  incident_.resize(ids_.size());
  for (const auto& node : spec.edges) {
    Edge e{index_of(node.a), *node.pa, index_of(node.b), *node.pb};
    incident_[static_cast<std::size_t>(e.a)].push_back(num_edges());
    incident_[static_cast<std::size_t>(e.b)].push_back(num_edges());
    edges_.push_back(std::move(e));
  }
}

TreeCurve TreeCurve::single(std::string id) { return TreeCurve(CurveSpec{{std::move(id)}, {}}); }

int TreeCurve::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (ids_[i] == id) return static_cast<int>(i);
  return -1;
}

int TreeCurve::other_end(int e, int v) const {
  const auto& ed = edge(e);
  if (ed.a == v) return ed.b;
  if (ed.b == v) return ed.a;
  throw Error("component " + id(v) + " is not on edge " + std::to_string(e));
}

const Rational& TreeCurve::coordinate_on(int e, int v) const {
  const auto& ed = edge(e);
  if (ed.a == v) return ed.pa;
  if (ed.b == v) return ed.pb;
  throw Error("component " + id(v) + " is not on edge " + std::to_string(e));
}

std::vector<int> TreeCurve::side(int e, int v) const {
  std::vector<bool> seen(ids_.size(), false);
  std::vector<int> stack{v}, out;
  seen[static_cast<std::size_t>(v)] = true;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    out.push_back(x);
    for (int f : incident(x)) {
      if (f == e) continue;
      int y = other_end(f, x);
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        stack.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CurveSpec TreeCurve::spec() const {
  CurveSpec s;
  s.components = ids_;
  for (const auto& e : edges_) s.edges.push_back({id(e.a), e.pa, id(e.b), e.pb});
  return s;
}

bool same_labeled_tree(const TreeCurve& x, const TreeCurve& y) {
  auto ids_x = x.ids(), ids_y = y.ids();
  std::sort(ids_x.begin(), ids_x.end());
  std::sort(ids_y.begin(), ids_y.end());
  if (ids_x != ids_y) return false;
  using End = std::pair<std::string, std::string>;
  auto nodes = [](const TreeCurve& c) {
    std::vector<std::pair<End, End>> out;
    for (const auto& e : c.edges()) {
      End p{c.id(e.a), format_rational(e.pa)}, q{c.id(e.b), format_rational(e.pb)};
      if (q < p) std::swap(p, q);
      out.emplace_back(p, q);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  return nodes(x) == nodes(y);
}

int Multidegree::total() const { return std::accumulate(degrees.begin(), degrees.end(), 0); }

Multidegree zero_multidegree(const TreeCurve& curve) {
  return Multidegree{std::vector<int>(static_cast<std::size_t>(curve.num_components()), 0)};
}

Multidegree unit_multidegree(const TreeCurve& curve, int v, int amount) {
  auto md = zero_multidegree(curve);
  md.degrees.at(static_cast<std::size_t>(v)) = amount;
  return md;
}

Multidegree operator+(const Multidegree& x, const Multidegree& y) {
  if (x.degrees.size() != y.degrees.size()) throw Error("multidegree size mismatch");
  Multidegree out = x;
  for (std::size_t i = 0; i < out.degrees.size(); ++i) out.degrees[i] += y.degrees[i];
  return out;
}

Multidegree operator-(const Multidegree& x) {
  Multidegree out = x;
  for (auto& d : out.degrees) d = -d;
  return out;
}

bool Subtree::contains(int v) const { return std::binary_search(members.begin(), members.end(), v); }

bool is_connected(const TreeCurve& curve, const std::vector<int>& members) {
  if (members.empty()) return true;
  std::vector<bool> in(static_cast<std::size_t>(curve.num_components()), false);
  for (int v : members) in.at(static_cast<std::size_t>(v)) = true;
  std::vector<bool> seen(in.size(), false);
  std::vector<int> stack{members.front()};
  seen[static_cast<std::size_t>(members.front())] = true;
  std::size_t reached = 0;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    ++reached;
    for (int e : curve.incident(x)) {
      int y = curve.other_end(e, x);
      if (in[static_cast<std::size_t>(y)] && !seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        stack.push_back(y);
      }
    }
  }
  return reached == members.size();
}

std::vector<Subtree> coconnected_subtrees(const TreeCurve& curve) {
  // A proper coconnected subtree is exactly one side of an edge.
  std::vector<Subtree> out;
  for (int e = 0; e < curve.num_edges(); ++e) {
    out.push_back({curve.side(e, curve.edge(e).a)});
    out.push_back({curve.side(e, curve.edge(e).b)});
  }
  std::vector<int> all(static_cast<std::size_t>(curve.num_components()));
  std::iota(all.begin(), all.end(), 0);
  out.push_back({all});
  std::sort(out.begin(), out.end(), [](const Subtree& x, const Subtree& y) {
    if (x.members.size() != y.members.size()) return x.members.size() < y.members.size();
    return x.members < y.members;
  });
  return out;
}

Multidegree subtree_divisor_class(const TreeCurve& curve, const Subtree& sub) {
  if (sub.members.empty() || !is_connected(curve, sub.members)) throw Error("subtree is not connected");
  auto md = zero_multidegree(curve);
  for (int v : sub.members) {
    for (int e : curve.incident(v)) {
      md.degrees[static_cast<std::size_t>(v)] -= 1;
      md.degrees[static_cast<std::size_t>(curve.other_end(e, v))] += 1;
    }
  }
  return md;
}

std::vector<int> decompose_degree_zero(const TreeCurve& curve, const Multidegree& md) {
  if (static_cast<int>(md.degrees.size()) != curve.num_components()) throw Error("multidegree does not match curve");
  if (md.total() != 0) throw Error("total degree is " + std::to_string(md.total()) + ", expected 0");
  std::vector<int> flow(static_cast<std::size_t>(curve.num_edges()));
  for (int e = 0; e < curve.num_edges(); ++e) {
    int sum = 0;
    for (int v : curve.side(e, curve.edge(e).a)) sum += md[v];
    flow[static_cast<std::size_t>(e)] = sum;
  }
  return flow;
}

Multidegree flow_boundary(const TreeCurve& curve, const std::vector<int>& flow) {
  if (static_cast<int>(flow.size()) != curve.num_edges()) throw Error("flow does not match curve");
  auto md = zero_multidegree(curve);
  for (int e = 0; e < curve.num_edges(); ++e) {
    md.degrees[static_cast<std::size_t>(curve.edge(e).a)] += flow[static_cast<std::size_t>(e)];
    md.degrees[static_cast<std::size_t>(curve.edge(e).b)] -= flow[static_cast<std::size_t>(e)];
  }
  return md;
}

bool Enlargement::is_identity() const {
  if (!(source == target)) return false;
  for (std::size_t i = 0; i < component_map.size(); ++i)
    if (component_map[i] != static_cast<int>(i)) return false;
  return true;
}

Enlargement identity_enlargement(const TreeCurve& curve) {
  Enlargement f{curve, curve, {}};
  for (int v = 0; v < curve.num_components(); ++v) f.component_map.push_back(v);
  return f;
}

std::pair<TreeCurve, Enlargement> insert_bridge(const TreeCurve& curve, int edge) {
  if (edge < 0 || edge >= curve.num_edges()) throw Error("unknown edge " + std::to_string(edge));
  CurveSpec spec = curve.spec();
  std::string bridge = fresh_id(curve);
  spec.components.push_back(bridge);
  NodeSpec original = spec.edges[static_cast<std::size_t>(edge)];
  spec.edges[static_cast<std::size_t>(edge)] = {original.a, original.pa, bridge, Rational(0)};
  spec.edges.push_back({bridge, Rational(1), original.b, original.pb});
  TreeCurve enlarged(spec);

  Enlargement f{enlarged, curve, {}};
  for (int v = 0; v < curve.num_components(); ++v) f.component_map.push_back(v);
  f.component_map.push_back(std::nullopt);
  return {std::move(enlarged), std::move(f)};
}

Enlargement compose(const Enlargement& outer, const Enlargement& inner) {
  if (!(inner.target == outer.source)) throw Error("enlargements do not compose: curve mismatch");
  Enlargement f{inner.source, outer.target, {}};
  for (const auto& m : inner.component_map)
    f.component_map.push_back(m ? outer.component_map.at(static_cast<std::size_t>(*m)) : std::nullopt);
  return f;
}

std::vector<std::vector<ChainStep>> target_edge_chains(const Enlargement& f) {
  const auto& src = f.source;
  const auto& tgt = f.target;
  if (static_cast<int>(f.component_map.size()) != src.num_components())
    throw Error("enlargement map does not cover the source components");

  std::vector<int> preimage(static_cast<std::size_t>(tgt.num_components()), -1);
  for (int v = 0; v < src.num_components(); ++v) {
    const auto& m = f.component_map[static_cast<std::size_t>(v)];
    if (!m) {
      if (src.incident(v).size() != 2)
        throw Error("contracted component " + src.id(v) + " does not sit in a chain at a node");
      continue;
    }
    if (*m < 0 || *m >= tgt.num_components()) throw Error("enlargement maps outside the target");
    if (preimage[static_cast<std::size_t>(*m)] >= 0)
      throw Error("two source components map onto target component " + tgt.id(*m));
    if (src.id(v) != tgt.id(*m)) throw Error("enlargement renames component " + src.id(v));
    preimage[static_cast<std::size_t>(*m)] = v;
  }
  for (int t = 0; t < tgt.num_components(); ++t)
    if (preimage[static_cast<std::size_t>(t)] < 0) throw Error("target component " + tgt.id(t) + " has no preimage");

  std::vector<std::vector<ChainStep>> chains(static_cast<std::size_t>(tgt.num_edges()));
  std::vector<bool> used(static_cast<std::size_t>(src.num_edges()), false);
  for (int start = 0; start < src.num_components(); ++start) {
    if (f.contracts(start)) continue;
    for (int e0 : src.incident(start)) {
      if (used[static_cast<std::size_t>(e0)]) continue;
      std::vector<ChainStep> chain;
      int at = start, e = e0;
      while (true) {
        used[static_cast<std::size_t>(e)] = true;
        chain.push_back({e, src.edge(e).a == at});
        int next = src.other_end(e, at);
        if (!f.contracts(next)) {
          at = next;
          break;
        }
        const auto& inc = src.incident(next);
        int onward = inc[0] == e ? inc[1] : inc[0];
        if (used[static_cast<std::size_t>(onward)]) throw Error("contracted chain revisits an edge");
        at = next;
        e = onward;
      }
      int end = at;
      int ta = *f.component_map[static_cast<std::size_t>(start)];
      int tb = *f.component_map[static_cast<std::size_t>(end)];
      const Rational& ca = src.coordinate_on(chain.front().edge, start);
      const Rational& cb = src.coordinate_on(chain.back().edge, end);
      int match = -1;
      for (int t = 0; t < tgt.num_edges(); ++t) {
        const auto& te = tgt.edge(t);
        if ((te.a == ta && te.b == tb && te.pa == ca && te.pb == cb) ||
            (te.a == tb && te.b == ta && te.pa == cb && te.pb == ca)) {
          match = t;
          break;
        }
      }
      if (match < 0 || !chains[static_cast<std::size_t>(match)].empty())
        throw Error("chain from " + src.id(start) + " to " + src.id(end) + " does not contract onto a target node");
      if (tgt.edge(match).a != ta) {
        std::reverse(chain.begin(), chain.end());
        for (auto& step : chain) step.forward = !step.forward;
      }
      chains[static_cast<std::size_t>(match)] = std::move(chain);
    }
  }
  for (int e = 0; e < src.num_edges(); ++e)
    if (!used[static_cast<std::size_t>(e)]) throw Error("source edge " + std::to_string(e) + " lies in a contracted tree");
  for (const auto& c : chains)
    if (c.empty()) throw Error("target node has no preimage chain");
  return chains;
}

void validate_enlargement(const Enlargement& f) { (void)target_edge_chains(f); }

TreeCurve contract(const Enlargement& f) {
  const auto& src = f.source;
  CurveSpec spec;
  std::vector<int> survivors;
  for (int v = 0; v < src.num_components(); ++v)
    if (!f.contracts(v)) spec.components.push_back(src.id(v));
  std::vector<bool> used(static_cast<std::size_t>(src.num_edges()), false);
  for (int start = 0; start < src.num_components(); ++start) {
    if (f.contracts(start)) continue;
    for (int e0 : src.incident(start)) {
      if (used[static_cast<std::size_t>(e0)]) continue;
      int at = start, e = e0;
      while (true) {
        used[static_cast<std::size_t>(e)] = true;
        int next = src.other_end(e, at);
        if (!f.contracts(next)) {
          at = next;
          break;
        }
        const auto& inc = src.incident(next);
        if (inc.size() != 2) throw Error("contracted component " + src.id(next) + " is not in a chain");
        e = inc[0] == e ? inc[1] : inc[0];
        at = next;
      }
      spec.edges.push_back({src.id(start), src.coordinate_on(e0, start), src.id(at), src.coordinate_on(e, at)});
    }
  }
  return TreeCurve(spec);
}

SubCurve induced_subcurve(const TreeCurve& curve, const std::vector<int>& members) {
  if (members.empty() || !is_connected(curve, members)) throw Error("induced subcurve needs a connected member set");
  SubCurve out{TreeCurve::single("_"), {}, {}};
  CurveSpec spec;
  std::vector<bool> in(static_cast<std::size_t>(curve.num_components()), false);
  for (int v : members) {
    in[static_cast<std::size_t>(v)] = true;
    spec.components.push_back(curve.id(v));
    out.component_to_parent.push_back(v);
  }
  for (int e = 0; e < curve.num_edges(); ++e) {
    const auto& ed = curve.edge(e);
    if (in[static_cast<std::size_t>(ed.a)] && in[static_cast<std::size_t>(ed.b)]) {
      spec.edges.push_back({curve.id(ed.a), ed.pa, curve.id(ed.b), ed.pb});
      out.edge_to_parent.push_back(e);
    }
  }
  out.curve = TreeCurve(spec);
  return out;
}

}  // namespace speclab

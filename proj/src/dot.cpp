#include "speclab/dot.hpp"

#include <algorithm>
#include <sstream>

namespace speclab {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string degrees_text(const TreeCurve& curve, const Multidegree& md) {
  std::string out;
  for (int v = 0; v < curve.num_components(); ++v) {
    if (v) out += ",";
    out += curve.id(v) + ":" + std::to_string(md[v]);
  }
  return out;
}

void write_tree(std::ostream& os, const TreeCurve& curve, const std::vector<int>& highlighted, const std::string& prefix,
                const std::string& indent, const char* connector) {
  for (int v = 0; v < curve.num_components(); ++v) {
    os << indent << quoted(prefix + curve.id(v)) << " [label=" << quoted(curve.id(v));
    if (std::find(highlighted.begin(), highlighted.end(), v) != highlighted.end())
      os << ", style=filled, fillcolor=gold";
    os << "];\n";
  }
  for (const auto& e : curve.edges()) {
    os << indent << quoted(prefix + curve.id(e.a)) << ' ' << connector << ' ' << quoted(prefix + curve.id(e.b))
       << " [label=" << quoted(format_rational(e.pa) + " | " + format_rational(e.pb));
    if (connector[1] == '>') os << ", dir=none";
    os << "];\n";
  }
}

std::vector<int> contracted(const Enlargement& f) {
  std::vector<int> out;
  for (int v = 0; v < f.source.num_components(); ++v)
    if (f.contracts(v)) out.push_back(v);
  return out;
}

}  // namespace

std::string curve_to_dot(const TreeCurve& curve, const std::vector<int>& highlighted) {
  std::ostringstream os;
  os << "graph curve {\n  node [shape=circle];\n";
  write_tree(os, curve, highlighted, "", "  ", "--");
  os << "}\n";
  return os.str();
}

std::string enlargement_to_dot(const Enlargement& f) { return curve_to_dot(f.source, contracted(f)); }

std::string certificate_to_dot(const Certificate& cert) {
  std::ostringstream os;
  os << "digraph certificate {\n  rankdir=TB;\n  node [shape=box];\n";
  const auto& t = cert.target;
  os << "  claim [label=" << quoted("claim: " + to_string(cert.source) + " specializes to rank " + std::to_string(t.rank()) +
                                    " degree " + std::to_string(t.degree()) + " bundle on " +
                                    std::to_string(t.curve().num_components()) + " components")
     << "];\n";
  std::string previous = "claim";
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const std::string name = "step" + std::to_string(i);
    std::string label;
    const auto& step = cert.steps[i];
    if (auto* d = std::get_if<DominanceStep>(&step)) {
      label = "dominance " + to_string(d->from) + " -> " + to_string(d->to);
    } else if (auto* e = std::get_if<EnlargementStep>(&step)) {
      auto bridges = contracted(e->map).size();
      label = "enlarge: " + std::to_string(bridges) + (bridges == 1 ? " bridge" : " bridges");
    } else if (auto* s = std::get_if<SplitOffStep>(&step)) {
      label = "split off degree " + std::to_string(s->sub.degree()) + " line (" +
              degrees_text(s->sub.host.curve(), s->sub.degrees) + "), quotient type " + to_string(s->qprime);
    } else {
      label = "rank one, degree " + std::to_string(std::get<RankOneBase>(step).degree);
    }
    os << "  " << name << " [label=" << quoted(label) << "];\n";
    os << "  " << previous << " -> " << name << ";\n";
    if (auto* e = std::get_if<EnlargementStep>(&step)) {
      os << "  subgraph cluster_" << name << " {\n    label=\"enlarged curve\";\n    node [shape=circle];\n";
      write_tree(os, e->map.source, contracted(e->map), name + ":", "    ", "->");
      os << "  }\n";
    }
    previous = name;
  }
  if (cert.refutation) {
    const auto& w = *cert.refutation;
    os << "  refutation [label="
       << quoted("fails at twist (" + degrees_text(t.curve(), w.twist) + "): " + std::to_string(w.lhs) + " < " +
                 std::to_string(w.rhs))
       << ", color=red];\n";
    os << "  claim -> refutation;\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace speclab

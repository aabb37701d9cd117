#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "speclab/field.hpp"

namespace speclab {

/// A node as written in input: the two component ids and the node's
/// coordinate on each component's affine chart. An empty coordinate is the
/// chart's point at infinity, which is rejected by validation.
struct NodeSpec {
  std::string a;
  std::optional<Rational> pa;
  std::string b;
  std::optional<Rational> pb;
};

struct CurveSpec {
  std::vector<std::string> components;
  std::vector<NodeSpec> edges;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// Checks that the dual graph is a tree and that node coordinates on each
/// component are finite and pairwise distinct. Every violation is reported.
ValidationReport validate_tree(const CurveSpec& spec);

class InvalidCurve : public Error {
 public:
  explicit InvalidCurve(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Dual tree of a connected nodal curve of arithmetic genus 0. Components
/// are indexed in input order; edges are indexed in input order and that
/// index is the edge id used everywhere else.
class TreeCurve {
 public:
  struct Edge {
    int a;
    Rational pa;
    int b;
    Rational pb;
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  /// Throws InvalidCurve when validate_tree reports anything.
  explicit TreeCurve(const CurveSpec& spec);
  static TreeCurve single(std::string id);

  int num_components() const { return static_cast<int>(ids_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(int v) const { return ids_.at(static_cast<std::size_t>(v)); }
  /// -1 when absent.
  int index_of(std::string_view id) const;

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
  /// Edge ids incident to a component, ascending.
  const std::vector<int>& incident(int v) const { return incident_.at(static_cast<std::size_t>(v)); }
  int other_end(int e, int v) const;
  const Rational& coordinate_on(int e, int v) const;

  /// Components on v's side once edge e is removed, ascending.
  std::vector<int> side(int e, int v) const;

  CurveSpec spec() const;

  friend bool operator==(const TreeCurve& x, const TreeCurve& y) { return x.ids_ == y.ids_ && x.edges_ == y.edges_; }

 private:
  TreeCurve() = default;
  std::vector<std::string> ids_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
};

/// Same component ids and the same nodes (with coordinates), regardless of
/// the order in which components and edges are listed.
bool same_labeled_tree(const TreeCurve& x, const TreeCurve& y);

/// A line bundle on a tree, up to isomorphism: one degree per component,
/// indexed like the curve's components.
struct Multidegree {
  std::vector<int> degrees;

  int total() const;
  int operator[](int v) const { return degrees.at(static_cast<std::size_t>(v)); }
  friend bool operator==(const Multidegree&, const Multidegree&) = default;
  friend auto operator<=>(const Multidegree&, const Multidegree&) = default;
};

Multidegree zero_multidegree(const TreeCurve& curve);
Multidegree unit_multidegree(const TreeCurve& curve, int v, int amount = 1);
Multidegree operator+(const Multidegree& x, const Multidegree& y);
Multidegree operator-(const Multidegree& x);

/// Nonempty set of components, ascending indices.
struct Subtree {
  std::vector<int> members;
  bool contains(int v) const;
  friend bool operator==(const Subtree&, const Subtree&) = default;
};

bool is_connected(const TreeCurve& curve, const std::vector<int>& members);

/// Every connected subtree whose complement is empty or connected, ordered
/// by size and then lexicographically by member indices.
std::vector<Subtree> coconnected_subtrees(const TreeCurve& curve);

/// Sum over members of the class that has degree -e on a member meeting e
/// other components and +1 on each of its neighbours.
Multidegree subtree_divisor_class(const TreeCurve& curve, const Subtree& sub);

/// The unique integer flow on edges whose boundary is `md`. Entry e is the
/// multiple of the transfer class (+1 on edge(e).a, -1 on edge(e).b).
std::vector<int> decompose_degree_zero(const TreeCurve& curve, const Multidegree& md);
Multidegree flow_boundary(const TreeCurve& curve, const std::vector<int>& flow);

/// A surjection of trees that is an isomorphism or constant on each source
/// component. Contracted components form chains sitting at target nodes,
/// and surviving components keep their ids.
struct Enlargement {
  TreeCurve source;
  TreeCurve target;
  /// Source component index -> target component index, or empty if
  /// contracted.
  std::vector<std::optional<int>> component_map;

  bool contracts(int source_component) const {
    return !component_map.at(static_cast<std::size_t>(source_component)).has_value();
  }
  bool is_identity() const;
};

Enlargement identity_enlargement(const TreeCurve& curve);

/// Replaces edge `edge` (a,pa,b,pb) by (a,pa,x,0) at the same id and
/// (x,1,b,pb) appended last, where x is a fresh component appended last.
std::pair<TreeCurve, Enlargement> insert_bridge(const TreeCurve& curve, int edge);

/// outer: C1 -> C0, inner: C2 -> C1; returns C2 -> C0.
Enlargement compose(const Enlargement& outer, const Enlargement& inner);

struct ChainStep {
  int edge;      // source edge id
  bool forward;  // traversed from its a side to its b side
};

/// For each target edge, the source edges over it, walked from the target
/// edge's a component to its b component. Throws Error if the map is not a
/// valid enlargement.
std::vector<std::vector<ChainStep>> target_edge_chains(const Enlargement& f);

void validate_enlargement(const Enlargement& f);

/// Contracts every component the map sends to a node, giving a curve on the
/// surviving components.
TreeCurve contract(const Enlargement& f);

/// Induced subcurve on a connected set of members, with index maps back to
/// the parent.
struct SubCurve {
  TreeCurve curve;
  std::vector<int> component_to_parent;
  std::vector<int> edge_to_parent;
};

SubCurve induced_subcurve(const TreeCurve& curve, const std::vector<int>& members);

}  // namespace speclab

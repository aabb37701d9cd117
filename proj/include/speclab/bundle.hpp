#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "speclab/curve.hpp"
#include "speclab/field.hpp"
#include "speclab/matrix.hpp"
#include "speclab/poly.hpp"
#include "speclab/splitting.hpp"

namespace speclab {

/// A vector bundle on a tree of rational curves: on each component a direct
/// sum of O(m) in a fixed summand order, and at each node an invertible
/// matrix taking the fibre on the edge's a side to the fibre on its b side.
///
/// Each O(m) is trivialized over the affine chart holding the nodes, so a
/// section of it is a polynomial of degree <= m and its value at a node is
/// plain evaluation. A global section (s_v) satisfies
/// gluing(e) * s_a(pa) = s_b(pb) at every edge e.
///
/// Summand order is part of the data: with identity gluing, (2,0) on one
/// component and (0,2) on the other is O(2,0) + O(0,2), not O(2,2) + O(0,0).
class GluedBundle {
 public:
  /// Validates shapes, the common rank and invertibility of every gluing.
  GluedBundle(TreeCurve curve, std::vector<std::vector<int>> summands, std::vector<Matrix<Rational>> gluings);

  const TreeCurve& curve() const { return curve_; }
  int rank() const { return rank_; }
  const std::vector<int>& summands(int v) const { return summands_.at(static_cast<std::size_t>(v)); }
  const std::vector<std::vector<int>>& all_summands() const { return summands_; }
  const Matrix<Rational>& gluing(int e) const { return gluings_.at(static_cast<std::size_t>(e)); }
  const std::vector<Matrix<Rational>>& gluings() const { return gluings_; }

  int degree() const;
  int degree_on(int v) const;
  int max_summand(int v) const;
  SplittingType splitting(int v) const { return SplittingType(summands(v)); }

  friend bool operator==(const GluedBundle&, const GluedBundle&) = default;

 private:
  TreeCurve curve_;
  int rank_ = 0;
  std::vector<std::vector<int>> summands_;
  std::vector<Matrix<Rational>> gluings_;
};

/// Keyed construction as used by the JSON front end. Every component needs
/// a splitting and every edge exactly one gluing.
GluedBundle make_bundle(const TreeCurve& curve, const std::map<std::string, std::vector<int>>& splittings,
                        const std::map<int, Matrix<Rational>>& gluings);

/// Direct sum of line bundles with identity gluing; `degrees[i]` is the
/// multidegree of summand i.
GluedBundle split_bundle(const TreeCurve& curve, const std::vector<Multidegree>& degrees);

GluedBundle twist(const GluedBundle& bundle, const Multidegree& md);

/// Trivial on contracted components. Along each contracted chain the
/// original gluing sits on the first edge and the rest are identities.
GluedBundle pullback(const GluedBundle& bundle, const Enlargement& f);

/// Multidegree on f's source that agrees with md on surviving components and
/// is 0 on contracted ones.
Multidegree pullback(const Multidegree& md, const Enlargement& f);

struct RestrictedBundle {
  GluedBundle bundle;
  SubCurve sub;
};

/// Restriction to a connected set of components, keeping only internal
/// nodes.
RestrictedBundle restrict_to(const GluedBundle& bundle, const std::vector<int>& members);

/// Per component, per summand, the section's polynomial.
using SectionValue = std::vector<std::vector<Poly>>;

struct SectionBasis {
  std::vector<SectionValue> sections;
  int dimension() const { return static_cast<int>(sections.size()); }
};

/// Reduced echelon kernel basis of the node-matching system.
SectionBasis section_basis(const GluedBundle& bundle);

/// Checks every degree bound and node matching equation exactly.
bool is_global_section(const GluedBundle& bundle, const SectionValue& s);

int h0(const GluedBundle& bundle, const Field& field = {});
int h1(const GluedBundle& bundle, const Field& field = {});
/// deg + rank (genus 0).
int euler_characteristic(const GluedBundle& bundle);

/// h^0 through an independent route: sections stored by their values at
/// sample points, and a fraction-free rank with reversed pivot order.
int h0_oracle(const GluedBundle& bundle);

/// lo_v = -(max summand degree on v) - 1.
std::vector<int> clamp_floor(const GluedBundle& bundle);

/// Visits the clamp box of total e in ascending lexicographic order until
/// the visitor returns false.
void for_each_in_box(const std::vector<int>& floor, int e, const std::function<bool(const Multidegree&)>& visit);

/// Every multidegree l with sum e and lo_v <= l_v, ascending.
std::vector<Multidegree> clamp_box(const GluedBundle& bundle, int e);

/// Lexicographically first l of total t in the clamp box with
/// h0(bundle(l)) = 0. If t is below the box every twist of total t
/// vanishes and a representative below the floor is returned.
std::optional<Multidegree> first_vanishing_twist(const GluedBundle& bundle, int t, const Field& field = {});

struct DmaxResult {
  int d;
  Multidegree witness;
};

/// Largest d with h0(bundle(l)) > 0 for every l of total -d, and the
/// lexicographically first l of total -(d+1) with no sections.
DmaxResult dmax(const GluedBundle& bundle, const Field& field = {});

}  // namespace speclab

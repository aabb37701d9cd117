#pragma once

#include <functional>
#include <string>
#include <vector>

#include "speclab/bundle.hpp"

namespace speclab {

/// A line subbundle O(a_v) -> host on every component, written in the
/// host's summand trivializations. On component v the embedding is a vector
/// of `rank` polynomials with entry i of degree <= m_{v,i} - a_v, and at
/// edge e the host gluing satisfies
///   gluing(e) * embedding[a](pa) = scalars[e] * embedding[b](pb).
struct LineSubbundle {
  GluedBundle host;
  Multidegree degrees;
  std::vector<std::vector<Poly>> embedding;
  std::vector<Rational> scalars;

  int degree() const { return degrees.total(); }
};

/// Every broken invariant, in component then edge order. Empty means valid.
std::vector<std::string> subbundle_violations(const LineSubbundle& sub);

/// Fiberwise injective on v: no common zero on the affine chart and some
/// entry attains its degree bound (no common zero at infinity).
bool injective_on(const LineSubbundle& sub, int v);

/// The line through a section that is nonzero on every component, made
/// fiberwise injective by dividing out common zeros on each component.
/// Throws when the section vanishes on a component or the saturated lines
/// disagree at a node.
LineSubbundle saturate(const GluedBundle& bundle, const SectionValue& section);

/// The host modulo the line. Per component the quotient map is a minimal
/// generating set of the syzygies of the embedding, found degree by degree;
/// node gluings are induced.
struct Quotient {
  GluedBundle bundle;
  /// projection[v] is (rank-1) x rank; row j has entry i of degree
  /// <= t_{v,j} - m_{v,i}.
  std::vector<std::vector<std::vector<Poly>>> projection;
};

Quotient quotient_with_projection(const LineSubbundle& sub);
GluedBundle quotient_bundle(const LineSubbundle& sub);

struct FoundSubbundle {
  Enlargement enlargement;
  LineSubbundle sub;
};

/// A line subbundle of the pullback to an enlargement, of total degree
/// exactly dmax(bundle). Bridges are only ever inserted at original nodes,
/// at most one per node.
FoundSubbundle find_line_subbundle(const GluedBundle& bundle);

/// Line subbundles of degree dmax(bundle) from generic sections of twists
/// of pullbacks: bridges at sets of nodes by size and then lexicographically,
/// twists in ascending order. Bridges carry degree -1. Stops when `visit`
/// returns false.
void for_each_maximal_subbundle(const GluedBundle& bundle, const std::function<bool(const FoundSubbundle&)>& visit);

}  // namespace speclab

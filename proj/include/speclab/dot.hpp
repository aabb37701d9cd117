#pragma once

#include <string>
#include <vector>

#include "speclab/curve.hpp"
#include "speclab/speclab.hpp"

namespace speclab {

/// Undirected graph with one node per component and edges labelled
/// "pa | pb". Highlighted components are filled.
std::string curve_to_dot(const TreeCurve& curve, const std::vector<int>& highlighted = {});

/// The source curve with contracted components highlighted.
std::string enlargement_to_dot(const Enlargement& f);

/// Claim node followed by one node per step; each enlargement also gets a
/// cluster drawing the enlarged tree.
std::string certificate_to_dot(const Certificate& cert);

}  // namespace speclab

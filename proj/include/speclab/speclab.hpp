#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "speclab/bundle.hpp"
#include "speclab/subbundle.hpp"

namespace speclab {

/// A twist where the tree bundle has fewer sections than the line's
/// splitting type demands: lhs = h0(target(twist)) < rhs = h0(P^1, source(e)).
struct FailureWitness {
  Multidegree twist;
  int lhs;
  int rhs;
  friend bool operator==(const FailureWitness&, const FailureWitness&) = default;
};

struct Verdict {
  enum class Kind { yes, no, mismatch };
  Kind kind;
  std::optional<FailureWitness> witness;  // set for no
  std::string reason;                     // set for mismatch

  bool yes() const { return kind == Kind::yes; }
};

/// Whether `source` on P^1 can specialize to `target` on its tree: every
/// twist in the clamp boxes of the totals where a failure is possible has
/// at least as many sections as the matching twist of the source. A No
/// carries the lexicographically smallest failing twist.
Verdict decide(const GluedBundle& target, const SplittingType& source, const Field& field = {});

/// Every failing twist over the decision range widened by `margin` on both
/// ends, with every coordinate at least lo_v - margin. margin = 0 is exactly
/// the set decide scans.
std::vector<FailureWitness> failing_twists(const GluedBundle& target, const SplittingType& source, int margin = 0,
                                           const Field& field = {});

/// Each coordinate raised to at least lo_v. Leaves h0 unchanged.
Multidegree clamp_up(const GluedBundle& bundle, const Multidegree& md);

struct DominanceStep {
  SplittingType from;
  SplittingType to;
};

struct EnlargementStep {
  Enlargement map;
};

struct SplitOffStep {
  LineSubbundle sub;
  GluedBundle quotient;
  SplittingType qprime;
};

struct RankOneBase {
  int degree;
};

using Step = std::variant<DominanceStep, EnlargementStep, SplitOffStep, RankOneBase>;

struct Certificate {
  SplittingType source;
  GluedBundle target;
  std::vector<Step> steps;
  std::optional<FailureWitness> refutation;
};

/// Throws Error on a rank or degree mismatch.
Certificate certify(const GluedBundle& target, const SplittingType& source);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> problems;
};

/// Recomputes every ingredient of the certificate from its claim.
VerifyReport verify_certificate(const Certificate& cert);

/// The bundle on f's target obtained by collapsing trivial contracted
/// chains: each target gluing is the product of the chain's gluings.
GluedBundle contract_pushforward(const GluedBundle& bundle, const Enlargement& f);

}  // namespace speclab

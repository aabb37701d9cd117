#include "speclab/speclab.hpp"

#include <algorithm>

namespace speclab {

Verdict decide(const GluedBundle& target, const SplittingType& source, const Field& field) {
  if (target.rank() != source.rank())
    return {Verdict::Kind::mismatch, std::nullopt,
            "rank mismatch: target has rank " + std::to_string(target.rank()) + ", source " +
                std::to_string(source.rank())};
  if (target.degree() != source.degree())
    return {Verdict::Kind::mismatch, std::nullopt,
            "degree mismatch: target has degree " + std::to_string(target.degree()) + ", source " +
                std::to_string(source.degree())};
  std::optional<FailureWitness> best;
  const auto floor = clamp_floor(target);
  for (int e = -source.largest(); e <= -source.smallest() - 2; ++e) {
    const int rhs = h0_p1(source, e);
    for_each_in_box(floor, e, [&](const Multidegree& md) {
      if (best && !(md < best->twist)) return false;
      int lhs = h0(twist(target, md), field);
      if (lhs < rhs) {
        best = FailureWitness{md, lhs, rhs};
        return false;
      }
      return true;
    });
  }
  if (best) return {Verdict::Kind::no, best, {}};
  return {Verdict::Kind::yes, std::nullopt, {}};
}

std::vector<FailureWitness> failing_twists(const GluedBundle& target, const SplittingType& source, int margin,
                                           const Field& field) {
  if (target.rank() != source.rank() || target.degree() != source.degree())
    throw Error("failing_twists: rank or degree mismatch");
  auto floor = clamp_floor(target);
  for (auto& x : floor) x -= margin;
  std::vector<FailureWitness> out;
  for (int e = -source.largest() - margin; e <= -source.smallest() - 2 + margin; ++e) {
    const int rhs = h0_p1(source, e);
    for_each_in_box(floor, e, [&](const Multidegree& md) {
      int lhs = h0(twist(target, md), field);
      if (lhs < rhs) out.push_back({md, lhs, rhs});
      return true;
    });
  }
  return out;
}

Multidegree clamp_up(const GluedBundle& bundle, const Multidegree& md) {
  auto floor = clamp_floor(bundle);
  Multidegree out = md;
  for (std::size_t v = 0; v < floor.size(); ++v) out.degrees[v] = std::max(out.degrees[v], floor[v]);
  return out;
}

namespace {

void build_steps(const GluedBundle& bundle, const SplittingType& type, std::vector<Step>& steps) {
  if (bundle.rank() == 1) {
    steps.emplace_back(RankOneBase{bundle.degree()});
    return;
  }
  const int d = dmax(bundle).d;
  auto merged = merge_with_line(type, d);
  steps.emplace_back(DominanceStep{type, merged});
  auto qprime = remove_line(merged, d);
  auto found = find_line_subbundle(bundle);
  auto quotient = quotient_bundle(found.sub);
  // A maximal subbundle can leave a quotient with too few sections at
  // twists where the line itself has h1 > 0. Another one then has to do.
  if (!decide(quotient, qprime).yes()) {
    bool replaced = false;
    for_each_maximal_subbundle(bundle, [&](const FoundSubbundle& other) {
      auto q = quotient_bundle(other.sub);
      if (!decide(q, qprime).yes()) return true;
      found = other;
      quotient = std::move(q);
      replaced = true;
      return false;
    });
    if (!replaced)
      throw Error("internal error: no maximal line subbundle leaves a quotient specializing from " +
                  to_string(qprime));
  }
  steps.emplace_back(EnlargementStep{found.enlargement});
  steps.emplace_back(SplitOffStep{found.sub, quotient, qprime});
  build_steps(quotient, qprime, steps);
}

}  // namespace

Certificate certify(const GluedBundle& target, const SplittingType& source) {
  auto verdict = decide(target, source);
  if (verdict.kind == Verdict::Kind::mismatch) throw Error(verdict.reason);
  Certificate cert{source, target, {}, std::nullopt};
  if (verdict.kind == Verdict::Kind::no) {
    cert.refutation = verdict.witness;
    return cert;
  }
  build_steps(target, source, cert.steps);
  return cert;
}

namespace {

const char* step_name(const Step& step) {
  switch (step.index()) {
    case 0: return "dominance";
    case 1: return "enlarge";
    case 2: return "splitoff";
    default: return "rank1";
  }
}

struct Checker {
  VerifyReport report;

  bool fail(const std::string& problem) {
    report.ok = false;
    report.problems.push_back(problem);
    return false;
  }

  bool refutation(const Certificate& cert) {
    const auto& w = *cert.refutation;
    if (!cert.steps.empty()) return fail("a refutation carries no steps");
    if (cert.target.rank() != cert.source.rank() || cert.target.degree() != cert.source.degree())
      return fail("refutation of a claim with mismatched rank or degree");
    if (static_cast<int>(w.twist.degrees.size()) != cert.target.curve().num_components())
      return fail("refutation twist does not match the target curve");
    const int e = w.twist.total();
    const int lhs = h0(twist(cert.target, w.twist));
    const int rhs = h0_p1(cert.source, e);
    if (lhs != w.lhs) fail("refutation records h0 " + std::to_string(w.lhs) + " but the twist has " + std::to_string(lhs));
    if (rhs != w.rhs) fail("refutation records source h0 " + std::to_string(w.rhs) + " but it is " + std::to_string(rhs));
    if (lhs >= rhs) fail("refutation twist is not a failure");
    return report.ok;
  }

  bool chain(const Certificate& cert) {
    if (cert.target.rank() != cert.source.rank() || cert.target.degree() != cert.source.degree())
      return fail("claim has mismatched rank or degree");
    GluedBundle bundle = cert.target;
    SplittingType type = cert.source;
    std::size_t i = 0;
    auto next = [&](std::size_t want, int depth) -> const Step* {
      if (i >= cert.steps.size()) {
        fail("certificate ends early at rank " + std::to_string(depth));
        return nullptr;
      }
      const Step& s = cert.steps[i];
      if (s.index() != want) {
        static const char* names[] = {"dominance", "enlarge", "splitoff", "rank1"};
        fail("step " + std::to_string(i) + " is " + step_name(s) + ", expected " + names[want]);
        return nullptr;
      }
      ++i;
      return &s;
    };
    while (bundle.rank() > 1) {
      const int r = bundle.rank();
      if (type.rank() != r) return fail("splitting type rank does not follow the bundle");
      const Step* s = next(0, r);
      if (!s) return false;
      const auto& dom = std::get<DominanceStep>(*s);
      if (!(dom.from == type)) return fail("dominance step starts from " + to_string(dom.from) + ", expected " + to_string(type));
      if (!specializes_p1(dom.from, dom.to))
        return fail("dominance step " + to_string(dom.from) + " -> " + to_string(dom.to) + " is not a specialization");
      type = dom.to;

      if (!(s = next(1, r))) return false;
      const auto& f = std::get<EnlargementStep>(*s).map;
      if (!(f.target == bundle.curve())) return fail("enlargement target is not the current curve");
      try {
        validate_enlargement(f);
      } catch (const Error& err) {
        return fail(std::string("enlargement is invalid: ") + err.what());
      }
      auto host = pullback(bundle, f);
      for (int v = 0; v < host.curve().num_components(); ++v)
        if (f.contracts(v))
          for (int m : host.summands(v))
            if (m != 0) return fail("pullback is not trivial on contracted component " + host.curve().id(v));

      if (!(s = next(2, r))) return false;
      const auto& split = std::get<SplitOffStep>(*s);
      if (!(split.sub.host == host)) return fail("split-off host is not the pulled-back bundle");
      auto violations = subbundle_violations(split.sub);
      for (const auto& v : violations) fail("subbundle: " + v);
      if (!violations.empty()) return false;
      const int d = dmax(bundle).d;
      if (split.sub.degree() != d)
        return fail("subbundle degree " + std::to_string(split.sub.degree()) + " differs from dmax " + std::to_string(d));
      GluedBundle quotient = quotient_bundle(split.sub);
      if (!(split.quotient == quotient)) return fail("recorded quotient differs from the recomputed quotient");
      if (quotient.rank() != r - 1 || quotient.degree() != host.degree() - d ||
          euler_characteristic(quotient) != euler_characteristic(host) - (d + 1))
        return fail("quotient degree or rank bookkeeping is off");
      SplittingType expected = [&] {
        try {
          return remove_line(type, d);
        } catch (const Error&) {
          return type;
        }
      }();
      if (expected.rank() == type.rank()) return fail("O(" + std::to_string(d) + ") is not a summand of " + to_string(type));
      if (!(split.qprime == expected))
        return fail("quotient-side type " + to_string(split.qprime) + " should be " + to_string(expected));
      if (!decide(quotient, split.qprime).yes()) return fail("quotient does not satisfy the criterion for its type");
      bundle = quotient;
      type = split.qprime;
    }
    const Step* s = next(3, 1);
    if (!s) return false;
    const int degree = std::get<RankOneBase>(*s).degree;
    if (type.rank() != 1) return fail("rank-one base reached with a type of rank " + std::to_string(type.rank()));
    if (degree != bundle.degree() || degree != type[0])
      return fail("rank-one base degree " + std::to_string(degree) + " does not match line bundle degree " +
                  std::to_string(bundle.degree()) + " and type " + to_string(type));
    if (i != cert.steps.size()) return fail("steps continue after the rank-one base");
    return report.ok;
  }
};

}  // namespace

VerifyReport verify_certificate(const Certificate& cert) {
  Checker c;
  try {
    if (cert.refutation)
      c.refutation(cert);
    else
      c.chain(cert);
  } catch (const Error& err) {
    c.fail(err.what());
  }
  return c.report;
}

GluedBundle contract_pushforward(const GluedBundle& bundle, const Enlargement& f) {
  if (!(bundle.curve() == f.source)) throw Error("pushforward: bundle does not live on the enlargement's source");
  auto chains = target_edge_chains(f);
  std::vector<std::vector<int>> summands(static_cast<std::size_t>(f.target.num_components()));
  for (int v = 0; v < f.source.num_components(); ++v) {
    if (f.contracts(v)) {
      for (int m : bundle.summands(v))
        if (m != 0)
          throw Error("pushforward: restriction to contracted component " + f.source.id(v) + " is not trivial");
    } else {
      summands[*f.component_map[v]] = bundle.summands(v);
    }
  }
  std::vector<Matrix<Rational>> gluings;
  for (const auto& chain : chains) {
    auto m = Matrix<Rational>::identity(static_cast<std::size_t>(bundle.rank()));
    for (const auto& step : chain) {
      const auto& g = bundle.gluing(step.edge);
      m = (step.forward ? g : inverse(g)) * m;
    }
    gluings.push_back(std::move(m));
  }
  return GluedBundle(f.target, std::move(summands), std::move(gluings));
}

}  // namespace speclab

#include "speclab/subbundle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

namespace speclab {

namespace {

std::vector<Rational> evaluate(const std::vector<Poly>& v, const Rational& x) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (const auto& p : v) out.push_back(p.eval(x));
  return out;
}

// lambda with u = lambda * w, if w is nonzero and u is a multiple of it.
std::optional<Rational> proportion(const std::vector<Rational>& u, const std::vector<Rational>& w) {
  std::size_t k = 0;
  while (k < w.size() && is_zero(w[k])) ++k;
  if (k == w.size()) return std::nullopt;
  Rational lambda = u[k] / w[k];
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != lambda * w[i]) return std::nullopt;
  return lambda;
}

bool independent(const std::vector<Rational>& u, const std::vector<Rational>& w) {
  Matrix<Rational> m(2, u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    m(0, i) = u[i];
    m(1, i) = w[i];
  }
  return rank(std::move(m)) == 2;
}

bool nonzero_on(const SectionValue& s, int v) {
  const auto& polys = s[static_cast<std::size_t>(v)];
  return std::any_of(polys.begin(), polys.end(), [](const Poly& p) { return !p.is_zero(); });
}

struct Piece {
  int degree;
  std::vector<Poly> embedding;
};

// Saturation of a section's coordinates on one component with summand
// degrees m. The degree is relative to the bundle the section lives in.
Piece saturate_piece(const std::vector<Poly>& s, const std::vector<int>& m) {
  Poly g;
  for (const auto& p : s) g = gcd(g, p);
  if (g.is_zero()) throw Error("saturate: section vanishes identically on a component");
  int at_infinity = -1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].is_zero()) continue;
    int order = m[i] - s[i].degree();
    if (at_infinity < 0 || order < at_infinity) at_infinity = order;
  }
  Piece out{g.degree() + at_infinity, {}};
  for (const auto& p : s) out.embedding.push_back(divmod(p, g).quotient);
  return out;
}

SectionValue combine(const SectionBasis& basis, const Rational& t) {
  SectionValue out = basis.sections.front();
  Rational power = 1;
  for (std::size_t k = 1; k < basis.sections.size(); ++k) {
    power *= t;
    const auto& b = basis.sections[k];
    for (std::size_t v = 0; v < out.size(); ++v)
      for (std::size_t i = 0; i < out[v].size(); ++i) out[v][i] = out[v][i] + power * b[v][i];
  }
  return out;
}

// A section whose support is the union of all supports: the first basis
// element already doing so, otherwise sum_k t^k b_k for the least t = 1, 2, ...
// that works.
std::optional<SectionValue> generic_section(const SectionBasis& basis, int components) {
  if (basis.dimension() == 0) return std::nullopt;
  std::vector<bool> any(static_cast<std::size_t>(components), false);
  for (const auto& s : basis.sections)
    for (int v = 0; v < components; ++v)
      if (nonzero_on(s, v)) any[v] = true;
  const auto wanted = std::count(any.begin(), any.end(), true);
  auto count = [&](const SectionValue& s) {
    int c = 0;
    for (int v = 0; v < components; ++v) c += nonzero_on(s, v);
    return c;
  };
  for (const auto& s : basis.sections)
    if (count(s) == wanted) return s;
  for (int t = 1;; ++t) {
    auto s = combine(basis, t);
    if (count(s) == wanted) return s;
  }
}

// A line subbundle under construction on some curve: pieces on original
// components and on bridges keyed by the node they are inserted at.
struct Partial {
  std::vector<std::optional<Piece>> comps;
  std::map<int, Piece> bridges;

  int degree() const {
    int total = 0;
    for (const auto& p : comps) total += p ? p->degree : 0;
    for (const auto& [_, p] : bridges) total += p.degree;
    return total;
  }
};

void absorb(Partial& into, const Partial& part, const SubCurve& sub) {
  for (std::size_t i = 0; i < part.comps.size(); ++i) into.comps[sub.component_to_parent[i]] = part.comps[i];
  for (const auto& [e, p] : part.bridges) into.bridges[sub.edge_to_parent[e]] = p;
}

// The O(-1) on a bridge at edge e interpolating between the two fibre
// lines, with coordinate 0 on the a side and 1 on the b side.
Piece bridge_piece(const GluedBundle& bundle, int e, const Piece& a_side, const Piece& b_side) {
  const auto& edge = bundle.curve().edge(e);
  auto alpha = bundle.gluing(e) * evaluate(a_side.embedding, edge.pa);
  auto beta = evaluate(b_side.embedding, edge.pb);
  if (!independent(alpha, beta))
    throw Error("internal error: fibre lines at edge " + std::to_string(e) +
                " are dependent, so a subbundle above the maximal degree would exist");
  Piece out{-1, {}};
  for (std::size_t i = 0; i < alpha.size(); ++i) out.embedding.emplace_back(std::vector<Rational>{alpha[i], beta[i] - alpha[i]});
  return out;
}

// Bridges at every edge whose ends both carry pieces that do not glue.
void bridge_mismatches(const GluedBundle& bundle, Partial& p) {
  const auto& curve = bundle.curve();
  for (int e = 0; e < curve.num_edges(); ++e) {
    const auto& edge = curve.edge(e);
    const auto& a = p.comps[edge.a];
    const auto& b = p.comps[edge.b];
    if (!a || !b || p.bridges.count(e)) continue;
    auto u = bundle.gluing(e) * evaluate(a->embedding, edge.pa);
    auto w = evaluate(b->embedding, edge.pb);
    if (!proportion(u, w)) p.bridges.emplace(e, bridge_piece(bundle, e, *a, *b));
  }
}

std::pair<TreeCurve, Enlargement> with_bridges(const TreeCurve& curve, const std::vector<int>& edges) {
  TreeCurve current = curve;
  Enlargement f = identity_enlargement(curve);
  for (int e : edges) {
    auto [next, g] = insert_bridge(current, e);
    f = compose(f, g);
    current = std::move(next);
  }
  return {std::move(current), std::move(f)};
}

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> pick;
  std::function<void(int)> go = [&](int start) {
    if (static_cast<int>(pick.size()) == k) {
      out.push_back(pick);
      return;
    }
    for (int i = start; i < n; ++i) {
      pick.push_back(i);
      go(i + 1);
      pick.pop_back();
    }
  };
  go(0);
  return out;
}

using SubbundleVisitor = std::function<bool(const std::vector<int>&, Enlargement&, LineSubbundle&)>;

// Searches enlargements with bridges at growing sets of nodes for sections
// of twists of the pullback that are nonzero everywhere and saturate to a
// line subbundle of the target degree with bridges of degree -1. The
// visitor sees the bridged nodes and returns false to stop.
void search_subbundles(const GluedBundle& bundle, int target, const SubbundleVisitor& visit) {
  const auto& curve = bundle.curve();
  const int n = curve.num_components();
  std::vector<int> floor;
  for (int v = 0; v < n; ++v) floor.push_back(-bundle.max_summand(v));
  bool stopped = false;
  for (int k = 0; k <= curve.num_edges() && !stopped; ++k) {
    for (const auto& edges : combinations(curve.num_edges(), k)) {
      auto [enlarged, f] = with_bridges(curve, edges);
      auto host = pullback(bundle, f);
      for_each_in_box(floor, -target - k, [&](const Multidegree& orig) {
        Multidegree tau = orig;
        tau.degrees.resize(static_cast<std::size_t>(n + k), 1);
        auto twisted = twist(host, tau);
        auto s = generic_section(section_basis(twisted), enlarged.num_components());
        if (!s) return true;
        for (int v = 0; v < enlarged.num_components(); ++v)
          if (!nonzero_on(*s, v)) return true;
        LineSubbundle sub{host, {}, {}, {}};
        try {
          auto sat = saturate(twisted, *s);
          sub.embedding = std::move(sat.embedding);
          sub.scalars = std::move(sat.scalars);
          for (int v = 0; v < enlarged.num_components(); ++v) sub.degrees.degrees.push_back(sat.degrees[v] - tau[v]);
        } catch (const Error&) {
          return true;
        }
        if (sub.degree() != target)
          throw Error("internal error: subbundle search produced degree " + std::to_string(sub.degree()) +
                      " above the maximal degree " + std::to_string(target));
        for (int v = n; v < n + k; ++v)
          if (sub.degrees[v] != -1) return true;
        if (!visit(edges, f, sub)) stopped = true;
        return !stopped;
      });
      if (stopped) return;
    }
  }
}

std::optional<Partial> exhaustive_search(const GluedBundle& bundle, int target) {
  const int n = bundle.curve().num_components();
  std::optional<Partial> found;
  search_subbundles(bundle, target, [&](const std::vector<int>& edges, Enlargement&, LineSubbundle& sub) {
    Partial p;
    p.comps.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < sub.host.curve().num_components(); ++v) {
      Piece piece{sub.degrees[v], std::move(sub.embedding[v])};
      if (v < n)
        p.comps[v] = std::move(piece);
      else
        p.bridges.emplace(edges[v - n], std::move(piece));
    }
    found = std::move(p);
    return false;
  });
  return found;
}

std::pair<Partial, int> find_partial(const GluedBundle& bundle);

// Degree -1 subbundle of a bundle whose twists of total 1 all have sections
// and which itself has none.
Partial core(const GluedBundle& F) {
  const auto& curve = F.curve();
  const int n = curve.num_components();

  for (int u = 0; u < n; ++u) {
    auto G = twist(F, unit_multidegree(curve, u));
    auto s = generic_section(section_basis(G), n);
    if (!s) continue;
    bool everywhere = true;
    for (int v = 0; v < n && everywhere; ++v) everywhere = nonzero_on(*s, v);
    if (!everywhere) continue;
    Partial p;
    for (int v = 0; v < n; ++v) p.comps.push_back(saturate_piece((*s)[v], G.summands(v)));
    bridge_mismatches(G, p);
    p.comps[u]->degree -= 1;
    return p;
  }

  std::map<std::vector<int>, bool> cache;
  auto in_S = [&](const std::vector<int>& members) {
    auto it = cache.find(members);
    if (it != cache.end()) return it->second;
    auto restricted = restrict_to(F, members);
    bool ok = !first_vanishing_twist(restricted.bundle, 0).has_value();
    cache.emplace(members, ok);
    return ok;
  };

  // A generic section of F(u) saturated on its support, with every hanging
  // subtree in S filled in recursively and joined by a bridge.
  auto spread_from = [&](int u) -> std::optional<Partial> {
    auto G = twist(F, unit_multidegree(curve, u));
    auto s = generic_section(section_basis(G), n);
    if (!s) return std::nullopt;
    std::vector<int> support;
    for (int v = 0; v < n; ++v)
      if (nonzero_on(*s, v)) support.push_back(v);
    if (!nonzero_on(*s, u) || !is_connected(curve, support)) return std::nullopt;
    Partial p;
    p.comps.resize(static_cast<std::size_t>(n));
    for (int v : support) p.comps[v] = saturate_piece((*s)[v], G.summands(v));
    bridge_mismatches(G, p);
    p.comps[u]->degree -= 1;
    for (int e = 0; e < curve.num_edges(); ++e) {
      const auto& edge = curve.edge(e);
      bool a_in = nonzero_on(*s, edge.a), b_in = nonzero_on(*s, edge.b);
      if (a_in == b_in) continue;
      auto hanging = curve.side(e, a_in ? edge.b : edge.a);
      if (!in_S(hanging)) return std::nullopt;
      auto restricted = restrict_to(F, hanging);
      auto [part, d] = find_partial(restricted.bundle);
      (void)d;
      absorb(p, part, restricted.sub);
      p.bridges.emplace(e, bridge_piece(F, e, *p.comps[edge.a], *p.comps[edge.b]));
    }
    return p;
  };

  std::optional<Partial> result;
  int current = 0, previous = -1;
  while (true) {
    std::vector<int> next;
    int back_edge = -1;
    for (int e : curve.incident(current)) {
      int y = curve.other_end(e, current);
      if (!in_S(curve.side(e, current))) continue;
      if (y == previous) back_edge = e;
      next.push_back(y);
    }
    if (back_edge >= 0) {
      // Turn-around: both sides of back_edge are in S.
      const auto& edge = curve.edge(back_edge);
      Partial p;
      p.comps.resize(static_cast<std::size_t>(n));
      std::map<int, Piece> at;
      for (int end : {edge.a, edge.b}) {
        auto restricted = restrict_to(F, curve.side(back_edge, end));
        auto [part, d] = find_partial(restricted.bundle);
        (void)d;
        absorb(p, part, restricted.sub);
      }
      p.bridges.emplace(back_edge, bridge_piece(F, back_edge, *p.comps[edge.a], *p.comps[edge.b]));
      result = std::move(p);
      break;
    }
    if (next.empty()) {
      // The walk stops at `current`: every branch away from it is in S.
      result = spread_from(current);
      break;
    }
    previous = current;
    current = *std::min_element(next.begin(), next.end());
  }

  if (result && result->degree() == -1) return *result;
  // The walk's stopping component can hang a subtree outside S off the
  // section's support. Other starting components often avoid that.
  for (int u = 0; u < n; ++u)
    if (auto p = spread_from(u); p && p->degree() == -1) return *p;
  if (auto found = exhaustive_search(F, -1)) return *found;
  throw Error("internal error: no line subbundle of the maximal degree was found");
}

std::pair<Partial, int> find_partial(const GluedBundle& bundle) {
  const auto& curve = bundle.curve();
  if (bundle.rank() == 1) {
    Partial p;
    for (int v = 0; v < curve.num_components(); ++v) p.comps.push_back(Piece{bundle.summands(v)[0], {Poly::constant(1)}});
    return {std::move(p), bundle.degree()};
  }
  auto [d, witness] = dmax(bundle);
  auto p = core(twist(bundle, witness));
  for (int v = 0; v < curve.num_components(); ++v) p.comps[v]->degree -= witness[v];
  if (p.degree() != d)
    throw Error("internal error: line subbundle has degree " + std::to_string(p.degree()) + ", expected " +
                std::to_string(d));
  return {std::move(p), d};
}

}  // namespace

bool injective_on(const LineSubbundle& sub, int v) {
  const auto& emb = sub.embedding[v];
  const auto& m = sub.host.summands(v);
  Poly g;
  bool attains = false;
  for (std::size_t i = 0; i < emb.size(); ++i) {
    g = gcd(g, emb[i]);
    if (!emb[i].is_zero() && emb[i].degree() == m[i] - sub.degrees[v]) attains = true;
  }
  return !g.is_zero() && g.degree() == 0 && attains;
}

std::vector<std::string> subbundle_violations(const LineSubbundle& sub) {
  std::vector<std::string> out;
  const auto& host = sub.host;
  const auto& curve = host.curve();
  const auto n = static_cast<std::size_t>(curve.num_components());
  if (sub.degrees.degrees.size() != n || sub.embedding.size() != n ||
      sub.scalars.size() != static_cast<std::size_t>(curve.num_edges())) {
    out.push_back("subbundle data does not match the host curve");
    return out;
  }
  for (int v = 0; v < curve.num_components(); ++v) {
    const auto& emb = sub.embedding[v];
    if (static_cast<int>(emb.size()) != host.rank()) {
      out.push_back("embedding on " + curve.id(v) + " has the wrong length");
      continue;
    }
    bool bounded = true;
    for (int i = 0; i < host.rank(); ++i)
      if (!emb[i].is_zero() && emb[i].degree() > host.summands(v)[i] - sub.degrees[v]) bounded = false;
    if (!bounded)
      out.push_back("embedding on " + curve.id(v) + " exceeds the degree bound for subbundle degree " +
                    std::to_string(sub.degrees[v]));
    else if (!injective_on(sub, v))
      out.push_back("embedding on " + curve.id(v) + " is not fiberwise injective");
  }
  if (!out.empty()) return out;
  for (int e = 0; e < curve.num_edges(); ++e) {
    const auto& edge = curve.edge(e);
    auto u = host.gluing(e) * evaluate(sub.embedding[edge.a], edge.pa);
    auto w = evaluate(sub.embedding[edge.b], edge.pb);
    const auto& lambda = sub.scalars[e];
    bool ok = !is_zero(lambda);
    for (std::size_t i = 0; ok && i < u.size(); ++i) ok = u[i] == lambda * w[i];
    if (!ok) out.push_back("node " + std::to_string(e) + " does not carry the line across with the recorded scalar");
  }
  return out;
}

namespace {

std::vector<Rational> node_scalars(const GluedBundle& host, const std::vector<std::vector<Poly>>& emb) {
  std::vector<Rational> out;
  const auto& curve = host.curve();
  for (int e = 0; e < curve.num_edges(); ++e) {
    const auto& edge = curve.edge(e);
    auto u = host.gluing(e) * evaluate(emb[edge.a], edge.pa);
    auto w = evaluate(emb[edge.b], edge.pb);
    auto lambda = proportion(u, w);
    if (!lambda || is_zero(*lambda))
      throw Error("saturated lines disagree at node " + std::to_string(e));
    out.push_back(*lambda);
  }
  return out;
}

}  // namespace

LineSubbundle saturate(const GluedBundle& bundle, const SectionValue& section) {
  if (!is_global_section(bundle, section)) throw Error("saturate: not a global section of the bundle");
  LineSubbundle out{bundle, {}, {}, {}};
  for (int v = 0; v < bundle.curve().num_components(); ++v) {
    auto piece = saturate_piece(section[v], bundle.summands(v));
    out.degrees.degrees.push_back(piece.degree);
    out.embedding.push_back(std::move(piece.embedding));
  }
  out.scalars = node_scalars(bundle, out.embedding);
  return out;
}

namespace {

// Coefficient layout of (h_1..h_r) with deg h_i <= t - m_i.
struct SyzygyLayout {
  std::vector<int> offset;  // -1 when t < m_i
  std::size_t size = 0;
};

SyzygyLayout syzygy_layout(const std::vector<int>& m, int t) {
  SyzygyLayout out;
  for (int mi : m) {
    if (t < mi) {
      out.offset.push_back(-1);
    } else {
      out.offset.push_back(static_cast<int>(out.size));
      out.size += static_cast<std::size_t>(t - mi + 1);
    }
  }
  return out;
}

std::vector<Rational> flatten(const std::vector<Poly>& h, const std::vector<int>& m, int t) {
  auto layout = syzygy_layout(m, t);
  std::vector<Rational> out(layout.size);
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i].is_zero()) continue;
    for (int c = 0; c <= h[i].degree(); ++c) out[layout.offset[i] + c] = h[i].coeff(c);
  }
  return out;
}

std::vector<Poly> unflatten(const std::vector<Rational>& x, const std::vector<int>& m, int t) {
  auto layout = syzygy_layout(m, t);
  std::vector<Poly> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (layout.offset[i] < 0) {
      out.emplace_back();
      continue;
    }
    std::vector<Rational> coeffs(x.begin() + layout.offset[i], x.begin() + layout.offset[i] + (t - m[i] + 1));
    out.emplace_back(std::move(coeffs));
  }
  return out;
}

// Basis of {(h_i) : deg h_i <= t - m_i, sum h_i g_i = 0}.
std::vector<std::vector<Rational>> syzygies_in_degree(const std::vector<Poly>& g, const std::vector<int>& m, int a, int t) {
  auto layout = syzygy_layout(m, t);
  if (layout.size == 0) return {};
  Matrix<Rational> system(static_cast<std::size_t>(std::max(0, t - a) + 1), layout.size);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (layout.offset[i] < 0) continue;
    for (int c = 0; c <= t - m[i]; ++c)
      for (int k = 0; k <= g[i].degree(); ++k) system(static_cast<std::size_t>(c + k), layout.offset[i] + c) += g[i].coeff(k);
  }
  auto kernel = kernel_basis(std::move(system));
  std::vector<std::vector<Rational>> out;
  for (std::size_t r = 0; r < kernel.rows(); ++r) {
    std::vector<Rational> row;
    for (std::size_t c = 0; c < kernel.cols(); ++c) row.push_back(kernel(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

struct Generator {
  int degree;
  std::vector<Poly> row;
};

std::vector<Generator> quotient_generators(const std::vector<Poly>& g, const std::vector<int>& m, int a) {
  const int r = static_cast<int>(m.size());
  const int lowest = *std::min_element(m.begin(), m.end());
  int total = -a;
  for (int mi : m) total += mi;
  const int highest = total - (r - 2) * lowest;
  std::vector<Generator> gens;
  std::vector<std::vector<Poly>> previous;  // basis of the degree t-1 syzygies
  for (int t = lowest; static_cast<int>(gens.size()) < r - 1; ++t) {
    if (t > highest) throw Error("quotient: embedding is not fiberwise injective");
    auto basis = syzygies_in_degree(g, m, a, t);
    std::vector<std::vector<Rational>> span;
    const Poly x = Poly::monomial(1);
    for (const auto& h : previous) {
      std::vector<Poly> shifted;
      for (const auto& p : h) shifted.push_back(x * p);
      span.push_back(flatten(h, m, t));
      span.push_back(flatten(shifted, m, t));
    }
    auto layout = syzygy_layout(m, t);
    auto rank_of = [&](const std::vector<std::vector<Rational>>& rows) {
      Matrix<Rational> mat(rows.size(), layout.size);
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < layout.size; ++j) mat(i, j) = rows[i][j];
      return rank(std::move(mat));
    };
    std::size_t current = rank_of(span);
    for (const auto& b : basis) {
      span.push_back(b);
      std::size_t next = rank_of(span);
      if (next > current) {
        gens.push_back({t, unflatten(b, m, t)});
        current = next;
      } else {
        span.pop_back();
      }
    }
    previous.clear();
    for (const auto& b : basis) previous.push_back(unflatten(b, m, t));
  }
  if (static_cast<int>(gens.size()) != r - 1) throw Error("quotient: embedding is not fiberwise injective");
  std::stable_sort(gens.begin(), gens.end(), [](const Generator& x, const Generator& y) { return x.degree > y.degree; });
  return gens;
}

Matrix<Rational> evaluate_rows(const std::vector<std::vector<Poly>>& rows, const Rational& x) {
  Matrix<Rational> out(rows.size(), rows.front().size());
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (std::size_t i = 0; i < rows[j].size(); ++i) out(j, i) = rows[j][i].eval(x);
  return out;
}

Matrix<Rational> transpose(const Matrix<Rational>& m) {
  Matrix<Rational> out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

}  // namespace

Quotient quotient_with_projection(const LineSubbundle& sub) {
  auto violations = subbundle_violations(sub);
  if (!violations.empty()) throw Error("quotient: " + violations.front());
  const auto& host = sub.host;
  if (host.rank() < 2) throw Error("quotient: a line bundle modulo itself has rank 0");
  const auto& curve = host.curve();
  std::vector<std::vector<int>> summands;
  std::vector<std::vector<std::vector<Poly>>> projection;
  for (int v = 0; v < curve.num_components(); ++v) {
    auto gens = quotient_generators(sub.embedding[v], host.summands(v), sub.degrees[v]);
    std::vector<int> degrees;
    std::vector<std::vector<Poly>> rows;
    for (auto& gen : gens) {
      degrees.push_back(gen.degree);
      rows.push_back(std::move(gen.row));
    }
    summands.push_back(std::move(degrees));
    projection.push_back(std::move(rows));
  }
  std::vector<Matrix<Rational>> gluings;
  for (int e = 0; e < curve.num_edges(); ++e) {
    const auto& edge = curve.edge(e);
    auto pa = evaluate_rows(projection[edge.a], edge.pa);
    auto pb = evaluate_rows(projection[edge.b], edge.pb);
    auto pat = transpose(pa);
    auto right_inverse = pat * inverse(pa * pat);
    gluings.push_back(pb * host.gluing(e) * right_inverse);
  }
  return {GluedBundle(curve, std::move(summands), std::move(gluings)), std::move(projection)};
}

GluedBundle quotient_bundle(const LineSubbundle& sub) { return quotient_with_projection(sub).bundle; }

FoundSubbundle find_line_subbundle(const GluedBundle& bundle) {
  auto [partial, d] = find_partial(bundle);
  std::vector<int> edges;
  for (const auto& [e, _] : partial.bridges) edges.push_back(e);
  auto [enlarged, f] = with_bridges(bundle.curve(), edges);
  LineSubbundle sub{pullback(bundle, f), {}, {}, {}};
  for (int v = 0; v < enlarged.num_components(); ++v) {
    const int n = bundle.curve().num_components();
    const Piece& piece = v < n ? *partial.comps[v] : partial.bridges.at(edges[v - n]);
    sub.degrees.degrees.push_back(piece.degree);
    sub.embedding.push_back(piece.embedding);
  }
  sub.scalars = node_scalars(sub.host, sub.embedding);
  auto violations = subbundle_violations(sub);
  if (!violations.empty()) throw Error("internal error: constructed subbundle is invalid: " + violations.front());
  if (sub.degree() != d) throw Error("internal error: constructed subbundle has the wrong degree");
  return {std::move(f), std::move(sub)};
}

void for_each_maximal_subbundle(const GluedBundle& bundle, const std::function<bool(const FoundSubbundle&)>& visit) {
  const int d = bundle.rank() == 1 ? bundle.degree() : dmax(bundle).d;
  search_subbundles(bundle, d, [&](const std::vector<int>&, Enlargement& f, LineSubbundle& sub) {
    return visit(FoundSubbundle{std::move(f), std::move(sub)});
  });
}

}  // namespace speclab

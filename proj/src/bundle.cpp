#include "speclab/bundle.hpp"

#include <algorithm>
#include <numeric>

namespace speclab {

GluedBundle::GluedBundle(TreeCurve curve, std::vector<std::vector<int>> summands, std::vector<Matrix<Rational>> gluings)
    : curve_(std::move(curve)), summands_(std::move(summands)), gluings_(std::move(gluings)) {
  if (static_cast<int>(summands_.size()) != curve_.num_components())
    throw Error("bundle has " + std::to_string(summands_.size()) + " splittings for " +
                std::to_string(curve_.num_components()) + " components");
  if (static_cast<int>(gluings_.size()) != curve_.num_edges())
    throw Error("bundle has " + std::to_string(gluings_.size()) + " gluings for " +
                std::to_string(curve_.num_edges()) + " edges");
  rank_ = static_cast<int>(summands_.front().size());
  if (rank_ < 1) throw Error("bundle rank must be at least 1");
  for (int v = 0; v < curve_.num_components(); ++v)
    if (static_cast<int>(summands_[v].size()) != rank_)
      throw Error("rank mismatch: component " + curve_.id(v) + " has " + std::to_string(summands_[v].size()) +
                  " summands, expected " + std::to_string(rank_));
  const auto r = static_cast<std::size_t>(rank_);
  for (int e = 0; e < curve_.num_edges(); ++e) {
    const auto& g = gluings_[e];
    if (g.rows() != r || g.cols() != r)
      throw Error("gluing at edge " + std::to_string(e) + " is " + std::to_string(g.rows()) + "x" +
                  std::to_string(g.cols()) + ", expected " + std::to_string(r) + "x" + std::to_string(r));
    if (is_zero(determinant(g))) throw Error("gluing at edge " + std::to_string(e) + " is singular");
  }
}

int GluedBundle::degree_on(int v) const {
  const auto& s = summands(v);
  return std::accumulate(s.begin(), s.end(), 0);
}

int GluedBundle::degree() const {
  int total = 0;
  for (int v = 0; v < curve_.num_components(); ++v) total += degree_on(v);
  return total;
}

int GluedBundle::max_summand(int v) const {
  const auto& s = summands(v);
  return *std::max_element(s.begin(), s.end());
}

GluedBundle make_bundle(const TreeCurve& curve, const std::map<std::string, std::vector<int>>& splittings,
                        const std::map<int, Matrix<Rational>>& gluings) {
  std::vector<std::vector<int>> summands;
  for (const auto& id : curve.ids()) {
    auto it = splittings.find(id);
    if (it == splittings.end()) throw Error("no splitting given for component " + id);
    summands.push_back(it->second);
  }
  for (const auto& [id, _] : splittings)
    if (curve.index_of(id) < 0) throw Error("splitting given for unknown component " + id);
  std::vector<Matrix<Rational>> g;
  for (int e = 0; e < curve.num_edges(); ++e) {
    auto it = gluings.find(e);
    if (it == gluings.end()) throw Error("no gluing given for edge " + std::to_string(e));
    g.push_back(it->second);
  }
  for (const auto& [e, _] : gluings)
    if (e < 0 || e >= curve.num_edges()) throw Error("gluing given for unknown edge " + std::to_string(e));
  return GluedBundle(curve, std::move(summands), std::move(g));
}

GluedBundle split_bundle(const TreeCurve& curve, const std::vector<Multidegree>& degrees) {
  if (degrees.empty()) throw Error("split bundle needs at least one line");
  std::vector<std::vector<int>> summands(static_cast<std::size_t>(curve.num_components()));
  for (const auto& md : degrees) {
    if (static_cast<int>(md.degrees.size()) != curve.num_components())
      throw Error("multidegree length does not match the curve");
    for (int v = 0; v < curve.num_components(); ++v) summands[v].push_back(md[v]);
  }
  std::vector<Matrix<Rational>> g(static_cast<std::size_t>(curve.num_edges()), Matrix<Rational>::identity(degrees.size()));
  return GluedBundle(curve, std::move(summands), std::move(g));
}

GluedBundle twist(const GluedBundle& bundle, const Multidegree& md) {
  if (static_cast<int>(md.degrees.size()) != bundle.curve().num_components())
    throw Error("twist multidegree has " + std::to_string(md.degrees.size()) + " entries for " +
                std::to_string(bundle.curve().num_components()) + " components");
  auto summands = bundle.all_summands();
  for (std::size_t v = 0; v < summands.size(); ++v)
    for (auto& m : summands[v]) m += md.degrees[v];
  return GluedBundle(bundle.curve(), std::move(summands), bundle.gluings());
}

GluedBundle pullback(const GluedBundle& bundle, const Enlargement& f) {
  if (!(f.target == bundle.curve())) throw Error("pullback: enlargement target is not the bundle's curve");
  auto chains = target_edge_chains(f);
  const auto r = static_cast<std::size_t>(bundle.rank());
  std::vector<std::vector<int>> summands;
  for (int v = 0; v < f.source.num_components(); ++v) {
    if (f.contracts(v))
      summands.emplace_back(r, 0);
    else
      summands.push_back(bundle.summands(*f.component_map[v]));
  }
  std::vector<Matrix<Rational>> g(static_cast<std::size_t>(f.source.num_edges()), Matrix<Rational>::identity(r));
  for (int t = 0; t < f.target.num_edges(); ++t) {
    const auto& first = chains[t].front();
    g[first.edge] = first.forward ? bundle.gluing(t) : inverse(bundle.gluing(t));
  }
  return GluedBundle(f.source, std::move(summands), std::move(g));
}

Multidegree pullback(const Multidegree& md, const Enlargement& f) {
  Multidegree out;
  for (int v = 0; v < f.source.num_components(); ++v)
    out.degrees.push_back(f.contracts(v) ? 0 : md[*f.component_map[v]]);
  return out;
}

RestrictedBundle restrict_to(const GluedBundle& bundle, const std::vector<int>& members) {
  auto sub = induced_subcurve(bundle.curve(), members);
  std::vector<std::vector<int>> summands;
  for (int v : sub.component_to_parent) summands.push_back(bundle.summands(v));
  std::vector<Matrix<Rational>> g;
  for (int e : sub.edge_to_parent) g.push_back(bundle.gluing(e));
  GluedBundle restricted(sub.curve, std::move(summands), std::move(g));
  return {std::move(restricted), std::move(sub)};
}

namespace {

// Unknown layout: component by component, summand by summand, the
// coefficients of x^0..x^m. Summands with m < 0 contribute nothing.
struct Layout {
  std::vector<std::vector<std::size_t>> offset;
  std::size_t columns = 0;
};

Layout layout_of(const GluedBundle& bundle) {
  Layout out;
  for (int v = 0; v < bundle.curve().num_components(); ++v) {
    std::vector<std::size_t> offs;
    for (int m : bundle.summands(v)) {
      offs.push_back(out.columns);
      out.columns += static_cast<std::size_t>(std::max(0, m + 1));
    }
    out.offset.push_back(std::move(offs));
  }
  return out;
}

// Row (e, j) reads  sum_k G(j,k) s_{a,k}(pa) - s_{b,j}(pb) = 0.
Matrix<Rational> matching_system(const GluedBundle& bundle, const Layout& layout) {
  const int r = bundle.rank();
  const auto& curve = bundle.curve();
  Matrix<Rational> m(static_cast<std::size_t>(curve.num_edges() * r), layout.columns);
  for (int e = 0; e < curve.num_edges(); ++e) {
    const auto& edge = curve.edge(e);
    const auto& g = bundle.gluing(e);
    for (int j = 0; j < r; ++j) {
      const auto row = static_cast<std::size_t>(e * r + j);
      for (int k = 0; k < r; ++k) {
        if (is_zero(g(j, k))) continue;
        Rational power = 1;
        for (int c = 0; c <= bundle.summands(edge.a)[k]; ++c) {
          m(row, layout.offset[edge.a][k] + c) += g(j, k) * power;
          power *= edge.pa;
        }
      }
      Rational power = 1;
      for (int c = 0; c <= bundle.summands(edge.b)[j]; ++c) {
        m(row, layout.offset[edge.b][j] + c) -= power;
        power *= edge.pb;
      }
    }
  }
  return m;
}

Matrix<ModP> reduce(const Matrix<Rational>& m, std::uint64_t prime) {
  Matrix<ModP> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) out(i, j) = reduce_mod(m(i, j), prime);
  return out;
}

}  // namespace

SectionBasis section_basis(const GluedBundle& bundle) {
  auto layout = layout_of(bundle);
  auto kernel = kernel_basis(matching_system(bundle, layout));
  SectionBasis out;
  for (std::size_t row = 0; row < kernel.rows(); ++row) {
    SectionValue s;
    for (int v = 0; v < bundle.curve().num_components(); ++v) {
      std::vector<Poly> polys;
      const auto& sm = bundle.summands(v);
      for (std::size_t k = 0; k < sm.size(); ++k) {
        std::vector<Rational> coeffs;
        for (int c = 0; c <= sm[k]; ++c) coeffs.push_back(kernel(row, layout.offset[v][k] + c));
        polys.emplace_back(std::move(coeffs));
      }
      s.push_back(std::move(polys));
    }
    out.sections.push_back(std::move(s));
  }
  return out;
}

bool is_global_section(const GluedBundle& bundle, const SectionValue& s) {
  const auto& curve = bundle.curve();
  if (static_cast<int>(s.size()) != curve.num_components()) return false;
  for (int v = 0; v < curve.num_components(); ++v) {
    if (static_cast<int>(s[v].size()) != bundle.rank()) return false;
    for (int k = 0; k < bundle.rank(); ++k)
      if (!s[v][k].is_zero() && s[v][k].degree() > bundle.summands(v)[k]) return false;
  }
  for (int e = 0; e < curve.num_edges(); ++e) {
    const auto& edge = curve.edge(e);
    std::vector<Rational> at_a;
    for (const auto& p : s[edge.a]) at_a.push_back(p.eval(edge.pa));
    auto mapped = bundle.gluing(e) * at_a;
    for (int j = 0; j < bundle.rank(); ++j)
      if (mapped[j] != s[edge.b][j].eval(edge.pb)) return false;
  }
  return true;
}

int h0(const GluedBundle& bundle, const Field& field) {
  auto layout = layout_of(bundle);
  if (layout.columns == 0) return 0;
  auto system = matching_system(bundle, layout);
  std::size_t rk = field.is_rational() ? rank(std::move(system)) : rank(reduce(system, field.prime));
  return static_cast<int>(layout.columns - rk);
}

int euler_characteristic(const GluedBundle& bundle) { return bundle.degree() + bundle.rank(); }

int h1(const GluedBundle& bundle, const Field& field) { return h0(bundle, field) - euler_characteristic(bundle); }

namespace {

// Value at x of the Lagrange basis polynomial for node c among 0..m.
Rational lagrange(int m, int c, const Rational& x) {
  Rational num = 1, den = 1;
  for (int i = 0; i <= m; ++i) {
    if (i == c) continue;
    num *= x - i;
    den *= c - i;
  }
  return num / den;
}

// Fraction-free elimination on an integer matrix, pivoting on the last
// column first and on the bottom-most usable row.
std::size_t bareiss_rank(std::vector<std::vector<mpz_class>> a, std::size_t cols) {
  const std::size_t rows = a.size();
  std::size_t rank = 0;
  mpz_class prev = 1;
  std::vector<bool> used(rows, false);
  std::vector<std::size_t> order;
  for (std::size_t step = 0; step < cols; ++step) {
    const std::size_t col = cols - 1 - step;
    std::size_t p = rows;
    for (std::size_t i = rows; i-- > 0;)
      if (!used[i] && a[i][col] != 0) {
        p = i;
        break;
      }
    if (p == rows) continue;
    used[p] = true;
    for (std::size_t i = 0; i < rows; ++i) {
      if (used[i]) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (j == col) continue;
        mpz_class v = a[p][col] * a[i][j] - a[i][col] * a[p][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = v;
      }
      a[i][col] = 0;
    }
    prev = a[p][col];
    ++rank;
  }
  return rank;
}

}  // namespace

int h0_oracle(const GluedBundle& bundle) {
  const auto& curve = bundle.curve();
  const int r = bundle.rank();
  // Unknowns: values of each summand polynomial at x = 0..m.
  std::vector<std::vector<std::size_t>> offset;
  std::size_t cols = 0;
  for (int v = 0; v < curve.num_components(); ++v) {
    std::vector<std::size_t> offs;
    for (int m : bundle.summands(v)) {
      offs.push_back(cols);
      cols += static_cast<std::size_t>(std::max(0, m + 1));
    }
    offset.push_back(std::move(offs));
  }
  if (cols == 0) return 0;
  std::vector<std::vector<mpz_class>> rows;
  for (int e = 0; e < curve.num_edges(); ++e) {
    const auto& edge = curve.edge(e);
    for (int j = 0; j < r; ++j) {
      std::vector<Rational> row(cols);
      for (int k = 0; k < r; ++k) {
        const int m = bundle.summands(edge.a)[k];
        for (int c = 0; c <= m; ++c) row[offset[edge.a][k] + c] += bundle.gluing(e)(j, k) * lagrange(m, c, edge.pa);
      }
      const int m = bundle.summands(edge.b)[j];
      for (int c = 0; c <= m; ++c) row[offset[edge.b][j] + c] -= lagrange(m, c, edge.pb);
      mpz_class den = 1;
      for (const auto& x : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
      std::vector<mpz_class> scaled_row;
      for (const auto& x : row) scaled_row.push_back(mpz_class(x.get_num() * (den / x.get_den())));
      rows.push_back(std::move(scaled_row));
    }
  }
  return static_cast<int>(cols - bareiss_rank(std::move(rows), cols));
}

std::vector<int> clamp_floor(const GluedBundle& bundle) {
  std::vector<int> lo;
  for (int v = 0; v < bundle.curve().num_components(); ++v) lo.push_back(-bundle.max_summand(v) - 1);
  return lo;
}

void for_each_in_box(const std::vector<int>& floor, int e, const std::function<bool(const Multidegree&)>& visit) {
  const int n = static_cast<int>(floor.size());
  const int floor_sum = std::accumulate(floor.begin(), floor.end(), 0);
  if (e < floor_sum || n == 0) return;
  // suffix[v] = sum of floors strictly after v.
  std::vector<int> suffix(static_cast<std::size_t>(n) + 1, 0);
  for (int v = n - 1; v >= 0; --v) suffix[v] = suffix[v + 1] + floor[v];
  Multidegree md{std::vector<int>(static_cast<std::size_t>(n))};
  bool stop = false;
  std::function<void(int, int)> go = [&](int v, int used) {
    if (stop) return;
    if (v == n - 1) {
      md.degrees[v] = e - used;
      if (!visit(md)) stop = true;
      return;
    }
    const int top = e - used - suffix[v + 1];
    for (int x = floor[v]; x <= top && !stop; ++x) {
      md.degrees[v] = x;
      go(v + 1, used + x);
    }
  };
  go(0, 0);
}

std::vector<Multidegree> clamp_box(const GluedBundle& bundle, int e) {
  std::vector<Multidegree> out;
  for_each_in_box(clamp_floor(bundle), e, [&](const Multidegree& md) {
    out.push_back(md);
    return true;
  });
  return out;
}

std::optional<Multidegree> first_vanishing_twist(const GluedBundle& bundle, int t, const Field& field) {
  auto lo = clamp_floor(bundle);
  const int floor_sum = std::accumulate(lo.begin(), lo.end(), 0);
  if (t < floor_sum) {
    lo.front() -= floor_sum - t;
    return Multidegree{lo};
  }
  std::optional<Multidegree> found;
  for_each_in_box(lo, t, [&](const Multidegree& md) {
    if (h0(twist(bundle, md), field) == 0) {
      found = md;
      return false;
    }
    return true;
  });
  return found;
}

DmaxResult dmax(const GluedBundle& bundle, const Field& field) {
  const int r = bundle.rank();
  const int chi0 = bundle.degree() + r;
  // A twist of total t has Euler characteristic chi0 + r t, so h^0 = 0 needs
  // t <= -chi0 / r.
  int t = -chi0 >= 0 ? -chi0 / r : -((chi0 + r - 1) / r);
  auto lo = clamp_floor(bundle);
  const int floor_sum = std::accumulate(lo.begin(), lo.end(), 0);
  for (; t >= floor_sum; --t) {
    if (auto w = first_vanishing_twist(bundle, t, field)) return {-t - 1, *w};
  }
  throw Error("dmax: no vanishing twist found down to the clamp floor");
}

}  // namespace speclab

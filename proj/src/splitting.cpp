#include "speclab/splitting.hpp"

#include <algorithm>
#include <numeric>

namespace speclab {

SplittingType::SplittingType(std::vector<int> degrees) : degrees_(std::move(degrees)) {
  if (degrees_.empty()) throw Error("splitting type needs rank at least 1");
  std::sort(degrees_.begin(), degrees_.end(), std::greater<>());
}

int SplittingType::degree() const { return std::accumulate(degrees_.begin(), degrees_.end(), 0); }

std::string to_string(const SplittingType& st) {
  std::string out = "(";
  for (int i = 0; i < st.rank(); ++i) {
    if (i) out += ",";
    out += std::to_string(st[i]);
  }
  return out + ")";
}

SplittingType shifted(const SplittingType& st, int e) {
  auto d = st.degrees();
  for (auto& x : d) x += e;
  return SplittingType(std::move(d));
}

int h0_p1(const SplittingType& st, int e) {
  int total = 0;
  for (int d : st.degrees()) total += std::max(0, d + e + 1);
  return total;
}

int h1_p1(const SplittingType& st, int e) {
  int total = 0;
  for (int d : st.degrees()) total += std::max(0, -(d + e) - 1);
  return total;
}

bool specializes_p1(const SplittingType& general, const SplittingType& special) {
  if (general.rank() != special.rank() || general.degree() != special.degree()) return false;
  int g = 0, s = 0;
  for (int k = 0; k < general.rank(); ++k) {
    g += general[k];
    s += special[k];
    if (g > s) return false;
  }
  return true;
}

HilbertFunction::HilbertFunction(int rank, int degree, int window_start, std::vector<int> values)
    : rank_(rank), degree_(degree), start_(window_start), values_(std::move(values)) {
  if (rank_ < 1) throw Error("Hilbert function needs rank at least 1");
}

HilbertFunction HilbertFunction::of(const SplittingType& st) {
  return tabulate(st.rank(), st.degree(), -st.largest() - 1, -st.smallest(),
                  [&](int e) { return h0_p1(st, e); });
}

HilbertFunction HilbertFunction::tabulate(int rank, int degree, int lo, int hi, const std::function<int(int)>& h0) {
  std::vector<int> values;
  for (int e = lo; e <= hi; ++e) values.push_back(h0(e));
  return HilbertFunction(rank, degree, lo, std::move(values));
}

int HilbertFunction::operator()(int e) const {
  if (e < start_) return 0;
  if (e > window_end()) return degree_ + rank_ * (e + 1);
  return values_[static_cast<std::size_t>(e - start_)];
}

SplittingType splitting_from_hilbert(const HilbertFunction& h) {
  const int lo = h.window_start();
  const int top = h.window_end() + 2;
  std::vector<int> degrees;
  int previous = 0;
  for (int e = lo; e <= top; ++e) {
    int jump = h(e) - h(e - 1);
    if (jump < 0 || jump > h.rank())
      throw Error("Hilbert function not realizable: difference " + std::to_string(jump) + " at e=" +
                  std::to_string(e) + " outside [0, " + std::to_string(h.rank()) + "]");
    if (jump < previous)
      throw Error("Hilbert function not realizable: differences decrease at e=" + std::to_string(e));
    degrees.insert(degrees.end(), static_cast<std::size_t>(jump - previous), -e);
    previous = jump;
  }
  if (previous != h.rank()) throw Error("Hilbert function not realizable: differences never reach the rank");
  SplittingType st(std::move(degrees));
  if (st.degree() != h.degree())
    throw Error("Hilbert function not realizable: table gives degree " + std::to_string(st.degree()) +
                ", expected " + std::to_string(h.degree()));
  return st;
}

SplittingType merge_with_line(const SplittingType& st, int d) {
  const int r = st.rank();
  const int deg = st.degree();
  const int lo = std::min(-d - 1, -st.largest() - 1);
  int hi = std::max(-d, -st.smallest());
  if (r == 1) {
    if (d > deg) throw Error("merge of O(" + std::to_string(d) + ") into " + to_string(st) + " changes the degree");
  } else {
    // Beyond hi the line's h^0 must lie under deg + r(e+1).
    int need = d - deg;
    int bound = need > 0 ? (need + r - 2) / (r - 1) - 1 : -1;
    hi = std::max(hi, bound);
  }
  auto h = HilbertFunction::tabulate(r, deg, lo, hi, [&](int e) {
    return std::max(std::max(0, d + e + 1), h0_p1(st, e));
  });
  return splitting_from_hilbert(h);
}

SplittingType remove_line(const SplittingType& st, int d) {
  auto degrees = st.degrees();
  auto it = std::find(degrees.begin(), degrees.end(), d);
  if (it == degrees.end()) throw Error(std::to_string(d) + " does not occur in " + to_string(st));
  if (st.rank() == 1) throw Error("cannot remove the only summand of " + to_string(st));
  degrees.erase(it);
  return SplittingType(std::move(degrees));
}

}  // namespace speclab

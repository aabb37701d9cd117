#pragma once

#include <compare>
#include <functional>
#include <string>
#include <vector>

#include "speclab/field.hpp"

namespace speclab {

/// Splitting type of a bundle on the projective line: the multiset of
/// summand degrees, kept weakly decreasing. Construction sorts.
class SplittingType {
 public:
  explicit SplittingType(std::vector<int> degrees);

  int rank() const { return static_cast<int>(degrees_.size()); }
  int degree() const;
  const std::vector<int>& degrees() const { return degrees_; }
  int operator[](int i) const { return degrees_.at(static_cast<std::size_t>(i)); }
  int largest() const { return degrees_.front(); }
  int smallest() const { return degrees_.back(); }
  bool balanced() const { return largest() - smallest() <= 1; }

  friend bool operator==(const SplittingType&, const SplittingType&) = default;
  friend auto operator<=>(const SplittingType&, const SplittingType&) = default;

 private:
  std::vector<int> degrees_;
};

std::string to_string(const SplittingType& st);

/// Every entry shifted by e (the splitting type of E(e)).
SplittingType shifted(const SplittingType& st, int e);

/// h^0(P^1, E(e)) = sum_i max(0, d_i + e + 1).
int h0_p1(const SplittingType& st, int e);
/// h^1(P^1, E(e)) = sum_i max(0, -(d_i + e) - 1).
int h1_p1(const SplittingType& st, int e);

/// True iff equal rank and degree and every partial sum of `general` is at
/// most the matching partial sum of `special`.
bool specializes_p1(const SplittingType& general, const SplittingType& special);

/// e -> h^0 of a rank/degree bundle on P^1, tabulated on [start, start +
/// values.size() - 1]. Below the window the value is 0; above it it is
/// degree + rank * (e + 1).
class HilbertFunction {
 public:
  HilbertFunction(int rank, int degree, int window_start, std::vector<int> values);

  static HilbertFunction of(const SplittingType& st);
  static HilbertFunction tabulate(int rank, int degree, int lo, int hi, const std::function<int(int)>& h0);

  int rank() const { return rank_; }
  int degree() const { return degree_; }
  int window_start() const { return start_; }
  int window_end() const { return start_ + static_cast<int>(values_.size()) - 1; }
  const std::vector<int>& values() const { return values_; }
  int operator()(int e) const;

 private:
  int rank_;
  int degree_;
  int start_;
  std::vector<int> values_;
};

/// The splitting type with #{i : d_i >= -e} = H(e) - H(e-1) for all e.
/// Throws Error if H is not realizable.
SplittingType splitting_from_hilbert(const HilbertFunction& h);

/// Bundle whose h^0 of every twist is max(h0(O(d)(e)), h0(st(e))). Throws
/// if that is not realizable at st's rank and degree.
SplittingType merge_with_line(const SplittingType& st, int d);

/// st with one copy of d removed. Throws if d is absent or st has rank 1.
SplittingType remove_line(const SplittingType& st, int d);

}  // namespace speclab

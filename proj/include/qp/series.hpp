#pragma once

#include <vector>

#include "qp/qarith.hpp"

namespace qp {

// Truncated Taylor series sum_{k < order} c_k x^k with coefficients in Q(v).
class RatioSeries {
 public:
  explicit RatioSeries(int order = 0) : c_(static_cast<std::size_t>(order)) {}

  int order() const { return static_cast<int>(c_.size()); }
  const Scalar& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  Scalar& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }

  static RatioSeries one(int order);
  // 1 / (1 - a x)
  static RatioSeries geometric(const Scalar& a, int order);
  // (1 - a x)
  static RatioSeries linear(const Scalar& a, int order);

  RatioSeries operator+(const RatioSeries& o) const;
  RatioSeries operator*(const RatioSeries& o) const;
  RatioSeries scaled(const Scalar& s) const;
  // exp of a series with zero constant term.
  RatioSeries exp() const;

  bool operator==(const RatioSeries& o) const { return c_ == o.c_; }

 private:
  std::vector<Scalar> c_;
};

}  // namespace qp

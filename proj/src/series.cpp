#include "qp/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace qp {

RatioSeries RatioSeries::one(int order) {
  RatioSeries r(order);
  if (order > 0) r[0] = Scalar(1);
  return r;
}

RatioSeries RatioSeries::geometric(const Scalar& a, int order) {
  RatioSeries r(order);
  Scalar p(1);
  for (int k = 0; k < order; ++k) {
    r[k] = p;
    p *= a;
  }
  return r;
}

RatioSeries RatioSeries::linear(const Scalar& a, int order) {
  RatioSeries r = one(order);
  if (order > 1) r[1] = -a;
  return r;
}

RatioSeries RatioSeries::operator+(const RatioSeries& o) const {
  RatioSeries r(std::min(order(), o.order()));
  for (int k = 0; k < r.order(); ++k) r[k] = (*this)[k] + o[k];
  return r;
}

RatioSeries RatioSeries::operator*(const RatioSeries& o) const {
  RatioSeries r(std::min(order(), o.order()));
  for (int a = 0; a < r.order(); ++a) {
    if ((*this)[a].is_zero()) continue;
    for (int b = 0; a + b < r.order(); ++b) r[a + b] += (*this)[a] * o[b];
  }
  return r;
}

RatioSeries RatioSeries::scaled(const Scalar& s) const {
  RatioSeries r(*this);
  for (auto& x : r.c_) x *= s;
  return r;
}

RatioSeries RatioSeries::exp() const {
  if (order() > 0 && !(*this)[0].is_zero()) throw std::invalid_argument("exp needs zero constant term");
  // E' = f' E, solved coefficientwise.
  RatioSeries e(order());
  if (order() == 0) return e;
  e[0] = Scalar(1);
  for (int k = 1; k < order(); ++k) {
    Scalar acc;
    for (int j = 1; j <= k; ++j) {
      if ((*this)[j].is_zero()) continue;
      acc += Scalar(static_cast<long>(j)) * (*this)[j] * e[k - j];
    }
    e[k] = acc / Scalar(static_cast<long>(k));
  }
  return e;
}

}  // namespace qp

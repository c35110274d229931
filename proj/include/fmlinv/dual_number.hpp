#pragma once

#include "fmlinv/scalar.hpp"

#include <stdexcept>

namespace fmlinv {

/// a + bZ with Z^2 = 0: a first-order deformation of a scalar.
class DualNumber {
 public:
  DualNumber() = default;
  DualNumber(Scalar unit, Scalar eps = 0) : unit_(std::move(unit)), eps_(std::move(eps)) {}

  const Scalar& unit() const { return unit_; }
  const Scalar& eps() const { return eps_; }

  /// Logarithmic derivative d(x)/x as a coefficient of dZ.
  Scalar log_derivative() const {
    if (unit_ == 0) throw std::domain_error("log derivative of a non-unit dual number");
    return eps_ / unit_;
  }

  friend DualNumber operator+(const DualNumber& a, const DualNumber& b) {
    return {a.unit_ + b.unit_, a.eps_ + b.eps_};
  }
  friend DualNumber operator-(const DualNumber& a, const DualNumber& b) {
    return {a.unit_ - b.unit_, a.eps_ - b.eps_};
  }
  friend DualNumber operator*(const DualNumber& a, const DualNumber& b) {
    return {a.unit_ * b.unit_, a.unit_ * b.eps_ + b.unit_ * a.eps_};
  }
  friend DualNumber operator/(const DualNumber& a, const DualNumber& b) {
    if (b.unit_ == 0) throw std::domain_error("division by a dual number with zero unit part");
    Scalar u = a.unit_ / b.unit_;
    Scalar e = (a.eps_ * b.unit_ - a.unit_ * b.eps_) / (b.unit_ * b.unit_);
    return {std::move(u), std::move(e)};
  }
  friend bool operator==(const DualNumber& a, const DualNumber& b) {
    return a.unit_ == b.unit_ && a.eps_ == b.eps_;
  }

 private:
  Scalar unit_ = 0;
  Scalar eps_ = 0;
};

}  // namespace fmlinv

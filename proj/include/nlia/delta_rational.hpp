#pragma once

#include <string>

#include "nlia/rational.hpp"

namespace nlia {

// Value of the form  real + delta * d  where delta is a positive
// infinitesimal. Used to represent strict bounds exactly inside simplex.
struct DeltaRational {
  Rational real;
  Rational delta;

  DeltaRational() : real(0), delta(0) {}
  DeltaRational(Rational r) : real(std::move(r)), delta(0) {}
  DeltaRational(Rational r, Rational d) : real(std::move(r)), delta(std::move(d)) {}

  bool operator==(const DeltaRational& o) const {
    return real == o.real && delta == o.delta;
  }
  bool operator!=(const DeltaRational& o) const { return !(*this == o); }
  bool operator<(const DeltaRational& o) const {
    return real < o.real || (real == o.real && delta < o.delta);
  }
  bool operator<=(const DeltaRational& o) const {
    return *this < o || *this == o;
  }
  bool operator>(const DeltaRational& o) const { return o < *this; }
  bool operator>=(const DeltaRational& o) const { return o <= *this; }

  DeltaRational operator+(const DeltaRational& o) const {
    return {real + o.real, delta + o.delta};
  }
  DeltaRational operator-(const DeltaRational& o) const {
    return {real - o.real, delta - o.delta};
  }
  DeltaRational operator*(const Rational& c) const {
    return {real * c, delta * c};
  }
  DeltaRational operator/(const Rational& c) const {
    return {real / c, delta / c};
  }
  DeltaRational& operator+=(const DeltaRational& o) {
    real += o.real;
    delta += o.delta;
    return *this;
  }

  std::string str() const {
    if (delta == 0) return rat_str(real);
    return rat_str(real) + (delta > 0 ? "+" : "") + rat_str(delta) + "d";
  }
};

}  // namespace nlia

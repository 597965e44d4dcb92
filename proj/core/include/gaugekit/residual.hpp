#pragma once

#include <algorithm>
#include <cmath>

namespace gaugekit {

//! Magnitude of an identity violation together with the size of the terms
//  that were summed to produce it.
//
//  Identities evaluated in floating point leave round-off proportional to
//  the largest term, so checks compare `normalized()` = value / (1 + scale)
//  against relative tolerances.
struct Residual {
  double value = 0.0;
  double scale = 0.0;

  double normalized() const { return value / (1.0 + scale); }

  // Accumulates the violation of sum(terms) = 0.
  void add_term_magnitude(double term) { scale = std::max(scale, std::fabs(term)); }

  static Residual worst(const Residual& a, const Residual& b) {
    return b.normalized() > a.normalized() ? b : a;
  }
};

}  // namespace gaugekit

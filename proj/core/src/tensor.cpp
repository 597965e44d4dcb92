#include "gaugekit/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace gaugekit {

int levi_civita(int a, int b, int c, int d) {
  const int idx[4] = {a, b, c, d};
  for (int i = 0; i < 4; ++i) {
    if (idx[i] < 0 || idx[i] > 3) return 0;
    for (int j = i + 1; j < 4; ++j) {
      if (idx[i] == idx[j]) return 0;
    }
  }
  int sign = 1;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (idx[i] > idx[j]) sign = -sign;
    }
  }
  return sign;
}

int levi_civita3(int i, int j, int k) { return levi_civita(0, i, j, k); }

ContravariantTensor raise_both(const CovariantTensor& t) {
  ContravariantTensor out;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      out(mu, nu) = Metric::diagonal[mu] * Metric::diagonal[nu] * t(mu, nu);
    }
  }
  return out;
}

CovariantVector contract_second(const CovariantTensor& t, const ContravariantVector& u) {
  CovariantVector out;
  for (int mu = 0; mu < 4; ++mu) {
    double s = 0.0;
    for (int nu = 0; nu < 4; ++nu) s += t(mu, nu) * u[nu];
    out[mu] = s;
  }
  return out;
}

CovariantTensor dual(const CovariantTensor& f) {
  const double scale = f.max_abs();
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu; nu < 4; ++nu) {
      if (std::fabs(f(mu, nu) + f(nu, mu)) > 1e-12 * scale) {
        throw std::invalid_argument("dual: tensor is not antisymmetric");
      }
    }
  }
  const ContravariantTensor up = raise_both(f);
  CovariantTensor out;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu + 1; nu < 4; ++nu) {
      // The two nonzero terms of the 1/2 sum are equal by antisymmetry.
      double s = 0.0;
      for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) s += levi_civita(mu, nu, a, b) * up(a, b);
      }
      out.set_antisymmetric(mu, nu, s);
    }
  }
  return out;
}

}  // namespace gaugekit

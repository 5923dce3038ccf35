#pragma once

// Deterministic sampling helpers for the test binaries. Seeds are fixed at
// the call sites; assertions stay tolerance-based, so the exact stream only
// needs to be stable within one run.

#include <random>

#include "qnet/tensor.hpp"

namespace qtest {

inline double uniform(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline qnet::cxd gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(rng), n(rng)};
}

inline qnet::CVec random_ket(std::mt19937_64& rng, int d) {
  qnet::CVec v(d);
  for (int i = 0; i < d; ++i) v(i) = gaussian(rng);
  v.normalize();
  return v;
}

inline qnet::CMat random_density(std::mt19937_64& rng, int d) {
  qnet::CMat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = gaussian(rng);
  qnet::CMat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

inline qnet::CMat random_hermitian(std::mt19937_64& rng, int d) {
  qnet::CMat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = gaussian(rng);
  return (g + g.adjoint()) / 2.0;
}

}  // namespace qtest

#pragma once

// The Khot-Vishnoi game at small v and its star-network extension. Questions
// are cosets of the Hadamard code in {0,1}^v, answers are coset elements, and
// the weight of an answer pair is the probability that the referee drew the
// noise string z = a xor b. Every local strategy stays below v^(-eta/(1-eta))
// while entangled strategies do much better, which is what the star network
// extension turns into genuine multipartite nonlocality.

#include <cstdint>
#include <string>
#include <vector>

#include "qnet/bell.hpp"

namespace qnet {

struct KVGame {
  int v = 0;          // power of two, at most 16
  double eta = 0.0;   // noise rate in [0, 1/2]
  std::vector<uint32_t> subgroup;                  // Hadamard codewords, ascending
  std::vector<int> coset_of;                       // string -> coset index
  std::vector<std::vector<uint32_t>> coset_elems;  // [coset][answer], ascending

  int n_cosets() const { return static_cast<int>(coset_elems.size()); }

  // weight of answers (a-th element of coset x, b-th of coset y)
  double coeff(int x, int y, int a, int b) const;
};

KVGame kv_game(int v, double eta);

// v^(-eta/(1-eta)), the published ceiling for local strategies
double kv_local_bound(int v, double eta);

// Dense functional form, for the generic evaluation and maximization code.
BellFunctional kv_functional(const KVGame& g);

struct KvLocalMax {
  double value = 0.0;
  std::vector<uint32_t> alice;  // chosen element per coset
  std::vector<uint32_t> bob;
  bool exact = false;  // true when every strategy was enumerated
};

// Exact for v <= 4 (one side enumerated, the other best-responds). For larger
// v the search alternates best responses from the coset representatives and
// reports exact = false; the value is then only a lower bound on the maximum.
KvLocalMax kv_local_max(const KVGame& g);

// Sum over question tuples of the largest coefficient, the normalization that
// makes game values comparable across network sizes. At most 1 for any KVGame
// and multiplicative under the star product.
double normalization_sum(const BellFunctional& f);

// (K+1)-party star: Alice plays the base game with each of K Bobs. Alice's
// input and output pack one digit per edge, first edge slowest.
BellFunctional star_kv(const KVGame& g, int K);

// Quantum-over-bilocal ratio for the star built from one entangled isotropic
// edge (entanglement fraction F, dimension d, L copies) and K-1 maximally
// entangled edges. The published bound is (D^K / C) * F^L d^L / (L^2 ln^2 d)^K
// with C, D universal constants nobody has pinned down, so the numeric part
// is reported together with the symbolic prefix.
struct ActivationRatio {
  double F = 0.0;
  int d = 0, K = 0;
  long L = 0;
  double numeric_factor = 0.0;  // F^L d^L / (L^2 ln^2 d)^K
  std::string symbolic_prefix;  // "D^K/C" with K substituted
  bool diverges = false;        // F d > 1, factor unbounded in L
};

ActivationRatio star_activation_ratio(double F, int d, long L, int K);

}  // namespace qnet

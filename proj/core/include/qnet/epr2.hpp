#pragma once

// Local weight of a two-party box: the largest p such that
//   P = p * P_local + (1-p) * P_rest
// with P_local a mixture of deterministic product strategies and P_rest a
// valid box. Computed as a linear program over the product vertices; the
// remainder is automatically nonsignalling at the optimum.

#include <vector>

#include "qnet/boxes.hpp"

namespace qnet {

// deterministic strategy pair with its mixture weight in the local part
struct ProductVertex {
  std::vector<int> alice;  // output per Alice input
  std::vector<int> bob;    // output per Bob input
  double weight = 0.0;
};

struct Epr2Result {
  double local_weight = 0.0;
  std::vector<ProductVertex> local_part;
  BoxN ns_remainder;  // renormalized; uniform when the box is fully local
};

// Maximizes the total vertex weight subject to staying entrywise below the
// box. Revised simplex with column generation: the entering vertex is found
// by best response on the dual prices, so the 65536-column program never
// materializes. Restricted to at most 4 inputs and 4 outputs per side.
Epr2Result epr2_local_weight(const BoxN& box);

}  // namespace qnet

#pragma once

// Bell functionals over multiparty boxes: the CHSH-equivalent seed inequality,
// its lifting to edge networks, and exact maxima over deterministic strategies.

#include <string>
#include <vector>

#include "qnet/boxes.hpp"
#include "qnet/states.hpp"

namespace qnet {

enum class BoundKind { local, bilocal };

// Linear functional sum_{a,x} c(a|x) P(a|x) with the same flat layout as BoxN.
struct BellFunctional {
  std::string name;
  BoxShape shape;
  std::vector<double> coeff;
  double declared_bound = 0.0;
  BoundKind bound_kind = BoundKind::local;

  double at(const std::vector<int>& a, const std::vector<int>& x) const {
    return coeff[shape.index(a, x)];
  }
  double& at(const std::vector<int>& a, const std::vector<int>& x) {
    return coeff[shape.index(a, x)];
  }
  double evaluate(const BoxN& box) const;
};

// P(00|00) - P(01|01) - P(10|10) - P(00|11) <= 0 for local boxes. Facet
// equivalent of CHSH on the nonsignalling set; every term it needs survives
// in a Hardy box, which is how the network inequalities below get violated.
BellFunctional chsh_equiv();

// Lift the seed inequality along every spanning-tree edge of g and combine
// the liftings into one genuine-multipartite functional with bilocal bound 0.
// Party i gets one binary input and output digit per incident edge of g
// (ascending edge index, first digit most significant), so boxes assembled
// edge by edge with product_box line up with the coefficient layout. Edges
// off the chosen tree still occupy digits but contribute no terms.
BellFunctional lift_and_combine(const NetworkGraph& g);

enum class PartitionMode { fully_local, bilocal_all_bipartitions };

// Exact maximum of a functional over product-deterministic strategies.
// groups is the partition of the parties the argmax uses; responses[g] maps a
// joint input index of group g to a joint output index (party order ascending,
// first party slowest, as in pack_index).
struct StrategyMax {
  double value = 0.0;
  std::vector<std::vector<int>> groups;
  std::vector<std::vector<int>> responses;
};

// fully_local treats every party as its own group. bilocal_all_bipartitions
// maximizes over every proper bipartition with both sides acting jointly and
// unrestricted, i.e. over the extreme points of the Svetlichny hull. Beware:
// that hull is strictly larger than the operational bilocal set (groups
// nonsignalling inside), and the lifted network inequalities are only valid
// on the latter; use ns_bilocal_max for those. Throws when the smaller side
// of some bipartition still has more than 1e8 strategies.
StrategyMax deterministic_max(const BellFunctional& f, PartitionMode mode);

// Maximum over the operational bilocal set: mixtures, over proper
// bipartitions, of products of group boxes each nonsignalling within its
// group. Exact for every bipartition with a single party on one side (the
// singleton's responses are enumerated, the group side is a linear program
// over its nonsignalling polytope). Bipartitions with two multi-party sides
// are lower-bounded by alternating best responses and flag exact = false;
// splits whose group LP would be too large for the dense solver are skipped
// entirely (also exact = false). Throws when no split at all is tractable.
struct NsBilocalMax {
  double value = 0.0;
  bool exact = true;
  std::vector<int> partition;  // one side of the best bipartition, ascending
};
NsBilocalMax ns_bilocal_max(const BellFunctional& f);

// Deterministic box realizing a strategy, for cross-checking maxima.
BoxN strategy_box(const BoxShape& shape, const std::vector<std::vector<int>>& groups,
                  const std::vector<std::vector<int>>& responses);

// Assemble the network box from one two-party box per edge: party i's digits
// concatenate its incident edges' inputs and outputs in ascending edge order,
// lining up with the lift_and_combine layout. edge_boxes[k] belongs to edge k,
// its party 0 sitting at edges[k].a and party 1 at edges[k].b.
BoxN network_product_box(const NetworkGraph& g, const std::vector<BoxN>& edge_boxes);

}  // namespace qnet

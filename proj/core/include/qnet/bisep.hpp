#pragma once

#include "qnet/states.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace qnet {

// Biseparable decompositions of networks of isotropic states. Everything
// here lives in the edge basis: edge k carries either phi+ (bit k of the
// mask set) or the normalised identity (bit clear), and a component is a
// convex mixture of such products. The 2^K basis operators are linearly
// independent, so two mixtures are equal iff their coefficients are, which
// keeps verification exact even when the dense operator would never fit in
// memory (a tree with 18 edges lives on a 4^18-dimensional space).

enum class NetKind { lambda, triangle, tree, polygon };

struct SeparabilityCertificate {
  enum class Kind {
    isotropic_threshold,       // cut marginal is iso(dim, visibility); separable iff visibility <= 1/(dim+1)
    ghz_sym_criterion,         // |lam_plus - lam_minus| <= lam/3
    explicit_product_mixture,  // cut marginal is mix_weight * iso(d,v) x iso(d,v) + (1-mix_weight) * identity
    tensor_factor,             // no phi+ crosses the cut, so the component factors across it
  };
  Kind kind = Kind::tensor_factor;
  std::vector<int> cut_edges;  // edges with exactly one endpoint in the bipartition, ascending
  int dim = 0;                 // isotropic_threshold: d^|cut|; explicit_product_mixture: d
  double visibility = 0.0;
  double mix_weight = 0.0;     // explicit_product_mixture only
  double lam_plus = 0.0, lam_minus = 0.0, lam = 0.0;  // ghz_sym_criterion only
};

struct EdgeBasisComponent {
  int n_edges = 0;
  std::map<std::uint64_t, double> coeff;  // mask -> convex weight, kept even when zero
};

struct BisepTerm {
  double weight = 0.0;
  EdgeBasisComponent comp;
  std::vector<int> bipartition;  // party set M, ascending; the term is separable across M | rest
  SeparabilityCertificate cert;
};

struct BisepDecomposition {
  bool feasible = false;
  std::string binding_constraint;  // which inequality failed, set when infeasible
  int d = 2;
  double p = 0.0;
  int n_edges = 0;
  std::vector<BisepTerm> terms;
};

// The explicit constructions, one per supported topology. The graph must
// carry the same isotropic state on every edge and match the kind's shape:
// lambda = edges (0,1),(0,2); triangle = edges (0,1),(0,2),(1,2); tree = any
// spanning tree; polygon = cycle of K >= 5 edges, edge i joining parties
// i and i+1 mod K. Parameters outside the feasible range give back
// feasible = false with the binding constraint spelled out, not a throw.
BisepDecomposition bisep_decomposition(const NetworkGraph& g, NetKind kind);

// Smallest polygon size K >= 5 that is feasible at (d, p). Throws when no
// K up to max_edges works (p too close to 1).
int smallest_feasible_polygon(int d, double p, int max_edges = 512);

// One certificate against one component: the cut-marginal shape matches the
// certificate's claim and the claimed inequality actually holds.
bool verify_certificate(const SeparabilityCertificate& cert, const EdgeBasisComponent& comp,
                        int d, double tol = kDefaultTol, std::string* why = nullptr);

// Full audit of a decomposition against its graph: weight normalisation,
// per-term convexity, cut edges consistent with each bipartition, every
// certificate valid, and coefficient-level reconstruction of iso(d,p)^{x K}.
// On failure *why names the first problem found.
bool verify_bisep(const BisepDecomposition& dec, const NetworkGraph& g,
                  double tol = kDefaultTol, std::string* why = nullptr);

// Dense density operator of a component, with the same particle layout as
// network_state(g). Cross-check helper; only viable for small networks.
CMat dense_component(const EdgeBasisComponent& comp, const NetworkGraph& g);

}  // namespace qnet

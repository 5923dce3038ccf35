#pragma once

#include "qnet/tensor.hpp"

#include <utility>

namespace qnet {

CVec basis_ket(int d, int i);
CMat projector(const CVec& psi);

CVec max_entangled(int d);   // sum_i |ii> / sqrt(d) on C^d x C^d
CMat max_entangled_proj(int d);
CVec ghz(int n, int d);      // sum_i |i>^n / sqrt(d)
CVec ghz_minus();            // (|000> - |111>) / sqrt(2)
CVec w_state();              // (|001> + |010> + |100|) / sqrt(3)
CVec w_bar_state();          // (|110> + |101> + |011|) / sqrt(3)
CMat flip(int d);            // swap operator |ij> -> |ji>

struct IsotropicSpec {
  int d = 2;
  double p = 0.0;
  bool entangled(double tol = kDefaultTol) const { return p > 1.0 / (d + 1) + tol; }
};

// p * phi+ + (1-p) * I/d^2. Valid density operator for p >= -1/(d^2-1).
CMat isotropic(int d, double p);

// Mixtures of GHZ+, GHZ- and the six middle computational projectors. The
// (x, y) coordinates are the standard affine parametrization of the family;
// the fully separable region is |lam_plus - lam_minus| <= lam / 3.
struct GhzSymCoords { double x = 0, y = 0; };

struct GhzSymState {
  double lam_plus = 0, lam_minus = 0, lam = 0;
  bool fully_separable(double tol = kDefaultTol) const;
  CMat density() const;
  GhzSymCoords coords() const;
};

GhzSymState ghz_symmetric(double lam_plus, double lam_minus, double lam);
GhzSymState ghz_symmetric_xy(double x, double y);
GhzSymCoords ghz_sym_coords(const CMat& rho);  // any 3-qubit density operator

// ---- networks of bipartite resources ----

struct EdgeState {
  int d = 2;
  bool iso = true;   // isotropic(d, p) when set, otherwise the pure ket below
  double p = 1.0;
  CVec pure;
  static EdgeState isotropic_edge(int d, double p);
  static EdgeState pure_edge(int d, CVec ket);
  CMat density() const;
};

struct NetworkGraph {
  int n_parties = 0;
  struct Edge {
    int a = 0, b = 0;
    EdgeState state;
  };
  std::vector<Edge> edges;

  bool connected() const;
  std::vector<std::vector<int>> incident_edges() const;  // party -> edge ids, ascending

  // Parties on edge k's a-side after deleting edge k. Throws unless the edge
  // is a bridge, i.e. deleting it actually disconnects the graph.
  std::vector<int> tree_cut(int k) const;

  static NetworkGraph uniform(int n_parties, const std::vector<std::pair<int,int>>& edges,
                              const EdgeState& shared);
  static NetworkGraph star(int n_parties, const EdgeState& first, const EdgeState& rest);
};

// Dense network state with particles grouped by party (parties in index
// order, particles within a party ordered by edge id). The reindexing from
// the edge-major tensor product is a single explicit permutation.
struct NetworkState {
  CMat state;
  Dims particle_dims;
  Dims party_dims;
  std::vector<int> particle_party;
  std::vector<std::pair<int,int>> edge_particles;   // edge -> (slot at a, slot at b)
  std::vector<int> party_first_particle;
};

NetworkState network_state(const NetworkGraph& g);

// (A_1 x ... x A_n) rho (.)^dag with one operator per party (empty matrix =
// identity). Returns the renormalized state and the success probability.
std::pair<CMat, double> apply_local_filter(const NetworkState& ns, const std::vector<CMat>& ops);

// One teleportation step: sending half of `source` through `channel` yields
// an isotropic state whose visibility is the product of the two.
IsotropicSpec teleport_through(const IsotropicSpec& source, const IsotropicSpec& channel);

// Full qubit teleportation circuit on iso(2,p1) x iso(2,p2): Bell measurement
// (CNOT, Hadamard, computational readout) on the two shared halves, then the
// outcome-keyed Pauli correction, averaged over the four branches. Returns
// the final two-qubit state; it must match teleport_through entrywise.
CMat teleport_circuit(double p1, double p2);

}  // namespace qnet

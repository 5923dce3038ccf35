#pragma once

#include "qnet/states.hpp"

namespace qnet {

// 1 - max over proper bipartitions of the largest squared Schmidt coefficient.
// party_dims lists one dimension per party; psi lives on their tensor product.
double geometric_measure_bs(const CVec& psi, const Dims& party_dims);

// (sum_i sqrt(lambda_i))^2 - 1 for a bipartite pure state.
double robustness_pure_bipartite(const CVec& psi, int d_left, int d_right);

// A state with geometric measure g reaches every state of robustness r via a
// biseparability-preserving map iff r <= g / (1 - g).
bool bsp_transform_feasible(double g, double r, double tol = kDefaultTol);

// Witness lines on the (x, y) plane of the permutation-symmetric family.
double ghz_sym_fs_witness(const GhzSymCoords& c);  // -x - (sqrt3/6) y + 1/8
double ghz_sym_bs_witness(const GhzSymCoords& c);  // -x - (sqrt3/2) y + 3/8

// A map that preserves full separability but breaks biseparability: its image
// of the best fully separable input sits exactly on the FS witness line, while
// the image of a biseparable input crosses the BS witness line.
struct FspBspDemo {
  GhzSymCoords fs_image;            // (5/72, sqrt3/9)
  GhzSymCoords bs_image;            // (1/6, sqrt3/6)
  double fs_witness_at_fs_image;    // 0
  double bs_witness_at_bs_image;    // -1/24
  double fs_witness_at_origin;      // 1/8
  double fs_overlap;                // 4/9, max W-state overlap over fully separable inputs
  double bs_overlap;                // 2/3, W-state overlap of (|001>+|010>)/sqrt2
};
FspBspDemo fsp_not_bsp_demo();

// ---- closed-form thresholds ----
double threshold_entanglement(int d);        // isotropic entangled iff p > 1/(d+1)
double threshold_lambda_bisep(int d);        // ((1+sqrt2) d - 1)/(d^2 + 2d - 1)
double threshold_lambda_gme_uniform();       // 1/sqrt3, qubit pairs with equal visibility
double threshold_triangle_bisep(int d);      // 3/(3 + 2d)
double threshold_triangle_gme();             // (2 sqrt5 - 3)/3, qubit pairs
double threshold_bisep_fidelity(int n);      // (n-1)^2/2 total pair-fidelity cap
double threshold_complete_graph_gme(int n);  // 1 - 4/(3n)
double threshold_steering_bilocal(int d);    // (3d-1)(d-1)^(d-1) / ((d+1) d^d)
int tree_min_edges(int d, double p);         // smallest K with K >= d p/(1-p)

// Complete qubit network: each pair extracts fidelity (1+3p)/4 by tracing out
// the rest, so the summed fidelity beats the biseparable cap iff p > 1-4/(3n).
struct CompleteGraphCheck {
  double pair_fidelity = 0;
  double protocol_sum = 0;
  double bound = 0;
  bool gme = false;
};
CompleteGraphCheck complete_graph_gme(int n, double p);

// Star with one noisy edge: Alice projects her n-1 particles onto the aligned
// subspace; the filtered state's witness value is (d-1-p(d^2-1))/d^2, negative
// exactly when the noisy edge is entangled. The first form simulates the
// filter, the second evaluates the closed form.
double star_filter_value(int n, int d, double p);
double star_filter_value_formula(int d, double p);

}  // namespace qnet

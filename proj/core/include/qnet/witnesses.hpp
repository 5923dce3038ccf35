#pragma once

#include "qnet/states.hpp"

#include <string>

namespace qnet {

// A witness together with, per bipartition M, operators P, Q >= 0 such that
// W = P + Q^(T_M) with the transpose taken over M's particles. Checking the
// pair certifies that the witness is nonnegative on every state that is a
// mixture of states PPT across the listed bipartitions, hence on all
// biseparable states of the network.
struct WitnessDecomposition {
  std::string bipartition;              // label, e.g. "A|BC"
  std::vector<int> party_set;
  std::vector<int> transpose_particles;
  CMat p_op, q_op;
};

struct Witness {
  std::string name;
  CMat op;
  Dims particle_dims;
  std::vector<std::vector<int>> party_particles;
  std::vector<WitnessDecomposition> decomps;
};

// tr(W rho). Throws if the imaginary residue exceeds 1e-9.
double witness_value(const Witness& w, const CMat& rho);
double witness_value(const CMat& op, const CMat& rho);

// Verifies every stored decomposition: P and Q PSD within tol and
// P + Q^(T_M) reconstructs the witness entrywise within tol.
bool verify_decompositions(const Witness& w, double tol, std::string* why = nullptr);

// Two-pair chain A-B, A-C (qubit pairs): detects GME of iso(p1) x iso(p2)
// when p1 p2 > 1/3. Value on that input is (3/2)(1 - 3 p1 p2).
Witness lambda_witness();

// Qubit triangle: value on iso(p)^x3 is (3/64)(11 + 15p - 63p^2 - 27p^3),
// negative above the GME threshold.
Witness triangle_witness();

// Three-qubit witness from the permutation-symmetric family; equals 2/3 on
// the fully separable polytope vertices' span and -2 on the GHZ state.
Witness ghz_robustness_witness();

// W-state robustness witness A with tr(A W) = -2 and 0 <= tr(A sigma) <= 1
// on fully separable sigma.
Witness w_robustness_witness();

// tr((A - 1/2) |aaa><aaa|) for a product of three copies of a single-qubit
// state; the closed form is cos(6 alpha)/2 for |a> = cos(a)|0> + e^ib sin(a)|1>.
double w_robustness_shifted_value(const CVec& single_qubit);
double w_robustness_shifted_closed_form(double alpha);

// I/d - GHZ(n,d) projector: negative exactly on states whose GHZ overlap
// exceeds the maximal biseparable overlap 1/d.
Witness star_ghz_witness(int n, int d);

}  // namespace qnet

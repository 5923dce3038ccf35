#pragma once

// Agreement and disagreement for two-party 2-input 2-output boxes: certainty
// set iteration, the common-certainty-of-disagreement and singular
// disagreement detectors, two quantum-realizability obstructions, the
// instruction-set (ontological) model solver, and the output-grouping
// reduction that maps larger boxes onto this 2x2 scene.
//
// Conventions: the agents measure x=0, y=0 and the disagreement is about the
// outputs of x=1, y=1, evaluated at the event a=b=0. q_A is Alice's
// assignment P(b=1|a=0,x=0,y=1), q_B is Bob's P(a=1|b=0,x=1,y=0).

#include <string>
#include <vector>

#include "qnet/boxes.hpp"

namespace qnet {

struct AgreementBox {
  BoxN box;
  bool perfectly_correlated = false;  // P(a!=b|x=1,y=1) = 0 within tol
  bool q_defined = false;             // both conditioning events have mass
  double q_A = 0.0;
  double q_B = 0.0;

  // validates the 2x2x2x2 shape and normalization, then derives the fields
  static AgreementBox from_box(const BoxN& b, double tol = 1e-9);
};

// alpha[n] is the set of Alice outputs that, seen at x=0, leave her assigning
// q_A; each step keeps the outputs certain the other side is still inside its
// set. Sequences shrink, so they stabilize after at most |outputs| steps.
struct CertaintySets {
  std::vector<std::vector<int>> alpha;
  std::vector<std::vector<int>> beta;
  int fixpoint_index = 0;  // first n with alpha[n+1]==alpha[n], beta likewise
};

CertaintySets certainty_sets(const AgreementBox& ab, double tol = 1e-9);

// Detector outcome. applicable=false means a conditioning event had zero
// probability (the definitions assume non-null events), so no verdict exists.
// boundary flags a decisive margin within 10x the tolerance: the verdict is
// stated but a small perturbation could flip it.
struct Verdict {
  bool applicable = false;
  bool value = false;
  bool boundary = false;
  std::string reason;
};

// q_A != q_B while the all-zero event stays inside both certainty sets
// forever. Nonsignalling boxes do this exactly on the nsccd_box region.
Verdict common_certainty_of_disagreement(const AgreementBox& ab, double tol = 1e-9);

// maximal disagreement q_A = 1, q_B = 0 at a live all-zero event; no local
// box can do this (it would solve Hardy's paradox)
Verdict singular_disagreement(const AgreementBox& ab, double tol = 1e-9);

// value=true proves the box has no quantum realization: perfect correlations
// c00 = c11 = 1 force c01 = c10 for real unit Tsirelson vectors, so unequal
// cross correlations are a contradiction. value=false is only "inconclusive".
Verdict tsirelson_reject(const AgreementBox& ab, double tol = 1e-9);

// value=true when, after relabeling x to x+1, at least four entries with
// a+b+1 = xy (mod 2) vanish; such boxes are quantum voids, either local or
// post-quantum, never quantum and nonlocal.
Verdict quantum_void_pattern(const AgreementBox& ab, double tol = 1e-9);

// The nonsignalling boxes exhibiting common certainty of disagreement,
// parametrized by (r,s,t,u); rows are inputs xy = 00,01,10,11, columns
// outputs ab = 00,01,10,11. Throws when an entry would be negative. The
// disagreement region inside the family is r > 0 together with s-u != r-t.
BoxN nsccd_box(double r, double s, double t, double u);
bool nsccd_params_valid(double r, double s, double t, double u);

// Same for singular disagreement; the active region is s > 0, s+t != 0,
// u+t != 1.
BoxN nssd_box(double r, double s, double t, double u);
bool nssd_params_valid(double r, double s, double t, double u);

// xor_game: P(ab|xy) = 1/2 iff a xor b = x and y. correlated: Bob's output
// flipped on y=1 so the (1,1) outputs agree; that is the form the agreement
// detectors consume, and it sits at the extreme point q_A = 1, q_B = 0.
enum class PrConvention { xor_game, correlated };
BoxN pr_box(PrConvention conv);

// Quasi-probability over the 16 instruction sets (a0,a1,b0,b1), packed with
// a0 as the most significant bit. Responses may be negative; they sum to 1.
// solved=false reports the system was inconsistent, which happens exactly
// when the box signals.
struct OntModel2x2 {
  bool solved = false;
  std::vector<double> quasi_prob;  // 16 entries when solved
  double residual = 0.0;           // max abs defect of the linear system
};

// least-norm solution of P(ab|xy) = sum of quasi_prob over matching
// instruction sets; deterministic output for reproducible reports
OntModel2x2 ont_model_from_box(const BoxN& b, double tol = 1e-8);

BoxN box_from_ont_model(const std::vector<double>& quasi_prob);

// Group outputs of a 2-input box down to binary ones: on input 0 output 0
// means "inside the given set", on input 1 output 0 means "anything but 1".
// With the fixpoint certainty sets this preserves the disagreement verdicts.
BoxN reduce_box(const BoxN& p, const std::vector<int>& alpha_set,
                const std::vector<int>& beta_set);

}  // namespace qnet

#pragma once

// Hardy-paradox measurements for a two-party pure state with distinct nonzero
// leading Schmidt coefficients. The resulting box has
//   P(00|00) > 0 = P(01|01) = P(10|10) = P(00|11),
// which is what the lifted network inequalities feed on.

#include <vector>

#include "qnet/boxes.hpp"
#include "qnet/tensor.hpp"

namespace qnet {

// Two-input two-output POVMs for both parties, acting on C^d each. Only the
// span of |0>,|1> carries the construction; higher levels are absorbed into
// whichever effect of each pair the complement rule assigns them to. Indexed
// [party][input][outcome], ready for born_box. Requires 0 < alpha < pi/2 and
// distinct nonzero lambda0, lambda1 (equal coefficients would make the state
// maximally entangled on the relevant subspace, a zero would make it product;
// Hardy's paradox fails in both cases).
std::vector<std::vector<std::vector<CMat>>> hardy_povms(double lambda0, double lambda1,
                                                        double alpha, double delta, int d = 2);

// The one surviving probability, in closed form:
//   sin^2(a) cos^2(a) l0 l1 (l1-l0)^2 / (l1^3 sin^2(a) + l0^3 cos^2(a)),
// for cross-checking the Born-rule value.
double hardy_p0000(double lambda0, double lambda1, double alpha);

// Box of the Hardy measurements on sum_i sqrt(schmidt[i]) |ii>. schmidt must
// be a probability vector; its first two entries drive the construction.
BoxN hardy_box(const RVec& schmidt, double alpha, double delta);

}  // namespace qnet

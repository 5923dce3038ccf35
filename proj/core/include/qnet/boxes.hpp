#pragma once

#include "qnet/tensor.hpp"

namespace qnet {

// Joint index layout shared by probability tables and Bell functionals:
// entry (a_1..a_n | x_1..x_n) lives at x_joint * output_joint() + a_joint,
// with party 0 the slowest digit in both packs.
struct BoxShape {
  int n_parties = 0;
  Dims outputs;  // per party
  Dims inputs;   // per party

  long output_joint() const;
  long input_joint() const;
  long size() const { return output_joint() * input_joint(); }
  long index(const std::vector<int>& a, const std::vector<int>& x) const;
  bool operator==(const BoxShape&) const = default;
};

struct BoxN {
  BoxShape shape;
  std::vector<double> table;

  double at(const std::vector<int>& a, const std::vector<int>& x) const;
  double& at(const std::vector<int>& a, const std::vector<int>& x);
  // entries nonnegative, each input tuple summing to 1
  bool valid(double tol = kDefaultTol) const;
  // every single-party output marginal independent of that party's own input
  bool nonsignalling(double tol = kDefaultTol) const;
};

BoxN uniform_box(BoxShape shape);

// P(a|x) = tr((E_{a1|x1} x ... x E_{an|xn}) rho). povms[party][input][outcome]
// acts on party_dims[party]; each input's effects must be PSD and sum to the
// identity. The output is nonsignalling by construction.
BoxN born_box(const CMat& rho, const Dims& party_dims,
              const std::vector<std::vector<std::vector<CMat>>>& povms,
              double tol = kDefaultTol);

// Product of two boxes with parties optionally merged: global party i holds
// the concatenated digits of its sources, the p digit slower than the q one.
struct MergedParty {
  int from_p = -1;  // party index into p, or -1 for none
  int from_q = -1;  // party index into q, or -1 for none
};
BoxN product_box(const BoxN& p, const BoxN& q, const std::vector<MergedParty>& parties);

}  // namespace qnet

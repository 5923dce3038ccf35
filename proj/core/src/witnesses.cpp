#include "qnet/witnesses.hpp"

#include <cmath>
#include <stdexcept>

namespace qnet {

double witness_value(const CMat& op, const CMat& rho) {
  if (op.rows() != rho.rows() || op.cols() != rho.cols())
    throw std::invalid_argument("witness_value: shape mismatch");
  cxd v = (op * rho).trace();
  if (std::abs(v.imag()) > 1e-9)
    throw std::runtime_error("witness_value: trace has a non-real residue");
  return v.real();
}

double witness_value(const Witness& w, const CMat& rho) { return witness_value(w.op, rho); }

bool verify_decompositions(const Witness& w, double tol, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (w.decomps.empty()) return fail(w.name + ": no decompositions stored");
  for (const auto& dec : w.decomps) {
    if (!is_psd(dec.p_op, tol)) return fail(w.name + " " + dec.bipartition + ": P not PSD");
    if (!is_psd(dec.q_op, tol)) return fail(w.name + " " + dec.bipartition + ": Q not PSD");
    CMat rebuilt = dec.p_op + partial_transpose(dec.q_op, w.particle_dims, dec.transpose_particles);
    if (!approx_equal(rebuilt, w.op, tol))
      return fail(w.name + " " + dec.bipartition + ": P + Q^T does not reconstruct the witness");
  }
  return true;
}

namespace {

// shared 4x4 building blocks for the qubit-pair constructions
struct PairOps {
  CMat id, phi, pi;  // identity, maximally entangled projector, swap
  PairOps() : id(CMat::Identity(4, 4)), phi(max_entangled_proj(2)), pi(flip(2)) {}
};

// (1/2)[(1-Pi)x(1+Pi) + (1+Pi)x(1-Pi)], the PSD core whose partial transpose
// over one side of each pair gives 1x1 - 4 phi x phi
CMat crossed_swap_core(const PairOps& o) {
  return 0.5 * (kron(o.id - o.pi, o.id + o.pi) + kron(o.id + o.pi, o.id - o.pi));
}

}  // namespace

Witness lambda_witness() {
  PairOps o;
  Witness w;
  w.name = "lambda";
  w.particle_dims = {2, 2, 2, 2};           // A1, B, A2, C
  w.party_particles = {{0, 2}, {1}, {3}};   // A, B, C
  w.op = kron(o.id, o.id) + 2.0 * kron(o.id, o.phi) + 2.0 * kron(o.phi, o.id)
       - 8.0 * kron(o.phi, o.phi);

  WitnessDecomposition da;
  da.bipartition = "A|BC";
  da.party_set = {0};
  da.transpose_particles = {0, 2};
  da.p_op = 2.0 * kron(o.phi, o.id - o.phi) + 2.0 * kron(o.id - o.phi, o.phi);
  da.q_op = crossed_swap_core(o);

  WitnessDecomposition db;
  db.bipartition = "B|AC";
  db.party_set = {1};
  db.transpose_particles = {1};
  db.p_op = CMat::Zero(16, 16);
  db.q_op = kron(o.id + o.pi, o.id - o.phi) + 3.0 * kron(o.id - o.pi, o.phi);

  WitnessDecomposition dc;
  dc.bipartition = "C|AB";
  dc.party_set = {2};
  dc.transpose_particles = {3};
  dc.p_op = CMat::Zero(16, 16);
  dc.q_op = kron(o.id - o.phi, o.id + o.pi) + 3.0 * kron(o.phi, o.id - o.pi);

  w.decomps = {da, db, dc};
  return w;
}

Witness triangle_witness() {
  PairOps o;
  auto t3 = [&](const CMat& a, const CMat& b, const CMat& c) { return kron(kron(a, b), c); };
  Witness w;
  w.name = "triangle";
  // particle order A1 B1 A2 C1 B2 C2; edge pairs (A1,B1), (A2,C1), (B2,C2)
  w.particle_dims = {2, 2, 2, 2, 2, 2};
  w.party_particles = {{0, 2}, {1, 4}, {3, 5}};
  w.op = t3(o.id, o.id, o.phi) + t3(o.id, o.phi, o.id) + t3(o.phi, o.id, o.id)
       - t3(o.id, o.phi, o.phi) - t3(o.phi, o.phi, o.id) - t3(o.phi, o.id, o.phi)
       - 3.0 * t3(o.phi, o.phi, o.phi);

  WitnessDecomposition da;
  da.bipartition = "A|BC";
  da.party_set = {0};
  da.transpose_particles = {0, 2};
  da.p_op = t3(o.id, o.phi, o.id - o.phi) + t3(o.phi, o.id - o.phi, o.id - o.phi);
  da.q_op = kron(crossed_swap_core(o), o.phi);

  WitnessDecomposition db;
  db.bipartition = "B|AC";
  db.party_set = {1};
  db.transpose_particles = {1, 4};
  db.p_op = t3(o.id, o.id - o.phi, o.phi) + t3(o.phi, o.id - o.phi, o.id - o.phi);
  // the crossed-swap core pairs the A1B1 and B2C2 edges here, so it is built
  // in the order (A1 B1 B2 C2 A2 C1) and permuted back to the canonical one
  {
    CMat q_reordered = kron(crossed_swap_core(o), o.phi);
    db.q_op = permute_systems(q_reordered, {2, 2, 2, 2, 2, 2}, {0, 1, 4, 5, 2, 3});
  }

  WitnessDecomposition dc;
  dc.bipartition = "C|AB";
  dc.party_set = {2};
  dc.transpose_particles = {3, 5};
  dc.p_op = t3(o.id - o.phi, o.phi, o.id) + t3(o.id - o.phi, o.id - o.phi, o.phi);
  dc.q_op = kron(o.phi, crossed_swap_core(o));

  w.decomps = {da, db, dc};
  return w;
}

Witness ghz_robustness_witness() {
  Witness w;
  w.name = "ghz_robustness";
  w.particle_dims = {2, 2, 2};
  w.party_particles = {{0}, {1}, {2}};
  w.op = (2.0 / 3.0) * CMat::Identity(8, 8) - (8.0 / 3.0) * projector(ghz(3, 2))
       + (4.0 / 3.0) * projector(ghz_minus());
  return w;
}

Witness w_robustness_witness() {
  Witness w;
  w.name = "w_robustness";
  w.particle_dims = {2, 2, 2};
  w.party_particles = {{0}, {1}, {2}};
  CMat a = CMat::Zero(8, 8);
  a += projector(basis_ket(8, 0));                      // |000><000|
  a -= 3.0 * projector(w_state());
  a(1, 1) += 1.0;                                       // |001>, |010>, |100>
  a(2, 2) += 1.0;
  a(4, 4) += 1.0;
  a += 3.0 * projector(w_bar_state());
  w.op = a;
  return w;
}

double w_robustness_shifted_value(const CVec& single_qubit) {
  if (single_qubit.size() != 2)
    throw std::invalid_argument("w_robustness_shifted_value: need a qubit ket");
  CVec a = single_qubit / single_qubit.norm();
  CVec aaa = kron_vec(kron_vec(a, a), a);
  static const CMat op = w_robustness_witness().op;
  cxd v = (aaa.adjoint() * op * aaa)(0);
  return v.real() - 0.5;
}

double w_robustness_shifted_closed_form(double alpha) { return 0.5 * std::cos(6.0 * alpha); }

Witness star_ghz_witness(int n, int d) {
  Witness w;
  w.name = "star_ghz";
  w.particle_dims.assign(n, d);
  for (int i = 0; i < n; ++i) w.party_particles.push_back({i});
  long dim = 1;
  for (int k = 0; k < n; ++k) dim *= d;
  w.op = CMat::Identity(dim, dim) / double(d) - projector(ghz(n, d));
  return w;
}

}  // namespace qnet

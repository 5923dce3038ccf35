#include "qnet/states.hpp"

#include <cmath>
#include <stdexcept>

namespace qnet {

CVec basis_ket(int d, int i) {
  if (i < 0 || i >= d) throw std::invalid_argument("basis_ket: index out of range");
  CVec v = CVec::Zero(d);
  v(i) = 1.0;
  return v;
}

CMat projector(const CVec& psi) { return psi * psi.adjoint(); }

CVec max_entangled(int d) {
  if (d < 2) throw std::invalid_argument("max_entangled: need d >= 2");
  CVec v = CVec::Zero(static_cast<long>(d) * d);
  for (int i = 0; i < d; ++i) v(static_cast<long>(i) * d + i) = 1.0 / std::sqrt(double(d));
  return v;
}

CMat max_entangled_proj(int d) { return projector(max_entangled(d)); }

CVec ghz(int n, int d) {
  if (n < 2 || d < 2) throw std::invalid_argument("ghz: need n, d >= 2");
  long dim = 1;
  for (int k = 0; k < n; ++k) dim *= d;
  CVec v = CVec::Zero(dim);
  for (int i = 0; i < d; ++i) {
    long idx = 0;
    for (int k = 0; k < n; ++k) idx = idx * d + i;
    v(idx) = 1.0 / std::sqrt(double(d));
  }
  return v;
}

CVec ghz_minus() {
  CVec v = CVec::Zero(8);
  v(0) = 1.0 / std::sqrt(2.0);
  v(7) = -1.0 / std::sqrt(2.0);
  return v;
}

CVec w_state() {
  CVec v = CVec::Zero(8);
  v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);
  return v;
}

CVec w_bar_state() {
  CVec v = CVec::Zero(8);
  v(3) = v(5) = v(6) = 1.0 / std::sqrt(3.0);
  return v;
}

CMat flip(int d) {
  CMat out = CMat::Zero(static_cast<long>(d) * d, static_cast<long>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(static_cast<long>(i) * d + j, static_cast<long>(j) * d + i) = 1.0;
  return out;
}

CMat isotropic(int d, double p) {
  if (d < 2) throw std::invalid_argument("isotropic: need d >= 2");
  const long n = static_cast<long>(d) * d;
  if (p > 1.0 + 1e-12 || p < -1.0 / (n - 1) - 1e-12)
    throw std::invalid_argument("isotropic: visibility out of the state range");
  return p * max_entangled_proj(d) + (1.0 - p) / double(n) * CMat::Identity(n, n);
}

bool GhzSymState::fully_separable(double tol) const {
  return std::abs(lam_plus - lam_minus) <= lam / 3.0 + tol;
}

CMat GhzSymState::density() const {
  CMat rho = CMat::Zero(8, 8);
  CVec gp = ghz(3, 2), gm = ghz_minus();
  rho += lam_plus * projector(gp) + lam_minus * projector(gm);
  for (int i = 1; i <= 6; ++i) rho(i, i) += lam / 6.0;
  return rho;
}

GhzSymCoords GhzSymState::coords() const {
  return {(lam_plus - lam_minus) / 2.0, (lam_plus + lam_minus - 0.25) / std::sqrt(3.0)};
}

GhzSymState ghz_symmetric(double lam_plus, double lam_minus, double lam) {
  if (lam_plus < -1e-12 || lam_minus < -1e-12 || lam < -1e-12 ||
      std::abs(lam_plus + lam_minus + lam - 1.0) > 1e-9)
    throw std::invalid_argument("ghz_symmetric: weights must be nonnegative and sum to 1");
  return {lam_plus, lam_minus, lam};
}

GhzSymState ghz_symmetric_xy(double x, double y) {
  const double s = std::sqrt(3.0) * y + 0.25;  // lam_plus + lam_minus
  GhzSymState st{s / 2.0 + x, s / 2.0 - x, 1.0 - s};
  if (st.lam_plus < -1e-9 || st.lam_minus < -1e-9 || st.lam < -1e-9)
    throw std::invalid_argument("ghz_symmetric_xy: point outside the state triangle");
  return st;
}

GhzSymCoords ghz_sym_coords(const CMat& rho) {
  if (rho.rows() != 8 || rho.cols() != 8)
    throw std::invalid_argument("ghz_sym_coords: need a 3-qubit operator");
  CVec gp = ghz(3, 2), gm = ghz_minus();
  double fp = std::real((gp.adjoint() * rho * gp)(0));
  double fm = std::real((gm.adjoint() * rho * gm)(0));
  return {(fp - fm) / 2.0, (fp + fm - 0.25) / std::sqrt(3.0)};
}

// ---- networks ----

EdgeState EdgeState::isotropic_edge(int d, double p) {
  EdgeState e;
  e.d = d;
  e.iso = true;
  e.p = p;
  return e;
}

EdgeState EdgeState::pure_edge(int d, CVec ket) {
  if (ket.size() != static_cast<long>(d) * d)
    throw std::invalid_argument("pure_edge: ket dimension mismatch");
  EdgeState e;
  e.d = d;
  e.iso = false;
  e.pure = std::move(ket);
  double n = e.pure.norm();
  if (n < 1e-12) throw std::invalid_argument("pure_edge: zero ket");
  e.pure /= n;
  return e;
}

CMat EdgeState::density() const { return iso ? isotropic(d, p) : projector(pure); }

bool NetworkGraph::connected() const {
  if (n_parties <= 0) return false;
  std::vector<char> seen(n_parties, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& e : edges) {
      int w = -1;
      if (e.a == v) w = e.b;
      else if (e.b == v) w = e.a;
      if (w >= 0 && !seen[w]) { seen[w] = 1; stack.push_back(w); }
    }
  }
  for (char c : seen) if (!c) return false;
  return true;
}

std::vector<std::vector<int>> NetworkGraph::incident_edges() const {
  std::vector<std::vector<int>> inc(n_parties);
  for (size_t k = 0; k < edges.size(); ++k) {
    inc[edges[k].a].push_back(static_cast<int>(k));
    inc[edges[k].b].push_back(static_cast<int>(k));
  }
  return inc;
}

std::vector<int> NetworkGraph::tree_cut(int k) const {
  if (k < 0 || k >= static_cast<int>(edges.size()))
    throw std::invalid_argument("tree_cut: edge index out of range");
  std::vector<char> seen(n_parties, 0);
  std::vector<int> stack{edges[k].a};
  seen[edges[k].a] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (size_t j = 0; j < edges.size(); ++j) {
      if (static_cast<int>(j) == k) continue;
      int w = -1;
      if (edges[j].a == v) w = edges[j].b;
      else if (edges[j].b == v) w = edges[j].a;
      if (w >= 0 && !seen[w]) { seen[w] = 1; stack.push_back(w); }
    }
  }
  if (seen[edges[k].b]) throw std::invalid_argument("tree_cut: edge is not a bridge");
  std::vector<int> side;
  for (int v = 0; v < n_parties; ++v) if (seen[v]) side.push_back(v);
  return side;
}

NetworkGraph NetworkGraph::uniform(int n_parties, const std::vector<std::pair<int,int>>& edges,
                                   const EdgeState& shared) {
  NetworkGraph g;
  g.n_parties = n_parties;
  for (auto [a, b] : edges) g.edges.push_back({a, b, shared});
  return g;
}

NetworkGraph NetworkGraph::star(int n_parties, const EdgeState& first, const EdgeState& rest) {
  NetworkGraph g;
  g.n_parties = n_parties;
  for (int i = 1; i < n_parties; ++i) g.edges.push_back({0, i, i == 1 ? first : rest});
  return g;
}

// ---- teleportation ----

IsotropicSpec teleport_through(const IsotropicSpec& source, const IsotropicSpec& channel) {
  if (source.d != channel.d)
    throw std::invalid_argument("teleport_through: dimension mismatch");
  return {source.d, source.p * channel.p};
}

CMat teleport_circuit(double p1, double p2) {
  // subsystem order [R, S, T, U]: the S half of the first pair is teleported
  // to U through the second pair; Alice operates on (S, T)
  const Dims dims{2, 2, 2, 2};
  CMat rho = kron(isotropic(2, p1), isotropic(2, p2));

  CMat id2 = CMat::Identity(2, 2);
  CMat cnot = CMat::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  CMat had(2, 2);
  had << 1, 1, 1, -1;
  had /= std::sqrt(2.0);
  CMat px(2, 2), pz(2, 2);
  px << 0, 1, 1, 0;
  pz << 1, 0, 0, -1;

  CMat u = kron(kron(id2, had), kron(id2, id2)) * kron(kron(id2, cnot), id2);
  rho = u * rho * u.adjoint();

  CMat out = CMat::Zero(4, 4);
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 2; ++t) {
      CMat proj = kron(kron(id2, projector(basis_ket(2, s))),
                       kron(projector(basis_ket(2, t)), id2));
      CMat branch = partial_trace(proj * rho * proj, dims, {0, 3});
      CMat corr = id2;
      if (t == 1) corr = px * corr;
      if (s == 1) corr = pz * corr;
      CMat fix = kron(id2, corr);
      out += fix * branch * fix.adjoint();
    }
  }
  return out;
}

}  // namespace qnet

#include "qnet/states.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qnet {

namespace {
constexpr long kMaxDenseDim = 4096;  // 4096^2 complex entries = 256 MiB, plenty for desk scale
}

NetworkState network_state(const NetworkGraph& g) {
  if (g.n_parties < 2 || g.edges.empty())
    throw std::invalid_argument("network_state: need at least two parties and one edge");
  for (const auto& e : g.edges) {
    if (e.a < 0 || e.b < 0 || e.a >= g.n_parties || e.b >= g.n_parties)
      throw std::invalid_argument("network_state: edge endpoint out of range");
    if (e.a == e.b) throw std::invalid_argument("network_state: self-loops not allowed");
  }

  const int n_particles = 2 * static_cast<int>(g.edges.size());
  // raw slot 2k is edge k's a-end, 2k+1 its b-end
  Dims raw_dims(n_particles);
  std::vector<int> raw_party(n_particles);
  for (size_t k = 0; k < g.edges.size(); ++k) {
    raw_dims[2 * k] = raw_dims[2 * k + 1] = g.edges[k].state.d;
    raw_party[2 * k] = g.edges[k].a;
    raw_party[2 * k + 1] = g.edges[k].b;
  }
  long total = dim_product(raw_dims);
  if (total > kMaxDenseDim)
    throw std::invalid_argument("network_state: total dimension too large to materialize");

  // party-contiguous order: stable sort by party keeps edge order within a party
  std::vector<int> perm(n_particles);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int x, int y) { return raw_party[x] < raw_party[y]; });

  std::vector<CMat> factors;
  factors.reserve(g.edges.size());
  for (const auto& e : g.edges) factors.push_back(e.state.density());

  NetworkState ns;
  ns.state = permute_systems(kron_all(factors), raw_dims, perm);
  ns.particle_dims.resize(n_particles);
  ns.particle_party.resize(n_particles);
  ns.edge_particles.assign(g.edges.size(), {-1, -1});
  for (int slot = 0; slot < n_particles; ++slot) {
    int raw = perm[slot];
    ns.particle_dims[slot] = raw_dims[raw];
    ns.particle_party[slot] = raw_party[raw];
    if (raw % 2 == 0) ns.edge_particles[raw / 2].first = slot;
    else              ns.edge_particles[raw / 2].second = slot;
  }
  ns.party_dims.assign(g.n_parties, 1);
  ns.party_first_particle.assign(g.n_parties, -1);
  for (int slot = 0; slot < n_particles; ++slot) {
    int p = ns.particle_party[slot];
    if (ns.party_first_particle[p] < 0) ns.party_first_particle[p] = slot;
    ns.party_dims[p] *= ns.particle_dims[slot];
  }
  for (int p = 0; p < g.n_parties; ++p)
    if (ns.party_first_particle[p] < 0)
      throw std::invalid_argument("network_state: party with no incident edge");
  return ns;
}

std::pair<CMat, double> apply_local_filter(const NetworkState& ns, const std::vector<CMat>& ops) {
  if (ops.size() != ns.party_dims.size())
    throw std::invalid_argument("apply_local_filter: one operator per party required");
  std::vector<CMat> blocks;
  blocks.reserve(ops.size());
  for (size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].size() == 0) {
      blocks.push_back(CMat::Identity(ns.party_dims[i], ns.party_dims[i]));
    } else {
      if (ops[i].rows() != ns.party_dims[i] || ops[i].cols() != ns.party_dims[i])
        throw std::invalid_argument("apply_local_filter: operator dimension mismatch");
      blocks.push_back(ops[i]);
    }
  }
  CMat a = kron_all(blocks);
  CMat sigma = a * ns.state * a.adjoint();
  double norm = std::real(sigma.trace());
  if (norm < 1e-14) throw std::invalid_argument("apply_local_filter: filter annihilates the state");
  return {sigma / norm, norm};
}

}  // namespace qnet

#include "qnet/kv.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qnet {

namespace {

constexpr long kMaxStarEntries = 10'000'000;

// referee weight of noise string z, times the count of consistent u draws
double pair_weight(int v, double eta, uint32_t z) {
  const int w = std::popcount(z);
  return static_cast<double>(v) / std::pow(2.0, v) * std::pow(eta, w) *
         std::pow(1 - eta, v - w);
}

}  // namespace

double KVGame::coeff(int x, int y, int a, int b) const {
  const uint32_t z = coset_elems[x][a] ^ coset_elems[y][b];
  // the winning z must map Alice's coset onto Bob's; for in-coset answers it
  // always does, but the game is defined by the condition, so it stays
  if (coset_of[coset_elems[x][0] ^ z] != y) return 0.0;
  return pair_weight(v, eta, z);
}

KVGame kv_game(int v, double eta) {
  if (v < 2 || v > 16 || (v & (v - 1)) != 0)
    throw std::invalid_argument("kv_game: v must be a power of two in [2, 16]");
  if (eta < 0 || eta > 0.5) throw std::invalid_argument("kv_game: eta must lie in [0, 1/2]");

  KVGame g;
  g.v = v;
  g.eta = eta;

  const int logv = std::countr_zero(static_cast<unsigned>(v));
  for (uint32_t a = 0; a < static_cast<uint32_t>(v); ++a) {
    uint32_t cw = 0;
    for (uint32_t x = 0; x < static_cast<uint32_t>(v); ++x)
      cw |= static_cast<uint32_t>(std::popcount(a & x) & 1) << x;
    g.subgroup.push_back(cw);
  }
  std::sort(g.subgroup.begin(), g.subgroup.end());
  (void)logv;

  // the code is linear, but the game depends on it, so verify closure
  for (uint32_t h1 : g.subgroup)
    for (uint32_t h2 : g.subgroup)
      if (!std::binary_search(g.subgroup.begin(), g.subgroup.end(), h1 ^ h2))
        throw std::logic_error("kv_game: codeword set is not a subgroup");

  const long full = 1L << v;
  g.coset_of.assign(full, -1);
  for (long s = 0; s < full; ++s) {
    if (g.coset_of[s] >= 0) continue;
    const int idx = g.n_cosets();
    std::vector<uint32_t> cell;
    for (uint32_t h : g.subgroup) {
      const uint32_t e = static_cast<uint32_t>(s) ^ h;
      g.coset_of[e] = idx;
      cell.push_back(e);
    }
    std::sort(cell.begin(), cell.end());
    g.coset_elems.push_back(std::move(cell));
  }
  return g;
}

double kv_local_bound(int v, double eta) {
  return std::pow(static_cast<double>(v), -eta / (1 - eta));
}

BellFunctional kv_functional(const KVGame& g) {
  const int q = g.n_cosets();
  BellFunctional f;
  f.name = "kv_game";
  f.shape.n_parties = 2;
  f.shape.outputs = {g.v, g.v};
  f.shape.inputs = {q, q};
  if (f.shape.size() > kMaxStarEntries)
    throw std::invalid_argument("kv_functional: game too large to store densely");
  f.coeff.assign(f.shape.size(), 0.0);
  f.declared_bound = kv_local_bound(g.v, g.eta);
  f.bound_kind = BoundKind::local;
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y)
      for (int a = 0; a < g.v; ++a)
        for (int b = 0; b < g.v; ++b) f.at({a, b}, {x, y}) = g.coeff(x, y, a, b);
  return f;
}

namespace {

// best response per coset against a fixed choice of the other side
double respond(const KVGame& g, const std::vector<uint32_t>& other,
               std::vector<uint32_t>& mine) {
  const int q = g.n_cosets();
  double total = 0;
  for (int y = 0; y < q; ++y) {
    double best = -1;
    uint32_t arg = g.coset_elems[y][0];
    for (uint32_t b : g.coset_elems[y]) {
      double s = 0;
      for (int x = 0; x < q; ++x) s += pair_weight(g.v, g.eta, other[x] ^ b);
      if (s > best) {
        best = s;
        arg = b;
      }
    }
    total += best;
    mine[y] = arg;
  }
  return total;
}

}  // namespace

KvLocalMax kv_local_max(const KVGame& g) {
  const int q = g.n_cosets();
  KvLocalMax out;
  out.alice.assign(q, 0);
  out.bob.assign(q, 0);

  const double n_strategies = std::pow(static_cast<double>(g.v), q);
  if (n_strategies <= 4096) {
    out.exact = true;
    std::vector<int> pick(q, 0);
    std::vector<uint32_t> alice(q), bob(q);
    for (;;) {
      for (int x = 0; x < q; ++x) alice[x] = g.coset_elems[x][pick[x]];
      const double val = respond(g, alice, bob);
      if (val > out.value) {
        out.value = val;
        out.alice = alice;
        out.bob = bob;
      }
      int pos = 0;
      while (pos < q && ++pick[pos] == g.v) pick[pos++] = 0;
      if (pos == q) break;
    }
    return out;
  }

  // alternating best response from the coset representatives; lower bound only
  out.exact = false;
  std::vector<uint32_t> alice(q), bob(q);
  for (int x = 0; x < q; ++x) alice[x] = g.coset_elems[x][0];
  double val = respond(g, alice, bob);
  for (int round = 0; round < 1000; ++round) {
    const double va = respond(g, bob, alice);
    const double vb = respond(g, alice, bob);
    if (vb <= val + 1e-15) {
      val = std::max(val, std::max(va, vb));
      break;
    }
    val = vb;
  }
  out.value = val;
  out.alice = alice;
  out.bob = bob;
  return out;
}

double normalization_sum(const BellFunctional& f) {
  const long na = f.shape.output_joint();
  double total = 0;
  for (long xi = 0; xi < f.shape.input_joint(); ++xi) {
    double mx = 0;
    for (long ai = 0; ai < na; ++ai) mx = std::max(mx, f.coeff[xi * na + ai]);
    total += mx;
  }
  return total;
}

BellFunctional star_kv(const KVGame& g, int K) {
  if (K < 1) throw std::invalid_argument("star_kv: need at least one edge");
  const int q = g.n_cosets();

  BellFunctional f;
  f.name = "kv_star";
  f.shape.n_parties = K + 1;
  f.shape.inputs.assign(K + 1, q);
  f.shape.outputs.assign(K + 1, g.v);
  long in_a = 1, out_a = 1;
  for (int i = 0; i < K; ++i) {
    in_a *= q;
    out_a *= g.v;
    if (in_a > kMaxStarEntries || out_a > kMaxStarEntries)
      throw std::invalid_argument("star_kv: game too large to store densely");
  }
  f.shape.inputs[0] = static_cast<int>(in_a);
  f.shape.outputs[0] = static_cast<int>(out_a);
  if (f.shape.size() > kMaxStarEntries)
    throw std::invalid_argument("star_kv: game too large to store densely");
  f.coeff.assign(f.shape.size(), 0.0);
  f.declared_bound = 0;  // the proper ceiling is C/v with C unpinned
  f.bound_kind = BoundKind::bilocal;

  const Dims alice_in(K, q), alice_out(K, g.v);
  const long na = f.shape.output_joint();
  for (long xi = 0; xi < f.shape.input_joint(); ++xi) {
    const std::vector<int> x = unpack_index(xi, f.shape.inputs);
    const std::vector<int> xa = unpack_index(x[0], alice_in);
    for (long ai = 0; ai < na; ++ai) {
      const std::vector<int> a = unpack_index(ai, f.shape.outputs);
      const std::vector<int> aa = unpack_index(a[0], alice_out);
      double c = 1;
      for (int i = 0; i < K && c != 0; ++i)
        c *= g.coeff(xa[i], x[i + 1], aa[i], a[i + 1]);
      f.coeff[xi * na + ai] = c;
    }
  }
  return f;
}

ActivationRatio star_activation_ratio(double F, int d, long L, int K) {
  if (!(F > 0) || F > 1) throw std::invalid_argument("star_activation_ratio: F must be in (0,1]");
  if (d < 2 || L < 1 || K < 1)
    throw std::invalid_argument("star_activation_ratio: need d >= 2, L >= 1, K >= 1");
  ActivationRatio r;
  r.F = F;
  r.d = d;
  r.L = L;
  r.K = K;
  const double per_copy = F * d;
  const double denom = static_cast<double>(L) * L * std::log(d) * std::log(d);
  r.numeric_factor = std::pow(per_copy, static_cast<double>(L)) /
                     std::pow(denom, static_cast<double>(K));
  r.symbolic_prefix = "D^" + std::to_string(K) + "/C";
  r.diverges = per_copy > 1;
  return r;
}

}  // namespace qnet

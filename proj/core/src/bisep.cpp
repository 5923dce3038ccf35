#include "qnet/bisep.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace qnet {

namespace {

// Standalone terms enumerate every mask, so cap the expansion well below
// anything that would thrash memory. 2^22 terms is already ~1 GiB worth of
// decomposition; the thesis-scale cases are K = 18 (tree) and K = 8 (polygon).
constexpr int kMaxEdgesExpand = 22;

struct UniformIso {
  int d = 0;
  double p = 0.0;
};

UniformIso uniform_iso(const NetworkGraph& g) {
  if (g.edges.empty()) throw std::invalid_argument("bisep: graph has no edges");
  for (const auto& e : g.edges)
    if (!e.state.iso)
      throw std::invalid_argument("bisep: every edge must carry an isotropic state");
  UniformIso u{g.edges[0].state.d, g.edges[0].state.p};
  for (const auto& e : g.edges)
    if (e.state.d != u.d || std::abs(e.state.p - u.p) > 1e-12)
      throw std::invalid_argument("bisep: edges must all carry the same isotropic state");
  return u;
}

bool edge_joins(const NetworkGraph::Edge& e, int x, int y) {
  return (e.a == x && e.b == y) || (e.a == y && e.b == x);
}

std::uint64_t all_ones(int k) { return (std::uint64_t{1} << k) - 1; }

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

SeparabilityCertificate iso_cert(std::vector<int> cut, int dim, double visibility) {
  SeparabilityCertificate c;
  c.kind = SeparabilityCertificate::Kind::isotropic_threshold;
  c.cut_edges = std::move(cut);
  c.dim = dim;
  c.visibility = visibility;
  return c;
}

SeparabilityCertificate factor_cert(std::vector<int> cut) {
  SeparabilityCertificate c;
  c.kind = SeparabilityCertificate::Kind::tensor_factor;
  c.cut_edges = std::move(cut);
  return c;
}

BisepTerm make_term(double weight, int n_edges, std::map<std::uint64_t, double> coeff,
                    std::vector<int> bipartition, SeparabilityCertificate cert) {
  BisepTerm t;
  t.weight = weight;
  t.comp.n_edges = n_edges;
  t.comp.coeff = std::move(coeff);
  t.bipartition = std::move(bipartition);
  t.cert = std::move(cert);
  return t;
}

BisepDecomposition lambda_bisep(const NetworkGraph& g, const UniformIso& u) {
  if (g.n_parties != 3 || g.edges.size() != 2 || !edge_joins(g.edges[0], 0, 1) ||
      !edge_joins(g.edges[1], 0, 2))
    throw std::invalid_argument("bisep: lambda topology is parties {0,1,2} with edges (0,1),(0,2)");

  const double p = u.p;
  const int d = u.d;
  BisepDecomposition dec;
  dec.d = d;
  dec.p = p;
  dec.n_edges = 2;

  // sigma0 soaks up the double-phi+ weight left over after donating a
  // fraction q of it, split evenly, to the two single-edge isotropic parts.
  const double q_lo = p > 0 ? 1.0 - (1 - p) * (1 - p) / (p * p * d * d) : 0.0;
  const double q_hi = p > 0 ? std::min(1.0, 2 * (1 - p) / (p * d)) : 1.0;
  if (q_lo > q_hi + 1e-12) {
    dec.binding_constraint = "sigma0 needs q >= 1-(1-p)^2/(pd)^2 = " + num(q_lo) +
                             " but sigma1, sigma2 need q <= 2(1-p)/(pd) = " + num(q_hi) +
                             "; feasible only for p <= ((1+sqrt2)d-1)/(d^2+2d-1) = " +
                             num(((1 + std::sqrt(2.0)) * d - 1) / (d * d + 2 * d - 1));
    return dec;
  }
  const double q = std::min(std::max(q_lo, 0.0), q_hi);

  const double w0 = (1 - q) * p * p + (1 - p) * (1 - p);
  const double w1 = q * p * p / 2 + p * (1 - p);
  if (w0 > 0)
    dec.terms.push_back(make_term(w0, 2,
                                  {{3, (1 - q) * p * p / w0}, {0, (1 - p) * (1 - p) / w0}}, {0},
                                  iso_cert({0, 1}, d * d, (1 - q) * p * p / w0)));
  if (w1 > 0) {
    const double v = q * p * p / 2 / w1;
    dec.terms.push_back(make_term(w1, 2, {{3, v}, {1, 1 - v}}, {2}, iso_cert({1}, d, v)));
    dec.terms.push_back(make_term(w1, 2, {{3, v}, {2, 1 - v}}, {1}, iso_cert({0}, d, v)));
  }
  dec.feasible = true;
  return dec;
}

BisepDecomposition triangle_bisep(const NetworkGraph& g, const UniformIso& u) {
  if (g.n_parties != 3 || g.edges.size() != 3 || !edge_joins(g.edges[0], 0, 1) ||
      !edge_joins(g.edges[1], 0, 2) || !edge_joins(g.edges[2], 1, 2))
    throw std::invalid_argument(
        "bisep: triangle topology is parties {0,1,2} with edges (0,1),(0,2),(1,2)");

  const double p = u.p;
  const int d = u.d;
  BisepDecomposition dec;
  dec.d = d;
  dec.p = p;
  dec.n_edges = 3;

  // Each sigma_M keeps phi+ on the edge inside the complement of M and is a
  // product of two isotropic states with visibility v across the cut.
  const double v = 2 * p / (3 - p);
  if (v > 1.0 / (d + 1) + 1e-12) {
    dec.binding_constraint = "cut-pair visibility 2p/(3-p) = " + num(v) + " > 1/(d+1) = " +
                             num(1.0 / (d + 1)) + "; feasible only for p <= 3/(3+2d) = " +
                             num(3.0 / (3 + 2 * d));
    return dec;
  }

  const double n = p * p - 3 * p + 3;  // common normaliser, always >= 3/4
  const double mu = (3 - p) * (3 - p) / (4 * n);
  const double w_sigma = p * n / 3;
  const double c_all = p * p / n;
  const double c_one = 1.5 * p * (1 - p) / n;
  const double c_bare = 3 * (1 - p) * (1 - p) / n;

  auto epm_cert = [&](std::vector<int> cut) {
    SeparabilityCertificate c;
    c.kind = SeparabilityCertificate::Kind::explicit_product_mixture;
    c.cut_edges = std::move(cut);
    c.dim = d;
    c.visibility = v;
    c.mix_weight = mu;
    return c;
  };

  if (w_sigma > 0) {
    // masks: bit 0 = edge(0,1), bit 1 = edge(0,2), bit 2 = edge(1,2)
    dec.terms.push_back(make_term(w_sigma, 3, {{7, c_all}, {5, c_one}, {6, c_one}, {4, c_bare}},
                                  {0}, epm_cert({0, 1})));
    dec.terms.push_back(make_term(w_sigma, 3, {{7, c_all}, {3, c_one}, {6, c_one}, {2, c_bare}},
                                  {1}, epm_cert({0, 2})));
    dec.terms.push_back(make_term(w_sigma, 3, {{7, c_all}, {5, c_one}, {3, c_one}, {1, c_bare}},
                                  {2}, epm_cert({1, 2})));
  }
  const double w_id = (1 - p) * (1 - p) * (1 - p);
  if (w_id > 0) dec.terms.push_back(make_term(w_id, 3, {{0, 1.0}}, {0}, factor_cert({0, 1})));
  dec.feasible = true;
  return dec;
}

BisepDecomposition tree_bisep(const NetworkGraph& g, const UniformIso& u) {
  const int K = static_cast<int>(g.edges.size());
  if (K != g.n_parties - 1 || !g.connected())
    throw std::invalid_argument("bisep: tree requires a connected graph with n-1 edges");
  if (K > kMaxEdgesExpand)
    throw std::invalid_argument("bisep: tree too large to expand (max 22 edges)");

  const double p = u.p;
  const int d = u.d;
  BisepDecomposition dec;
  dec.d = d;
  dec.p = p;
  dec.n_edges = K;

  const double v = p / K / (p / K + 1 - p);  // p = 1 gives v = 1, correctly infeasible
  if (v > 1.0 / (d + 1) + 1e-12) {
    dec.binding_constraint = "edge residual visibility (p/K)/(p/K+1-p) = " + num(v) +
                             " > 1/(d+1) = " + num(1.0 / (d + 1)) + "; need K >= dp/(1-p) = " +
                             num(d * p / (1 - p)) + ", have K = " + num(K);
    return dec;
  }

  // cache the party split each bridge induces
  std::vector<std::vector<int>> cut_side(K);
  for (int i = 0; i < K; ++i) cut_side[i] = g.tree_cut(i);

  const double w_edge = std::pow(p, K - 1) * (p / K + 1 - p);
  if (w_edge > 0)
    for (int i = 0; i < K; ++i)
      dec.terms.push_back(make_term(
          w_edge, K, {{all_ones(K), v}, {all_ones(K) ^ (std::uint64_t{1} << i), 1 - v}},
          cut_side[i], iso_cert({i}, d, v)));

  // everything with two or more identity edges splits along any one of them
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << K); ++m) {
    const int z = K - std::popcount(m);
    if (z < 2) continue;
    const double w = std::pow(p, K - z) * std::pow(1 - p, z);
    if (w <= 0) continue;
    const int first_zero = std::countr_one(m);
    dec.terms.push_back(
        make_term(w, K, {{m, 1.0}}, cut_side[first_zero], factor_cert({first_zero})));
  }
  dec.feasible = true;
  return dec;
}

BisepDecomposition polygon_bisep(const NetworkGraph& g, const UniformIso& u) {
  const int K = static_cast<int>(g.edges.size());
  if (g.n_parties != K || K < 5)
    throw std::invalid_argument("bisep: polygon requires K >= 5 parties in a cycle");
  for (int i = 0; i < K; ++i)
    if (!edge_joins(g.edges[i], i, (i + 1) % K))
      throw std::invalid_argument("bisep: polygon edge i must join parties i and i+1 mod K");
  if (K > kMaxEdgesExpand)
    throw std::invalid_argument("bisep: polygon too large to expand (max 22 edges)");

  const double p = u.p;
  const int d = u.d;
  BisepDecomposition dec;
  dec.d = d;
  dec.p = p;
  dec.n_edges = K;

  const double q2 = (1 - p) * (1 - p);
  const double x1 = p * p / K / (p * p / K + q2);
  const double x2 = p * p / (K - 4) / (p * p / (K - 4) + q2);  // the binding one
  const double thr = 1.0 / (d * d + 1);
  if (x2 > thr + 1e-12 || x1 > thr + 1e-12) {
    dec.binding_constraint =
        "adjacent-pair visibility (p^2/(K-4))/(p^2/(K-4)+(1-p)^2) = " + num(x2) +
        " > 1/(d^2+1) = " + num(thr) + "; need K >= 4+(dp/(1-p))^2 = " +
        num(4 + d * d * p * p / q2) + ", have K = " + num(K);
    return dec;
  }

  auto party = [K](int i) { return ((i % K) + K) % K; };
  auto bit = [](int i) { return std::uint64_t{1} << i; };
  auto pair_cut = [&](int j) {
    std::vector<int> cut{j, party(j + 1)};
    std::sort(cut.begin(), cut.end());
    return cut;
  };

  // fragment 1: the all-phi+ term split over the K adjacent identity pairs
  const double w1 = std::pow(p, K - 2) * (p * p / K + q2);
  if (w1 > 0)
    for (int i = 0; i < K; ++i) {
      const std::uint64_t lo = all_ones(K) ^ (bit(i) | bit(party(i + 1)));
      dec.terms.push_back(make_term(w1, K, {{all_ones(K), x1}, {lo, 1 - x1}},
                                    {party(i + 1)}, iso_cert(pair_cut(i), d * d, x1)));
    }

  // fragment 2: each single-identity term split over the K-4 adjacent pairs
  // that neither touch edge i nor sit next to it
  const double w2 = std::pow(p, K - 3) * (1 - p) * (p * p / (K - 4) + q2);
  if (w2 > 0)
    for (int i = 0; i < K; ++i)
      for (int j = 0; j < K; ++j) {
        if (j == i || j == party(i + 1) || j == party(i - 1) || j == party(i - 2)) continue;
        const std::uint64_t hi = all_ones(K) ^ bit(i);
        const std::uint64_t lo = hi ^ (bit(j) | bit(party(j + 1)));
        dec.terms.push_back(make_term(w2, K, {{hi, x2}, {lo, 1 - x2}}, {party(j + 1)},
                                      iso_cert(pair_cut(j), d * d, x2)));
      }

  // leftovers: two or more identity edges, minus what the fragments consumed
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << K); ++m) {
    const int z = K - std::popcount(m);
    if (z < 2) continue;
    std::vector<int> zeros;
    for (int k = 0; k < K; ++k)
      if (!(m & bit(k))) zeros.push_back(k);
    if (z == 2) {
      const bool adjacent = party(zeros[0] + 1) == zeros[1] || party(zeros[1] + 1) == zeros[0];
      if (adjacent) continue;  // fragment 1 already covers it
    } else if (z == 3) {
      // fragment 2 covers triples made of one adjacent pair (j, j+1) plus an
      // isolated edge. Exactly one adjacency forces the third zero away from
      // the pair (touching it would create a second adjacency), which is
      // precisely fragment 2's exclusion rule, so such triples are consumed.
      // Three in a row (two adjacencies) and fully isolated triples stay.
      int n_adjacent = 0;
      for (int a : zeros)
        if (!(m & bit(party(a + 1)))) ++n_adjacent;
      if (n_adjacent == 1) continue;
    }
    const double w = std::pow(p, K - z) * std::pow(1 - p, z);
    if (w <= 0) continue;
    // split the cycle between the two lowest identity edges; the arc of
    // parties strictly between them is one side of the bipartition
    const int c1 = zeros[0], c2 = zeros[1];
    std::vector<int> arc;
    for (int a = c1 + 1; a <= c2; ++a) arc.push_back(a);
    dec.terms.push_back(make_term(w, K, {{m, 1.0}}, arc, factor_cert({c1, c2})));
  }
  dec.feasible = true;
  return dec;
}

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

}  // namespace

BisepDecomposition bisep_decomposition(const NetworkGraph& g, NetKind kind) {
  UniformIso u = uniform_iso(g);
  if (u.p < 0 || u.p > 1)
    throw std::invalid_argument("bisep: visibility must lie in [0,1]");
  switch (kind) {
    case NetKind::lambda: return lambda_bisep(g, u);
    case NetKind::triangle: return triangle_bisep(g, u);
    case NetKind::tree: return tree_bisep(g, u);
    case NetKind::polygon: return polygon_bisep(g, u);
  }
  throw std::invalid_argument("bisep: unknown network kind");
}

int smallest_feasible_polygon(int d, double p, int max_edges) {
  if (d < 2) throw std::invalid_argument("smallest_feasible_polygon: d >= 2 required");
  if (p < 0 || p >= 1)
    throw std::invalid_argument("smallest_feasible_polygon: need 0 <= p < 1");
  for (int k = 5; k <= max_edges; ++k)
    if ((k - 4) * (1 - p) * (1 - p) + 1e-12 >= static_cast<double>(d) * d * p * p) return k;
  throw std::domain_error("smallest_feasible_polygon: no feasible size up to max_edges");
}

bool verify_certificate(const SeparabilityCertificate& cert, const EdgeBasisComponent& comp,
                        int d, double tol, std::string* why) {
  using Kind = SeparabilityCertificate::Kind;
  for (size_t i = 0; i + 1 < cert.cut_edges.size(); ++i)
    if (cert.cut_edges[i] >= cert.cut_edges[i + 1])
      return fail(why, "certificate cut edges not strictly ascending");
  std::uint64_t cut_mask = 0;
  for (int e : cert.cut_edges) {
    if (e < 0 || e >= comp.n_edges) return fail(why, "certificate cut edge out of range");
    cut_mask |= std::uint64_t{1} << e;
  }

  switch (cert.kind) {
    case Kind::tensor_factor:
      for (const auto& [m, c] : comp.coeff)
        if (m & cut_mask) return fail(why, "tensor_factor component has phi+ on a cut edge");
      return true;

    case Kind::ghz_sym_criterion: {
      if (cert.lam_plus < -tol || cert.lam_minus < -tol || cert.lam < -tol ||
          std::abs(cert.lam_plus + cert.lam_minus + cert.lam - 1) > tol)
        return fail(why, "ghz_sym_criterion weights are not a distribution");
      if (std::abs(cert.lam_plus - cert.lam_minus) > cert.lam / 3 + tol)
        return fail(why, "ghz_sym_criterion inequality |l+ - l-| <= l/3 violated");
      return true;
    }

    case Kind::isotropic_threshold: {
      if (comp.coeff.size() != 2) return fail(why, "isotropic_threshold needs exactly two masks");
      long long dim = 1;
      for (size_t i = 0; i < cert.cut_edges.size(); ++i) dim *= d;
      if (cert.dim != dim) return fail(why, "isotropic_threshold dim is not d^|cut|");
      auto it = comp.coeff.begin();
      std::uint64_t m_lo = it->first;
      double c_lo = it->second;
      ++it;
      std::uint64_t m_hi = it->first;
      double c_hi = it->second;
      if ((m_hi & cut_mask) != cut_mask) return fail(why, "no mask with phi+ on every cut edge");
      if ((m_lo & cut_mask) != 0) return fail(why, "no mask with identity on every cut edge");
      if ((m_lo ^ m_hi) != cut_mask) return fail(why, "masks differ off the cut");
      if (std::abs(c_hi - cert.visibility) > tol || std::abs(c_lo - (1 - cert.visibility)) > tol)
        return fail(why, "coefficients do not match the stated visibility");
      if (cert.visibility < -tol) return fail(why, "negative visibility");
      if (cert.visibility > 1.0 / (cert.dim + 1) + tol)
        return fail(why, "visibility above the separability threshold 1/(dim+1)");
      return true;
    }

    case Kind::explicit_product_mixture: {
      if (cert.cut_edges.size() != 2)
        return fail(why, "explicit_product_mixture expects exactly two cut edges");
      if (cert.dim != d) return fail(why, "explicit_product_mixture dim should be d");
      const std::uint64_t b1 = std::uint64_t{1} << cert.cut_edges[0];
      const std::uint64_t b2 = std::uint64_t{1} << cert.cut_edges[1];
      bool first = true;
      std::uint64_t rest = 0;
      double q[2][2] = {{0, 0}, {0, 0}};
      for (const auto& [m, c] : comp.coeff) {
        if (first) {
          rest = m & ~cut_mask;
          first = false;
        } else if ((m & ~cut_mask) != rest) {
          return fail(why, "masks disagree off the cut, marginal does not factor");
        }
        q[(m & b1) ? 1 : 0][(m & b2) ? 1 : 0] += c;
      }
      const double v = cert.visibility, mu = cert.mix_weight;
      if (mu < -tol || mu > 1 + tol) return fail(why, "mix weight outside [0,1]");
      if (v < -tol || v > 1.0 / (d + 1) + tol)
        return fail(why, "per-edge visibility above the separability threshold 1/(d+1)");
      if (std::abs(q[1][1] - mu * v * v) > tol ||
          std::abs(q[1][0] - mu * v * (1 - v)) > tol ||
          std::abs(q[0][1] - mu * v * (1 - v)) > tol ||
          std::abs(q[0][0] - (mu * (1 - v) * (1 - v) + 1 - mu)) > tol)
        return fail(why, "cut marginal does not match the product-mixture pattern");
      return true;
    }
  }
  return fail(why, "unknown certificate kind");
}

bool verify_bisep(const BisepDecomposition& dec, const NetworkGraph& g, double tol,
                  std::string* why) {
  if (!dec.feasible)
    return fail(why, "decomposition marked infeasible: " + dec.binding_constraint);
  UniformIso u = uniform_iso(g);
  const int K = static_cast<int>(g.edges.size());
  if (dec.n_edges != K) return fail(why, "edge count mismatch");
  if (dec.d != u.d || std::abs(dec.p - u.p) > 1e-12)
    return fail(why, "decomposition parameters do not match the graph");
  if (K > kMaxEdgesExpand) return fail(why, "too many edges to expand");

  double weight_sum = 0;
  std::vector<double> recon(std::size_t{1} << K, 0.0);
  for (size_t ti = 0; ti < dec.terms.size(); ++ti) {
    const BisepTerm& t = dec.terms[ti];
    const std::string tag = "term " + std::to_string(ti) + ": ";
    if (t.weight < -1e-12) return fail(why, tag + "negative weight");
    weight_sum += t.weight;
    if (t.comp.n_edges != K) return fail(why, tag + "component edge count mismatch");

    double coeff_sum = 0;
    for (const auto& [m, c] : t.comp.coeff) {
      if (m >> K) return fail(why, tag + "mask out of range");
      if (c < -1e-12) return fail(why, tag + "negative component coefficient");
      coeff_sum += c;
      recon[m] += t.weight * c;
    }
    if (std::abs(coeff_sum - 1) > tol) return fail(why, tag + "component not normalised");

    if (t.bipartition.empty() || t.bipartition.size() >= static_cast<size_t>(g.n_parties))
      return fail(why, tag + "bipartition must be a proper nonempty party set");
    for (size_t i = 0; i < t.bipartition.size(); ++i) {
      if (t.bipartition[i] < 0 || t.bipartition[i] >= g.n_parties)
        return fail(why, tag + "bipartition party out of range");
      if (i > 0 && t.bipartition[i - 1] >= t.bipartition[i])
        return fail(why, tag + "bipartition not strictly ascending");
    }
    std::vector<int> crossing;
    for (int k = 0; k < K; ++k) {
      const bool a_in = std::binary_search(t.bipartition.begin(), t.bipartition.end(),
                                           g.edges[k].a);
      const bool b_in = std::binary_search(t.bipartition.begin(), t.bipartition.end(),
                                           g.edges[k].b);
      if (a_in != b_in) crossing.push_back(k);
    }
    if (crossing != t.cert.cut_edges)
      return fail(why, tag + "certificate cut edges are not the edges crossing the bipartition");

    std::string cert_why;
    if (!verify_certificate(t.cert, t.comp, dec.d, tol, &cert_why))
      return fail(why, tag + cert_why);
  }
  if (std::abs(weight_sum - 1) > tol) return fail(why, "weights sum to " + num(weight_sum));

  for (std::uint64_t m = 0; m < (std::uint64_t{1} << K); ++m) {
    double target = 1;
    for (int k = 0; k < K; ++k) target *= (m >> k & 1) ? u.p : 1 - u.p;
    if (std::abs(recon[m] - target) > tol)
      return fail(why, "coefficient mismatch at mask " + std::to_string(m) + ": " +
                           num(recon[m]) + " vs " + num(target));
  }
  return true;
}

CMat dense_component(const EdgeBasisComponent& comp, const NetworkGraph& g) {
  if (comp.n_edges != static_cast<int>(g.edges.size()))
    throw std::invalid_argument("dense_component: edge count mismatch");
  // a mask is just the network with each edge forced to phi+ (p=1) or to the
  // maximally mixed state (p=0); reuse network_state so the layout matches
  CMat acc;
  for (const auto& [m, c] : comp.coeff) {
    NetworkGraph h = g;
    for (size_t k = 0; k < h.edges.size(); ++k)
      h.edges[k].state =
          EdgeState::isotropic_edge(h.edges[k].state.d, (m >> k & 1) ? 1.0 : 0.0);
    CMat b = network_state(h).state;
    if (acc.size() == 0) acc = CMat::Zero(b.rows(), b.cols());
    acc += c * b;
  }
  return acc;
}

}  // namespace qnet

#include "qnet/bell.hpp"

#include "qnet/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>

namespace qnet {

double BellFunctional::evaluate(const BoxN& box) const {
  if (!(box.shape == shape))
    throw std::invalid_argument("BellFunctional: box shape does not match");
  double s = 0;
  for (size_t i = 0; i < coeff.size(); ++i) s += coeff[i] * box.table[i];
  return s;
}

BellFunctional chsh_equiv() {
  BellFunctional f;
  f.name = "chsh_equiv";
  f.shape.n_parties = 2;
  f.shape.outputs = {2, 2};
  f.shape.inputs = {2, 2};
  f.coeff.assign(f.shape.size(), 0.0);
  f.at({0, 0}, {0, 0}) = 1;
  f.at({0, 1}, {0, 1}) = -1;
  f.at({1, 0}, {1, 0}) = -1;
  f.at({0, 0}, {1, 1}) = -1;
  f.declared_bound = 0;
  f.bound_kind = BoundKind::local;
  return f;
}

namespace {

constexpr long kMaxFunctionalEntries = 10'000'000;

// value of a party's digit vector, first digit most significant
int digits_value(const std::vector<int>& digs) {
  int v = 0;
  for (int d : digs) v = (v << 1) | d;
  return v;
}

}  // namespace

BellFunctional lift_and_combine(const NetworkGraph& g) {
  if (!g.connected()) throw std::invalid_argument("lift_and_combine: graph must be connected");
  const int n = g.n_parties;

  const std::vector<std::vector<int>> inc = g.incident_edges();

  BellFunctional f;
  f.name = "gmnl_lifted";
  f.shape.n_parties = n;
  f.shape.inputs.resize(n);
  f.shape.outputs.resize(n);
  for (int i = 0; i < n; ++i) {
    f.shape.inputs[i] = 1 << inc[i].size();
    f.shape.outputs[i] = f.shape.inputs[i];
  }
  if (f.shape.size() > kMaxFunctionalEntries)
    throw std::invalid_argument("lift_and_combine: functional too large to store densely");
  f.coeff.assign(f.shape.size(), 0.0);
  f.declared_bound = 0;
  f.bound_kind = BoundKind::bilocal;

  // breadth-first spanning tree rooted at party 0
  std::vector<char> seen(n, 0);
  std::vector<int> tree;
  std::queue<int> bfs;
  seen[0] = 1;
  bfs.push(0);
  while (!bfs.empty()) {
    const int u = bfs.front();
    bfs.pop();
    for (int k : inc[u]) {
      const int w = g.edges[k].a == u ? g.edges[k].b : g.edges[k].a;
      if (seen[w]) continue;
      seen[w] = 1;
      tree.push_back(k);
      bfs.push(w);
    }
  }

  const auto digit_pos = [&](int party, int k) {
    return static_cast<int>(std::lower_bound(inc[party].begin(), inc[party].end(), k) -
                            inc[party].begin());
  };

  // One seed term lifted along edge k: the k digits of the endpoints carry the
  // seed's outputs and inputs, their remaining output digits are summed over,
  // every other digit in the network is pinned to 0.
  const auto add_pattern = [&](int k, int ai, int aj, int xi, int xj, double sign) {
    const int i = g.edges[k].a, j = g.edges[k].b;
    const int pi = digit_pos(i, k), pj = digit_pos(j, k);
    const int mi = static_cast<int>(inc[i].size()), mj = static_cast<int>(inc[j].size());

    std::vector<int> x(n, 0);
    x[i] = xi << (mi - 1 - pi);
    x[j] = xj << (mj - 1 - pj);

    std::vector<int> a(n, 0);
    std::vector<int> di(mi), dj(mj);
    for (unsigned u = 0; u < (1u << (mi - 1)); ++u) {
      int bit = mi - 2;
      for (int t = 0; t < mi; ++t) di[t] = t == pi ? ai : ((u >> bit--) & 1);
      a[i] = digits_value(di);
      for (unsigned v = 0; v < (1u << (mj - 1)); ++v) {
        bit = mj - 2;
        for (int t = 0; t < mj; ++t) dj[t] = t == pj ? aj : ((v >> bit--) & 1);
        a[j] = digits_value(dj);
        f.at(a, x) += sign;
      }
    }
  };

  for (int k : tree) {
    add_pattern(k, 0, 0, 0, 0, +1);
    add_pattern(k, 0, 1, 0, 1, -1);
    add_pattern(k, 1, 0, 1, 0, -1);
    add_pattern(k, 0, 0, 1, 1, -1);
  }

  // combination terms: one all-zero event, minus each lifting's leading sum
  const std::vector<int> zero(n, 0);
  f.at(zero, zero) += 1;
  for (int k : tree) add_pattern(k, 0, 0, 0, 0, -1);

  return f;
}

namespace {

struct Group {
  std::vector<int> parties;
  long in_joint = 1, out_joint = 1;
  double n_strategies = 0;  // out_joint^in_joint, as double to spot overflow
};

Group make_group(const BoxShape& shape, std::vector<int> parties) {
  Group grp;
  grp.parties = std::move(parties);
  for (int p : grp.parties) {
    grp.in_joint *= shape.inputs[p];
    grp.out_joint *= shape.outputs[p];
  }
  grp.n_strategies = std::pow(static_cast<double>(grp.out_joint),
                              static_cast<double>(grp.in_joint));
  return grp;
}

// Maximum of f over product strategies of the two groups, enumerating the
// group with fewer response functions and best-responding the other per joint
// input. Fills the winning responses.
double two_group_max(const BellFunctional& f, const Group& ge, const Group& gr,
                     std::vector<int>& resp_e, std::vector<int>& resp_r) {
  const BoxShape& shape = f.shape;
  Dims in_e(ge.parties.size()), out_e(ge.parties.size());
  Dims in_r(gr.parties.size()), out_r(gr.parties.size());
  for (size_t t = 0; t < ge.parties.size(); ++t) {
    in_e[t] = shape.inputs[ge.parties[t]];
    out_e[t] = shape.outputs[ge.parties[t]];
  }
  for (size_t t = 0; t < gr.parties.size(); ++t) {
    in_r[t] = shape.inputs[gr.parties[t]];
    out_r[t] = shape.outputs[gr.parties[t]];
  }

  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> cur(ge.in_joint, 0);  // enumerated side's response table
  std::vector<double> w(gr.in_joint * gr.out_joint);
  std::vector<int> a(shape.n_parties), x(shape.n_parties);

  for (;;) {
    // W[x_r][a_r] for the responding group, enumerated side fixed to cur
    std::fill(w.begin(), w.end(), 0.0);
    for (long xe = 0; xe < ge.in_joint; ++xe) {
      const std::vector<int> xe_digits = unpack_index(xe, in_e);
      const std::vector<int> ae_digits = unpack_index(cur[xe], out_e);
      for (size_t t = 0; t < ge.parties.size(); ++t) {
        x[ge.parties[t]] = xe_digits[t];
        a[ge.parties[t]] = ae_digits[t];
      }
      for (long xr = 0; xr < gr.in_joint; ++xr) {
        const std::vector<int> xr_digits = unpack_index(xr, in_r);
        for (size_t t = 0; t < gr.parties.size(); ++t) x[gr.parties[t]] = xr_digits[t];
        for (long ar = 0; ar < gr.out_joint; ++ar) {
          const std::vector<int> ar_digits = unpack_index(ar, out_r);
          for (size_t t = 0; t < gr.parties.size(); ++t) a[gr.parties[t]] = ar_digits[t];
          w[xr * gr.out_joint + ar] += f.at(a, x);
        }
      }
    }
    double val = 0;
    std::vector<int> resp(gr.in_joint, 0);
    for (long xr = 0; xr < gr.in_joint; ++xr) {
      double m = w[xr * gr.out_joint];
      int arg = 0;
      for (long ar = 1; ar < gr.out_joint; ++ar)
        if (w[xr * gr.out_joint + ar] > m) {
          m = w[xr * gr.out_joint + ar];
          arg = static_cast<int>(ar);
        }
      val += m;
      resp[xr] = arg;
    }
    if (val > best) {
      best = val;
      resp_e = cur;
      resp_r = resp;
    }
    // next response table of the enumerated side (mixed-radix increment)
    long pos = 0;
    while (pos < ge.in_joint && ++cur[pos] == ge.out_joint) cur[pos++] = 0;
    if (pos == ge.in_joint) break;
  }
  return best;
}

}  // namespace

StrategyMax deterministic_max(const BellFunctional& f, PartitionMode mode) {
  const int n = f.shape.n_parties;
  if (static_cast<long>(f.coeff.size()) != f.shape.size())
    throw std::invalid_argument("deterministic_max: coefficient table size mismatch");

  std::vector<std::pair<Group, Group>> splits;
  if (mode == PartitionMode::fully_local) {
    // enumerate all parties but the one with the most strategies jointly;
    // grouping them loses nothing since each is best-responded independently
    // once the remaining party is, which two_group_max's table covers.
    int big = 0;
    double big_count = 0;
    std::vector<Group> singles;
    for (int i = 0; i < n; ++i) {
      singles.push_back(make_group(f.shape, {i}));
      if (singles[i].n_strategies > big_count) {
        big_count = singles[i].n_strategies;
        big = i;
      }
    }
    if (n == 1) {
      // degenerate: one party best-responds alone against an empty group
      Group empty;
      splits.emplace_back(empty, singles[0]);
    } else {
      std::vector<int> rest;
      for (int i = 0; i < n; ++i)
        if (i != big) rest.push_back(i);
      Group ge = make_group(f.shape, rest);
      // the joint enumeration must stay product-deterministic: walk each
      // party's response table separately, not arbitrary joint functions
      splits.emplace_back(ge, singles[big]);
    }
  } else {
    if (n < 2)
      throw std::invalid_argument("deterministic_max: bilocal mode needs at least 2 parties");
    for (unsigned rest = 0; rest + 1 < (1u << (n - 1)); ++rest) {
      const unsigned mask = 1u | (rest << 1);
      std::vector<int> m_side, other;
      for (int i = 0; i < n; ++i) ((mask >> i) & 1u ? m_side : other).push_back(i);
      splits.emplace_back(make_group(f.shape, m_side), make_group(f.shape, other));
    }
  }

  StrategyMax out;
  out.value = -std::numeric_limits<double>::infinity();
  for (auto& [g1, g2] : splits) {
    Group ge = g1, gr = g2;
    if (mode == PartitionMode::bilocal_all_bipartitions && gr.n_strategies < ge.n_strategies)
      std::swap(ge, gr);

    if (mode == PartitionMode::fully_local && ge.parties.size() > 1) {
      // product enumeration over the grouped parties
      double count = 1;
      std::vector<long> sizes;
      for (int p : ge.parties) {
        const double s = std::pow(static_cast<double>(f.shape.outputs[p]),
                                  static_cast<double>(f.shape.inputs[p]));
        count *= s;
        sizes.push_back(static_cast<long>(s));
      }
      if (count > 1e8) throw std::invalid_argument("deterministic_max: search space too large");

      // walk response tables party by party; encode them into a joint table
      // for two_group_max's inner evaluation
      const size_t np = ge.parties.size();
      std::vector<std::vector<int>> resp(np);
      for (size_t t = 0; t < np; ++t) resp[t].assign(f.shape.inputs[ge.parties[t]], 0);
      Dims in_e(np), out_e(np);
      for (size_t t = 0; t < np; ++t) {
        in_e[t] = f.shape.inputs[ge.parties[t]];
        out_e[t] = f.shape.outputs[ge.parties[t]];
      }
      std::vector<int> joint(ge.in_joint), a(n), x(n);
      std::vector<double> w(gr.in_joint * gr.out_joint);
      for (;;) {
        for (long xe = 0; xe < ge.in_joint; ++xe) {
          const std::vector<int> xd = unpack_index(xe, in_e);
          std::vector<int> ad(np);
          for (size_t t = 0; t < np; ++t) ad[t] = resp[t][xd[t]];
          joint[xe] = static_cast<int>(pack_index(ad, out_e));
        }
        std::fill(w.begin(), w.end(), 0.0);
        for (long xe = 0; xe < ge.in_joint; ++xe) {
          const std::vector<int> xd = unpack_index(xe, in_e);
          const std::vector<int> ad = unpack_index(joint[xe], out_e);
          for (size_t t = 0; t < np; ++t) {
            x[ge.parties[t]] = xd[t];
            a[ge.parties[t]] = ad[t];
          }
          for (long xr = 0; xr < gr.in_joint; ++xr) {
            x[gr.parties[0]] = static_cast<int>(xr);
            for (long ar = 0; ar < gr.out_joint; ++ar) {
              a[gr.parties[0]] = static_cast<int>(ar);
              w[xr * gr.out_joint + ar] += f.at(a, x);
            }
          }
        }
        double val = 0;
        std::vector<int> rbest(gr.in_joint, 0);
        for (long xr = 0; xr < gr.in_joint; ++xr) {
          double m = w[xr * gr.out_joint];
          int arg = 0;
          for (long ar = 1; ar < gr.out_joint; ++ar)
            if (w[xr * gr.out_joint + ar] > m) {
              m = w[xr * gr.out_joint + ar];
              arg = static_cast<int>(ar);
            }
          val += m;
          rbest[xr] = arg;
        }
        if (val > out.value) {
          out.value = val;
          out.groups.clear();
          out.responses.clear();
          for (size_t t = 0; t < np; ++t) {
            out.groups.push_back({ge.parties[t]});
            out.responses.push_back(resp[t]);
          }
          out.groups.push_back(gr.parties);
          out.responses.push_back(rbest);
        }
        // increment the product of response tables
        size_t tp = 0;
        while (tp < np) {
          size_t pos = 0;
          auto& r = resp[tp];
          while (pos < r.size() && ++r[pos] == f.shape.outputs[ge.parties[tp]]) r[pos++] = 0;
          if (pos < r.size()) break;
          ++tp;
        }
        if (tp == np) break;
      }
      continue;
    }

    if (ge.n_strategies > 1e8)
      throw std::invalid_argument("deterministic_max: search space too large");
    std::vector<int> re, rr;
    const double val = ge.parties.empty()
                           ? two_group_max(f, make_group(f.shape, {}), gr, re, rr)
                           : two_group_max(f, ge, gr, re, rr);
    if (val > out.value) {
      out.value = val;
      out.groups = {ge.parties, gr.parties};
      out.responses = {re, rr};
      if (ge.parties.empty()) {
        out.groups = {gr.parties};
        out.responses = {rr};
      }
    }
  }
  return out;
}

BoxN strategy_box(const BoxShape& shape, const std::vector<std::vector<int>>& groups,
                  const std::vector<std::vector<int>>& responses) {
  if (groups.size() != responses.size())
    throw std::invalid_argument("strategy_box: one response table per group required");
  std::vector<int> owner(shape.n_parties, -1);
  for (size_t gi = 0; gi < groups.size(); ++gi)
    for (int p : groups[gi]) {
      if (p < 0 || p >= shape.n_parties || owner[p] >= 0)
        throw std::invalid_argument("strategy_box: groups must partition the parties");
      owner[p] = static_cast<int>(gi);
    }
  for (int o : owner)
    if (o < 0) throw std::invalid_argument("strategy_box: groups must partition the parties");

  BoxN box;
  box.shape = shape;
  box.table.assign(shape.size(), 0.0);
  const long na = shape.output_joint();
  for (long xi = 0; xi < shape.input_joint(); ++xi) {
    const std::vector<int> x = unpack_index(xi, shape.inputs);
    std::vector<int> a(shape.n_parties, 0);
    for (size_t gi = 0; gi < groups.size(); ++gi) {
      Dims in_g(groups[gi].size()), out_g(groups[gi].size());
      std::vector<int> xg(groups[gi].size());
      for (size_t t = 0; t < groups[gi].size(); ++t) {
        in_g[t] = shape.inputs[groups[gi][t]];
        out_g[t] = shape.outputs[groups[gi][t]];
        xg[t] = x[groups[gi][t]];
      }
      const long xj = pack_index(xg, in_g);
      if (xj >= static_cast<long>(responses[gi].size()))
        throw std::invalid_argument("strategy_box: response table too short");
      const std::vector<int> ag = unpack_index(responses[gi][xj], out_g);
      for (size_t t = 0; t < groups[gi].size(); ++t) a[groups[gi][t]] = ag[t];
    }
    box.table[xi * na + pack_index(a, shape.outputs)] = 1.0;
  }
  return box;
}

namespace {

// Nonsignalling polytope of a party group in standard LP form. Variables are
// the group's joint table q(b|y), flattened as y * out_joint + b; rows are
// per-input normalization plus, for each party, equality of the others'
// marginal between each of its inputs and input 0.
struct GroupPolytope {
  Dims ins, outs;
  long in_joint = 1, out_joint = 1;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
};

GroupPolytope group_ns_polytope(const BoxShape& shape, const std::vector<int>& parties) {
  GroupPolytope g;
  for (int p : parties) {
    g.ins.push_back(shape.inputs[p]);
    g.outs.push_back(shape.outputs[p]);
  }
  g.in_joint = dim_product(g.ins);
  g.out_joint = dim_product(g.outs);
  const long nv = g.in_joint * g.out_joint;
  long m = g.in_joint;
  if (parties.size() > 1)
    for (size_t t = 0; t < g.ins.size(); ++t)
      m += (g.ins[t] - 1) * (g.in_joint / g.ins[t]) * (g.out_joint / g.outs[t]);
  g.A = Eigen::MatrixXd::Zero(m, nv);
  g.b = Eigen::VectorXd::Zero(m);
  for (long y = 0; y < g.in_joint; ++y) {
    g.A.block(y, y * g.out_joint, 1, g.out_joint).setOnes();
    g.b(y) = 1.0;
  }
  if (parties.size() == 1) return g;  // a lone party is constrained by normalization only
  long r = g.in_joint;
  for (size_t t = 0; t < g.ins.size(); ++t) {
    for (long y = 0; y < g.in_joint; ++y) {
      std::vector<int> yv = unpack_index(y, g.ins);
      if (yv[t] == 0) continue;
      std::vector<int> y0 = yv;
      y0[t] = 0;
      const long y0i = pack_index(y0, g.ins);
      for (long ob = 0; ob < g.out_joint; ++ob) {
        std::vector<int> bv = unpack_index(ob, g.outs);
        if (bv[t] != 0) continue;  // one row per assignment of the other outputs
        for (int bt = 0; bt < g.outs[t]; ++bt) {
          bv[t] = bt;
          const long obi = pack_index(bv, g.outs);
          g.A(r, y * g.out_joint + obi) += 1.0;
          g.A(r, y0i * g.out_joint + obi) -= 1.0;
        }
        ++r;
      }
    }
  }
  return g;
}

// flat (input, output) variable index of each side for every dense slot of f
void split_index(const BellFunctional& f, const std::vector<int>& mside,
                 const std::vector<int>& rside, std::vector<long>* vm, std::vector<long>* vr) {
  Dims mi, mo, ri, ro;
  for (int p : mside) {
    mi.push_back(f.shape.inputs[p]);
    mo.push_back(f.shape.outputs[p]);
  }
  for (int p : rside) {
    ri.push_back(f.shape.inputs[p]);
    ro.push_back(f.shape.outputs[p]);
  }
  const long moj = dim_product(mo), roj = dim_product(ro);
  const long na = f.shape.output_joint();
  const long sz = f.shape.size();
  vm->resize(sz);
  vr->resize(sz);
  std::vector<int> xm(mside.size()), am(mside.size()), xr(rside.size()), ar(rside.size());
  for (long idx = 0; idx < sz; ++idx) {
    const std::vector<int> x = unpack_index(idx / na, f.shape.inputs);
    const std::vector<int> a = unpack_index(idx % na, f.shape.outputs);
    for (size_t t = 0; t < mside.size(); ++t) {
      xm[t] = x[mside[t]];
      am[t] = a[mside[t]];
    }
    for (size_t t = 0; t < rside.size(); ++t) {
      xr[t] = x[rside[t]];
      ar[t] = a[rside[t]];
    }
    (*vm)[idx] = pack_index(xm, mi) * moj + pack_index(am, mo);
    (*vr)[idx] = pack_index(xr, ri) * roj + pack_index(ar, ro);
  }
}

// exact side maximum: enumerate the singleton's deterministic responses, one
// LP over the group's nonsignalling polytope per response
double singleton_group_max(const BellFunctional& f, int s, const std::vector<int>& grp) {
  const GroupPolytope gp = group_ns_polytope(f.shape, grp);
  std::vector<long> vs, vg;
  split_index(f, {s}, grp, &vs, &vg);
  const int si = f.shape.inputs[s], so = f.shape.outputs[s];
  long n_codes = 1;
  for (int x = 0; x < si; ++x) n_codes *= so;
  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> resp(static_cast<size_t>(si));
  for (long code = 0; code < n_codes; ++code) {
    long cc = code;
    for (int x = 0; x < si; ++x) {
      resp[static_cast<size_t>(x)] = static_cast<int>(cc % so);
      cc /= so;
    }
    Eigen::VectorXd c = Eigen::VectorXd::Zero(gp.in_joint * gp.out_joint);
    for (long idx = 0; idx < static_cast<long>(f.coeff.size()); ++idx) {
      if (f.coeff[static_cast<size_t>(idx)] == 0.0) continue;
      const long v = vs[static_cast<size_t>(idx)];
      if (resp[static_cast<size_t>(v / so)] != static_cast<int>(v % so)) continue;
      c(vg[static_cast<size_t>(idx)]) += f.coeff[static_cast<size_t>(idx)];
    }
    const LpResult lr = simplex_max(gp.A, gp.b, c);
    if (!lr.optimal)
      throw std::runtime_error("ns_bilocal_max: group LP " + lr.status);
    best = std::max(best, lr.value);
  }
  return best;
}

// both sides multi-party: alternating best responses, a lower bound only
double alternating_group_max(const BellFunctional& f, const std::vector<int>& mside,
                             const std::vector<int>& rside) {
  const GroupPolytope pm = group_ns_polytope(f.shape, mside);
  const GroupPolytope pr = group_ns_polytope(f.shape, rside);
  std::vector<long> vm, vr;
  split_index(f, mside, rside, &vm, &vr);
  Eigen::VectorXd qr =
      Eigen::VectorXd::Constant(pr.in_joint * pr.out_joint, 1.0 / static_cast<double>(pr.out_joint));
  double value = -std::numeric_limits<double>::infinity();
  for (int round = 0; round < 40; ++round) {
    Eigen::VectorXd cm = Eigen::VectorXd::Zero(pm.in_joint * pm.out_joint);
    for (size_t idx = 0; idx < f.coeff.size(); ++idx)
      if (f.coeff[idx] != 0.0) cm(vm[idx]) += f.coeff[idx] * qr(vr[idx]);
    const LpResult lm = simplex_max(pm.A, pm.b, cm);
    Eigen::VectorXd cr = Eigen::VectorXd::Zero(pr.in_joint * pr.out_joint);
    for (size_t idx = 0; idx < f.coeff.size(); ++idx)
      if (f.coeff[idx] != 0.0) cr(vr[idx]) += f.coeff[idx] * lm.x(vm[idx]);
    const LpResult lr = simplex_max(pr.A, pr.b, cr);
    if (!lm.optimal || !lr.optimal)
      throw std::runtime_error("ns_bilocal_max: alternating LP failed");
    qr = lr.x;
    if (lr.value <= value + 1e-12) return std::max(value, lr.value);
    value = lr.value;
  }
  return value;
}

constexpr long kMaxSingletonStrategies = 200000;
// Dense-simplex runs over a group's nonsignalling polytope get slow past a
// few hundred variables (the polytope is highly degenerate). Splits whose
// group LP would be larger are skipped rather than left to crawl.
constexpr long kMaxGroupLpVars = 600;

}  // namespace

NsBilocalMax ns_bilocal_max(const BellFunctional& f) {
  const int n = f.shape.n_parties;
  if (n < 2) throw std::invalid_argument("ns_bilocal_max: need at least two parties");
  NsBilocalMax out;
  out.value = -std::numeric_limits<double>::infinity();
  const auto enumerable = [&f](int s) {
    double count = std::pow(static_cast<double>(f.shape.outputs[s]),
                            static_cast<double>(f.shape.inputs[s]));
    return count <= static_cast<double>(kMaxSingletonStrategies);
  };
  const auto lp_vars = [&f](const std::vector<int>& grp) {
    long v = 1;
    for (int p : grp) v *= static_cast<long>(f.shape.inputs[p]) * f.shape.outputs[p];
    return v;
  };
  bool computed_any = false;
  const long n_bip = 1L << (n - 1);
  for (long rest = 0; rest + 1 < n_bip; ++rest) {
    const long mask = 1 | (rest << 1);  // party 0 stays on the M side
    std::vector<int> mside, rside;
    for (int p = 0; p < n; ++p) (((mask >> p) & 1) != 0 ? mside : rside).push_back(p);
    double v = 0;
    bool ex = true;
    if (mside.size() == 1 && enumerable(mside[0]) && lp_vars(rside) <= kMaxGroupLpVars) {
      v = singleton_group_max(f, mside[0], rside);
    } else if (rside.size() == 1 && enumerable(rside[0]) && lp_vars(mside) <= kMaxGroupLpVars) {
      v = singleton_group_max(f, rside[0], mside);
    } else if (lp_vars(mside) <= kMaxGroupLpVars && lp_vars(rside) <= kMaxGroupLpVars) {
      v = alternating_group_max(f, mside, rside);
      ex = false;
    } else {
      out.exact = false;
      continue;
    }
    computed_any = true;
    if (v > out.value) {
      out.value = v;
      out.partition = mside;
    }
    out.exact = out.exact && ex;
  }
  if (!computed_any)
    throw std::runtime_error("ns_bilocal_max: every bipartition exceeds the group LP size cap");
  return out;
}

BoxN network_product_box(const NetworkGraph& g, const std::vector<BoxN>& edge_boxes) {
  if (edge_boxes.size() != g.edges.size())
    throw std::invalid_argument("network_product_box: one box per edge required");
  // Fold edges onto an n-party box with trivial digits, so each party's slots
  // grow in edge order without tracking which parties have appeared yet.
  BoxN acc;
  acc.shape.n_parties = g.n_parties;
  acc.shape.outputs.assign(g.n_parties, 1);
  acc.shape.inputs.assign(g.n_parties, 1);
  acc.table.assign(1, 1.0);
  for (size_t k = 0; k < g.edges.size(); ++k) {
    if (edge_boxes[k].shape.n_parties != 2)
      throw std::invalid_argument("network_product_box: edge boxes must be bipartite");
    std::vector<MergedParty> merge(g.n_parties);
    for (int i = 0; i < g.n_parties; ++i) {
      merge[i].from_p = i;
      if (i == g.edges[k].a) merge[i].from_q = 0;
      else if (i == g.edges[k].b) merge[i].from_q = 1;
    }
    acc = product_box(acc, edge_boxes[k], merge);
  }
  return acc;
}

}  // namespace qnet

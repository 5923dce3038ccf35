#include "qnet/epr2.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qnet {

namespace {

constexpr double kRcTol = 1e-9;    // reduced-cost optimality tolerance
constexpr double kPivTol = 1e-11;  // smallest pivot magnitude accepted

struct Slot {
  int slack = -1;  // row index when this basis slot holds a slack
  int f = -1, g = -1;
};

}  // namespace

Epr2Result epr2_local_weight(const BoxN& box) {
  const BoxShape& shape = box.shape;
  if (shape.n_parties != 2)
    throw std::invalid_argument("epr2_local_weight: two-party boxes only");
  if (shape.inputs[0] > 4 || shape.inputs[1] > 4 || shape.outputs[0] > 4 ||
      shape.outputs[1] > 4)
    throw std::invalid_argument("epr2_local_weight: at most 4 inputs and outputs per side");
  if (!box.valid(1e-6))
    throw std::invalid_argument("epr2_local_weight: input is not a probability table");

  const int in_a = shape.inputs[0], in_b = shape.inputs[1];
  const int out_a = shape.outputs[0], out_b = shape.outputs[1];
  const long m = shape.size();

  Eigen::VectorXd rhs(m);
  for (long r = 0; r < m; ++r) rhs(r) = std::max(box.table[r], 0.0);

  // all response functions of each side, decoded once
  const auto decode_all = [](int n_in, int n_out) {
    long count = 1;
    for (int t = 0; t < n_in; ++t) count *= n_out;
    std::vector<std::vector<int>> tables(count, std::vector<int>(n_in));
    for (long code = 0; code < count; ++code) {
      long c = code;
      for (int t = 0; t < n_in; ++t) {
        tables[code][t] = static_cast<int>(c % n_out);
        c /= n_out;
      }
    }
    return tables;
  };
  const auto fs = decode_all(in_a, out_a);
  const auto gs = decode_all(in_b, out_b);

  const auto vertex_rows = [&](const std::vector<int>& f, const std::vector<int>& g,
                               auto&& visit) {
    for (int x = 0; x < in_a; ++x)
      for (int y = 0; y < in_b; ++y) visit(shape.index({f[x], g[y]}, {x, y}));
  };

  Eigen::MatrixXd binv = Eigen::MatrixXd::Identity(m, m);
  Eigen::VectorXd cb = Eigen::VectorXd::Zero(m);
  std::vector<Slot> basis(m);
  for (long r = 0; r < m; ++r) basis[r].slack = static_cast<int>(r);

  Eigen::VectorXd col(m), dir(m), xb(m), y(m);
  for (long iter = 0;; ++iter) {
    if (iter > 200000)
      throw std::runtime_error("epr2_local_weight: simplex failed to converge");

    y = binv.transpose() * cb;

    // pricing: slacks re-enter on negative duals, vertices by best response
    double best_rc = kRcTol;
    Slot entering;
    bool found = false;
    for (long r = 0; r < m; ++r)
      if (-y(r) > best_rc) {
        best_rc = -y(r);
        entering = Slot{static_cast<int>(r), -1, -1};
        found = true;
      }
    for (size_t fc = 0; fc < fs.size(); ++fc) {
      double total = 0;
      std::vector<int> g_best(in_b, 0);
      for (int yin = 0; yin < in_b; ++yin) {
        double mn = 0;
        for (int bo = 0; bo < out_b; ++bo) {
          double s = 0;
          for (int x = 0; x < in_a; ++x) s += y(shape.index({fs[fc][x], bo}, {x, yin}));
          if (bo == 0 || s < mn) {
            mn = s;
            g_best[yin] = bo;
          }
        }
        total += mn;
      }
      if (1 - total > best_rc) {
        best_rc = 1 - total;
        // encode the best response back to a g index
        long code = 0;
        for (int t = in_b - 1; t >= 0; --t) code = code * out_b + g_best[t];
        entering = Slot{-1, static_cast<int>(fc), static_cast<int>(code)};
        found = true;
      }
    }
    if (!found) break;

    col.setZero();
    if (entering.slack >= 0)
      col(entering.slack) = 1;
    else
      vertex_rows(fs[entering.f], gs[entering.g], [&](long r) { col(r) += 1; });
    dir = binv * col;
    xb = binv * rhs;

    // lexicographic ratio test keeps degenerate pivots from cycling
    long leave = -1;
    for (long r = 0; r < m; ++r) {
      if (dir(r) <= kPivTol) continue;
      if (leave < 0) {
        leave = r;
        continue;
      }
      const double diff = xb(r) / dir(r) - xb(leave) / dir(leave);
      if (diff < -1e-12) {
        leave = r;
      } else if (diff < 1e-12) {
        for (long t = 0; t < m; ++t) {
          const double lex = binv(r, t) / dir(r) - binv(leave, t) / dir(leave);
          if (lex < -1e-12) {
            leave = r;
            break;
          }
          if (lex > 1e-12) break;
        }
      }
    }
    if (leave < 0)
      throw std::runtime_error("epr2_local_weight: unbounded direction in a bounded program");

    binv.row(leave) /= dir(leave);
    for (long r = 0; r < m; ++r)
      if (r != leave && std::abs(dir(r)) > 0) binv.row(r) -= dir(r) * binv.row(leave);
    basis[leave] = entering;
    cb(leave) = entering.slack >= 0 ? 0.0 : 1.0;
  }

  xb = binv * rhs;
  Epr2Result res;
  std::vector<double> used(m, 0.0);
  for (long r = 0; r < m; ++r) {
    if (basis[r].slack >= 0) continue;
    const double w = std::max(xb(r), 0.0);
    if (w <= 1e-12) continue;
    res.local_weight += w;
    res.local_part.push_back({fs[basis[r].f], gs[basis[r].g], w});
    vertex_rows(fs[basis[r].f], gs[basis[r].g], [&](long row) { used[row] += w; });
  }

  res.ns_remainder.shape = shape;
  res.ns_remainder.table.assign(m, 0.0);
  if (res.local_weight >= 1 - 1e-12) {
    res.local_weight = std::min(res.local_weight, 1.0);
    res.ns_remainder = uniform_box(shape);
  } else {
    const double scale = 1.0 / (1 - res.local_weight);
    for (long r = 0; r < m; ++r)
      res.ns_remainder.table[r] = std::max(box.table[r] - used[r], 0.0) * scale;
  }
  return res;
}

}  // namespace qnet

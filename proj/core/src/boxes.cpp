#include "qnet/boxes.hpp"

#include <cmath>
#include <stdexcept>

namespace qnet {

long BoxShape::output_joint() const { return dim_product(outputs); }
long BoxShape::input_joint() const { return dim_product(inputs); }

long BoxShape::index(const std::vector<int>& a, const std::vector<int>& x) const {
  return pack_index(x, inputs) * output_joint() + pack_index(a, outputs);
}

double BoxN::at(const std::vector<int>& a, const std::vector<int>& x) const {
  return table[shape.index(a, x)];
}

double& BoxN::at(const std::vector<int>& a, const std::vector<int>& x) {
  return table[shape.index(a, x)];
}

bool BoxN::valid(double tol) const {
  if (static_cast<long>(table.size()) != shape.size()) return false;
  const long na = shape.output_joint();
  for (long xi = 0; xi < shape.input_joint(); ++xi) {
    double sum = 0;
    for (long ai = 0; ai < na; ++ai) {
      const double v = table[xi * na + ai];
      if (v < -1e-12) return false;
      sum += v;
    }
    if (std::abs(sum - 1) > tol) return false;
  }
  return true;
}

bool BoxN::nonsignalling(double tol) const {
  if (static_cast<long>(table.size()) != shape.size()) return false;
  const long na = shape.output_joint();
  for (int party = 0; party < shape.n_parties; ++party) {
    for (long xi = 0; xi < shape.input_joint(); ++xi) {
      std::vector<int> x = unpack_index(xi, shape.inputs);
      if (x[party] == 0) continue;  // compare against the same context at input 0
      std::vector<int> x0 = x;
      x0[party] = 0;
      const long base = pack_index(x, shape.inputs) * na;
      const long base0 = pack_index(x0, shape.inputs) * na;
      // marginal over this party's output, everyone else's output fixed
      for (long ai = 0; ai < na; ++ai) {
        std::vector<int> a = unpack_index(ai, shape.outputs);
        if (a[party] != 0) continue;
        double m = 0, m0 = 0;
        for (int o = 0; o < shape.outputs[party]; ++o) {
          a[party] = o;
          const long aj = pack_index(a, shape.outputs);
          m += table[base + aj];
          m0 += table[base0 + aj];
        }
        a[party] = 0;
        if (std::abs(m - m0) > tol) return false;
      }
    }
  }
  return true;
}

BoxN uniform_box(BoxShape shape) {
  BoxN b;
  b.shape = std::move(shape);
  const double v = 1.0 / b.shape.output_joint();
  b.table.assign(b.shape.size(), v);
  return b;
}

BoxN born_box(const CMat& rho, const Dims& party_dims,
              const std::vector<std::vector<std::vector<CMat>>>& povms, double tol) {
  const int n = static_cast<int>(party_dims.size());
  if (static_cast<int>(povms.size()) != n)
    throw std::invalid_argument("born_box: one POVM list per party required");
  if (rho.rows() != dim_product(party_dims) || rho.cols() != rho.rows())
    throw std::invalid_argument("born_box: state does not match the party dimensions");

  BoxShape shape;
  shape.n_parties = n;
  shape.inputs.resize(n);
  shape.outputs.resize(n);
  for (int i = 0; i < n; ++i) {
    if (povms[i].empty()) throw std::invalid_argument("born_box: party with no inputs");
    shape.inputs[i] = static_cast<int>(povms[i].size());
    shape.outputs[i] = static_cast<int>(povms[i][0].size());
    for (const auto& povm : povms[i]) {
      if (static_cast<int>(povm.size()) != shape.outputs[i])
        throw std::invalid_argument("born_box: outcome count differs between inputs");
      CMat sum = CMat::Zero(party_dims[i], party_dims[i]);
      for (const CMat& e : povm) {
        if (e.rows() != party_dims[i] || e.cols() != party_dims[i])
          throw std::invalid_argument("born_box: effect dimension mismatch");
        if (min_eigenvalue(e, tol) < -tol)
          throw std::invalid_argument("born_box: effect is not positive semidefinite");
        sum += e;
      }
      if (!approx_equal(sum, CMat::Identity(party_dims[i], party_dims[i]), tol))
        throw std::invalid_argument("born_box: effects do not sum to the identity");
    }
  }

  BoxN box;
  box.shape = shape;
  box.table.assign(shape.size(), 0.0);
  const long na = shape.output_joint();
  std::vector<CMat> effects(n);
  for (long xi = 0; xi < shape.input_joint(); ++xi) {
    const std::vector<int> x = unpack_index(xi, shape.inputs);
    for (long ai = 0; ai < na; ++ai) {
      const std::vector<int> a = unpack_index(ai, shape.outputs);
      for (int i = 0; i < n; ++i) effects[i] = povms[i][x[i]][a[i]];
      const cxd val = (kron_all(effects) * rho).trace();
      if (std::abs(val.imag()) > 1e-9)
        throw std::invalid_argument("born_box: probability with imaginary residue");
      box.table[xi * na + ai] = val.real();
    }
  }
  return box;
}

BoxN product_box(const BoxN& p, const BoxN& q, const std::vector<MergedParty>& parties) {
  std::vector<bool> used_p(p.shape.n_parties, false), used_q(q.shape.n_parties, false);
  for (const auto& m : parties) {
    if (m.from_p < 0 && m.from_q < 0)
      throw std::invalid_argument("product_box: merged party with no source");
    if (m.from_p >= 0) {
      if (m.from_p >= p.shape.n_parties || used_p[m.from_p])
        throw std::invalid_argument("product_box: invalid or repeated party of p");
      used_p[m.from_p] = true;
    }
    if (m.from_q >= 0) {
      if (m.from_q >= q.shape.n_parties || used_q[m.from_q])
        throw std::invalid_argument("product_box: invalid or repeated party of q");
      used_q[m.from_q] = true;
    }
  }
  for (bool u : used_p)
    if (!u) throw std::invalid_argument("product_box: every party of p must be placed");
  for (bool u : used_q)
    if (!u) throw std::invalid_argument("product_box: every party of q must be placed");

  const int n = static_cast<int>(parties.size());
  BoxShape shape;
  shape.n_parties = n;
  shape.inputs.resize(n);
  shape.outputs.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto& m = parties[i];
    shape.inputs[i] = (m.from_p >= 0 ? p.shape.inputs[m.from_p] : 1) *
                      (m.from_q >= 0 ? q.shape.inputs[m.from_q] : 1);
    shape.outputs[i] = (m.from_p >= 0 ? p.shape.outputs[m.from_p] : 1) *
                       (m.from_q >= 0 ? q.shape.outputs[m.from_q] : 1);
  }

  BoxN box;
  box.shape = shape;
  box.table.assign(shape.size(), 0.0);
  const long na = shape.output_joint();
  std::vector<int> xp(p.shape.n_parties), xq(q.shape.n_parties);
  std::vector<int> ap(p.shape.n_parties), aq(q.shape.n_parties);
  for (long xi = 0; xi < shape.input_joint(); ++xi) {
    const std::vector<int> x = unpack_index(xi, shape.inputs);
    for (int i = 0; i < n; ++i) {
      const auto& m = parties[i];
      const int qi = m.from_q >= 0 ? q.shape.inputs[m.from_q] : 1;
      if (m.from_p >= 0) xp[m.from_p] = x[i] / qi;
      if (m.from_q >= 0) xq[m.from_q] = x[i] % qi;
    }
    for (long ai = 0; ai < na; ++ai) {
      const std::vector<int> a = unpack_index(ai, shape.outputs);
      for (int i = 0; i < n; ++i) {
        const auto& m = parties[i];
        const int qo = m.from_q >= 0 ? q.shape.outputs[m.from_q] : 1;
        if (m.from_p >= 0) ap[m.from_p] = a[i] / qo;
        if (m.from_q >= 0) aq[m.from_q] = a[i] % qo;
      }
      box.table[xi * na + ai] = p.at(ap, xp) * q.at(aq, xq);
    }
  }
  return box;
}

}  // namespace qnet

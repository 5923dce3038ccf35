#include "qnet/tensor.hpp"

#include <algorithm>
#include <stdexcept>

namespace qnet {

long dim_product(const Dims& dims) {
  long n = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("subsystem dimension must be >= 1");
    n *= d;
  }
  return n;
}

long pack_index(const std::vector<int>& digits, const Dims& dims) {
  long idx = 0;
  for (size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
  return idx;
}

std::vector<int> unpack_index(long idx, const Dims& dims) {
  std::vector<int> digits(dims.size());
  for (size_t k = dims.size(); k-- > 0;) {
    digits[k] = static_cast<int>(idx % dims[k]);
    idx /= dims[k];
  }
  return digits;
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVec kron_vec(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

CMat kron_all(const std::vector<CMat>& ops) {
  if (ops.empty()) return CMat::Identity(1, 1);
  CMat out = ops[0];
  for (size_t k = 1; k < ops.size(); ++k) out = kron(out, ops[k]);
  return out;
}

double max_abs_diff(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const CMat& a, const CMat& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tol;
}

CVec permute_systems(const CVec& psi, const Dims& dims, const std::vector<int>& perm) {
  if (perm.size() != dims.size())
    throw std::invalid_argument("permute_systems: perm size mismatch");
  const long n = dim_product(dims);
  if (psi.size() != n) throw std::invalid_argument("permute_systems: state size mismatch");
  Dims out_dims(perm.size());
  for (size_t k = 0; k < perm.size(); ++k) out_dims[k] = dims[perm[k]];
  CVec out(n);
  std::vector<int> src(dims.size());
  for (long i = 0; i < n; ++i) {
    auto digits = unpack_index(i, out_dims);
    for (size_t k = 0; k < perm.size(); ++k) src[perm[k]] = digits[k];
    out(i) = psi(pack_index(src, dims));
  }
  return out;
}

CMat permute_systems(const CMat& rho, const Dims& dims, const std::vector<int>& perm) {
  const long n = dim_product(dims);
  if (rho.rows() != n || rho.cols() != n)
    throw std::invalid_argument("permute_systems: operator size mismatch");
  Dims out_dims(perm.size());
  for (size_t k = 0; k < perm.size(); ++k) out_dims[k] = dims[perm[k]];
  // row index map is enough; columns use the same map
  std::vector<long> map(n);
  std::vector<int> src(dims.size());
  for (long i = 0; i < n; ++i) {
    auto digits = unpack_index(i, out_dims);
    for (size_t k = 0; k < perm.size(); ++k) src[perm[k]] = digits[k];
    map[i] = pack_index(src, dims);
  }
  CMat out(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) out(i, j) = rho(map[i], map[j]);
  return out;
}

CMat partial_trace(const CMat& rho, const Dims& dims, const std::vector<int>& keep) {
  const long n = dim_product(dims);
  if (rho.rows() != n || rho.cols() != n)
    throw std::invalid_argument("partial_trace: operator size mismatch");
  std::vector<char> kept(dims.size(), 0);
  for (int k : keep) {
    if (k < 0 || k >= static_cast<int>(dims.size()))
      throw std::invalid_argument("partial_trace: keep index out of range");
    kept[k] = 1;
  }
  Dims keep_dims, trace_dims;
  std::vector<int> keep_pos, trace_pos;
  for (size_t k = 0; k < dims.size(); ++k) {
    if (kept[k]) { keep_dims.push_back(dims[k]); keep_pos.push_back(static_cast<int>(k)); }
    else         { trace_dims.push_back(dims[k]); trace_pos.push_back(static_cast<int>(k)); }
  }
  const long nk = dim_product(keep_dims);
  const long nt = dim_product(trace_dims);
  CMat out = CMat::Zero(nk, nk);
  std::vector<int> row(dims.size()), col(dims.size());
  for (long i = 0; i < nk; ++i) {
    auto di = unpack_index(i, keep_dims);
    for (long j = 0; j < nk; ++j) {
      auto dj = unpack_index(j, keep_dims);
      cxd acc = 0;
      for (long t = 0; t < nt; ++t) {
        auto dt = unpack_index(t, trace_dims);
        for (size_t k = 0; k < keep_pos.size(); ++k) { row[keep_pos[k]] = di[k]; col[keep_pos[k]] = dj[k]; }
        for (size_t k = 0; k < trace_pos.size(); ++k) { row[trace_pos[k]] = dt[k]; col[trace_pos[k]] = dt[k]; }
        acc += rho(pack_index(row, dims), pack_index(col, dims));
      }
      out(i, j) = acc;
    }
  }
  return out;
}

CMat partial_transpose(const CMat& rho, const Dims& dims, const std::vector<int>& subset) {
  const long n = dim_product(dims);
  if (rho.rows() != n || rho.cols() != n)
    throw std::invalid_argument("partial_transpose: operator size mismatch");
  std::vector<char> flip(dims.size(), 0);
  for (int k : subset) {
    if (k < 0 || k >= static_cast<int>(dims.size()))
      throw std::invalid_argument("partial_transpose: subset index out of range");
    flip[k] = 1;
  }
  CMat out(n, n);
  for (long i = 0; i < n; ++i) {
    auto di = unpack_index(i, dims);
    for (long j = 0; j < n; ++j) {
      auto dj = unpack_index(j, dims);
      auto ri = di, rj = dj;
      for (size_t k = 0; k < dims.size(); ++k)
        if (flip[k]) std::swap(ri[k], rj[k]);
      out(pack_index(ri, dims), pack_index(rj, dims)) = rho(i, j);
    }
  }
  return out;
}

bool is_hermitian(const CMat& a, double tol) {
  return a.rows() == a.cols() && (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_psd(const CMat& a, double tol) {
  return is_hermitian(a, tol) && min_eigenvalue(a, tol) >= -tol;
}

RVec hermitian_spectrum(const CMat& a, double tol) {
  if (!is_hermitian(a, tol))
    throw std::invalid_argument("hermitian_spectrum: input is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<CMat> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_spectrum: eigensolver failed");
  return es.eigenvalues();  // ascending
}

double min_eigenvalue(const CMat& a, double tol) {
  return hermitian_spectrum(a, tol)(0);
}

CMat sqrt_psd(const CMat& a, double tol) {
  if (!is_hermitian(a, tol))
    throw std::invalid_argument("sqrt_psd: input is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<CMat> es(a);
  if (es.info() != Eigen::Success) throw std::runtime_error("sqrt_psd: eigensolver failed");
  RVec ev = es.eigenvalues();
  if (ev(0) < -tol) throw std::invalid_argument("sqrt_psd: input has a negative eigenvalue");
  RVec root = ev.cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const CMat& rho, const CMat& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw std::invalid_argument("fidelity: shape mismatch");
  CMat root = sqrt_psd(rho);
  CMat inner = root * sigma * root;
  // inner is PSD up to roundoff; clamp tiny negatives before the square root
  Eigen::SelfAdjointEigenSolver<CMat> es(inner, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("fidelity: eigensolver failed");
  double s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return s * s;
}

Schmidt schmidt(const CVec& psi, const Dims& dims, const std::vector<int>& left_set) {
  const long n = dim_product(dims);
  if (psi.size() != n) throw std::invalid_argument("schmidt: state size mismatch");
  if (left_set.empty() || left_set.size() >= dims.size())
    throw std::invalid_argument("schmidt: bipartition must be proper and non-empty");
  std::vector<char> is_left(dims.size(), 0);
  for (int k : left_set) {
    if (k < 0 || k >= static_cast<int>(dims.size()))
      throw std::invalid_argument("schmidt: subsystem index out of range");
    if (is_left[k]) throw std::invalid_argument("schmidt: duplicate subsystem index");
    is_left[k] = 1;
  }
  std::vector<int> perm;
  for (size_t k = 0; k < dims.size(); ++k) if (is_left[k]) perm.push_back(static_cast<int>(k));
  for (size_t k = 0; k < dims.size(); ++k) if (!is_left[k]) perm.push_back(static_cast<int>(k));
  CVec ordered = permute_systems(psi, dims, perm);
  long dl = 1, dr = 1;
  for (size_t k = 0; k < dims.size(); ++k) (is_left[k] ? dl : dr) *= dims[k];
  // psi = sum_ij M(i,j) |i>|j| with j fastest, so the reshape is row-major
  CMat m(dl, dr);
  for (long i = 0; i < dl; ++i)
    for (long j = 0; j < dr; ++j) m(i, j) = ordered(i * dr + j);
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  RVec sv = svd.singularValues();  // non-increasing
  Schmidt out;
  out.coeffs = sv.array().square();
  out.left = svd.matrixU();
  // m = U S V^dag, so the right factors are the conjugated columns of V
  out.right = svd.matrixV().conjugate();
  return out;
}

}  // namespace qnet

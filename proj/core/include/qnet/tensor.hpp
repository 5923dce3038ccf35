#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qnet {

using cxd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Dims = std::vector<int>;

inline constexpr double kDefaultTol = 1e-9;

long dim_product(const Dims& dims);

// Composite indices are row-major over the subsystem list: the first
// subsystem is the slowest digit. All multi-subsystem code in the library
// sticks to this convention, including the serialized formats.
long pack_index(const std::vector<int>& digits, const Dims& dims);
std::vector<int> unpack_index(long idx, const Dims& dims);

CMat kron(const CMat& a, const CMat& b);
CVec kron_vec(const CVec& a, const CVec& b);
CMat kron_all(const std::vector<CMat>& ops);

bool approx_equal(const CMat& a, const CMat& b, double tol);
double max_abs_diff(const CMat& a, const CMat& b);

// Reorders tensor factors. perm[k] = input slot that lands at output slot k,
// so the output dims are dims[perm[0]], dims[perm[1]], ...
CVec permute_systems(const CVec& psi, const Dims& dims, const std::vector<int>& perm);
CMat permute_systems(const CMat& rho, const Dims& dims, const std::vector<int>& perm);

// keep: indices of subsystems that survive, in increasing order of their
// position in dims. Trace-preserving by construction.
CMat partial_trace(const CMat& rho, const Dims& dims, const std::vector<int>& keep);

// Transposes the listed subsystems in place; applying it twice is the identity.
CMat partial_transpose(const CMat& rho, const Dims& dims, const std::vector<int>& subset);

bool is_hermitian(const CMat& a, double tol = kDefaultTol);
bool is_psd(const CMat& a, double tol = kDefaultTol);

// Ascending eigenvalues. Throws std::invalid_argument if the input is not
// Hermitian within tol.
RVec hermitian_spectrum(const CMat& a, double tol = kDefaultTol);
double min_eigenvalue(const CMat& a, double tol = kDefaultTol);

// PSD square root via eigendecomposition; negative ripple below -tol throws,
// smaller ripple is clamped to zero.
CMat sqrt_psd(const CMat& a, double tol = 1e-8);

// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 of two density
// operators.
double fidelity(const CMat& rho, const CMat& sigma);

struct Schmidt {
  RVec coeffs;  // squared Schmidt coefficients, non-increasing, summing to 1
  CMat left;    // orthonormal columns, one per coefficient
  CMat right;
};

// Schmidt decomposition of a pure state across the bipartition
// (left_set | complement). left_set holds subsystem indices into dims.
Schmidt schmidt(const CVec& psi, const Dims& dims, const std::vector<int>& left_set);

}  // namespace qnet

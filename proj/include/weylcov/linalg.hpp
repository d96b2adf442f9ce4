// linalg.hpp — Dense complex matrix foundation: tensor products, partial
// traces, Hermitian eigendecomposition, entropies, seeded random states.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

namespace weylcov {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Complex = std::complex<double>;
using Index = Eigen::Index;

inline constexpr double kPi = 3.14159265358979323846;

// Eigenvalues below this are treated as exact zeros in 0*log(0) terms and
// in support detection (double-precision eigensolver noise floor).
inline constexpr double kEigClip = 1e-12;

// Default validity tolerances for density matrices.
struct Tolerances {
    double hermitian = 1e-10;   // max |A - A'| entry
    double trace = 1e-10;       // |Tr - 1|
    double positivity = 1e-10;  // min eigenvalue >= -positivity
};

// --------------------------- small helpers ----------------------------------

inline double max_abs(const CMat& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline bool all_finite(const CMat& a) {
    return a.allFinite();
}

inline double hermiticity_defect(const CMat& a) {
    return max_abs(a - a.adjoint());
}

// Kronecker product; (a (x) b)(u (x) v) = au (x) bv.
CMat tensor(const CMat& a, const CMat& b);
CVec tensor(const CVec& u, const CVec& v);

// --------------------------- state types ------------------------------------

// Positive unit-trace matrix with declared tensor-factor dimensions.
// The constructor enforces Hermiticity, unit trace and positivity; a
// violation throws std::invalid_argument naming the failed check.
struct DensityMatrix {
    CMat mat;
    std::vector<Index> factors;

    DensityMatrix(CMat m, std::vector<Index> f, const Tolerances& tol = Tolerances{});

    Index dim() const { return mat.rows(); }
};

// Unit vector; norm enforced within 1e-12.
struct PureState {
    CVec vec;

    explicit PureState(CVec v);

    Index dim() const { return vec.size(); }
    CMat projector() const { return vec * vec.adjoint(); }
    DensityMatrix density(std::vector<Index> factors = {}) const;
};

// Reduced state on the kept factor of a two-factor state; trace preserved.
DensityMatrix partial_trace(const DensityMatrix& x, int keep);

// Partial inner product <b| x |b> over the first factor: the dimK x dimK
// block obtained by sandwiching the H factor with the vector b.
CMat conditional_block(const CMat& x, const CVec& b, Index dim_k);

// Maximally entangled state (1/sqrt(d)) sum_j |jj> on d (x) d.
DensityMatrix maximally_entangled(Index d);

// --------------------------- eigendecomposition -----------------------------

struct EigResult {
    RVec values;   // ascending
    CMat vectors;  // unitary, columns are eigenvectors
};

// Hermitian eigendecomposition with a deterministic convention: eigenvalues
// ascending, each eigenvector rotated so its first component of magnitude
// > 1e-8 is real positive.  Input must be Hermitian within 1e-8.
EigResult eig_hermitian(const CMat& a);

// Eigenvalues only (ascending) of a Hermitian matrix; no convention applied.
RVec hermitian_eigenvalues(const CMat& a);

// --------------------------- entropies (nats) -------------------------------

// Shannon entropy -sum p log p of a probability vector, with entries below
// kEigClip contributing zero.
double shannon_entropy(const RVec& p);

// von Neumann entropy of a positive matrix given as raw data (hermitized
// internally); used on hot paths where validity is known by construction.
double entropy_psd(const CMat& rho);

double von_neumann_entropy(const DensityMatrix& rho);

// Umegaki relative entropy Tr(rho log rho) - Tr(rho log tau) evaluated in a
// common eigen-framework; +infinity when the support of rho leaks outside
// the support of tau (eigenvalue threshold kEigClip).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& tau);
double relative_entropy_raw(const CMat& rho, const CMat& tau);

// --------------------------- random states ----------------------------------

class Xoshiro256ss;

// Normalized vector of iid standard complex Gaussians; identical seed gives
// an identical vector bit-for-bit.
PureState haar_random_pure(Index dim, std::uint64_t seed);
CVec haar_random_vector(Index dim, Xoshiro256ss& rng);

// Full-rank random density matrix G G^dag / Tr (Ginibre ensemble).
CMat random_density_raw(Index dim, Xoshiro256ss& rng);

// Haar-distributed random unitary (QR of a Ginibre matrix with the phase
// convention fixed on the diagonal of R).
CMat random_unitary(Index dim, Xoshiro256ss& rng);

}  // namespace weylcov

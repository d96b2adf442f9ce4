#include "weylcov/linalg.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "weylcov/rng.hpp"

namespace weylcov {

// --------------------------- tensor -----------------------------------------

CMat tensor(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    out = Eigen::kroneckerProduct(a, b);
    return out;
}

CVec tensor(const CVec& u, const CVec& v) {
    CVec out(u.size() * v.size());
    out = Eigen::kroneckerProduct(u, v);
    return out;
}

// --------------------------- state types ------------------------------------

DensityMatrix::DensityMatrix(CMat m, std::vector<Index> f, const Tolerances& tol)
    : mat(std::move(m)), factors(std::move(f)) {
    if (mat.rows() != mat.cols())
        throw std::invalid_argument("DensityMatrix: matrix must be square");
    if (!all_finite(mat))
        throw std::invalid_argument("DensityMatrix: non-finite entries");
    if (factors.empty()) factors = {mat.rows()};
    Index prod = 1;
    for (Index d : factors) prod *= d;
    if (prod != mat.rows())
        throw std::invalid_argument("DensityMatrix: factor dimensions do not multiply to the side length");
    const double herm = hermiticity_defect(mat);
    if (herm > tol.hermitian)
        throw std::invalid_argument("DensityMatrix: not Hermitian (defect " + std::to_string(herm) + ")");
    const double tr_err = std::abs(mat.trace() - Complex(1.0, 0.0));
    if (tr_err > tol.trace)
        throw std::invalid_argument("DensityMatrix: trace differs from 1 by " + std::to_string(tr_err));
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (mat + mat.adjoint()), Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -tol.positivity)
        throw std::invalid_argument("DensityMatrix: negative eigenvalue " + std::to_string(min_eig));
}

PureState::PureState(CVec v) : vec(std::move(v)) {
    if (vec.size() == 0) throw std::invalid_argument("PureState: empty vector");
    if (!vec.allFinite()) throw std::invalid_argument("PureState: non-finite entries");
    const double norm_err = std::abs(vec.norm() - 1.0);
    if (norm_err > 1e-12)
        throw std::invalid_argument("PureState: norm differs from 1 by " + std::to_string(norm_err));
}

DensityMatrix PureState::density(std::vector<Index> factors) const {
    if (factors.empty()) factors = {dim()};
    return DensityMatrix(projector(), std::move(factors));
}

DensityMatrix partial_trace(const DensityMatrix& x, int keep) {
    if (x.factors.size() != 2)
        throw std::invalid_argument("partial_trace: state must carry exactly 2 factors");
    if (keep != 0 && keep != 1)
        throw std::invalid_argument("partial_trace: keep must be 0 or 1");
    const Index da = x.factors[0];
    const Index db = x.factors[1];
    const Index dk = (keep == 0) ? da : db;
    CMat out = CMat::Zero(dk, dk);
    if (keep == 0) {
        for (Index i = 0; i < da; ++i)
            for (Index k = 0; k < da; ++k) {
                Complex sum(0.0, 0.0);
                for (Index b = 0; b < db; ++b) sum += x.mat(i * db + b, k * db + b);
                out(i, k) = sum;
            }
    } else {
        for (Index i = 0; i < db; ++i)
            for (Index k = 0; k < db; ++k) {
                Complex sum(0.0, 0.0);
                for (Index a = 0; a < da; ++a) sum += x.mat(a * db + i, a * db + k);
                out(i, k) = sum;
            }
    }
    return DensityMatrix(std::move(out), {dk});
}

CMat conditional_block(const CMat& x, const CVec& b, Index dim_k) {
    const Index d = b.size();
    if (x.rows() != d * dim_k)
        throw std::invalid_argument("conditional_block: dimension mismatch");
    CMat out = CMat::Zero(dim_k, dim_k);
    for (Index r = 0; r < d; ++r) {
        if (std::abs(b(r)) == 0.0) continue;
        for (Index c = 0; c < d; ++c) {
            if (std::abs(b(c)) == 0.0) continue;
            const Complex w = std::conj(b(r)) * b(c);
            out.noalias() += w * x.block(r * dim_k, c * dim_k, dim_k, dim_k);
        }
    }
    return out;
}

DensityMatrix maximally_entangled(Index d) {
    CVec psi = CVec::Zero(d * d);
    const double a = 1.0 / std::sqrt(static_cast<double>(d));
    for (Index j = 0; j < d; ++j) psi(j * d + j) = a;
    return DensityMatrix(psi * psi.adjoint(), {d, d});
}

// --------------------------- eigendecomposition -----------------------------

EigResult eig_hermitian(const CMat& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("eig_hermitian: matrix must be square");
    const double herm = hermiticity_defect(a);
    if (herm > 1e-8)
        throw std::invalid_argument("eig_hermitian: input not Hermitian (defect " + std::to_string(herm) + ")");
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (a + a.adjoint()));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eig_hermitian: eigensolver failed");
    EigResult out{es.eigenvalues(), es.eigenvectors()};
    // Phase convention: first component of magnitude > 1e-8 made real positive.
    for (Index j = 0; j < out.vectors.cols(); ++j) {
        for (Index i = 0; i < out.vectors.rows(); ++i) {
            const Complex c = out.vectors(i, j);
            if (std::abs(c) > 1e-8) {
                out.vectors.col(j) *= std::conj(c) / std::abs(c);
                break;
            }
        }
    }
    return out;
}

RVec hermitian_eigenvalues(const CMat& a) {
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (a + a.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

// --------------------------- entropies --------------------------------------

double shannon_entropy(const RVec& p) {
    double s = 0.0;
    for (Index i = 0; i < p.size(); ++i)
        if (p(i) > kEigClip) s -= p(i) * std::log(p(i));
    return s;
}

double entropy_psd(const CMat& rho) {
    return shannon_entropy(hermitian_eigenvalues(rho));
}

double von_neumann_entropy(const DensityMatrix& rho) {
    return entropy_psd(rho.mat);
}

double relative_entropy_raw(const CMat& rho, const CMat& tau) {
    if (rho.rows() != tau.rows() || rho.cols() != tau.cols())
        throw std::invalid_argument("relative_entropy: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<CMat> er(0.5 * (rho + rho.adjoint()));
    Eigen::SelfAdjointEigenSolver<CMat> et(0.5 * (tau + tau.adjoint()));
    const RVec& a = er.eigenvalues();
    const RVec& b = et.eigenvalues();
    // |<u_i|v_j>|^2 overlap table between the two eigenbases.
    const CMat overlap = er.eigenvectors().adjoint() * et.eigenvectors();

    double value = 0.0;
    double mass_outside = 0.0;
    for (Index i = 0; i < a.size(); ++i) {
        if (a(i) <= kEigClip) continue;
        value += a(i) * std::log(a(i));
        double inside = 0.0;
        for (Index j = 0; j < b.size(); ++j) {
            const double w = std::norm(overlap(i, j));
            if (b(j) > kEigClip) {
                value -= a(i) * w * std::log(b(j));
                inside += w;
            }
        }
        mass_outside += a(i) * (1.0 - inside);
    }
    if (mass_outside > 1e-9) return std::numeric_limits<double>::infinity();
    return value;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& tau) {
    return relative_entropy_raw(rho.mat, tau.mat);
}

// --------------------------- random states ----------------------------------

CVec haar_random_vector(Index dim, Xoshiro256ss& rng) {
    if (dim < 1) throw std::invalid_argument("haar_random_vector: dim must be >= 1");
    CVec v(dim);
    for (Index i = 0; i < dim; ++i) {
        const double re = rng.gaussian();
        const double im = rng.gaussian();
        v(i) = Complex(re, im);
    }
    v /= v.norm();
    return v;
}

PureState haar_random_pure(Index dim, std::uint64_t seed) {
    Xoshiro256ss rng(seed);
    return PureState(haar_random_vector(dim, rng));
}

CMat random_density_raw(Index dim, Xoshiro256ss& rng) {
    CMat g(dim, dim);
    for (Index i = 0; i < dim; ++i)
        for (Index j = 0; j < dim; ++j) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
    CMat rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

CMat random_unitary(Index dim, Xoshiro256ss& rng) {
    CMat g(dim, dim);
    for (Index i = 0; i < dim; ++i)
        for (Index j = 0; j < dim; ++j) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ();
    const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < dim; ++j) {
        const Complex rjj = r(j, j);
        if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
    }
    return q;
}

}  // namespace weylcov

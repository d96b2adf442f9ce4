#include "weylcov/weyl.hpp"

#include <cmath>
#include <stdexcept>

namespace weylcov {

namespace {

// exp(2 pi i r / d) with r reduced mod d; r == 0 gives exactly 1.
Complex root_of_unity(Index d, Index r) {
    r %= d;
    if (r < 0) r += d;
    if (r == 0) return Complex(1.0, 0.0);
    return std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / static_cast<double>(d));
}

}  // namespace

// --------------------------- Weyl operators ---------------------------------

WeylIndex::WeylIndex(Index dim, Index m_, Index n_) : d(dim), m(m_), n(n_) {
    if (d < 1) throw std::invalid_argument("WeylIndex: dimension must be >= 1");
    if (m < 0 || m >= d || n < 0 || n >= d)
        throw std::invalid_argument("WeylIndex: indices must satisfy 0 <= m,n < d");
}

CMat weyl_operator(const WeylIndex& idx) {
    const Index d = idx.d;
    CMat u = CMat::Zero(d, d);
    for (Index k = 0; k < d; ++k)
        u((k + idx.m) % d, k) = root_of_unity(d, k * idx.n);
    return u;
}

Complex commutation_phase(const WeylIndex& a, const WeylIndex& b) {
    if (a.d != b.d) throw std::invalid_argument("commutation_phase: mismatched dimensions");
    return root_of_unity(a.d, b.m * a.n - a.m * b.n);
}

// --------------------------- bases ------------------------------------------

Basis::Basis(CMat v, std::string lbl) : vectors(std::move(v)), label(std::move(lbl)) {
    if (vectors.rows() != vectors.cols())
        throw std::invalid_argument("Basis: need exactly dim vectors of matching dimension");
    const CMat gram = vectors.adjoint() * vectors;
    const double defect = max_abs(gram - CMat::Identity(vectors.cols(), vectors.cols()));
    if (defect > 1e-10)
        throw std::invalid_argument("Basis: not orthonormal (defect " + std::to_string(defect) + ")");
}

Basis computational_basis(Index d) {
    return Basis(CMat::Identity(d, d), "computational");
}

Basis fourier_basis(Index d) {
    CMat v(d, d);
    const double a = 1.0 / std::sqrt(static_cast<double>(d));
    for (Index j = 0; j < d; ++j)
        for (Index k = 0; k < d; ++k) v(k, j) = a * root_of_unity(d, j * k);
    return Basis(std::move(v), "fourier");
}

Basis pauli_x_basis() {
    CMat v(2, 2);
    const double a = 1.0 / std::sqrt(2.0);
    v << a, a, a, -a;
    return Basis(std::move(v), "pauli-x");
}

Basis pauli_y_basis() {
    CMat v(2, 2);
    const double a = 1.0 / std::sqrt(2.0);
    v(0, 0) = a;
    v(1, 0) = Complex(0.0, a);
    v(0, 1) = a;
    v(1, 1) = Complex(0.0, -a);
    return Basis(std::move(v), "pauli-y");
}

bool is_prime(Index n) {
    if (n < 2) return false;
    for (Index k = 2; k * k <= n; ++k)
        if (n % k == 0) return false;
    return true;
}

CMat mub_generator(Index d, Index s) {
    if (s < 0 || s > d) throw std::invalid_argument("mub_generator: s out of range");
    if (s == d) return weyl_operator(WeylIndex(d, 1, 0));
    // U_{s,1}^d = exp(i pi s (d-1)) I; the corrective phase restores order d.
    const CMat base = weyl_operator(WeylIndex(d, s % d, 1));
    const Complex theta = std::polar(1.0, -kPi * static_cast<double>(s) * static_cast<double>(d - 1) / static_cast<double>(d));
    return theta * base;
}

MUBFamily mub_family(Index d) {
    if (!is_prime(d))
        throw std::invalid_argument("mub_family: dimension must be prime (got " + std::to_string(d) + ")");
    MUBFamily family{d, {}};
    family.bases.reserve(static_cast<std::size_t>(d + 1));
    for (Index s = 0; s <= d; ++s) {
        const CMat gen = mub_generator(d, s);
        // Powers of the order-d generator; spectral projectors by character sum.
        std::vector<CMat> powers(static_cast<std::size_t>(d));
        powers[0] = CMat::Identity(d, d);
        for (Index k = 1; k < d; ++k) powers[static_cast<std::size_t>(k)] = powers[static_cast<std::size_t>(k - 1)] * gen;

        CMat cols(d, d);
        for (Index j = 0; j < d; ++j) {
            CMat proj = CMat::Zero(d, d);
            for (Index k = 0; k < d; ++k)
                proj += root_of_unity(d, -j * k) * powers[static_cast<std::size_t>(k)];
            proj /= static_cast<double>(d);
            // Rank-1 projector; the basis vector is its dominant eigenvector
            // with the global phase convention of eig_hermitian.
            const EigResult eig = eig_hermitian(proj);
            if (std::abs(eig.values(d - 1) - 1.0) > 1e-10)
                throw std::runtime_error("mub_family: projector not rank one");
            cols.col(j) = eig.vectors.col(d - 1);
        }
        family.bases.emplace_back(std::move(cols), "mub-" + std::to_string(s));
    }
    return family;
}

// --------------------------- commutative group ------------------------------

CMat group_element(const Basis& basis, const RVec& phases) {
    if (phases.size() != basis.dim())
        throw std::invalid_argument("group_element: phases length must equal the dimension");
    const Index d = basis.dim();
    CMat u = CMat::Zero(d, d);
    for (Index j = 0; j < d; ++j) {
        const CVec b = basis.col(j);
        u += std::polar(1.0, phases(j)) * (b * b.adjoint());
    }
    return u;
}

CMat GroupElement::matrix() const {
    return group_element(basis, phases);
}

CVec expand_in_shift_algebra(const CMat& w, const Basis& fourier) {
    const Index d = fourier.dim();
    if (w.rows() != d || w.cols() != d)
        throw std::invalid_argument("expand_in_shift_algebra: dimension mismatch");
    const CMat in_basis = fourier.vectors.adjoint() * w * fourier.vectors;
    CMat off = in_basis;
    off.diagonal().setZero();
    const double off_norm = max_abs(off);
    if (off_norm > 1e-10)
        throw std::invalid_argument("expand_in_shift_algebra: w is not diagonal in the given basis (off-diagonal "
                                    + std::to_string(off_norm) + ")");
    // The shifts are Hilbert-Schmidt orthogonal, Tr(U_{m,0}' U_{m',0}) = d delta,
    // so projecting w onto them is the character transform of its diagonal.
    CVec c = CVec::Zero(d);
    for (Index m = 0; m < d; ++m)
        c(m) = (weyl_operator(WeylIndex(d, m, 0)).adjoint() * w).trace() / static_cast<double>(d);
    // Self-check the reconstruction.
    CMat rec = CMat::Zero(d, d);
    for (Index m = 0; m < d; ++m) rec += c(m) * weyl_operator(WeylIndex(d, m, 0));
    const double res = max_abs(rec - w);
    if (res > 1e-10)
        throw std::runtime_error("expand_in_shift_algebra: reconstruction residual " + std::to_string(res));
    return c;
}

}  // namespace weylcov

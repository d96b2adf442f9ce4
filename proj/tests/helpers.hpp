// Shared oracles for the test suites.  These deliberately avoid the library
// implementations they check: naive index loops instead of Eigen kernels.

#pragma once

#include <cmath>
#include <complex>

#include "weylcov/linalg.hpp"
#include "weylcov/rng.hpp"

namespace testutil {

using weylcov::CMat;
using weylcov::Complex;
using weylcov::CVec;
using weylcov::Index;

// Elementwise Kronecker product.
inline CMat naive_kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            for (Index k = 0; k < b.rows(); ++k)
                for (Index l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

// Trace by plain summation.
inline Complex naive_trace(const CMat& a) {
    Complex t(0.0, 0.0);
    for (Index i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

inline CMat random_hermitian(Index dim, weylcov::Xoshiro256ss& rng) {
    CMat g(dim, dim);
    for (Index i = 0; i < dim; ++i)
        for (Index j = 0; j < dim; ++j) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
    return 0.5 * (g + g.adjoint());
}

// Scalar evaluation of -sum p log p, the entropy oracle.
inline double scalar_entropy(std::initializer_list<double> probs) {
    double s = 0.0;
    for (double p : probs)
        if (p > 0.0) s -= p * std::log(p);
    return s;
}

}  // namespace testutil

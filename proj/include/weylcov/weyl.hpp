// weyl.hpp — Discrete Weyl operators, commutation phases, mutually unbiased
// bases for prime dimension, maximum commutative group elements, and
// expansion in the shift algebra.

#pragma once

#include <string>
#include <vector>

#include "weylcov/linalg.hpp"

namespace weylcov {

// --------------------------- Weyl operators ---------------------------------

struct WeylIndex {
    Index d;
    Index m;
    Index n;

    WeylIndex(Index dim, Index m_, Index n_);
};

// U_{m,n} = sum_k exp(2 pi i k n / d) |k+m mod d><k|  (shift then phase).
CMat weyl_operator(const WeylIndex& idx);

// Phase c with U_a U_b = c U_b U_a, i.e. exp(2 pi i (m'n - mn') / d) for
// a = (m,n), b = (m',n').  Throws on mismatched dimension.
Complex commutation_phase(const WeylIndex& a, const WeylIndex& b);

// --------------------------- bases ------------------------------------------

// Orthonormal basis stored as matrix columns; pairwise inner products are
// checked to be delta within 1e-10 on construction.
struct Basis {
    CMat vectors;
    std::string label;

    Basis(CMat v, std::string lbl = "");

    Index dim() const { return vectors.rows(); }
    CVec col(Index j) const { return vectors.col(j); }
};

Basis computational_basis(Index d);
// Fourier basis f_j = (1/sqrt d) sum_k exp(2 pi i j k / d) |k>.
Basis fourier_basis(Index d);
// Eigenbases of sigma_x / sigma_y (d = 2), columns ordered (+, -).
Basis pauli_x_basis();
Basis pauli_y_basis();

// d+1 mutually unbiased bases for prime d, indexed s = 0..d.  Basis s < d is
// the joint eigenbasis of the commuting family {U_{sk mod d, k}}_k, basis d
// the eigenbasis of {U_{k,0}} (the Fourier basis).  e_j^s carries eigenvalue
// exp(2 pi i j / d) of the phase-fixed generator of family s.
struct MUBFamily {
    Index d;
    std::vector<Basis> bases;  // size d + 1

    const Basis& basis(Index s) const { return bases.at(static_cast<std::size_t>(s)); }
};

bool is_prime(Index n);

// Throws std::invalid_argument naming the primality requirement when d is
// not prime.
MUBFamily mub_family(Index d);

// Generator of MUB family s with exact order d: the unit-phase multiple of
// U_{s,1} (s < d) or U_{1,0} (s = d) whose d-th power is the identity.
CMat mub_generator(Index d, Index s);

// --------------------------- commutative group ------------------------------

// Element sum_j exp(i phi_j) |e_j><e_j| of the maximum commutative group
// over a basis.
struct GroupElement {
    Basis basis;
    RVec phases;

    CMat matrix() const;
};

// Throws on phases length mismatch.
CMat group_element(const Basis& basis, const RVec& phases);

// Coefficients c with w = sum_m c_m U_{m,0}, obtained by the character
// transform of the diagonal of w in the given Fourier basis.  Rejects w
// that is not diagonal in that basis within 1e-10.
CVec expand_in_shift_algebra(const CMat& w, const Basis& fourier);

}  // namespace weylcov

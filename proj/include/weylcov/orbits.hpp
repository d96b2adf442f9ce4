// orbits.hpp — Constructive solvers for making states unbiased in a
// complementary basis with maximum-commutative-group elements, marginal
// balancing for qubits, and admissible-state sampling.

#pragma once

#include "weylcov/linalg.hpp"
#include "weylcov/weyl.hpp"

namespace weylcov {

// Phases returned by the orbit solvers.  Every solution is re-verified by
// direct substitution before return; `residual` stores the worst deviation
// of the verified postcondition and `feasible` whether it met tolerance.
struct PhaseSolution {
    RVec phases;
    double residual;
    bool feasible;
};

// Given a, b with |a|^2 + |b|^2 = 1, phases (phi, psi, alpha) with
// e^{i phi} a + e^{i psi} b = 1 and e^{i phi} a - e^{i psi} b = e^{i alpha}.
PhaseSolution qubit_unbias_phases(Complex a, Complex b);

// Strict triangle inequalities on the pairwise coordinate-modulus products
// (slack 1e-14; degenerate triangles accepted).
bool triangle_condition(const Eigen::Vector3cd& alpha);

// Given unit alpha satisfying the triangle condition, phases phi_j with
// |sum_j e^{i(phi_j + 2 pi j k / 3)} alpha_j| = 1 for k = 0, 1, 2.
// Infeasible coordinates give feasible = false, not an exception.
PhaseSolution qutrit_unbias_phases(const Eigen::Vector3cd& alpha);

struct UnbiasResult {
    GroupElement element;
    double residual;  // worst | |<f_k|Ug>| - 1/sqrt(d) |
    bool feasible;
};

// Finds U diagonal in `source` with |<f_j|Ug>| = 1/sqrt(d) for every vector
// of `target`, where (source, target) are mutually unbiased.  Always
// feasible for d = 2; for d = 3 the triangle condition on the source
// coordinates is required.  Dimensions above 3 are unsupported.
UnbiasResult unbias_state(const PureState& g, const Basis& source, const Basis& target);

// Rotation about the given Bloch axis ('x' or 'y'), diagonal in that axis
// eigenbasis, zeroing the complementary Bloch component (y for axis x, x for
// axis y) of the state.  Closed form; total.
GroupElement balance_marginal_qubit(const DensityMatrix& rho, char axis);

// Bipartite state whose H-marginal has uniform diagonal in `basis`.
struct AdmissibleState {
    DensityMatrix x;
    Basis basis;
    double defect;  // max_j |<e_j| Tr_K(x) |e_j> - 1/d|
};

// Mixes `mix` pure states sum_j (1/sqrt d) |e_j> (x) |v_j> with seeded random
// unit vectors v_j and random mixture weights; the defect is ~1e-16 by
// construction.
AdmissibleState sample_admissible(Index d, Index dim_k, int mix, std::uint64_t seed);
AdmissibleState sample_admissible(const Basis& basis, Index dim_k, int mix, std::uint64_t seed);

}  // namespace weylcov

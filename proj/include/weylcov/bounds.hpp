// bounds.hpp — Verifiers for the entropy lower bounds of phase dampings,
// the depolarizing channel, and the two-Pauli channel, plus a replay of the
// relative-entropy argument behind them.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "weylcov/channels.hpp"
#include "weylcov/linalg.hpp"
#include "weylcov/weyl.hpp"

namespace weylcov {

struct BoundReport {
    double lhs;               // S((Phi (x) Id) x)
    double rhs;               // entropy constant + weighted conditional sum
    double margin;            // lhs - rhs
    double entropy_constant;
    std::vector<double> conditional_entropies;
    std::vector<Basis> bases_used;
    std::vector<CMat> witnesses;  // conjugating unitaries (W, W~) when used
    std::vector<std::pair<std::string, double>> diagnostics;
};

// Phase-damping bound: for x with uniform marginal diagonal in `basis`,
//   S((Phi (x) Id) x) >= -sum lambda log lambda + (1/d) sum_j S(x_j).
// Throws when the marginal-diagonal hypothesis fails beyond 1e-9, naming
// the defect.
BoundReport phase_damping_bound(const RVec& lambda, const Basis& basis, const DensityMatrix& x);

// Replay of the relative-entropy derivation behind phase_damping_bound.
struct DerivationTrace {
    double rel_before;          // S(rho, rho-bar) = sum lambda log lambda + log d
    double rel_after;           // S(Xi_x(rho), Xi_x(rho-bar))
    double entropy_out;         // S((Phi (x) Id) x)
    double entropy_e;           // S(E~(x))
    double fixed_point_defect;  // || E~((Phi (x) Id) x) - E~(x) ||
    double conditional_avg;     // (1/d) sum_j S(x_j)
    double before_formula_defect;  // |rel_before - (sum lambda log lambda + log d)|
    double identity_defect;        // |rel_after - (-entropy_out + entropy_e)|
    double pinch_entropy_defect;   // |entropy_e - log d - conditional_avg|
    double dpi_slack;              // rel_before - rel_after (>= -1e-9)
};

DerivationTrace derivation_trace(const RVec& lambda, const Basis& basis, const DensityMatrix& x,
                                 const DensityMatrix& y);
// Reference state y defaults to the maximally mixed state on K.
DerivationTrace derivation_trace(const RVec& lambda, const Basis& basis, const DensityMatrix& x);

// Depolarizing bound over the d unbiased measurement bases adapted to the
// state; witnesses carry the diagonalizing unitary W.
BoundReport depolarizing_bound(Index d, double p, const DensityMatrix& x);

// Two-Pauli bound (0 < p <= 1/3) following the two-step marginal balancing;
// witnesses carry (W, W~), diagnostics the branch split entropies.
BoundReport two_pauli_bound(double p, const DensityMatrix& rho);

// (relative entropy before, after) under the channel; `after <= before`
// within 1e-9, vacuous when before is infinite.
std::pair<double, double> dpi_check(const Channel& ch, const DensityMatrix& rho,
                                    const DensityMatrix& tau);

}  // namespace weylcov

// channels.hpp — Weyl channels, standard channel constructors, conditional
// expectations, covariance checks, and convex decompositions into conjugated
// phase dampings.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "weylcov/linalg.hpp"
#include "weylcov/weyl.hpp"

namespace weylcov {

// --------------------------- Pauli matrices ---------------------------------

CMat pauli_x();
CMat pauli_y();
CMat pauli_z();

// Bloch vector (Tr rho sigma_a) of a qubit state.
Eigen::Vector3d bloch_vector(const CMat& rho);

// --------------------------- channel ----------------------------------------

// Completely positive trace-preserving map in Kraus form.  Every channel in
// this library is a mixture of unitary conjugations, sum_i w_i U_i rho U_i',
// stored as Kraus operators sqrt(w_i) U_i.
struct Channel {
    Index dim;
    std::vector<CMat> kraus;

    Channel(Index d, std::vector<CMat> k);

    // Kraus sum on raw data (linear; accepts any matrix).
    CMat apply_raw(const CMat& rho) const;
    DensityMatrix apply(const DensityMatrix& rho) const;

    // (Phi (x) Id) on a two-factor state whose first factor matches dim.
    CMat apply_tensor_id_raw(const CMat& x, Index dim_k) const;
    DensityMatrix apply_tensor_id(const DensityMatrix& x) const;

    // Adjoint map sum_i K_i' a K_i.
    CMat apply_adjoint_raw(const CMat& a) const;
};

// Kraus products; acts on the tensor product space.
Channel tensor_channel(const Channel& a, const Channel& b);

// --------------------------- structured channels ----------------------------

// Probability distribution pi_{m,n} over Weyl conjugations.
struct WeylChannel {
    Index d;
    Eigen::MatrixXd pi;  // d x d, row m, column n

    WeylChannel(Index dim, Eigen::MatrixXd p);

    Channel to_channel() const;
};

// Damping supported on one cyclic Weyl subgroup: Kraus family U_{sj mod d, j}
// for s < d, or U_{j,0} for s = d, with weights lambda_j.
struct PhaseDamping {
    Index d;
    RVec lambda;
    Index s;

    PhaseDamping(Index dim, RVec lam, Index subgroup);

    Channel to_channel() const;
    WeylChannel to_weyl() const;
};

// Mixture weights of conjugations by (I, sigma_x, sigma_y, sigma_z).
struct PauliCoeffs {
    double w_i;
    double w_x;
    double w_y;
    double w_z;

    PauliCoeffs(double wi, double wx, double wy, double wz);

    Channel to_channel() const;
    // Literal Weyl indexing: U_{0,1} conjugates like sigma_z and U_{1,1}
    // like sigma_y, so pi_{0,1} = w_z and pi_{1,1} = w_y.
    WeylChannel to_weyl() const;
};

// (1-p) rho + (p/d) Tr(rho) I as a Weyl channel, 0 <= p <= d^2/(d^2-1).
WeylChannel depolarizing(Index d, double p);
// (1-2p) rho + p sigma_y rho sigma_y + p sigma_z rho sigma_z, 0 < p < 1/2.
PauliCoeffs two_pauli(double p);
PhaseDamping phase_damping(Index d, RVec lambda, Index s);
// Phase damping over an arbitrary basis: Kraus sqrt(lambda_j) U^j with
// U = sum_k exp(2 pi i k / d) |e_k><e_k|.
Channel phase_damping_in_basis(const Basis& basis, const RVec& lambda);

// Pinching onto the diagonal algebra of a basis, E(x) = sum_j P_j x P_j.
Channel conditional_expectation(const Basis& basis);

// --------------------------- spectrum and covariance ------------------------

// lambda_{s,t} with Phi(U_{s,t}) = lambda_{s,t} U_{s,t}; the character sum
// over pi is cross-checked against the channel action within 1e-12.
CMat weyl_spectrum(const WeylChannel& ch);

struct CovarianceReport {
    double max_deviation;      // over sampled (group element, state) pairs
    bool spectral_criterion;   // Weyl spectrum constant along cosets of the
                               // group's Weyl line (1e-10)
    CMat lambda;               // measured lambda_{m,n} table
    bool line_found;           // the group basis matched a Weyl subgroup line
};

// Measures ||Phi(U rho U') - U Phi(rho) U'|| over `samples` random group
// elements and states, and evaluates the spectral covariance criterion for
// the maximum commutative group of the given basis.
CovarianceReport check_covariance(const Channel& ch, const Basis& group,
                                  int samples, std::uint64_t seed);

// --------------------------- decompositions ---------------------------------

// Convex mixture of (weight, conjugating unitary, component channel) triples
// targeting a channel.
struct Decomposition {
    struct Term {
        double weight;
        CMat conjugator;
        Channel component;
    };
    std::vector<Term> terms;
    Channel target;
};

// Max-entry deviation between the target and the mixture, evaluated on the
// full matrix-unit basis (a complete check by linearity).
double decomposition_residual(const Decomposition& dec);

struct ShiftCovariantSplit {
    Decomposition decomposition;  // terms (c_m, U_{m,0}, Phi_k) for all k, m
    RVec lambda;                  // damping distribution of each Phi_k
    RVec c;                       // conjugation weights, sum_m c_m = 1/d
};

// Splits a channel with pi_{m,0} = r_m, pi_{m,n>=1} = p_n (prime d) into the
// d phase dampings Phi_k conjugated by shifts.  Throws on shape mismatch or
// when the damping weight lambda_0 = 1 - d sum p_n is not positive.
ShiftCovariantSplit decompose_shift_covariant(const WeylChannel& ch);

struct PauliTransfer {
    PauliCoeffs coeffs;
    double s_x;
    double s_y;
    double s_z;
};

// Bloch scalings and mixture weights of a Pauli-diagonal qubit channel.
// Throws when any off-diagonal transfer entry exceeds 1e-10.
PauliTransfer pauli_transfer(const Channel& ch);

struct MixtureSolution {
    RVec weights;
    double residual;   // max-entry channel-action deviation of the solution
    bool convex;       // no weight below -1e-10
    bool feasible;     // residual <= 1e-10
};

using PauliComponent = std::pair<CMat, PauliCoeffs>;  // (conjugator, channel)

// Solves the 4-equation linear system matching the target Pauli weights with
// a mixture of conjugated components.  Infeasibility is a reported outcome.
MixtureSolution solve_pauli_mixture(const PauliCoeffs& target,
                                    const std::vector<PauliComponent>& components);

// Residual of a mixture with prescribed weights (same norm as above).
double pauli_mixture_residual(const PauliCoeffs& target,
                              const std::vector<PauliComponent>& components,
                              const RVec& weights);

struct TwoPauliSplit {
    Decomposition decomposition;  // verified split into conjugated dampings
    RVec weights;
    double residual;
    // Diagnostic alternative routed through the covariant companion channel
    // with weights ((1-3p)/(1-p), 2p/(1-p)); exact only at p = 1/3.
    RVec companion_weights;
    double companion_residual;
    PauliCoeffs companion;
};

// Convex decomposition of the two-Pauli channel into unitarily conjugated
// phase dampings, 0 < p <= 1/3, plus the diagnostic split whose residual is
// reported alongside.
TwoPauliSplit decompose_two_pauli(double p);

}  // namespace weylcov

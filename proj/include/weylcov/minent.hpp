// minent.hpp — Minimal output entropy estimation and desk-scale additivity
// experiments.

#pragma once

#include <cstdint>
#include <vector>

#include "weylcov/channels.hpp"
#include "weylcov/linalg.hpp"

namespace weylcov {

struct MinEntResult {
    double value;        // best entropy found (nats)
    PureState argmin;    // probe attaining it
    int restarts;
    int converged;       // restarts whose descent met the tolerance
    std::uint64_t seed;
    std::vector<double> audit;  // per-restart final values, restart order
};

// Multi-start local minimization of S(Phi(|psi><psi|)) over pure states,
// parametrized by 2*dim real coordinates with normalization by projection.
// Per-restart seeds derive from the master seed by counting, so a larger
// restart budget extends (never reshuffles) the search.  Descent is
// gradient-based with an Armijo line search; restarts whose output spectrum
// is nearly degenerate finish with a derivative-free polish.
MinEntResult min_output_entropy(const Channel& ch, int restarts, std::uint64_t seed,
                                double tol = 1e-10);

// As above with extra deterministic starting vectors prepended (used to
// inject product guesses into tensor-product searches).
MinEntResult min_output_entropy_seeded(const Channel& ch, int restarts, std::uint64_t seed,
                                       double tol, const std::vector<CVec>& extra_starts);

enum class ChannelKind { Depolarizing, TwoPauli, PhaseDamping };

// Closed-form minimal output entropies used as optimizer oracles:
// depolarizing -> H(1-p+p/d, (d-1) x p/d); two-Pauli (p <= 1/3) -> h(p);
// phase damping -> 0.
double analytic_min_entropy(ChannelKind kind, Index d = 0, double p = 0.0);

struct AdditivityResult {
    double gap;  // min(A (x) B) - min(A) - min(B)
    MinEntResult a;
    MinEntResult b;
    MinEntResult ab;
};

// Desk-scale additivity probe (product dimension <= 16).  A product of the
// single-channel argmins is injected as a restart, so gap <= 1e-6 always;
// gap >= -eps then certifies additivity at tolerance eps.
AdditivityResult additivity_gap(const Channel& a, const Channel& b, int restarts,
                                std::uint64_t seed);

}  // namespace weylcov

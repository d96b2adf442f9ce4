// Acceptance suite: one line per criterion, exit nonzero when any fails.
// Tolerances are pinned here; runtime limits are enforced where stated.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "weylcov/bounds.hpp"
#include "weylcov/channels.hpp"
#include "weylcov/linalg.hpp"
#include "weylcov/minent.hpp"
#include "weylcov/orbits.hpp"
#include "weylcov/rng.hpp"
#include "weylcov/weyl.hpp"

using namespace weylcov;

namespace {

struct Criterion {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " [violated: " << what << "]";
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// 1. Commutation relations for every index pair, d in {2,3,5}, under 5 s.
Criterion weyl_relations() {
    Criterion c;
    const auto start = Clock::now();
    double worst = 0.0;
    for (Index d : {2, 3, 5})
        for (Index m = 0; m < d; ++m)
            for (Index n = 0; n < d; ++n)
                for (Index mp = 0; mp < d; ++mp)
                    for (Index np = 0; np < d; ++np) {
                        const WeylIndex a(d, m, n), b(d, mp, np);
                        const CMat ua = weyl_operator(a), ub = weyl_operator(b);
                        worst = std::max(worst, max_abs(ua * ub - commutation_phase(a, b) * (ub * ua)));
                    }
    const double elapsed = seconds_since(start);
    c.require(worst <= 1e-13, "commutation error " + std::to_string(worst));
    c.require(elapsed < 5.0, "runtime " + std::to_string(elapsed) + " s");
    c.detail << "max error " << worst << ", " << elapsed << " s";
    return c;
}

// 2. MUB families for d in {2,3,5,7}; d = 4 rejected.
Criterion mub_families() {
    Criterion c;
    double overlap_worst = 0.0, completeness_worst = 0.0;
    for (Index d : {2, 3, 5, 7}) {
        const MUBFamily fam = mub_family(d);
        c.require(fam.bases.size() == static_cast<std::size_t>(d + 1), "basis count");
        for (Index s = 0; s <= d; ++s) {
            CMat sum = CMat::Zero(d, d);
            for (Index j = 0; j < d; ++j) {
                const CVec v = fam.basis(s).col(j);
                sum += v * v.adjoint();
            }
            completeness_worst = std::max(completeness_worst, max_abs(sum - CMat::Identity(d, d)));
            for (Index t = s + 1; t <= d; ++t) {
                const CMat overlaps = fam.basis(s).vectors.adjoint() * fam.basis(t).vectors;
                for (Index j = 0; j < d; ++j)
                    for (Index k = 0; k < d; ++k)
                        overlap_worst = std::max(
                            overlap_worst,
                            std::abs(std::norm(overlaps(j, k)) - 1.0 / static_cast<double>(d)));
            }
        }
    }
    c.require(overlap_worst <= 1e-10, "overlap deviation " + std::to_string(overlap_worst));
    c.require(completeness_worst <= 1e-12, "completeness " + std::to_string(completeness_worst));
    bool rejected = false;
    try {
        mub_family(4);
    } catch (const std::invalid_argument&) {
        rejected = true;
    }
    c.require(rejected, "d = 4 must be rejected");
    c.detail << "overlap dev " << overlap_worst << ", completeness " << completeness_worst;
    return c;
}

// 3. Relative-entropy monotonicity over 200 random triples, d in {2,3}.
Criterion dpi_sweep() {
    Criterion c;
    SplitMix64 seeder(2024);
    double worst = -1.0;
    int finite = 0;
    for (int i = 0; i < 200; ++i) {
        Xoshiro256ss rng(seeder.next());
        const Index d = (i % 2 == 0) ? 2 : 3;
        Eigen::MatrixXd pi(d, d);
        for (Index m = 0; m < d; ++m)
            for (Index n = 0; n < d; ++n) pi(m, n) = rng.uniform01_open();
        pi /= pi.sum();
        const Channel ch = WeylChannel(d, pi).to_channel();
        const DensityMatrix rho(random_density_raw(d, rng), {d});
        const DensityMatrix tau(random_density_raw(d, rng), {d});
        const auto [before, after] = dpi_check(ch, rho, tau);
        if (std::isinf(before)) continue;
        ++finite;
        worst = std::max(worst, after - before);
    }
    c.require(worst <= 1e-9, "monotonicity excess " + std::to_string(worst));
    c.require(finite >= 190, "too few finite cases");
    c.detail << finite << " finite cases, worst excess " << worst;
    return c;
}

// 4. Phase-damping bound on >= 200 admissible states plus the equality case
//    and the derivation identities, under 60 s.
Criterion phase_damping_bound_sweep() {
    Criterion c;
    const auto start = Clock::now();
    SplitMix64 seeder(41);
    Xoshiro256ss lambda_rng(99);
    int cases = 0;
    double worst_margin = 1e9, worst_identity = 0.0;
    for (Index d : {2, 3, 5})
        for (Index dim_k : {1, 2, 3})
            for (int rep = 0; rep < 23; ++rep) {
                const AdmissibleState s = sample_admissible(d, dim_k, 1 + (rep % 4), seeder.next());
                RVec lambda(d);
                for (Index j = 0; j < d; ++j) lambda(j) = lambda_rng.uniform01_open();
                lambda /= lambda.sum();
                const BoundReport rep1 = phase_damping_bound(lambda, s.basis, s.x);
                worst_margin = std::min(worst_margin, rep1.margin);
                const DerivationTrace t = derivation_trace(lambda, s.basis, s.x);
                worst_identity = std::max({worst_identity, t.identity_defect, t.pinch_entropy_defect});
                ++cases;
            }
    c.require(cases >= 200, "need at least 200 cases");
    c.require(worst_margin >= -1e-9, "margin " + std::to_string(worst_margin));
    c.require(worst_identity <= 1e-9, "identity defect " + std::to_string(worst_identity));

    // equality case at every dimension
    double worst_eq = 0.0;
    for (Index d : {2, 3, 5}) {
        RVec lambda(d);
        for (Index j = 0; j < d; ++j) lambda(j) = lambda_rng.uniform01_open();
        lambda /= lambda.sum();
        const BoundReport eq = phase_damping_bound(lambda, computational_basis(d), maximally_entangled(d));
        worst_eq = std::max(worst_eq, std::abs(eq.margin));
    }
    c.require(worst_eq <= 1e-9, "equality margin " + std::to_string(worst_eq));

    const double elapsed = seconds_since(start);
    c.require(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s");
    c.detail << cases << " cases, min margin " << worst_margin << ", identity defect " << worst_identity
             << ", equality " << worst_eq << ", " << elapsed << " s";
    return c;
}

// 5. Depolarizing bound: parameter grid sweeps plus the canonical instance.
Criterion depolarizing_bound_sweep() {
    Criterion c;
    double worst_margin = 1e9;
    std::uint64_t seed = 71000;
    for (Index d : {2, 3}) {
        const double pmax = static_cast<double>(d * d) / static_cast<double>(d * d - 1);
        for (double p : {0.1, 0.5, 0.9, pmax})
            for (int i = 0; i < 50; ++i) {
                const PureState psi = haar_random_pure(d * d, seed++);
                const DensityMatrix x(psi.projector(), {d, d});
                worst_margin = std::min(worst_margin, depolarizing_bound(d, p, x).margin);
            }
    }
    c.require(worst_margin >= -1e-9, "margin " + std::to_string(worst_margin));

    const BoundReport canonical = depolarizing_bound(2, 0.5, maximally_entangled(2));
    c.require(std::abs(canonical.lhs - 1.073543) <= 1e-6, "canonical lhs " + std::to_string(canonical.lhs));
    c.require(std::abs(canonical.rhs - 0.562335) <= 1e-6, "canonical rhs " + std::to_string(canonical.rhs));
    c.detail << "400 sweep cases, min margin " << worst_margin << ", canonical margin "
             << canonical.margin;
    return c;
}

// 6. Two-Pauli bound: randomized sweep with counterexample records plus the
//    product-state margin at p = 1/3.
Criterion two_pauli_bound_sweep() {
    Criterion c;
    std::vector<std::string> counterexamples;
    std::uint64_t seed = 6000;
    double worst_margin = 1e9;
    for (double p : {0.05, 0.15, 0.25, 1.0 / 3.0})
        for (int i = 0; i < 100; ++i) {
            const std::uint64_t case_seed = seed++;
            const PureState psi = haar_random_pure(4, case_seed);
            const DensityMatrix rho(psi.projector(), {2, 2});
            const BoundReport rep = two_pauli_bound(p, rho);
            worst_margin = std::min(worst_margin, rep.margin);
            if (rep.margin < -1e-9) {
                std::ostringstream record;
                record << "p=" << p << " seed=" << case_seed << " margin=" << rep.margin;
                counterexamples.push_back(record.str());
            }
        }
    for (const std::string& record : counterexamples) std::fprintf(stderr, "counterexample: %s\n", record.c_str());
    c.require(counterexamples.empty(),
              std::to_string(counterexamples.size()) + " counterexample records (see stderr)");

    CMat y(2, 2);
    y << 0.7, 0.0, 0.0, 0.3;
    const DensityMatrix product(tensor(CMat(0.5 * CMat::Identity(2, 2)), y), {2, 2});
    const BoundReport prod = two_pauli_bound(1.0 / 3.0, product);
    const double expected = std::log(2.0) + (2.0 / 3.0) * std::log(2.0 / 3.0) + (1.0 / 3.0) * std::log(1.0 / 3.0);
    c.require(std::abs(prod.margin - expected) <= 1e-4,
              "product margin " + std::to_string(prod.margin) + " vs " + std::to_string(expected));
    c.detail << "400 sweep cases, min margin " << worst_margin << ", product margin " << prod.margin;
    return c;
}

// 7. Shift-conjugated damping split: random covariant-shaped channels and
//    the worked qubit instance.
Criterion damping_split() {
    Criterion c;
    Xoshiro256ss rng(37);
    double worst = 0.0;
    const std::vector<Index> dims = {2, 3, 5};
    for (int rep = 0; rep < 100; ++rep) {
        const Index d = dims[static_cast<std::size_t>(rep % 3)];
        RVec r(d), p(d);
        for (Index m = 0; m < d; ++m) r(m) = rng.uniform01_open();
        p(0) = 0.0;
        for (Index n = 1; n < d; ++n) p(n) = rng.uniform01_open() / static_cast<double>(2 * d);
        const double total = r.sum() + static_cast<double>(d) * p.tail(d - 1).sum();
        r /= total;
        p /= total;
        Eigen::MatrixXd pi(d, d);
        for (Index m = 0; m < d; ++m) {
            pi(m, 0) = r(m);
            for (Index n = 1; n < d; ++n) pi(m, n) = p(n);
        }
        worst = std::max(worst, decomposition_residual(decompose_shift_covariant(WeylChannel(d, pi)).decomposition));
    }
    c.require(worst <= 1e-12, "reconstruction residual " + std::to_string(worst));

    Eigen::MatrixXd pi(2, 2);
    pi(0, 0) = 0.7;
    pi(1, 0) = 0.1;
    pi(0, 1) = 0.1;
    pi(1, 1) = 0.1;
    const ShiftCovariantSplit worked = decompose_shift_covariant(WeylChannel(2, pi));
    c.require(std::abs(worked.lambda(0) - 0.8) < 1e-14 && std::abs(worked.lambda(1) - 0.2) < 1e-14,
              "worked lambda");
    c.require(std::abs(worked.c(0) - 0.4375) < 1e-14 && std::abs(worked.c(1) - 0.0625) < 1e-14,
              "worked c");
    c.detail << "100 random channels, worst residual " << worst;
    return c;
}

// 8. Mixture solver: exact three-term split, the printed split's residual,
//    and a corrected split across the full parameter range.
Criterion mixture_solver() {
    Criterion c;
    const PauliCoeffs target(0.25, 0.375, 0.0, 0.375);
    const std::vector<PauliComponent> components = {
        {CMat::Identity(2, 2), PauliCoeffs(0.75, 0.25, 0, 0)},
        {pauli_x(), PauliCoeffs(0.75, 0, 0.25, 0)},
        {pauli_z(), PauliCoeffs(0.75, 0, 0.25, 0)},
    };
    const MixtureSolution sol = solve_pauli_mixture(target, components);
    c.require(sol.residual <= 1e-12, "three-term residual " + std::to_string(sol.residual));
    c.require(std::abs(sol.weights(0) - 1.0 / 3.0) <= 1e-12 && std::abs(sol.weights(1) - 0.25) <= 1e-12
                  && std::abs(sol.weights(2) - 5.0 / 12.0) <= 1e-12,
              "three-term weights");

    const TwoPauliSplit printed = decompose_two_pauli(0.2);
    c.require(printed.companion_residual > 1e-2,
              "printed residual " + std::to_string(printed.companion_residual));

    double worst = 0.0;
    for (int i = 1; i <= 30; ++i) {
        const double p = (1.0 / 3.0) * static_cast<double>(i) / 30.0;
        worst = std::max(worst, decompose_two_pauli(p).residual);
    }
    c.require(worst <= 1e-12, "corrected residual " + std::to_string(worst));
    c.detail << "weights (1/3, 1/4, 5/12) recovered, printed residual " << printed.companion_residual
             << ", corrected residual " << worst;
    return c;
}

// 9. Minimal output entropy oracles, 100 restarts each, under 30 s each.
Criterion minent_oracles() {
    Criterion c;
    struct Case {
        Channel channel;
        double expected;
        const char* name;
    };
    const std::vector<Case> cases = {
        {depolarizing(2, 0.5).to_channel(), analytic_min_entropy(ChannelKind::Depolarizing, 2, 0.5),
         "depolarizing(2,0.5)"},
        {depolarizing(3, 0.3).to_channel(), analytic_min_entropy(ChannelKind::Depolarizing, 3, 0.3),
         "depolarizing(3,0.3)"},
        {two_pauli(0.25).to_channel(), analytic_min_entropy(ChannelKind::TwoPauli, 0, 0.25),
         "two_pauli(0.25)"},
    };
    for (const Case& instance : cases) {
        const auto start = Clock::now();
        const MinEntResult res = min_output_entropy(instance.channel, 100, 1);
        const double elapsed = seconds_since(start);
        c.require(std::abs(res.value - instance.expected) <= 1e-6,
                  std::string(instance.name) + " value " + std::to_string(res.value));
        c.require(elapsed < 30.0, std::string(instance.name) + " runtime " + std::to_string(elapsed));
        c.detail << instance.name << " -> " << res.value << " (" << elapsed << " s)  ";
    }
    return c;
}

// 10. Additivity probes with 200 restarts, under 5 minutes each.
Criterion additivity_probes() {
    Criterion c;
    struct Probe {
        Channel channel;
        const char* name;
    };
    const std::vector<Probe> probes = {
        {depolarizing(2, 0.5).to_channel(), "depolarizing(2,0.5)"},
        {two_pauli(0.25).to_channel(), "two_pauli(0.25)"},
    };
    for (const Probe& probe : probes) {
        const auto start = Clock::now();
        const AdditivityResult res = additivity_gap(probe.channel, probe.channel, 200, 7);
        const double elapsed = seconds_since(start);
        c.require(res.gap <= 1e-6 && res.gap >= -1e-4,
                  std::string(probe.name) + " gap " + std::to_string(res.gap));
        c.require(elapsed < 300.0, std::string(probe.name) + " runtime " + std::to_string(elapsed));
        c.detail << probe.name << " gap " << res.gap << " (" << elapsed << " s)  ";
    }
    return c;
}

// 11. Orbit solvers: qubit always, qutrit under the triangle condition, and
//     the degenerate direction reported infeasible.
Criterion orbit_solvers() {
    Criterion c;
    const MUBFamily fam2 = mub_family(2);
    double worst2 = 0.0;
    for (int i = 0; i < 100; ++i) {
        const PureState psi = haar_random_pure(2, 11000 + static_cast<std::uint64_t>(i));
        const UnbiasResult res = unbias_state(psi, fam2.basis(0), fam2.basis(2));
        if (!res.feasible) c.require(false, "qubit case infeasible");
        worst2 = std::max(worst2, res.residual);
    }
    c.require(worst2 <= 1e-10, "qubit overlap residual " + std::to_string(worst2));

    const MUBFamily fam3 = mub_family(3);
    double worst3 = 0.0;
    int done = 0;
    std::uint64_t seed = 12000;
    while (done < 100) {
        const PureState psi = haar_random_pure(3, seed++);
        const CVec coords = fam3.basis(0).vectors.adjoint() * psi.vec;
        if (!triangle_condition(Eigen::Vector3cd(coords(0), coords(1), coords(2)))) continue;
        const UnbiasResult res = unbias_state(psi, fam3.basis(0), fam3.basis(3));
        if (!res.feasible) c.require(false, "qutrit case infeasible");
        worst3 = std::max(worst3, res.residual);
        ++done;
    }
    c.require(worst3 <= 1e-10, "qutrit overlap residual " + std::to_string(worst3));

    const double s2 = 1.0 / std::sqrt(2.0);
    const CVec degenerate = fam3.basis(0).vectors * Eigen::Vector3cd(s2, s2, 0.0);
    const UnbiasResult bad = unbias_state(PureState(degenerate), fam3.basis(0), fam3.basis(3));
    c.require(!bad.feasible, "degenerate direction must be infeasible");
    c.detail << "qubit residual " << worst2 << ", qutrit residual " << worst3;
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Criterion()>>> criteria = {
        {"weyl-relations", weyl_relations},
        {"mub-families", mub_families},
        {"dpi-sweep", dpi_sweep},
        {"phase-damping-bound", phase_damping_bound_sweep},
        {"depolarizing-bound", depolarizing_bound_sweep},
        {"two-pauli-bound", two_pauli_bound_sweep},
        {"damping-split", damping_split},
        {"mixture-solver", mixture_solver},
        {"minimal-entropy", minent_oracles},
        {"additivity", additivity_probes},
        {"orbit-solvers", orbit_solvers},
    };

    int failures = 0;
    int index = 0;
    for (const auto& [name, runner] : criteria) {
        ++index;
        Criterion result;
        try {
            result = runner();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail << "exception: " << e.what();
        }
        if (!result.ok) ++failures;
        std::printf("[%s] %02d %-20s %s\n", result.ok ? "PASS" : "FAIL", index, name.c_str(),
                    result.detail.str().c_str());
        std::fflush(stdout);
    }
    if (failures > 0) std::printf("%d of %d criteria failed\n", failures, index);
    else std::printf("all %d criteria passed\n", index);
    return failures == 0 ? 0 : 1;
}

#include "weylcov/minent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "weylcov/rng.hpp"

namespace weylcov {

namespace {

constexpr int kMaxIters = 800;
constexpr double kDegenerateGap = 1e-8;

struct Objective {
    const Channel& ch;

    double value(const CVec& z) const {
        const CVec u = z / z.norm();
        return entropy_psd(ch.apply_raw(u * u.adjoint()));
    }

    // Output state and spectrum alongside the value (for gap inspection).
    double value_with_spectrum(const CVec& z, RVec& spectrum) const {
        const CVec u = z / z.norm();
        const CMat sigma = ch.apply_raw(u * u.adjoint());
        spectrum = hermitian_eigenvalues(sigma);
        return shannon_entropy(spectrum);
    }

    // Euclidean gradient of S(Phi(zz'/|z|^2)) with respect to (Re z, Im z),
    // packed as a complex vector g with dS = 2 Re <g, dz>.
    CVec gradient(const CVec& z) const {
        const double nrm2 = z.squaredNorm();
        const CVec u = z / std::sqrt(nrm2);
        const CMat sigma = ch.apply_raw(u * u.adjoint());
        const EigResult eig = eig_hermitian(sigma);
        RVec logs(eig.values.size());
        for (Index i = 0; i < eig.values.size(); ++i)
            logs(i) = std::log(std::max(eig.values(i), 1e-15)) + 1.0;
        const CMat log_term = eig.vectors * logs.asDiagonal() * eig.vectors.adjoint();
        const CMat m = ch.apply_adjoint_raw(log_term);  // Hermitian
        const CVec mz = m * z;
        const Complex rayleigh = z.dot(mz) / nrm2;  // z' M z / |z|^2
        return -(mz - rayleigh.real() * z) / nrm2;
    }
};

struct RestartOutcome {
    CVec z;
    double value;
    bool converged;
};

RestartOutcome descend(const Objective& obj, CVec z, double tol) {
    z /= z.norm();
    double f = obj.value(z);
    double step = 0.1;
    bool converged = false;
    int stable = 0;

    for (int it = 0; it < kMaxIters; ++it) {
        const CVec g = obj.gradient(z);
        const double g2 = g.squaredNorm();
        if (g2 < 1e-24) {
            converged = true;
            break;
        }
        // Armijo backtracking on the projected step.
        bool accepted = false;
        double f_new = f;
        CVec z_new = z;
        for (int ls = 0; ls < 40; ++ls) {
            CVec cand = z - step * g;
            cand /= cand.norm();
            const double f_cand = obj.value(cand);
            if (f_cand <= f - 1e-4 * step * g2) {
                z_new = std::move(cand);
                f_new = f_cand;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            converged = true;  // no descent direction at line-search resolution
            break;
        }
        const double delta = f - f_new;
        z = std::move(z_new);
        f = f_new;
        step = std::min(step * 1.5, 10.0);
        if (delta < tol) {
            if (++stable >= 3) {
                converged = true;
                break;
            }
        } else {
            stable = 0;
        }
    }
    return {std::move(z), f, converged};
}

// Coordinate pattern search; used to finish restarts whose output spectrum
// is nearly degenerate, where the clamped log gradient loses accuracy.
void polish(const Objective& obj, CVec& z, double& f) {
    const Index n = z.size();
    double delta = 1e-3;
    while (delta >= 1e-9) {
        bool improved = false;
        for (Index i = 0; i < n; ++i) {
            for (const Complex dir : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
                CVec cand = z;
                cand(i) += delta * dir;
                cand /= cand.norm();
                const double f_cand = obj.value(cand);
                if (f_cand < f - 1e-15) {
                    z = std::move(cand);
                    f = f_cand;
                    improved = true;
                }
            }
        }
        if (!improved) delta *= 0.25;
    }
}

}  // namespace

MinEntResult min_output_entropy_seeded(const Channel& ch, int restarts, std::uint64_t seed,
                                       double tol, const std::vector<CVec>& extra_starts) {
    if (restarts < 1) throw std::invalid_argument("min_output_entropy: restarts must be >= 1");

    SplitMix64 seeder(seed);
    std::vector<CVec> starts;
    starts.reserve(extra_starts.size() + static_cast<std::size_t>(restarts));
    for (const CVec& s : extra_starts) starts.push_back(s / s.norm());
    for (int i = 0; i < restarts; ++i) {
        Xoshiro256ss rng(seeder.next());
        starts.push_back(haar_random_vector(ch.dim, rng));
    }

    const Objective obj{ch};
    MinEntResult result{std::numeric_limits<double>::infinity(),
                        PureState(CVec::Unit(ch.dim, 0)),
                        restarts,
                        0,
                        seed,
                        {}};
    result.audit.reserve(starts.size());

    for (const CVec& start : starts) {
        RestartOutcome run = descend(obj, start, tol);
        RVec spectrum;
        run.value = obj.value_with_spectrum(run.z, spectrum);
        double min_gap = std::numeric_limits<double>::infinity();
        for (Index i = 0; i + 1 < spectrum.size(); ++i)
            min_gap = std::min(min_gap, spectrum(i + 1) - spectrum(i));
        if (spectrum.size() > 1 && min_gap < kDegenerateGap) polish(obj, run.z, run.value);

        result.audit.push_back(run.value);
        if (run.converged) ++result.converged;
        if (run.value < result.value) {  // strict: ties keep the earliest restart
            result.value = run.value;
            result.argmin = PureState(run.z / run.z.norm());
        }
    }
    if (result.value < 0.0) result.value = std::max(result.value, -1e-12);
    return result;
}

MinEntResult min_output_entropy(const Channel& ch, int restarts, std::uint64_t seed, double tol) {
    return min_output_entropy_seeded(ch, restarts, seed, tol, {});
}

double analytic_min_entropy(ChannelKind kind, Index d, double p) {
    switch (kind) {
        case ChannelKind::Depolarizing: {
            if (d < 2) throw std::invalid_argument("analytic_min_entropy: depolarizing needs d >= 2");
            RVec spec(d);
            spec(0) = 1.0 - p + p / static_cast<double>(d);
            for (Index i = 1; i < d; ++i) spec(i) = p / static_cast<double>(d);
            return shannon_entropy(spec);
        }
        case ChannelKind::TwoPauli: {
            if (p <= 0.0 || p > 1.0 / 3.0 + 1e-15)
                throw std::invalid_argument("analytic_min_entropy: two-Pauli form holds for 0 < p <= 1/3");
            RVec spec(2);
            spec << 1.0 - p, p;
            return shannon_entropy(spec);
        }
        case ChannelKind::PhaseDamping:
            return 0.0;  // basis vectors are fixed points up to phase
    }
    throw std::invalid_argument("analytic_min_entropy: unsupported kind");
}

AdditivityResult additivity_gap(const Channel& a, const Channel& b, int restarts,
                                std::uint64_t seed) {
    if (a.dim * b.dim > 16)
        throw std::invalid_argument("additivity_gap: product dimension exceeds the desk-scale cap of 16");

    SplitMix64 seeder(seed);
    const std::uint64_t seed_a = seeder.next();
    const std::uint64_t seed_b = seeder.next();
    const std::uint64_t seed_ab = seeder.next();

    AdditivityResult out{0.0,
                         min_output_entropy(a, restarts, seed_a),
                         min_output_entropy(b, restarts, seed_b),
                         MinEntResult{0.0, PureState(CVec::Unit(1, 0)), 0, 0, 0, {}}};

    const Channel product = tensor_channel(a, b);
    const CVec injected = tensor(out.a.argmin.vec, out.b.argmin.vec);
    out.ab = min_output_entropy_seeded(product, restarts, seed_ab, 1e-10, {injected});
    out.gap = out.ab.value - out.a.value - out.b.value;
    return out;
}

}  // namespace weylcov

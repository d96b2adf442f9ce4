#include "weylcov/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "weylcov/channels.hpp"
#include "weylcov/rng.hpp"

namespace weylcov {

namespace {

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace

PhaseSolution qubit_unbias_phases(Complex a, Complex b) {
    const double norm = std::norm(a) + std::norm(b);
    if (std::abs(norm - 1.0) > 1e-12)
        throw std::invalid_argument("qubit_unbias_phases: |a|^2 + |b|^2 must be 1");

    // cos(phi~) = sin(psi~) = |a|, -sin(phi~) = cos(psi~) = |b|.
    const double mod_a = std::abs(a);
    const double mod_b = std::abs(b);
    const double phi_t = -std::asin(clamp_unit(mod_b));
    const double psi_t = std::atan2(mod_a, mod_b);
    const double phi = phi_t - std::arg(a);
    const double psi = psi_t - std::arg(b);
    const double alpha = 2.0 * phi_t;

    const Complex sum = std::polar(1.0, phi) * a + std::polar(1.0, psi) * b;
    const Complex diff = std::polar(1.0, phi) * a - std::polar(1.0, psi) * b;
    const double residual = std::max({std::abs(sum - Complex(1.0, 0.0)),
                                      std::abs(std::abs(diff) - 1.0),
                                      std::abs(diff - std::polar(1.0, alpha))});
    RVec phases(3);
    phases << phi, psi, alpha;
    return PhaseSolution{std::move(phases), residual, residual <= 1e-12};
}

bool triangle_condition(const Eigen::Vector3cd& alpha) {
    const double s01 = std::abs(alpha(0)) * std::abs(alpha(1));
    const double s02 = std::abs(alpha(0)) * std::abs(alpha(2));
    const double s12 = std::abs(alpha(1)) * std::abs(alpha(2));
    const double slack = -1e-14;
    return (s01 + s02 - s12 > slack) && (s01 + s12 - s02 > slack) && (s02 + s12 - s01 > slack);
}

PhaseSolution qutrit_unbias_phases(const Eigen::Vector3cd& alpha) {
    const double norm = alpha.squaredNorm();
    if (std::abs(norm - 1.0) > 1e-12)
        throw std::invalid_argument("qutrit_unbias_phases: coordinates must have unit norm");

    auto verify = [&alpha](const RVec& phases) {
        double worst = 0.0;
        for (int k = 0; k < 3; ++k) {
            Complex acc(0.0, 0.0);
            for (int j = 0; j < 3; ++j)
                acc += std::polar(1.0, phases(j) + 2.0 * kPi * j * k / 3.0) * alpha(j);
            worst = std::max(worst, std::abs(std::abs(acc) - 1.0));
        }
        return worst;
    };

    if (!triangle_condition(alpha)) {
        // One dominant coordinate (both cross products vanish) is already on
        // the unit circle after the trivial phase choice; anything else has
        // no solution here.
        RVec zero = RVec::Zero(3);
        for (int j = 0; j < 3; ++j) zero(j) = -std::arg(alpha(j) == Complex(0.0, 0.0) ? Complex(1.0, 0.0) : alpha(j));
        const double residual = verify(zero);
        return PhaseSolution{std::move(zero), residual, residual <= 1e-10};
    }

    // Triangle with sides (|a0 a1|, |a0 a2|, |a1 a2|); gamma_j is the angle
    // opposite side j (law of cosines, clamped for degenerate triangles).
    const double s01 = std::abs(alpha(0)) * std::abs(alpha(1));
    const double s02 = std::abs(alpha(0)) * std::abs(alpha(2));
    const double s12 = std::abs(alpha(1)) * std::abs(alpha(2));
    if (std::max({s01, s02, s12}) < 1e-30) {
        // All cross products vanish: a single nonzero coordinate, trivially
        // unbiased after absorbing its argument.
        RVec zero(3);
        for (int j = 0; j < 3; ++j) zero(j) = -std::arg(alpha(j) == Complex(0.0, 0.0) ? Complex(1.0, 0.0) : alpha(j));
        const double residual = verify(zero);
        return PhaseSolution{std::move(zero), residual, residual <= 1e-10};
    }
    auto angle = [](double opp, double adj1, double adj2) {
        return std::acos(clamp_unit((adj1 * adj1 + adj2 * adj2 - opp * opp) / (2.0 * adj1 * adj2)));
    };
    const double g2 = angle(s02, s01, s12);  // opposite |a0 a2|
    const double g3 = angle(s12, s01, s02);  // opposite |a1 a2|

    RVec phases(3);
    phases(0) = 0.0;
    phases(1) = 2.0 * kPi / 3.0 + g2 / 3.0 - g3 / 3.0;
    phases(2) = kPi / 3.0 - g2 / 3.0 - 2.0 * g3 / 3.0;
    for (int j = 0; j < 3; ++j) phases(j) -= std::arg(alpha(j) == Complex(0.0, 0.0) ? Complex(1.0, 0.0) : alpha(j));

    const double residual = verify(phases);
    return PhaseSolution{std::move(phases), residual, residual <= 1e-10};
}

namespace {

// Reduce the transition matrix M_{kj} = <f_k|b_j> (all moduli 1/sqrt d) to
// character rows: returns per-column phases delta_j such that
// M_{kj} e^{-i delta_j} sqrt(d) = e^{i eps_k} w^{a_k j} for integers a_k.
// Returns nullopt when the pair has no such form.
std::optional<RVec> fourier_column_phases(const CMat& m, Index d) {
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
    for (Index k = 0; k < d; ++k)
        for (Index j = 0; j < d; ++j)
            if (std::abs(std::abs(m(k, j)) - inv_sqrt_d) > 1e-9) return std::nullopt;

    RVec delta(d);
    for (Index j = 0; j < d; ++j) delta(j) = std::arg(m(0, j));
    for (Index k = 0; k < d; ++k) {
        const double eps_k = std::arg(m(k, 0) * std::polar(1.0, -delta(0)));
        const double step = std::arg(m(k, 1) * std::polar(1.0, -delta(1) - eps_k));
        const auto a_k = static_cast<Index>(std::llround(step * static_cast<double>(d) / (2.0 * kPi)));
        for (Index j = 0; j < d; ++j) {
            const Complex expected =
                inv_sqrt_d * std::polar(1.0, delta(j) + eps_k + 2.0 * kPi * static_cast<double>(a_k * j) / static_cast<double>(d));
            if (std::abs(m(k, j) - expected) > 1e-8) return std::nullopt;
        }
    }
    return delta;
}

}  // namespace

UnbiasResult unbias_state(const PureState& g, const Basis& source, const Basis& target) {
    const Index d = source.dim();
    if (target.dim() != d || g.dim() != d)
        throw std::invalid_argument("unbias_state: dimension mismatch");
    if (d != 2 && d != 3)
        throw std::invalid_argument("unbias_state: only dimensions 2 and 3 are supported");

    const CMat m = target.vectors.adjoint() * source.vectors;  // M_{kj} = <f_k|b_j>
    const std::optional<RVec> delta = fourier_column_phases(m, d);
    if (!delta)
        throw std::invalid_argument("unbias_state: bases are not a mutually unbiased Fourier pair");

    const CVec coords = source.vectors.adjoint() * g.vec;
    PhaseSolution sol{RVec(), 1.0, false};
    if (d == 2) {
        const Complex a = std::polar(1.0, (*delta)(0)) * coords(0);
        const Complex b = std::polar(1.0, (*delta)(1)) * coords(1);
        sol = qubit_unbias_phases(a, b);
    } else {
        Eigen::Vector3cd alpha;
        for (int j = 0; j < 3; ++j) alpha(j) = std::polar(1.0, (*delta)(j)) * coords(j);
        sol = qutrit_unbias_phases(alpha);
    }

    // The column phases delta are already absorbed into the solver input, so
    // the group element carries the solver phases verbatim.
    GroupElement element{source, RVec::Zero(d)};
    if (sol.feasible)
        for (Index j = 0; j < d; ++j) element.phases(j) = sol.phases(j);

    // Verify the actual overlaps against the target basis.
    const CMat u = element.matrix();
    const CVec image = u * g.vec;
    double residual = 0.0;
    for (Index k = 0; k < d; ++k) {
        const double overlap = std::abs(target.col(k).dot(image));
        residual = std::max(residual, std::abs(overlap - 1.0 / std::sqrt(static_cast<double>(d))));
    }
    return UnbiasResult{std::move(element), residual, sol.feasible && residual <= 1e-10};
}

GroupElement balance_marginal_qubit(const DensityMatrix& rho, char axis) {
    if (rho.dim() != 2) throw std::invalid_argument("balance_marginal_qubit: qubit states only");
    if (axis != 'x' && axis != 'y')
        throw std::invalid_argument("balance_marginal_qubit: axis must be 'x' or 'y'");
    const Eigen::Vector3d r = bloch_vector(rho.mat);

    // A rotation about the axis by angle t maps the complementary component
    // c to cos(t) c - sin(t) z, zeroed at t = atan2(c, z).
    double t;
    Basis basis = (axis == 'x') ? pauli_x_basis() : pauli_y_basis();
    if (axis == 'x')
        t = std::atan2(r(1), r(2));  // kill the y component
    else
        t = std::atan2(-r(0), r(2));  // kill the x component; y untouched

    RVec phases(2);
    phases << -0.5 * t, 0.5 * t;  // exp(-i t sigma_axis / 2)
    return GroupElement{std::move(basis), std::move(phases)};
}

AdmissibleState sample_admissible(const Basis& basis, Index dim_k, int mix, std::uint64_t seed) {
    const Index d = basis.dim();
    if (d < 1 || dim_k < 1)
        throw std::invalid_argument("sample_admissible: dimensions must be >= 1");
    if (mix < 1) throw std::invalid_argument("sample_admissible: mix must be >= 1");

    Xoshiro256ss rng(seed);
    RVec weights(mix);
    for (int i = 0; i < mix; ++i) weights(i) = rng.uniform01_open();
    weights /= weights.sum();

    CMat x = CMat::Zero(d * dim_k, d * dim_k);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < mix; ++i) {
        CVec psi = CVec::Zero(d * dim_k);
        for (Index j = 0; j < d; ++j) {
            const CVec v = haar_random_vector(dim_k, rng);
            psi += amp * tensor(CVec(basis.col(j)), v);
        }
        x += weights(i) * (psi * psi.adjoint());
    }
    x = 0.5 * (x + x.adjoint());
    DensityMatrix state(std::move(x), {d, dim_k});

    const DensityMatrix marginal = partial_trace(state, 0);
    double defect = 0.0;
    for (Index j = 0; j < d; ++j) {
        const CVec b = basis.col(j);
        const Complex diag = b.dot(marginal.mat * b);
        defect = std::max(defect, std::abs(diag - Complex(1.0 / static_cast<double>(d), 0.0)));
    }
    return AdmissibleState{std::move(state), basis, defect};
}

AdmissibleState sample_admissible(Index d, Index dim_k, int mix, std::uint64_t seed) {
    return sample_admissible(computational_basis(d), dim_k, mix, seed);
}

}  // namespace weylcov

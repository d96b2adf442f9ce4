#include "weylcov/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "weylcov/orbits.hpp"

namespace weylcov {

namespace {

constexpr double kHypothesisTol = 1e-9;

// Marginal-diagonal defect of x in the damping basis.
double admissibility_defect(const Basis& basis, const DensityMatrix& x) {
    const DensityMatrix marginal = partial_trace(x, 0);
    const Index d = basis.dim();
    double defect = 0.0;
    for (Index j = 0; j < d; ++j) {
        const CVec b = basis.col(j);
        defect = std::max(defect, std::abs(b.dot(marginal.mat * b) - Complex(1.0 / static_cast<double>(d), 0.0)));
    }
    return defect;
}

void require_hypothesis(const Basis& basis, const DensityMatrix& x, const char* who) {
    const double defect = admissibility_defect(basis, x);
    if (defect > kHypothesisTol)
        throw std::invalid_argument(std::string(who) + ": marginal is not uniform in the damping basis (defect "
                                    + std::to_string(defect) + ")");
}

// Conditional states x_j = d <e_j| x |e_j> over the H factor; validated as
// density matrices with the trace tolerance widened to the hypothesis scale.
std::vector<DensityMatrix> conditional_states(const Basis& basis, const DensityMatrix& x) {
    const Index d = basis.dim();
    const Index dim_k = x.factors[1];
    Tolerances tol;
    tol.trace = 10.0 * static_cast<double>(d) * kHypothesisTol;
    std::vector<DensityMatrix> out;
    out.reserve(static_cast<std::size_t>(d));
    for (Index j = 0; j < d; ++j) {
        CMat block = static_cast<double>(d) * conditional_block(x.mat, basis.col(j), dim_k);
        block = 0.5 * (block + block.adjoint());
        out.emplace_back(std::move(block), std::vector<Index>{dim_k}, tol);
    }
    return out;
}

void require_two_factors(const DensityMatrix& x, Index d, const char* who) {
    if (x.factors.size() != 2)
        throw std::invalid_argument(std::string(who) + ": state must carry two factors");
    if (x.factors[0] != d)
        throw std::invalid_argument(std::string(who) + ": first factor does not match the channel dimension");
}

}  // namespace

BoundReport phase_damping_bound(const RVec& lambda, const Basis& basis, const DensityMatrix& x) {
    const Index d = basis.dim();
    if (lambda.size() != d)
        throw std::invalid_argument("phase_damping_bound: lambda must have d entries");
    require_two_factors(x, d, "phase_damping_bound");
    require_hypothesis(basis, x, "phase_damping_bound");

    const Channel damping = phase_damping_in_basis(basis, lambda);
    const double lhs = entropy_psd(damping.apply_tensor_id_raw(x.mat, x.factors[1]));

    const double constant = shannon_entropy(lambda);
    std::vector<double> cond;
    double cond_sum = 0.0;
    for (const DensityMatrix& xj : conditional_states(basis, x)) {
        cond.push_back(von_neumann_entropy(xj));
        cond_sum += cond.back();
    }
    const double rhs = constant + cond_sum / static_cast<double>(d);

    BoundReport report;
    report.lhs = lhs;
    report.rhs = rhs;
    report.margin = lhs - rhs;
    report.entropy_constant = constant;
    report.conditional_entropies = std::move(cond);
    report.bases_used = {basis};
    return report;
}

DerivationTrace derivation_trace(const RVec& lambda, const Basis& basis, const DensityMatrix& x,
                                 const DensityMatrix& y) {
    const Index d = basis.dim();
    if (lambda.size() != d)
        throw std::invalid_argument("derivation_trace: lambda must have d entries");
    require_two_factors(x, d, "derivation_trace");
    require_hypothesis(basis, x, "derivation_trace");
    const Index dim_k = x.factors[1];
    if (y.dim() != dim_k)
        throw std::invalid_argument("derivation_trace: reference state must live on the K factor");

    // rho = sum_j lambda_j |e_j><e_j| (x) y and its uniform counterpart.
    CMat pinch_h = CMat::Zero(d, d);
    for (Index j = 0; j < d; ++j) {
        const CVec b = basis.col(j);
        pinch_h += lambda(j) * (b * b.adjoint());
    }
    const CMat rho = tensor(pinch_h, y.mat);
    const CMat rho_bar = tensor(CMat::Identity(d, d) / static_cast<double>(d), y.mat);

    // Xi_x(sigma) = sum_j Tr((P_j (x) I) sigma) (U^j (x) I) x (U^-j (x) I),
    // applied literally to rho and rho_bar.
    const RVec uniform = RVec::Constant(d, 1.0 / static_cast<double>(d));
    const Channel pinching = phase_damping_in_basis(basis, uniform);  // E~ as a map
    std::vector<CMat> conjugated;  // (U^j (x) I) x (U^-j (x) I), j = 0..d-1
    conjugated.reserve(static_cast<std::size_t>(d));
    const CMat id_k = CMat::Identity(dim_k, dim_k);
    for (const CMat& op : pinching.kraus) {
        const CMat lifted = tensor(CMat(std::sqrt(static_cast<double>(d)) * op), id_k);
        conjugated.push_back(lifted * x.mat * lifted.adjoint());
    }
    auto xi = [&](const CMat& sigma) {
        CMat acc = CMat::Zero(sigma.rows(), sigma.cols());
        for (Index j = 0; j < d; ++j) {
            const double coeff = conditional_block(sigma, basis.col(j), dim_k).trace().real();
            acc += coeff * conjugated[static_cast<std::size_t>(j)];
        }
        return acc;
    };

    const CMat out = xi(rho);          // = (Phi (x) Id)(x)
    const CMat pinched = xi(rho_bar);  // = E~(x)

    DerivationTrace trace;
    trace.rel_before = relative_entropy_raw(rho, rho_bar);
    trace.rel_after = relative_entropy_raw(out, pinched);
    trace.entropy_out = entropy_psd(out);
    trace.entropy_e = entropy_psd(pinched);
    trace.fixed_point_defect = max_abs(pinching.apply_tensor_id_raw(out, dim_k) - pinched);

    double cond_sum = 0.0;
    for (const DensityMatrix& xj : conditional_states(basis, x)) cond_sum += von_neumann_entropy(xj);
    trace.conditional_avg = cond_sum / static_cast<double>(d);

    const double log_d = std::log(static_cast<double>(d));
    trace.before_formula_defect = std::abs(trace.rel_before - (log_d - shannon_entropy(lambda)));
    trace.identity_defect = std::abs(trace.rel_after - (-trace.entropy_out + trace.entropy_e));
    trace.pinch_entropy_defect = std::abs(trace.entropy_e - log_d - trace.conditional_avg);
    trace.dpi_slack = trace.rel_before - trace.rel_after;
    return trace;
}

DerivationTrace derivation_trace(const RVec& lambda, const Basis& basis, const DensityMatrix& x) {
    const Index dim_k = x.factors.size() == 2 ? x.factors[1] : 1;
    const DensityMatrix mixed(CMat::Identity(dim_k, dim_k) / static_cast<double>(dim_k),
                              std::vector<Index>{dim_k});
    return derivation_trace(lambda, basis, x, mixed);
}

BoundReport depolarizing_bound(Index d, double p, const DensityMatrix& x) {
    if (!is_prime(d)) throw std::invalid_argument("depolarizing_bound: dimension must be prime");
    const double pmax = static_cast<double>(d * d) / static_cast<double>(d * d - 1);
    if (p < 0.0 || p > pmax + 1e-15)
        throw std::invalid_argument("depolarizing_bound: p must lie in [0, d^2/(d^2-1)]");
    require_two_factors(x, d, "depolarizing_bound");
    const Index dim_k = x.factors[1];

    const MUBFamily family = mub_family(d);

    // W rotates the marginal's eigenbasis onto the s = d basis, making all
    // the other d bases unbiased with respect to the marginal.
    const DensityMatrix marginal = partial_trace(x, 0);
    const EigResult eig = eig_hermitian(marginal.mat);
    const CMat w = family.basis(d).vectors * eig.vectors.adjoint();

    const WeylChannel dep = depolarizing(d, p);
    const double lhs = entropy_psd(dep.to_channel().apply_tensor_id_raw(x.mat, dim_k));

    // Damping distribution of the shift-conjugated split of the channel.
    RVec lambda(d);
    lambda(0) = 1.0 - p * static_cast<double>(d - 1) / static_cast<double>(d);
    for (Index n = 1; n < d; ++n) lambda(n) = p / static_cast<double>(d);
    const double constant = shannon_entropy(lambda);

    BoundReport report;
    report.entropy_constant = constant;
    report.witnesses = {w};

    double cond_sum = 0.0;
    for (Index s = 0; s < d; ++s) {
        Basis rotated(w.adjoint() * family.basis(s).vectors, "f-" + std::to_string(s));
        for (Index j = 0; j < d; ++j) {
            CMat block = static_cast<double>(d) * conditional_block(x.mat, rotated.col(j), dim_k);
            block = 0.5 * (block + block.adjoint());
            report.conditional_entropies.push_back(entropy_psd(block));
            cond_sum += report.conditional_entropies.back();
        }
        report.bases_used.push_back(std::move(rotated));
    }

    report.lhs = lhs;
    report.rhs = constant + cond_sum / static_cast<double>(d * d);
    report.margin = report.lhs - report.rhs;

    const ShiftCovariantSplit split = decompose_shift_covariant(dep);
    report.diagnostics.emplace_back("split_lambda0", split.lambda(0));
    report.diagnostics.emplace_back("split_c0", split.c(0));
    if (d > 1) {
        report.diagnostics.emplace_back("split_lambda1", split.lambda(1));
        report.diagnostics.emplace_back("split_c1", split.c(1));
    }
    return report;
}

BoundReport two_pauli_bound(double p, const DensityMatrix& rho) {
    if (p <= 0.0 || p > 1.0 / 3.0 + 1e-15)
        throw std::invalid_argument("two_pauli_bound: p must lie in (0, 1/3]");
    require_two_factors(rho, 2, "two_pauli_bound");
    const Index dim_k = rho.factors[1];

    // First balancing: W in the x-axis group zeroes the marginal's y
    // component; second: W~ in the y-axis group zeroes x, preserving y.
    const DensityMatrix marginal = partial_trace(rho, 0);
    const CMat w = balance_marginal_qubit(marginal, 'x').matrix();
    const CMat marginal_tilde = w * marginal.mat * w.adjoint();
    const DensityMatrix marginal_tilde_dm(0.5 * (marginal_tilde + marginal_tilde.adjoint()),
                                          std::vector<Index>{2});
    const CMat wt = balance_marginal_qubit(marginal_tilde_dm, 'y').matrix();

    const Basis basis_y = pauli_y_basis();
    const Basis basis_x = pauli_x_basis();
    const CMat wdag = w.adjoint();
    const CMat wwdag = w.adjoint() * wt.adjoint();

    const Basis bases[3] = {
        Basis(wdag * basis_y.vectors, "e-1"),
        Basis(wwdag * basis_x.vectors, "e-2"),
        Basis(wwdag * basis_y.vectors, "e-3"),
    };

    const PauliCoeffs channel = two_pauli(p);
    const double lhs = entropy_psd(channel.to_channel().apply_tensor_id_raw(rho.mat, dim_k));

    const double constant = -(1.0 - p) * std::log(1.0 - p) - p * std::log(p);

    BoundReport report;
    report.entropy_constant = constant;
    report.witnesses = {w, wt};

    double cond_sum = 0.0;
    for (const Basis& basis : bases) {
        for (Index k = 0; k < 2; ++k) {
            CMat block = 2.0 * conditional_block(rho.mat, basis.col(k), dim_k);
            block = 0.5 * (block + block.adjoint());
            report.conditional_entropies.push_back(entropy_psd(block));
            cond_sum += report.conditional_entropies.back();
        }
        report.bases_used.push_back(basis);
    }

    report.lhs = lhs;
    report.rhs = constant + cond_sum / 6.0;
    report.margin = report.lhs - report.rhs;

    // Branch diagnostics: the verified two-term split evaluated on the
    // rotated state, as in the min inequality the bound rests on.
    const TwoPauliSplit split = decompose_two_pauli(p);
    const CMat w_lift = tensor(w, CMat::Identity(dim_k, dim_k));
    const CMat rho_tilde = w_lift * rho.mat * w_lift.adjoint();
    double min_branch = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < split.decomposition.terms.size(); ++i) {
        const double s = entropy_psd(split.decomposition.terms[i].component.apply_tensor_id_raw(rho_tilde, dim_k));
        report.diagnostics.emplace_back("branch_entropy_" + std::to_string(i), s);
        report.diagnostics.emplace_back("branch_weight_" + std::to_string(i),
                                        split.decomposition.terms[i].weight);
        min_branch = std::min(min_branch, s);
    }
    report.diagnostics.emplace_back("branch_min", min_branch);
    report.diagnostics.emplace_back("companion_split_residual", split.companion_residual);
    return report;
}

std::pair<double, double> dpi_check(const Channel& ch, const DensityMatrix& rho,
                                    const DensityMatrix& tau) {
    if (rho.dim() != ch.dim || tau.dim() != ch.dim)
        throw std::invalid_argument("dpi_check: dimension mismatch");
    const double before = relative_entropy(rho, tau);
    const double after = relative_entropy_raw(ch.apply_raw(rho.mat), ch.apply_raw(tau.mat));
    return {before, after};
}

}  // namespace weylcov

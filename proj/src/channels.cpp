#include "weylcov/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "weylcov/rng.hpp"

namespace weylcov {

namespace {

void check_distribution(const Eigen::Map<const RVec>& p, const char* who) {
    double sum = 0.0;
    for (Index i = 0; i < p.size(); ++i) {
        if (p(i) < -1e-12 || p(i) > 1.0 + 1e-12)
            throw std::invalid_argument(std::string(who) + ": weight outside [0,1]");
        sum += p(i);
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(who) + ": weights sum to " + std::to_string(sum));
}

}  // namespace

// --------------------------- Pauli matrices ---------------------------------

CMat pauli_x() {
    CMat m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

CMat pauli_y() {
    CMat m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

CMat pauli_z() {
    CMat m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

Eigen::Vector3d bloch_vector(const CMat& rho) {
    if (rho.rows() != 2 || rho.cols() != 2)
        throw std::invalid_argument("bloch_vector: requires a 2x2 state");
    Eigen::Vector3d r;
    r(0) = (rho * pauli_x()).trace().real();
    r(1) = (rho * pauli_y()).trace().real();
    r(2) = (rho * pauli_z()).trace().real();
    return r;
}

// --------------------------- channel ----------------------------------------

Channel::Channel(Index d, std::vector<CMat> k) : dim(d), kraus(std::move(k)) {
    if (kraus.empty()) throw std::invalid_argument("Channel: needs at least one Kraus operator");
    CMat comp = CMat::Zero(dim, dim);
    for (const CMat& op : kraus) {
        if (op.rows() != dim || op.cols() != dim)
            throw std::invalid_argument("Channel: Kraus operator dimension mismatch");
        comp += op.adjoint() * op;
    }
    if (max_abs(comp - CMat::Identity(dim, dim)) > 1e-10)
        throw std::invalid_argument("Channel: Kraus completeness sum differs from identity");
}

CMat Channel::apply_raw(const CMat& rho) const {
    CMat out = CMat::Zero(dim, dim);
    for (const CMat& op : kraus) out.noalias() += op * rho * op.adjoint();
    return out;
}

DensityMatrix Channel::apply(const DensityMatrix& rho) const {
    if (rho.dim() != dim) throw std::invalid_argument("Channel::apply: dimension mismatch");
    CMat out = apply_raw(rho.mat);
    return DensityMatrix(0.5 * (out + out.adjoint()), rho.factors);
}

CMat Channel::apply_tensor_id_raw(const CMat& x, Index dim_k) const {
    if (x.rows() != dim * dim_k)
        throw std::invalid_argument("Channel::apply_tensor_id: dimension mismatch");
    const CMat id_k = CMat::Identity(dim_k, dim_k);
    CMat out = CMat::Zero(x.rows(), x.cols());
    for (const CMat& op : kraus) {
        const CMat lifted = tensor(op, id_k);
        out.noalias() += lifted * x * lifted.adjoint();
    }
    return out;
}

DensityMatrix Channel::apply_tensor_id(const DensityMatrix& x) const {
    if (x.factors.size() != 2)
        throw std::invalid_argument("Channel::apply_tensor_id: state must carry two factors");
    if (x.factors[0] != dim)
        throw std::invalid_argument("Channel::apply_tensor_id: first factor does not match the channel");
    CMat out = apply_tensor_id_raw(x.mat, x.factors[1]);
    return DensityMatrix(0.5 * (out + out.adjoint()), x.factors);
}

CMat Channel::apply_adjoint_raw(const CMat& a) const {
    CMat out = CMat::Zero(dim, dim);
    for (const CMat& op : kraus) out.noalias() += op.adjoint() * a * op;
    return out;
}

Channel tensor_channel(const Channel& a, const Channel& b) {
    std::vector<CMat> kraus;
    kraus.reserve(a.kraus.size() * b.kraus.size());
    for (const CMat& ka : a.kraus)
        for (const CMat& kb : b.kraus) kraus.push_back(tensor(ka, kb));
    return Channel(a.dim * b.dim, std::move(kraus));
}

// --------------------------- structured channels ----------------------------

WeylChannel::WeylChannel(Index dim, Eigen::MatrixXd p) : d(dim), pi(std::move(p)) {
    if (pi.rows() != d || pi.cols() != d)
        throw std::invalid_argument("WeylChannel: pi must be d x d");
    check_distribution(Eigen::Map<const RVec>(pi.data(), pi.size()), "WeylChannel");
}

Channel WeylChannel::to_channel() const {
    std::vector<CMat> kraus;
    kraus.reserve(static_cast<std::size_t>(d * d));
    for (Index m = 0; m < d; ++m)
        for (Index n = 0; n < d; ++n) {
            if (pi(m, n) <= 0.0) continue;
            kraus.push_back(std::sqrt(pi(m, n)) * weyl_operator(WeylIndex(d, m, n)));
        }
    if (kraus.empty()) kraus.push_back(CMat::Identity(d, d));
    return Channel(d, std::move(kraus));
}

PhaseDamping::PhaseDamping(Index dim, RVec lam, Index subgroup)
    : d(dim), lambda(std::move(lam)), s(subgroup) {
    if (lambda.size() != d)
        throw std::invalid_argument("PhaseDamping: lambda must have d entries");
    if (s < 0 || s > d) throw std::invalid_argument("PhaseDamping: subgroup label out of range");
    check_distribution(Eigen::Map<const RVec>(lambda.data(), lambda.size()), "PhaseDamping");
}

Channel PhaseDamping::to_channel() const {
    std::vector<CMat> kraus;
    for (Index j = 0; j < d; ++j) {
        if (lambda(j) <= 0.0) continue;
        const CMat u = (s == d) ? weyl_operator(WeylIndex(d, j, 0))
                                : weyl_operator(WeylIndex(d, (s * j) % d, j));
        kraus.push_back(std::sqrt(lambda(j)) * u);
    }
    if (kraus.empty()) kraus.push_back(CMat::Identity(d, d));
    return Channel(d, std::move(kraus));
}

WeylChannel PhaseDamping::to_weyl() const {
    Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(d, d);
    for (Index j = 0; j < d; ++j) {
        if (s == d)
            pi(j, 0) += lambda(j);
        else
            pi((s * j) % d, j) += lambda(j);
    }
    return WeylChannel(d, std::move(pi));
}

PauliCoeffs::PauliCoeffs(double wi, double wx, double wy, double wz)
    : w_i(wi), w_x(wx), w_y(wy), w_z(wz) {
    const double arr[4] = {wi, wx, wy, wz};
    check_distribution(Eigen::Map<const RVec>(arr, 4), "PauliCoeffs");
}

Channel PauliCoeffs::to_channel() const {
    std::vector<CMat> kraus;
    const CMat ops[4] = {CMat::Identity(2, 2), pauli_x(), pauli_y(), pauli_z()};
    const double w[4] = {w_i, w_x, w_y, w_z};
    for (int a = 0; a < 4; ++a)
        if (w[a] > 0.0) kraus.push_back(std::sqrt(w[a]) * ops[a]);
    if (kraus.empty()) kraus.push_back(CMat::Identity(2, 2));
    return Channel(2, std::move(kraus));
}

WeylChannel PauliCoeffs::to_weyl() const {
    Eigen::MatrixXd pi(2, 2);
    pi(0, 0) = w_i;
    pi(1, 0) = w_x;
    pi(0, 1) = w_z;
    pi(1, 1) = w_y;
    return WeylChannel(2, std::move(pi));
}

WeylChannel depolarizing(Index d, double p) {
    const double pmax = static_cast<double>(d * d) / static_cast<double>(d * d - 1);
    if (p < 0.0 || p > pmax + 1e-15)
        throw std::invalid_argument("depolarizing: p must lie in [0, d^2/(d^2-1)]");
    Eigen::MatrixXd pi = Eigen::MatrixXd::Constant(d, d, p / static_cast<double>(d * d));
    pi(0, 0) = 1.0 - p * static_cast<double>(d * d - 1) / static_cast<double>(d * d);
    return WeylChannel(d, std::move(pi));
}

PauliCoeffs two_pauli(double p) {
    if (p <= 0.0 || p >= 0.5)
        throw std::invalid_argument("two_pauli: p must lie in (0, 1/2)");
    return PauliCoeffs(1.0 - 2.0 * p, 0.0, p, p);
}

PhaseDamping phase_damping(Index d, RVec lambda, Index s) {
    return PhaseDamping(d, std::move(lambda), s);
}

Channel phase_damping_in_basis(const Basis& basis, const RVec& lambda) {
    const Index d = basis.dim();
    if (lambda.size() != d)
        throw std::invalid_argument("phase_damping_in_basis: lambda must have d entries");
    CMat u = CMat::Zero(d, d);
    for (Index k = 0; k < d; ++k) {
        const CVec b = basis.col(k);
        u += std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(d)) * (b * b.adjoint());
    }
    std::vector<CMat> kraus;
    CMat power = CMat::Identity(d, d);
    for (Index j = 0; j < d; ++j) {
        if (lambda(j) > 0.0) kraus.push_back(std::sqrt(lambda(j)) * power);
        power = power * u;
    }
    if (kraus.empty()) kraus.push_back(CMat::Identity(d, d));
    return Channel(d, std::move(kraus));
}

Channel conditional_expectation(const Basis& basis) {
    const Index d = basis.dim();
    std::vector<CMat> kraus;
    kraus.reserve(static_cast<std::size_t>(d));
    for (Index j = 0; j < d; ++j) {
        const CVec b = basis.col(j);
        kraus.push_back(b * b.adjoint());
    }
    return Channel(d, std::move(kraus));
}

// --------------------------- spectrum and covariance ------------------------

CMat weyl_spectrum(const WeylChannel& ch) {
    const Index d = ch.d;
    CMat lambda(d, d);
    for (Index s = 0; s < d; ++s)
        for (Index t = 0; t < d; ++t) {
            Complex acc(0.0, 0.0);
            for (Index m = 0; m < d; ++m)
                for (Index n = 0; n < d; ++n) {
                    Index r = (s * n - t * m) % d;
                    if (r < 0) r += d;
                    acc += ch.pi(m, n) * std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / static_cast<double>(d));
                }
            lambda(s, t) = acc;
        }
    // Cross-check against the channel action on each Weyl operator.
    const Channel phi = ch.to_channel();
    for (Index s = 0; s < d; ++s)
        for (Index t = 0; t < d; ++t) {
            const CMat u = weyl_operator(WeylIndex(d, s, t));
            const double dev = max_abs(phi.apply_raw(u) - lambda(s, t) * u);
            if (dev > 1e-12)
                throw std::runtime_error("weyl_spectrum: character sum disagrees with the channel action ("
                                         + std::to_string(dev) + ")");
        }
    return lambda;
}

namespace {

// Weyl line of a maximum commutative group basis: the family index s whose
// generator (U_{s,1} for s < d, U_{1,0} for s = d) is diagonal in the basis.
std::optional<Index> detect_weyl_line(const Basis& basis) {
    const Index d = basis.dim();
    for (Index s = 0; s <= d; ++s) {
        const CMat gen = (s == d) ? weyl_operator(WeylIndex(d, 1, 0))
                                  : weyl_operator(WeylIndex(d, s, 1));
        CMat in_basis = basis.vectors.adjoint() * gen * basis.vectors;
        in_basis.diagonal().setZero();
        if (max_abs(in_basis) < 1e-8) return s;
    }
    return std::nullopt;
}

}  // namespace

CovarianceReport check_covariance(const Channel& ch, const Basis& group,
                                  int samples, std::uint64_t seed) {
    const Index d = ch.dim;
    if (group.dim() != d)
        throw std::invalid_argument("check_covariance: basis dimension mismatch");

    Xoshiro256ss rng(seed);
    double max_dev = 0.0;
    for (int it = 0; it < samples; ++it) {
        RVec phases(d);
        for (Index j = 0; j < d; ++j) phases(j) = 2.0 * kPi * rng.uniform01();
        const CMat u = group_element(group, phases);
        const CMat rho = random_density_raw(d, rng);
        const CMat lhs = ch.apply_raw(u * rho * u.adjoint());
        const CMat rhs = u * ch.apply_raw(rho) * u.adjoint();
        max_dev = std::max(max_dev, max_abs(lhs - rhs));
    }

    // Measured spectrum lambda_{m,n} = Tr(U' Phi(U)) / d.
    CMat lambda(d, d);
    for (Index m = 0; m < d; ++m)
        for (Index n = 0; n < d; ++n) {
            const CMat u = weyl_operator(WeylIndex(d, m, n));
            lambda(m, n) = (u.adjoint() * ch.apply_raw(u)).trace() / static_cast<double>(d);
        }

    CovarianceReport report{max_dev, false, lambda, false};
    const std::optional<Index> line = detect_weyl_line(group);
    if (!line) return report;
    report.line_found = true;

    // Criterion: lambda constant on each coset parallel to the group's line,
    // the line itself excluded.  For the s = d line (shifts) the cosets are
    // the rows {(m, n): m varies} with n >= 1 fixed.
    const Index s = *line;
    bool constant = true;
    for (Index coset = 1; coset < d && constant; ++coset) {
        Complex ref;
        for (Index k = 0; k < d; ++k) {
            Index m, n;
            if (s == d) {
                m = k;
                n = coset;
            } else {
                m = (coset + s * k) % d;
                n = k;
            }
            const Complex v = lambda(m, n);
            if (k == 0)
                ref = v;
            else if (std::abs(v - ref) > 1e-10)
                constant = false;
        }
    }
    report.spectral_criterion = constant;
    return report;
}

// --------------------------- decompositions ---------------------------------

double decomposition_residual(const Decomposition& dec) {
    const Index d = dec.target.dim;
    double worst = 0.0;
    for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b) {
            CMat unit = CMat::Zero(d, d);
            unit(a, b) = 1.0;
            CMat mix = CMat::Zero(d, d);
            for (const Decomposition::Term& term : dec.terms)
                mix += term.weight * (term.conjugator * term.component.apply_raw(unit) * term.conjugator.adjoint());
            worst = std::max(worst, max_abs(mix - dec.target.apply_raw(unit)));
        }
    return worst;
}

ShiftCovariantSplit decompose_shift_covariant(const WeylChannel& ch) {
    const Index d = ch.d;
    if (!is_prime(d)) throw std::invalid_argument("decompose_shift_covariant: dimension must be prime");

    RVec r(d), p(d);
    p(0) = 0.0;
    for (Index m = 0; m < d; ++m) r(m) = ch.pi(m, 0);
    for (Index n = 1; n < d; ++n) {
        p(n) = ch.pi(0, n);
        for (Index m = 1; m < d; ++m)
            if (std::abs(ch.pi(m, n) - p(n)) > 1e-12)
                throw std::invalid_argument("decompose_shift_covariant: pi_{m,n} is not constant in m for n = "
                                            + std::to_string(n));
    }

    const double lambda0 = 1.0 - static_cast<double>(d) * p.tail(d - 1).sum();
    if (lambda0 <= 0.0)
        throw std::invalid_argument("decompose_shift_covariant: lambda_0 = " + std::to_string(lambda0) + " is not positive");

    RVec lambda(d);
    lambda(0) = lambda0;
    for (Index n = 1; n < d; ++n) lambda(n) = static_cast<double>(d) * p(n);
    RVec c(d);
    for (Index m = 0; m < d; ++m) c(m) = r(m) / (static_cast<double>(d) * lambda0);

    Decomposition dec{{}, ch.to_channel()};
    dec.terms.reserve(static_cast<std::size_t>(d * d));
    for (Index k = 0; k < d; ++k) {
        const Channel damping = PhaseDamping(d, lambda, k).to_channel();
        for (Index m = 0; m < d; ++m)
            dec.terms.push_back({c(m), weyl_operator(WeylIndex(d, m, 0)), damping});
    }
    return ShiftCovariantSplit{std::move(dec), std::move(lambda), std::move(c)};
}

PauliTransfer pauli_transfer(const Channel& ch) {
    if (ch.dim != 2) throw std::invalid_argument("pauli_transfer: qubit channels only");
    const CMat ops[4] = {CMat::Identity(2, 2), pauli_x(), pauli_y(), pauli_z()};
    Eigen::Matrix4d t;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const Complex v = (ops[a] * ch.apply_raw(ops[b])).trace() * 0.5;
            if (std::abs(v.imag()) > 1e-10)
                throw std::invalid_argument("pauli_transfer: complex transfer entry");
            t(a, b) = v.real();
        }
    Eigen::Matrix4d off = t;
    off.diagonal().setZero();
    if (off.cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("pauli_transfer: channel is not Pauli-diagonal (off-diagonal "
                                    + std::to_string(off.cwiseAbs().maxCoeff()) + ")");
    const double sx = t(1, 1), sy = t(2, 2), sz = t(3, 3);
    return PauliTransfer{
        PauliCoeffs(0.25 * (1 + sx + sy + sz), 0.25 * (1 + sx - sy - sz),
                    0.25 * (1 - sx + sy - sz), 0.25 * (1 - sx - sy + sz)),
        sx, sy, sz};
}

namespace {

// Effective Pauli weights of (conjugator o component o conjugator').
PauliCoeffs effective_coeffs(const PauliComponent& comp) {
    std::vector<CMat> kraus;
    for (const CMat& op : comp.second.to_channel().kraus) kraus.push_back(comp.first * op);
    return pauli_transfer(Channel(2, std::move(kraus))).coeffs;
}

RVec coeffs_vector(const PauliCoeffs& c) {
    RVec v(4);
    v << c.w_i, c.w_x, c.w_y, c.w_z;
    return v;
}

}  // namespace

double pauli_mixture_residual(const PauliCoeffs& target,
                              const std::vector<PauliComponent>& components,
                              const RVec& weights) {
    if (weights.size() != static_cast<Index>(components.size()))
        throw std::invalid_argument("pauli_mixture_residual: weight count mismatch");
    RVec mix = RVec::Zero(4);
    for (std::size_t i = 0; i < components.size(); ++i)
        mix += weights(static_cast<Index>(i)) * coeffs_vector(effective_coeffs(components[i]));
    return (mix - coeffs_vector(target)).cwiseAbs().maxCoeff();
}

MixtureSolution solve_pauli_mixture(const PauliCoeffs& target,
                                    const std::vector<PauliComponent>& components) {
    if (components.empty())
        throw std::invalid_argument("solve_pauli_mixture: needs at least one component");
    Eigen::MatrixXd a(4, static_cast<Index>(components.size()));
    for (std::size_t i = 0; i < components.size(); ++i)
        a.col(static_cast<Index>(i)) = coeffs_vector(effective_coeffs(components[i]));
    const RVec b = coeffs_vector(target);
    const RVec w = a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
    MixtureSolution sol;
    sol.weights = w;
    sol.residual = (a * w - b).cwiseAbs().maxCoeff();
    sol.convex = (w.minCoeff() >= -1e-10);
    sol.feasible = (sol.residual <= 1e-10);
    return sol;
}

TwoPauliSplit decompose_two_pauli(double p) {
    if (p <= 0.0 || p > 1.0 / 3.0 + 1e-15)
        throw std::invalid_argument("decompose_two_pauli: p must lie in (0, 1/3]");

    const PauliCoeffs target = two_pauli(p);
    const PauliCoeffs damping_y(1.0 - p, 0.0, p, 0.0);
    const PauliCoeffs damping_x(1.0 - p, p, 0.0, 0.0);
    const CMat id = CMat::Identity(2, 2);

    const std::vector<PauliComponent> components = {{id, damping_y}, {pauli_z(), damping_x}};
    const MixtureSolution sol = solve_pauli_mixture(target, components);
    if (!sol.feasible || !sol.convex)
        throw std::runtime_error("decompose_two_pauli: mixture solve failed (residual "
                                 + std::to_string(sol.residual) + ")");

    Decomposition dec{{}, target.to_channel()};
    dec.terms.push_back({sol.weights(0), id, damping_y.to_channel()});
    dec.terms.push_back({sol.weights(1), pauli_z(), damping_x.to_channel()});

    TwoPauliSplit out{std::move(dec),
                      sol.weights,
                      0.0,
                      RVec(2),
                      0.0,
                      PauliCoeffs(p, 0.5 * (1.0 - p), 0.0, 0.5 * (1.0 - p))};
    out.residual = decomposition_residual(out.decomposition);
    // Alternative split through the covariant companion channel; exact only
    // at p = 1/3, reported with its residual for diagnostics.
    out.companion_weights << (1.0 - 3.0 * p) / (1.0 - p), 2.0 * p / (1.0 - p);
    out.companion_residual = pauli_mixture_residual(
        target, {{id, damping_y}, {pauli_z(), out.companion}}, out.companion_weights);
    return out;
}

}  // namespace weylcov

// weylcov — command-line verification front end.
//
// Every subcommand runs one family of checks and emits a single JSON report
// object on standard output; diagnostics go to standard error.  Exit codes:
// 0 pass, 1 verification failure, 2 usage error, 3 precondition error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
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

using json = nlohmann::ordered_json;
using namespace weylcov;

namespace {

constexpr const char* kVersion = "0.1.0";

std::uint64_t default_seed() {
    if (const char* env = std::getenv("WEYLCOV_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

// FNV-1a over the raw matrix payload; identifies case inputs for replay.
std::string digest(const CMat& m) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](double v) {
        const auto* bytes = reinterpret_cast<const unsigned char*>(&v);
        for (std::size_t i = 0; i < sizeof(double); ++i) {
            h ^= bytes[i];
            h *= 1099511628211ull;
        }
    };
    for (Index r = 0; r < m.rows(); ++r)
        for (Index c = 0; c < m.cols(); ++c) {
            mix(m(r, c).real());
            mix(m(r, c).imag());
        }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

// Accumulates case records and normalized violations for one command run.
// Each check carries its own tolerance; its violation is rescaled so that
// "max_violation <= tol" reproduces every per-check comparison.
struct ReportBuilder {
    std::string command;
    json params = json::object();
    std::uint64_t seed = 0;
    double tol;       // effective pass threshold (--tol may override)
    double norm_tol;  // the command's declared tolerance; violation axis
    double unit_factor = 1.0;  // 1/log(2) under --bits, applied to entropy outputs
    json cases = json::array();
    double max_violation = 0.0;

    ReportBuilder(std::string cmd, double tolerance)
        : command(std::move(cmd)), tol(tolerance), norm_tol(tolerance) {}

    double entropy(double nats) const { return nats * unit_factor; }

    void add_case(json record, double violation, double check_tol) {
        record["violation"] = violation;
        record["tolerance"] = check_tol;
        cases.push_back(std::move(record));
        // checks with their own tolerance are rescaled onto the command axis
        max_violation = std::max(max_violation, violation * (norm_tol / check_tol));
    }

    int emit(std::chrono::steady_clock::time_point started) const {
        const bool pass = max_violation <= tol;
        json report;
        report["command"] = command;
        report["params"] = params;
        report["seed"] = seed;
        report["cases"] = cases;
        report["pass"] = pass;
        report["max_violation"] = max_violation;
        report["runtime_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                   std::chrono::steady_clock::now() - started)
                                   .count();
        report["version"] = kVersion;
        std::cout << report.dump(2) << "\n";
        return pass ? 0 : 1;
    }
};

// --------------------------- channel flags ----------------------------------

struct ChannelFlags {
    std::string kind = "depolarizing";
    Index dim = 2;
    double p = 0.5;
    std::vector<double> lambda;
    Index s = 0;
    std::vector<double> pi;
};

void attach_channel_flags(CLI::App* cmd, ChannelFlags& flags) {
    cmd->add_option("--channel", flags.kind, "depolarizing | two-pauli | phase-damping | weyl | identity")
        ->default_val("depolarizing");
    cmd->add_option("--dim", flags.dim, "channel dimension");
    cmd->add_option("--p", flags.p, "noise parameter");
    cmd->add_option("--lambda", flags.lambda, "damping distribution (comma separated)")->delimiter(',');
    cmd->add_option("--s", flags.s, "damping subgroup label in 0..d");
    cmd->add_option("--pi", flags.pi, "Weyl distribution, d*d row-major entries")->delimiter(',');
}

struct BuiltChannel {
    Channel channel;
    std::optional<double> analytic;  // closed-form minimal output entropy
    json params;
};

BuiltChannel build_channel(const ChannelFlags& f) {
    json params;
    params["channel"] = f.kind;
    if (f.kind == "depolarizing") {
        params["dim"] = f.dim;
        params["p"] = f.p;
        return {depolarizing(f.dim, f.p).to_channel(),
                analytic_min_entropy(ChannelKind::Depolarizing, f.dim, f.p), params};
    }
    if (f.kind == "two-pauli") {
        params["p"] = f.p;
        std::optional<double> oracle;
        if (f.p <= 1.0 / 3.0 + 1e-15) oracle = analytic_min_entropy(ChannelKind::TwoPauli, 0, f.p);
        return {two_pauli(f.p).to_channel(), oracle, params};
    }
    if (f.kind == "phase-damping") {
        if (f.lambda.empty()) throw std::invalid_argument("phase-damping requires --lambda");
        RVec lambda(static_cast<Index>(f.lambda.size()));
        for (Index i = 0; i < lambda.size(); ++i) lambda(i) = f.lambda[static_cast<std::size_t>(i)];
        params["dim"] = lambda.size();
        params["lambda"] = f.lambda;
        params["s"] = f.s;
        return {phase_damping(lambda.size(), lambda, f.s).to_channel(),
                analytic_min_entropy(ChannelKind::PhaseDamping), params};
    }
    if (f.kind == "weyl") {
        if (f.pi.size() != static_cast<std::size_t>(f.dim * f.dim))
            throw std::invalid_argument("weyl requires --pi with dim*dim entries");
        Eigen::MatrixXd pi(f.dim, f.dim);
        for (Index m = 0; m < f.dim; ++m)
            for (Index n = 0; n < f.dim; ++n) pi(m, n) = f.pi[static_cast<std::size_t>(m * f.dim + n)];
        params["dim"] = f.dim;
        params["pi"] = f.pi;
        return {WeylChannel(f.dim, pi).to_channel(), std::nullopt, params};
    }
    if (f.kind == "identity") {
        params["dim"] = f.dim;
        return {Channel(f.dim, {CMat::Identity(f.dim, f.dim)}), 0.0, params};
    }
    throw std::invalid_argument("unknown channel kind '" + f.kind + "'");
}

// Compact channel spec "kind:key=val:..." for commands taking two channels.
BuiltChannel parse_channel_spec(const std::string& spec) {
    ChannelFlags f;
    std::stringstream stream(spec);
    std::string token;
    bool first = true;
    while (std::getline(stream, token, ':')) {
        if (first) {
            f.kind = token;
            first = false;
            continue;
        }
        const auto eq = token.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("channel spec token '" + token + "' is not key=value");
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "dim")
            f.dim = std::stol(value);
        else if (key == "p")
            f.p = std::stod(value);
        else if (key == "s")
            f.s = std::stol(value);
        else if (key == "lambda") {
            std::stringstream vs(value);
            std::string part;
            while (std::getline(vs, part, ',')) f.lambda.push_back(std::stod(part));
        } else
            throw std::invalid_argument("unknown channel spec key '" + key + "'");
    }
    return build_channel(f);
}

RVec parse_distribution(const std::vector<double>& values, Index d, const char* who) {
    if (values.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument(std::string(who) + ": expected " + std::to_string(d) + " entries");
    RVec out(d);
    for (Index i = 0; i < d; ++i) out(i) = values[static_cast<std::size_t>(i)];
    return out;
}

// --------------------------- subcommand runners ------------------------------

void run_mub(ReportBuilder& rb, Index dim) {
    const MUBFamily fam = mub_family(dim);
    double overlap_dev = 0.0;
    for (Index s = 0; s <= dim; ++s)
        for (Index t = s + 1; t <= dim; ++t) {
            const CMat overlaps = fam.basis(s).vectors.adjoint() * fam.basis(t).vectors;
            for (Index j = 0; j < dim; ++j)
                for (Index k = 0; k < dim; ++k)
                    overlap_dev = std::max(
                        overlap_dev, std::abs(std::norm(overlaps(j, k)) - 1.0 / static_cast<double>(dim)));
        }
    double completeness_dev = 0.0;
    double gram_dev = 0.0;
    for (Index s = 0; s <= dim; ++s) {
        CMat sum = CMat::Zero(dim, dim);
        for (Index j = 0; j < dim; ++j) {
            const CVec v = fam.basis(s).col(j);
            sum += v * v.adjoint();
        }
        completeness_dev = std::max(completeness_dev, max_abs(sum - CMat::Identity(dim, dim)));
        gram_dev = std::max(gram_dev, max_abs(fam.basis(s).vectors.adjoint() * fam.basis(s).vectors
                                              - CMat::Identity(dim, dim)));
    }
    rb.add_case({{"check", "unbiasedness"}, {"bases", dim + 1}}, overlap_dev, 1e-10);
    rb.add_case({{"check", "completeness"}}, completeness_dev, 1e-12);
    rb.add_case({{"check", "orthonormality"}}, gram_dev, 1e-10);
}

void run_weyl(ReportBuilder& rb, Index dim) {
    double commutation_dev = 0.0;
    for (Index m = 0; m < dim; ++m)
        for (Index n = 0; n < dim; ++n)
            for (Index mp = 0; mp < dim; ++mp)
                for (Index np = 0; np < dim; ++np) {
                    const WeylIndex a(dim, m, n), b(dim, mp, np);
                    const CMat ua = weyl_operator(a), ub = weyl_operator(b);
                    commutation_dev = std::max(
                        commutation_dev, max_abs(ua * ub - commutation_phase(a, b) * (ub * ua)));
                }
    double split_dev = 0.0;
    double unitary_dev = 0.0;
    for (Index m = 0; m < dim; ++m)
        for (Index n = 0; n < dim; ++n) {
            const CMat u = weyl_operator(WeylIndex(dim, m, n));
            split_dev = std::max(split_dev, max_abs(u - weyl_operator(WeylIndex(dim, m, 0))
                                                            * weyl_operator(WeylIndex(dim, 0, n))));
            unitary_dev = std::max(unitary_dev, max_abs(u * u.adjoint() - CMat::Identity(dim, dim)));
        }
    rb.add_case({{"check", "commutation"}, {"pairs", dim * dim * dim * dim}}, commutation_dev, 1e-13);
    rb.add_case({{"check", "shift-phase-split"}}, split_dev, 1e-14);
    rb.add_case({{"check", "unitarity"}}, unitary_dev, 1e-14);
}

void run_covariance(ReportBuilder& rb, const BuiltChannel& built, Index group_s, int samples) {
    const Index d = built.channel.dim;
    const Basis group = mub_family(d).basis(group_s < 0 ? d : group_s);
    const CovarianceReport rep = check_covariance(built.channel, group, samples, rb.seed);
    json record;
    record["group"] = group.label;
    record["samples"] = samples;
    record["spectral_criterion"] = rep.spectral_criterion;
    record["line_found"] = rep.line_found;
    record["max_deviation"] = rep.max_deviation;
    // the criterion must certify covariance: a true criterion with a large
    // measured deviation is the failure mode this command guards against
    const double violation = rep.spectral_criterion ? rep.max_deviation : 0.0;
    rb.add_case(std::move(record), violation, rb.norm_tol);
}

void run_decompose_split(ReportBuilder& rb, Index dim, const std::vector<double>& r_in,
                         const std::vector<double>& p_in) {
    RVec r = parse_distribution(r_in, dim, "--r");
    if (p_in.size() != static_cast<std::size_t>(dim - 1))
        throw std::invalid_argument("--p-tail: expected d-1 entries");
    Eigen::MatrixXd pi(dim, dim);
    for (Index m = 0; m < dim; ++m) {
        pi(m, 0) = r(m);
        for (Index n = 1; n < dim; ++n) pi(m, n) = p_in[static_cast<std::size_t>(n - 1)];
    }
    const ShiftCovariantSplit res = decompose_shift_covariant(WeylChannel(dim, pi));
    const double residual = decomposition_residual(res.decomposition);
    json record;
    record["lambda"] = std::vector<double>(res.lambda.data(), res.lambda.data() + res.lambda.size());
    record["c"] = std::vector<double>(res.c.data(), res.c.data() + res.c.size());
    record["terms"] = res.decomposition.terms.size();
    record["residual"] = residual;
    rb.add_case(std::move(record), residual, rb.norm_tol);
}

void run_decompose_two_pauli(ReportBuilder& rb, double p) {
    const TwoPauliSplit res = decompose_two_pauli(p);
    json record;
    record["weights"] = {res.weights(0), res.weights(1)};
    record["residual"] = res.residual;
    record["companion_weights"] = {res.companion_weights(0), res.companion_weights(1)};
    record["companion_residual"] = res.companion_residual;
    rb.add_case(std::move(record), res.residual, rb.norm_tol);
}

json bound_record(const ReportBuilder& rb, const BoundReport& rep) {
    json record;
    record["lhs"] = rb.entropy(rep.lhs);
    record["rhs"] = rb.entropy(rep.rhs);
    record["margin"] = rb.entropy(rep.margin);
    record["entropy_constant"] = rb.entropy(rep.entropy_constant);
    json cond = json::array();
    for (double s : rep.conditional_entropies) cond.push_back(rb.entropy(s));
    record["conditional_entropies"] = cond;
    if (!rep.diagnostics.empty()) {
        json diag;
        for (const auto& [key, value] : rep.diagnostics) diag[key] = value;
        record["diagnostics"] = diag;
    }
    return record;
}

void run_bound_t1(ReportBuilder& rb, Index dim, const RVec& lambda, Index dim_k, int mix,
                  int samples, const std::string& state) {
    const Basis basis = computational_basis(dim);
    if (state == "maxent") {
        const DensityMatrix x = maximally_entangled(dim);
        const BoundReport rep = phase_damping_bound(lambda, basis, x);
        json record = bound_record(rb, rep);
        record["state"] = "maxent";
        record["digest"] = digest(x.mat);
        rb.add_case(std::move(record), std::abs(rep.margin), rb.norm_tol);  // equality case
        return;
    }
    SplitMix64 seeder(rb.seed);
    for (int i = 0; i < samples; ++i) {
        const std::uint64_t case_seed = seeder.next();
        const AdmissibleState s = sample_admissible(dim, dim_k, mix, case_seed);
        const BoundReport rep = phase_damping_bound(lambda, s.basis, s.x);
        json record = bound_record(rb, rep);
        record["index"] = i;
        record["state_seed"] = case_seed;
        record["digest"] = digest(s.x.mat);
        rb.add_case(std::move(record), std::max(0.0, -rep.margin), rb.norm_tol);
    }
}

void run_bound_t2(ReportBuilder& rb, Index dim, double p, Index dim_k, int samples,
                  const std::string& state) {
    SplitMix64 seeder(rb.seed);
    for (int i = 0; i < samples; ++i) {
        DensityMatrix x = maximally_entangled(dim);
        json record;
        if (state == "maxent") {
            record["state"] = "maxent";
        } else {
            const std::uint64_t case_seed = seeder.next();
            const PureState psi = haar_random_pure(dim * dim_k, case_seed);
            x = DensityMatrix(psi.projector(), {dim, dim_k});
            record["index"] = i;
            record["state_seed"] = case_seed;
        }
        const BoundReport rep = depolarizing_bound(dim, p, x);
        json merged = bound_record(rb, rep);
        merged.update(record);
        merged["digest"] = digest(x.mat);
        rb.add_case(std::move(merged), std::max(0.0, -rep.margin), rb.norm_tol);
        if (state == "maxent") break;
    }
}

void run_bound_t3(ReportBuilder& rb, double p, Index dim_k, int samples, const std::string& state) {
    SplitMix64 seeder(rb.seed);
    for (int i = 0; i < samples; ++i) {
        json record;
        DensityMatrix rho = maximally_entangled(2);
        if (state == "maxent") {
            record["state"] = "maxent";
        } else if (state == "product") {
            CMat y(2, 2);
            y << 0.7, 0.0, 0.0, 0.3;
            rho = DensityMatrix(tensor(CMat(0.5 * CMat::Identity(2, 2)), y), {2, 2});
            record["state"] = "product";
        } else {
            const std::uint64_t case_seed = seeder.next();
            const PureState psi = haar_random_pure(2 * dim_k, case_seed);
            rho = DensityMatrix(psi.projector(), {2, dim_k});
            record["index"] = i;
            record["state_seed"] = case_seed;
        }
        const BoundReport rep = two_pauli_bound(p, rho);
        json merged = bound_record(rb, rep);
        merged.update(record);
        merged["digest"] = digest(rho.mat);
        // counterexample records carry the full replay data either way
        rb.add_case(std::move(merged), std::max(0.0, -rep.margin), rb.norm_tol);
        if (state != "random") break;
    }
}

void run_trace(ReportBuilder& rb, Index dim, const RVec& lambda, Index dim_k, int mix, int samples) {
    SplitMix64 seeder(rb.seed);
    for (int i = 0; i < samples; ++i) {
        const std::uint64_t case_seed = seeder.next();
        const AdmissibleState s = sample_admissible(dim, dim_k, mix, case_seed);
        Xoshiro256ss rng(seeder.next());
        const DensityMatrix y(random_density_raw(dim_k, rng), {dim_k});
        const DerivationTrace t = derivation_trace(lambda, s.basis, s.x, y);
        json record;
        record["index"] = i;
        record["state_seed"] = case_seed;
        record["digest"] = digest(s.x.mat);
        record["rel_before"] = rb.entropy(t.rel_before);
        record["rel_after"] = rb.entropy(t.rel_after);
        record["entropy_out"] = rb.entropy(t.entropy_out);
        record["entropy_e"] = rb.entropy(t.entropy_e);
        record["fixed_point_defect"] = t.fixed_point_defect;
        record["identity_defect"] = t.identity_defect;
        record["pinch_entropy_defect"] = t.pinch_entropy_defect;
        const double violation =
            std::max({t.before_formula_defect * 10.0, t.identity_defect, t.pinch_entropy_defect,
                      t.fixed_point_defect * 10.0, -t.dpi_slack});
        rb.add_case(std::move(record), std::max(violation, 0.0), rb.norm_tol);
    }
}

void run_dpi(ReportBuilder& rb, Index dim, int samples) {
    SplitMix64 seeder(rb.seed);
    for (int i = 0; i < samples; ++i) {
        Xoshiro256ss rng(seeder.next());
        const Index d = dim > 0 ? dim : ((i % 2 == 0) ? 2 : 3);
        Eigen::MatrixXd pi(d, d);
        for (Index m = 0; m < d; ++m)
            for (Index n = 0; n < d; ++n) pi(m, n) = rng.uniform01_open();
        pi /= pi.sum();
        const Channel ch = WeylChannel(d, pi).to_channel();
        const DensityMatrix rho(random_density_raw(d, rng), {d});
        const DensityMatrix tau(random_density_raw(d, rng), {d});
        const auto [before, after] = dpi_check(ch, rho, tau);
        json record;
        record["index"] = i;
        record["dim"] = d;
        record["digest"] = digest(rho.mat);
        record["before"] = rb.entropy(before);
        record["after"] = rb.entropy(after);
        const double violation = std::isinf(before) ? 0.0 : std::max(0.0, after - before);
        rb.add_case(std::move(record), violation, rb.norm_tol);
    }
}

void run_minent(ReportBuilder& rb, const BuiltChannel& built, int restarts, double opt_tol) {
    const MinEntResult res = min_output_entropy(built.channel, restarts, rb.seed, opt_tol);
    json record;
    record["value"] = rb.entropy(res.value);
    record["restarts"] = res.restarts;
    record["converged"] = res.converged;
    if (built.analytic) {
        record["analytic"] = rb.entropy(*built.analytic);
        rb.add_case(std::move(record), std::abs(res.value - *built.analytic), rb.norm_tol);
    } else {
        rb.add_case(std::move(record), 0.0, rb.norm_tol);
    }
}

void run_additivity(ReportBuilder& rb, const BuiltChannel& a, const BuiltChannel& b, int restarts) {
    const AdditivityResult res = additivity_gap(a.channel, b.channel, restarts, rb.seed);
    json record;
    record["gap"] = rb.entropy(res.gap);
    record["value_a"] = rb.entropy(res.a.value);
    record["value_b"] = rb.entropy(res.b.value);
    record["value_ab"] = rb.entropy(res.ab.value);
    record["converged_ab"] = res.ab.converged;
    // gap must sit in [-1e-4, tol]: positive excess counts in full, negative
    // excess scaled onto the same axis
    const double violation = std::max({res.gap, -res.gap * (rb.norm_tol / 1e-4), 0.0});
    rb.add_case(std::move(record), violation, rb.norm_tol);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weylcov — numerical verification of covariant Weyl channel entropy bounds"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = default_seed();
    double tol_override = -1.0;
    bool bits = false;
    app.add_option("--seed", seed, "master seed (env WEYLCOV_SEED overrides the default of 0)");
    app.add_option("--tol", tol_override, "override the command's pass tolerance");
    app.add_flag("--bits", bits, "display entropies in bits instead of nats");

    // mub
    auto* mub_cmd = app.add_subcommand("mub", "construct and verify the unbiased basis family")->fallthrough();
    Index mub_dim = 2;
    mub_cmd->add_option("--dim", mub_dim, "prime dimension")->required();

    // weyl
    auto* weyl_cmd = app.add_subcommand("weyl", "sweep the displacement commutation relations")->fallthrough();
    Index weyl_dim = 2;
    weyl_cmd->add_option("--dim", weyl_dim, "dimension")->required();

    // covariance
    auto* cov_cmd = app.add_subcommand("covariance", "measure group covariance and the spectral criterion")->fallthrough();
    ChannelFlags cov_flags;
    attach_channel_flags(cov_cmd, cov_flags);
    Index cov_group = -1;
    int cov_samples = 50;
    cov_cmd->add_option("--group-s", cov_group, "group basis family index (default: the shift line)");
    cov_cmd->add_option("--samples", cov_samples, "sampled (group element, state) pairs");

    // decompose
    auto* dec_cmd = app.add_subcommand("decompose", "convex channel decompositions")->fallthrough();
    dec_cmd->require_subcommand(1);
    auto* prop7_cmd = dec_cmd->add_subcommand("prop7", "shift-conjugated damping split")->fallthrough();
    Index p7_dim = 2;
    std::vector<double> p7_r, p7_p;
    prop7_cmd->add_option("--dim", p7_dim, "prime dimension")->required();
    prop7_cmd->add_option("--r", p7_r, "shift-line weights r_m (d entries)")->required()->delimiter(',');
    prop7_cmd->add_option("--p-tail", p7_p, "off-line weights p_n (d-1 entries)")->required()->delimiter(',');
    auto* tp_cmd = dec_cmd->add_subcommand("two-pauli", "two-Pauli split into conjugated dampings")->fallthrough();
    double tp_p = 0.25;
    tp_cmd->add_option("--p", tp_p, "noise parameter in (0, 1/3]")->required();

    // bound
    auto* bound_cmd = app.add_subcommand("bound", "entropy lower-bound verifiers")->fallthrough();
    bound_cmd->require_subcommand(1);
    auto* t1_cmd = bound_cmd->add_subcommand("t1", "phase-damping bound")->fallthrough();
    Index t1_dim = 2, t1_dimk = 2;
    int t1_mix = 2, t1_samples = 10;
    std::vector<double> t1_lambda;
    std::string t1_state = "random";
    t1_cmd->add_option("--dim", t1_dim)->required();
    t1_cmd->add_option("--lambda", t1_lambda, "damping distribution")->required()->delimiter(',');
    t1_cmd->add_option("--dimk", t1_dimk, "idle factor dimension");
    t1_cmd->add_option("--mix", t1_mix, "mixture terms per sampled state");
    t1_cmd->add_option("--samples", t1_samples);
    t1_cmd->add_option("--state", t1_state, "random | maxent");

    auto* t2_cmd = bound_cmd->add_subcommand("t2", "depolarizing bound")->fallthrough();
    Index t2_dim = 2, t2_dimk = 0;
    double t2_p = 0.5;
    int t2_samples = 10;
    std::string t2_state = "random";
    t2_cmd->add_option("--dim", t2_dim)->required();
    t2_cmd->add_option("--p", t2_p)->required();
    t2_cmd->add_option("--dimk", t2_dimk, "idle factor dimension (default: dim)");
    t2_cmd->add_option("--samples", t2_samples);
    t2_cmd->add_option("--state", t2_state, "random | maxent");

    auto* t3_cmd = bound_cmd->add_subcommand("t3", "two-Pauli bound")->fallthrough();
    double t3_p = 0.25;
    Index t3_dimk = 2;
    int t3_samples = 10;
    std::string t3_state = "random";
    t3_cmd->add_option("--p", t3_p)->required();
    t3_cmd->add_option("--dimk", t3_dimk, "idle factor dimension");
    t3_cmd->add_option("--samples", t3_samples);
    t3_cmd->add_option("--state", t3_state, "random | maxent | product");

    // trace
    auto* trace_cmd = app.add_subcommand("trace", "replay the relative-entropy derivation")->fallthrough();
    Index trace_dim = 2, trace_dimk = 2;
    int trace_mix = 2, trace_samples = 3;
    std::vector<double> trace_lambda;
    trace_cmd->add_option("--dim", trace_dim)->required();
    trace_cmd->add_option("--lambda", trace_lambda)->required()->delimiter(',');
    trace_cmd->add_option("--dimk", trace_dimk);
    trace_cmd->add_option("--mix", trace_mix);
    trace_cmd->add_option("--samples", trace_samples);

    // dpi
    auto* dpi_cmd = app.add_subcommand("dpi", "relative-entropy monotonicity sweep")->fallthrough();
    int dpi_samples = 200;
    Index dpi_dim = 0;
    dpi_cmd->add_option("--samples", dpi_samples);
    dpi_cmd->add_option("--dim", dpi_dim, "fixed dimension (default: alternate 2 and 3)");

    // minent
    auto* minent_cmd = app.add_subcommand("minent", "minimal output entropy search")->fallthrough();
    ChannelFlags minent_flags;
    attach_channel_flags(minent_cmd, minent_flags);
    int minent_restarts = 100;
    double minent_opt_tol = 1e-10;
    minent_cmd->add_option("--restarts", minent_restarts);
    minent_cmd->add_option("--opt-tol", minent_opt_tol, "per-restart descent tolerance");

    // additivity
    auto* add_cmd = app.add_subcommand("additivity", "tensor-product entropy additivity probe")->fallthrough();
    std::string add_a = "depolarizing:dim=2:p=0.5";
    std::string add_b = "depolarizing:dim=2:p=0.5";
    int add_restarts = 200;
    add_cmd->add_option("--a", add_a, "left channel spec kind:key=val:...")->required();
    add_cmd->add_option("--b", add_b, "right channel spec")->required();
    add_cmd->add_option("--restarts", add_restarts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        std::cerr << app.help() << "\n";
        return 2;
    }

    const auto started = std::chrono::steady_clock::now();
    auto make_builder = [&](const std::string& name, double default_tol) {
        ReportBuilder rb(name, default_tol);
        if (tol_override > 0.0) rb.tol = tol_override;
        rb.seed = seed;
        rb.unit_factor = bits ? 1.0 / std::log(2.0) : 1.0;
        rb.params["units"] = bits ? "bits" : "nats";
        rb.params["tolerance"] = rb.tol;
        return rb;
    };

    try {
        if (*mub_cmd) {
            ReportBuilder rb = make_builder("mub", 1e-10);
            rb.params["dim"] = mub_dim;
            run_mub(rb, mub_dim);
            return rb.emit(started);
        }
        if (*weyl_cmd) {
            ReportBuilder rb = make_builder("weyl", 1e-13);
            rb.params["dim"] = weyl_dim;
            run_weyl(rb, weyl_dim);
            return rb.emit(started);
        }
        if (*cov_cmd) {
            ReportBuilder rb = make_builder("covariance", 1e-9);
            const BuiltChannel built = build_channel(cov_flags);
            rb.params.update(built.params);
            rb.params["samples"] = cov_samples;
            run_covariance(rb, built, cov_group, cov_samples);
            return rb.emit(started);
        }
        if (*prop7_cmd) {
            ReportBuilder rb = make_builder("decompose-prop7", 1e-12);
            rb.params["dim"] = p7_dim;
            rb.params["r"] = p7_r;
            rb.params["p_tail"] = p7_p;
            run_decompose_split(rb, p7_dim, p7_r, p7_p);
            return rb.emit(started);
        }
        if (*tp_cmd) {
            ReportBuilder rb = make_builder("decompose-two-pauli", 1e-10);
            rb.params["p"] = tp_p;
            run_decompose_two_pauli(rb, tp_p);
            return rb.emit(started);
        }
        if (*t1_cmd) {
            ReportBuilder rb = make_builder("bound-t1", 1e-9);
            const RVec lambda = parse_distribution(t1_lambda, t1_dim, "--lambda");
            rb.params["dim"] = t1_dim;
            rb.params["lambda"] = t1_lambda;
            rb.params["dimk"] = t1_dimk;
            rb.params["mix"] = t1_mix;
            rb.params["samples"] = t1_samples;
            rb.params["state"] = t1_state;
            run_bound_t1(rb, t1_dim, lambda, t1_dimk, t1_mix, t1_samples, t1_state);
            return rb.emit(started);
        }
        if (*t2_cmd) {
            ReportBuilder rb = make_builder("bound-t2", 1e-9);
            const Index dimk = t2_dimk > 0 ? t2_dimk : t2_dim;
            rb.params["dim"] = t2_dim;
            rb.params["p"] = t2_p;
            rb.params["dimk"] = dimk;
            rb.params["samples"] = t2_samples;
            rb.params["state"] = t2_state;
            run_bound_t2(rb, t2_dim, t2_p, dimk, t2_samples, t2_state);
            return rb.emit(started);
        }
        if (*t3_cmd) {
            ReportBuilder rb = make_builder("bound-t3", 1e-9);
            rb.params["p"] = t3_p;
            rb.params["dimk"] = t3_dimk;
            rb.params["samples"] = t3_samples;
            rb.params["state"] = t3_state;
            run_bound_t3(rb, t3_p, t3_dimk, t3_samples, t3_state);
            return rb.emit(started);
        }
        if (*trace_cmd) {
            ReportBuilder rb = make_builder("trace", 1e-9);
            const RVec lambda = parse_distribution(trace_lambda, trace_dim, "--lambda");
            rb.params["dim"] = trace_dim;
            rb.params["lambda"] = trace_lambda;
            rb.params["dimk"] = trace_dimk;
            rb.params["mix"] = trace_mix;
            rb.params["samples"] = trace_samples;
            run_trace(rb, trace_dim, lambda, trace_dimk, trace_mix, trace_samples);
            return rb.emit(started);
        }
        if (*dpi_cmd) {
            ReportBuilder rb = make_builder("dpi", 1e-9);
            rb.params["samples"] = dpi_samples;
            rb.params["dim"] = dpi_dim;
            run_dpi(rb, dpi_dim, dpi_samples);
            return rb.emit(started);
        }
        if (*minent_cmd) {
            ReportBuilder rb = make_builder("minent", 1e-6);
            const BuiltChannel built = build_channel(minent_flags);
            rb.params.update(built.params);
            rb.params["restarts"] = minent_restarts;
            rb.params["opt_tol"] = minent_opt_tol;
            run_minent(rb, built, minent_restarts, minent_opt_tol);
            return rb.emit(started);
        }
        if (*add_cmd) {
            ReportBuilder rb = make_builder("additivity", 1e-6);
            const BuiltChannel a = parse_channel_spec(add_a);
            const BuiltChannel b = parse_channel_spec(add_b);
            rb.params["a"] = add_a;
            rb.params["b"] = add_b;
            rb.params["restarts"] = add_restarts;
            run_additivity(rb, a, b, add_restarts);
            return rb.emit(started);
        }
    } catch (const std::invalid_argument& e) {
        json report;
        report["command"] = app.get_subcommands().empty() ? "" : app.get_subcommands()[0]->get_name();
        report["seed"] = seed;
        report["error"] = {{"type", "precondition"}, {"message", e.what()}};
        report["pass"] = false;
        report["version"] = kVersion;
        std::cout << report.dump(2) << "\n";
        std::cerr << "precondition error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}

#include "cli.hpp"

#include "infoframe/descriptor.hpp"
#include "infoframe/json_io.hpp"
#include "infoframe/monte_carlo.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace infoframe::cli {

namespace {

using nlohmann::json;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct RunConfig {
    Index dim = 2;
    std::string ensemble = "a";
    std::vector<std::string> operators;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    int workers = 1;
    std::string format = "csv";
    std::string output_path;
};

struct FamilyResult {
    bool supported = true;
    double closed_form = 0.0;
    std::optional<McEstimate> mc;
};

struct OperatorReport {
    std::string descriptor;
    FamilyResult local, global, bell;
    ComparisonReport deltas;
};

const FamilyResult& result_for(const OperatorReport& report, FamilyTag tag) {
    switch (tag) {
        case FamilyTag::Local: return report.local;
        case FamilyTag::Global: return report.global;
        case FamilyTag::Bell: return report.bell;
    }
    throw std::logic_error("result_for: bad tag");
}

OperatorReport build_report(const std::string& descriptor, const Matrix& op,
                            const RunConfig& cfg, bool closed_forms, bool monte_carlo) {
    const EnsembleKind kind = parse_ensemble(cfg.ensemble);
    const CovariantFamily families[3] = {local_family(cfg.dim), global_family(cfg.dim),
                                         bell_family(cfg.dim)};
    OperatorReport report;
    report.descriptor = descriptor;
    report.deltas = comparison(op, kind, cfg.dim);

    McOptions opts;
    opts.samples = cfg.samples;
    opts.seed = cfg.seed;
    opts.workers = cfg.workers;

    for (const CovariantFamily& family : families) {
        FamilyResult result;
        try {
            if (closed_forms) result.closed_form = closed_form_noise(family, op, kind).total;
            if (monte_carlo) result.mc = mc_noise(family, op, kind, opts);
        } catch (const BellSupportError&) {
            result.supported = false;
        }
        switch (family.tag) {
            case FamilyTag::Local: report.local = result; break;
            case FamilyTag::Global: report.global = result; break;
            case FamilyTag::Bell: report.bell = result; break;
        }
    }
    return report;
}

void render_csv(const std::vector<OperatorReport>& reports, const RunConfig& cfg,
                bool closed_forms, std::ostream& out) {
    out << "operator,ensemble,family,closed_form,mc_value,mc_stderr,supported\n";
    for (const OperatorReport& report : reports) {
        for (const FamilyTag tag : {FamilyTag::Local, FamilyTag::Global, FamilyTag::Bell}) {
            const FamilyResult& r = result_for(report, tag);
            out << report.descriptor << ',' << cfg.ensemble << ',' << family_name(tag) << ',';
            if (!r.supported) {
                out << "unsupported";
            } else if (closed_forms) {
                out << fmt(r.closed_form);
            }
            out << ',';
            if (r.mc) out << fmt(r.mc->value);
            out << ',';
            if (r.mc) out << fmt(r.mc->std_error);
            out << ',' << (r.supported ? "true" : "false") << '\n';
        }
    }
}

json family_json(const FamilyResult& r, bool closed_forms) {
    json j;
    j["supported"] = r.supported;
    if (!r.supported) {
        j["closed_form"] = "unsupported";
    } else if (closed_forms) {
        j["closed_form"] = r.closed_form;
    }
    j["mc_value"] = r.mc ? json(r.mc->value) : json(nullptr);
    j["mc_stderr"] = r.mc ? json(r.mc->std_error) : json(nullptr);
    return j;
}

void render_json(const std::vector<OperatorReport>& reports, const RunConfig& cfg,
                 bool closed_forms, std::ostream& out) {
    json root;
    root["dim"] = cfg.dim;
    root["ensemble"] = cfg.ensemble;
    root["samples"] = cfg.samples;
    root["seed"] = cfg.seed;
    root["workers"] = cfg.workers;
    json results = json::array();
    for (const OperatorReport& report : reports) {
        json r;
        r["operator"] = report.descriptor;
        r["families"] = {{"local", family_json(report.local, closed_forms)},
                         {"global", family_json(report.global, closed_forms)},
                         {"bell", family_json(report.bell, closed_forms)}};
        r["deltas"] = {{"loc_minus_glob", report.deltas.loc_minus_glob},
                       {"glob_minus_bell", report.deltas.glob_minus_bell},
                       {"loc_minus_bell", report.deltas.loc_minus_bell}};
        r["bell_estimable"] = report.deltas.bell_estimable;
        r["ordering"] = report.deltas.ordering;
        results.push_back(std::move(r));
    }
    root["results"] = std::move(results);
    out << root.dump(2) << '\n';
}

int run_comparison_command(const RunConfig& cfg, bool closed_forms, bool monte_carlo,
                           std::ostream& out, std::ostream& err) {
    std::vector<OperatorReport> reports;
    for (const std::string& descriptor : cfg.operators) {
        const Matrix op = parse_operator_descriptor(descriptor, cfg.dim);
        reports.push_back(build_report(descriptor, op, cfg, closed_forms, monte_carlo));
    }

    std::ostringstream rendered;
    if (cfg.format == "json") {
        render_json(reports, cfg, closed_forms, rendered);
    } else {
        render_csv(reports, cfg, closed_forms, rendered);
    }
    if (cfg.output_path.empty()) {
        out << rendered.str();
    } else {
        std::ofstream file(cfg.output_path);
        if (!file) {
            err << "cannot write to " << cfg.output_path << "\n";
            return 2;
        }
        file << rendered.str();
    }
    return 0;
}

// ----------------------------- verify battery --------------------------------

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

Matrix gaussian_matrix(Index rows, Index cols, RngStream& rng) {
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = Complex(rng.gaussian(), rng.gaussian());
    return m;
}

void check_twirls(Index d, const McOptions& opts, RngStream& rng, std::vector<Check>& checks) {
    // order 1: d * mean(U X U^dag) = Tr[X] I
    {
        const Matrix x = gaussian_matrix(d, d, rng);
        const MatrixEstimate est = mc_twirl(x, 1, d, opts);
        const Matrix expected = x.trace() * Matrix::Identity(d, d);
        const double dev = (est.value - expected).cwiseAbs().maxCoeff();
        const double gate = 3.0 * est.std_error.maxCoeff() + 1e-12;
        checks.push_back({"twirl-order-1", dev <= gate,
                          "max_dev=" + fmt(dev) + " gate=" + fmt(gate)});
    }
    // order 2: against the symmetric/antisymmetric projector form
    {
        const Matrix x = gaussian_matrix(d * d, d * d, rng);
        const MatrixEstimate est = mc_twirl(x, 2, d, opts);
        const Matrix ps = symmetric_projector(d);
        const Matrix pa = antisymmetric_projector(d);
        const Matrix expected = 2.0 / (static_cast<double>(d) + 1.0) * (ps * x).trace() * ps +
                                2.0 / (static_cast<double>(d) - 1.0) * (pa * x).trace() * pa;
        const double dev = (est.value - expected).cwiseAbs().maxCoeff();
        const double gate = 3.0 * est.std_error.maxCoeff() + 1e-12;
        checks.push_back({"twirl-order-2", dev <= gate,
                          "max_dev=" + fmt(dev) + " gate=" + fmt(gate)});
    }
}

void check_reconstruction(Index d, RngStream& rng, std::vector<Check>& checks) {
    const DiscretePovm povm = random_povm(d, d * d + 2, rng);
    const DualFrame dual = canonical_dual(povm);
    const double residual = reconstruction_residual(dual);
    checks.push_back({"reconstruction-round-trip", residual < 1e-9,
                      "max_residual=" + fmt(residual)});
}

void check_inequality_chain(Index d, RngStream& rng, std::vector<Check>& checks) {
    const auto basis = weyl_basis(d);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        Matrix op = Matrix::Zero(d * d, d * d);
        for (Index i = 1; i < d * d; ++i) {
            for (Index j = 1; j < d * d; ++j) {
                op += Complex(rng.gaussian(), rng.gaussian()) *
                      kron(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]);
            }
        }
        const NoiseBreakdown bell = closed_form_noise(bell_family(d), op, EnsembleKind::AllPure);
        const NoiseBreakdown glob = closed_form_noise(global_family(d), op, EnsembleKind::AllPure);
        const NoiseBreakdown loc = closed_form_noise(local_family(d), op, EnsembleKind::AllPure);
        worst = std::max({worst, bell.total - glob.total, glob.total - loc.total});
    }
    checks.push_back({"inequality-chain", worst <= 1e-10, "worst_violation=" + fmt(worst)});
}

void check_zero_noise(Index d, std::vector<Check>& checks) {
    const Matrix eye = Matrix::Identity(d * d, d * d);
    double worst = 0.0;
    for (const EnsembleKind kind :
         {EnsembleKind::AllPure, EnsembleKind::Factorized, EnsembleKind::MaxEntangled}) {
        worst = std::max(worst, std::abs(closed_form_noise(local_family(d), eye, kind).total));
        worst = std::max(worst, std::abs(closed_form_noise(global_family(d), eye, kind).total));
        worst = std::max(worst, std::abs(closed_form_noise(bell_family(d), eye, kind).total));
    }
    checks.push_back({"zero-noise-identity", worst < 1e-12, "max_abs=" + fmt(worst)});
}

void check_mc_agreement(Index d, const McOptions& opts, std::vector<Check>& checks) {
    const auto basis = weyl_basis(d);
    const Matrix op = kron(basis[1], basis[static_cast<std::size_t>(d)]);  // traceless (x) traceless
    double worst_ratio = 0.0;
    for (const CovariantFamily& family : {local_family(d), global_family(d), bell_family(d)}) {
        const double closed = closed_form_noise(family, op, EnsembleKind::AllPure).total;
        const McEstimate mc = mc_noise(family, op, EnsembleKind::AllPure, opts);
        const double gate = 3.0 * mc.std_error + 1e-12;
        worst_ratio = std::max(worst_ratio, std::abs(mc.value - closed) / gate);
    }
    checks.push_back({"mc-vs-closed-form", worst_ratio <= 1.0, "worst_dev_over_gate=" + fmt(worst_ratio)});
}

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    McOptions opts;
    opts.samples = cfg.samples > 0 ? cfg.samples : 20000;
    opts.seed = cfg.seed;
    opts.workers = cfg.workers;
    RngStream rng(cfg.seed, 0xFA57);  // fixture stream, separate from estimator blocks

    std::vector<Check> checks;
    check_twirls(cfg.dim, opts, rng, checks);
    check_reconstruction(cfg.dim, rng, checks);
    check_inequality_chain(cfg.dim, rng, checks);
    check_zero_noise(cfg.dim, checks);
    check_mc_agreement(cfg.dim, opts, checks);

    std::ostringstream rendered;
    bool all_pass = true;
    for (const Check& check : checks) {
        all_pass = all_pass && check.pass;
        rendered << (check.pass ? "PASS " : "FAIL ") << check.name << ' ' << check.detail << '\n';
    }
    rendered << (all_pass ? "OK" : "FAILED") << " (" << checks.size() << " checks, dim=" << cfg.dim
             << ", samples=" << opts.samples << ", seed=" << cfg.seed << ")\n";

    if (cfg.output_path.empty()) {
        out << rendered.str();
    } else {
        std::ofstream file(cfg.output_path);
        if (!file) {
            err << "cannot write to " << cfg.output_path << "\n";
            return 2;
        }
        file << rendered.str();
    }
    return all_pass ? 0 : 1;
}

int run_frame_info(const std::string& povm_path, const std::string& output_path,
                   std::ostream& out, std::ostream& err) {
    const DiscretePovm povm = load_povm(povm_path);
    const FrameOperator fop = frame_operator(povm);
    const DualFrame dual = canonical_dual(povm, fop);

    json root;
    root["dim"] = povm.dim;
    root["n_outcomes"] = povm.elements.size();
    root["rank"] = fop.rank;
    root["infocomplete"] = fop.infocomplete();
    json eigenvalues = json::array();
    for (Index k = 0; k < fop.eigenvalues.size(); ++k) eigenvalues.push_back(fop.eigenvalues(k));
    root["eigenvalues"] = std::move(eigenvalues);
    root["reconstruction_residual"] = reconstruction_residual(dual);
    root["canonical_dual"] = json::parse(dual_to_json(dual));

    if (output_path.empty()) {
        out << root.dump(2) << '\n';
    } else {
        std::ofstream file(output_path);
        if (!file) {
            err << "cannot write to " << output_path << "\n";
            return 2;
        }
        file << root.dump(2) << '\n';
    }
    return 0;
}

void add_common_options(CLI::App* cmd, RunConfig& cfg, bool with_ensemble) {
    cmd->add_option("--dim", cfg.dim, "subsystem dimension d")->check(CLI::Range(2, 16));
    if (with_ensemble) {
        cmd->add_option("--ensemble", cfg.ensemble, "input-state ensemble")
            ->check(CLI::IsMember({"a", "f", "e"}));
    }
    cmd->add_option("--seed", cfg.seed, "random seed")->envname("INFOFRAME_SEED");
    cmd->add_option("--workers", cfg.workers, "worker threads for Monte Carlo")
        ->check(CLI::Range(1, 256));
    cmd->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", cfg.output_path, "write the report to a file");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"informationally complete measurements: estimation-variance toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string povm_path;

    CLI::App* compare = app.add_subcommand(
        "compare", "closed-form noises (optionally with Monte Carlo) for given operators");
    add_common_options(compare, cfg, true);
    compare->add_option("--op", cfg.operators, "operator descriptor (repeatable)")->required();
    compare->add_option("--samples", cfg.samples, "Monte Carlo samples (0 = closed forms only)")
        ->check(CLI::NonNegativeNumber);

    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo noise estimates with standard errors");
    add_common_options(mc, cfg, true);
    mc->add_option("--op", cfg.operators, "operator descriptor (repeatable)")->required();
    mc->add_option("--samples", cfg.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);

    CLI::App* verify = app.add_subcommand("verify", "run the identity/invariant battery");
    add_common_options(verify, cfg, false);
    verify->add_option("--samples", cfg.samples, "Monte Carlo samples per check")
        ->check(CLI::PositiveNumber);

    CLI::App* frame_info = app.add_subcommand(
        "frame-info", "frame-operator spectrum, rank, and canonical dual of a POVM JSON file");
    frame_info->add_option("--povm", povm_path, "POVM JSON file")->required();
    frame_info->add_option("--out", cfg.output_path, "write the report to a file");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("infoframe");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << '\n';
        return 2;
    }

    try {
        if (compare->parsed()) return run_comparison_command(cfg, true, cfg.samples > 0, out, err);
        if (mc->parsed()) {
            if (cfg.samples == 0) cfg.samples = 10000;
            return run_comparison_command(cfg, false, true, out, err);
        }
        if (verify->parsed()) return run_verify(cfg, out, err);
        if (frame_info->parsed()) return run_frame_info(povm_path, cfg.output_path, out, err);
    } catch (const DescriptorError& e) {
        err << "invalid operator descriptor: " << e.what() << " (offending token: '" << e.token()
            << "')\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    err << "no subcommand given\n";
    return 2;
}

}  // namespace infoframe::cli

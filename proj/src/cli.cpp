#include <bellport/cli.hpp>

#include <bellport/sweep.hpp>
#include <bellport/verify.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

namespace bellport::cli {
namespace {

void require_finite(double v, const std::string& flag) {
    if (!std::isfinite(v)) throw UsageError(flag + ": value must be a finite real");
}

std::string amp_text(std::complex<double> z) {
    std::string s = format_real(z.real());
    const double im = z.imag();
    s += (im < 0 || std::signbit(im)) && im != 0.0 ? " - " : " + ";
    s += format_real(std::abs(im)) + "i";
    return s;
}

nlohmann::ordered_json complex_json(std::complex<double> z) {
    return nlohmann::ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

} // namespace

CliConfig parse_args(const std::vector<std::string>& args) {
    CliConfig cfg;
    CLI::App app{"Two-species Bell-resource teleportation simulator", "bellport"};
    app.require_subcommand(1);
    app.set_help_flag("-h,--help", "Print help");

    const std::map<std::string, CorrectionStrategy> strategies{
        {"none", CorrectionStrategy::NoCorrection},
        {"pauli", CorrectionStrategy::PauliOnly},
        {"pauli+rot", CorrectionStrategy::PauliPlusRotation}};
    const std::map<std::string, FidelityConvention> conventions{
        {"sq", FidelityConvention::SquaredOverlap}, {"amp", FidelityConvention::AmplitudeOverlap}};
    const std::map<std::string, OutputFormat> formats{
        {"table", OutputFormat::Table}, {"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}};

    bool degrees = false;
    std::string panel;
    std::vector<double> ndeltas;
    std::string out_path;
    int theta_points = 0;
    int alpha_points = 0;
    std::string strategy = "pauli+rot";
    std::string convention = "sq";
    std::string format;

    auto* teleport = app.add_subcommand("teleport", "Run the protocol once and report every branch");
    teleport->add_option("--theta", cfg.theta, "Species mixing angle (radians unless --degrees)")->required();
    teleport->add_option("--ndelta", cfg.ndelta, "Distortion strength n*delta")->required();
    teleport->add_option("--alpha", cfg.alpha, "Real amplitude of |0> in the input state")
        ->required()
        ->check(CLI::Range(-1.0, 1.0));
    teleport->add_option("--beta-phase", cfg.beta_phase, "Phase of the |1> amplitude (radians)");
    teleport->add_option("--strategy", strategy, "none | pauli | pauli+rot")->check(CLI::IsMember(strategies));
    teleport->add_option("--convention", convention, "Fidelity convention for the headline average: sq | amp")
        ->check(CLI::IsMember(conventions));
    teleport->add_option("--format", format, "table | csv | json")->check(CLI::IsMember(formats));
    teleport->add_flag("--degrees", degrees, "Interpret --theta in degrees");

    auto* sweep = app.add_subcommand("sweep", "Write a fidelity surface grid as CSV");
    sweep->add_option("--panel", panel, "Preset: a (no correction), b (Pauli), c (Pauli + rotation)")
        ->check(CLI::IsMember({"a", "b", "c"}));
    sweep->add_option("--theta-points", theta_points, "Theta grid points over [0, pi/2]");
    sweep->add_option("--alpha-points", alpha_points, "Alpha grid points over [0, 1]");
    sweep->add_option("--ndelta", ndeltas, "Comma-separated n*delta values")->delimiter(',');
    sweep->add_option("--strategy", strategy, "Used when no --panel is given")->check(CLI::IsMember(strategies));
    sweep->add_option("--convention", convention, "sq | amp")->check(CLI::IsMember(conventions));
    sweep->add_option("--format", format, "csv | json")->check(CLI::IsMember(formats));
    sweep->add_option("--out", out_path, "Output file")->required();

    auto* table1 = app.add_subcommand("table1", "Compare simulated branch states with their closed forms");
    table1->add_option("--theta", cfg.theta, "Species mixing angle (radians unless --degrees)")->required();
    table1->add_option("--ndelta", cfg.ndelta, "Distortion strength n*delta")->required();
    table1->add_option("--alpha", cfg.alpha, "Real amplitude of |0> in the input state")
        ->required()
        ->check(CLI::Range(-1.0, 1.0));
    table1->add_option("--beta-phase", cfg.beta_phase, "Phase of the |1> amplitude (radians)");
    table1->add_option("--tolerance", cfg.tolerance, "Maximum allowed deviation");
    table1->add_flag("--degrees", degrees, "Interpret --theta in degrees");

    auto* verify = app.add_subcommand("verify", "Run the invariant suite");
    verify->add_option("--seed", cfg.seed, "Seed for random states and sampling");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        std::ostringstream os;
        const CLI::App* target = &app;
        for (auto* sub : {teleport, sweep, table1, verify})
            if (sub->parsed()) target = sub;
        os << target->help();
        cfg.help_text = os.str();
        return cfg;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    cfg.strategy = strategies.at(strategy);
    cfg.convention = conventions.at(convention);
    if (!format.empty()) cfg.format = formats.at(format);

    if (teleport->parsed()) cfg.subcommand = Subcommand::Teleport;
    if (sweep->parsed()) cfg.subcommand = Subcommand::Sweep;
    if (table1->parsed()) cfg.subcommand = Subcommand::Table1;
    if (verify->parsed()) cfg.subcommand = Subcommand::Verify;

    if (cfg.subcommand == Subcommand::Teleport || cfg.subcommand == Subcommand::Table1) {
        require_finite(cfg.theta, "--theta");
        require_finite(cfg.ndelta, "--ndelta");
        require_finite(cfg.alpha, "--alpha");
        require_finite(cfg.beta_phase, "--beta-phase");
        if (std::abs(cfg.alpha) > 1.0) throw UsageError("--alpha: |alpha| must not exceed 1");
        if (degrees) cfg.theta *= std::numbers::pi / 180.0;
    }
    if (cfg.subcommand == Subcommand::Table1) {
        require_finite(cfg.tolerance, "--tolerance");
        if (!(cfg.tolerance > 0)) throw UsageError("--tolerance: must be positive");
    }
    if (cfg.subcommand == Subcommand::Sweep) {
        if (!panel.empty()) cfg.panel = panel.front();
        if (sweep->count("--theta-points")) {
            if (theta_points < 2) throw UsageError("--theta-points: need at least 2");
            cfg.theta_points = theta_points;
        }
        if (sweep->count("--alpha-points")) {
            if (alpha_points < 2) throw UsageError("--alpha-points: need at least 2");
            cfg.alpha_points = alpha_points;
        }
        if (sweep->count("--ndelta")) {
            for (double v : ndeltas) require_finite(v, "--ndelta");
            std::vector<double> sorted = ndeltas;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw UsageError("--ndelta: values must be distinct");
            cfg.ndelta_list = ndeltas;
        }
        if (format.empty()) cfg.format = OutputFormat::Csv;
        if (cfg.format == OutputFormat::Table) throw UsageError("--format: sweep writes csv or json");
        cfg.output_path = out_path;
    }
    return cfg;
}

int cmd_teleport(const CliConfig& cfg, std::ostream& out) {
    const auto input = InputState<double>::from_real(cfg.alpha, cfg.beta_phase);
    const ResourceParams<double> params{cfg.theta, cfg.ndelta, std::nullopt};
    const auto rep = run_enumerated(input, params, cfg.strategy, cfg.convention);

    auto amp = [](const TeleportOutcome<double>& o, int k) {
        return o.teleported ? (*o.teleported)[k] : std::complex<double>{};
    };

    switch (cfg.format) {
    case OutputFormat::Json: {
        nlohmann::ordered_json j;
        j["theta"] = cfg.theta;
        j["ndelta"] = cfg.ndelta;
        j["alpha"] = complex_json(input.alpha());
        j["beta"] = complex_json(input.beta());
        j["strategy"] = to_string(cfg.strategy);
        j["convention"] = to_string(cfg.convention);
        j["outcomes"] = nlohmann::ordered_json::array();
        for (const auto& o : rep.outcomes) {
            nlohmann::ordered_json row;
            row["outcome"] = std::to_string(o.m1) + std::to_string(o.m2);
            row["probability"] = o.probability;
            if (o.teleported) {
                row["amp0"] = complex_json(amp(o, 0));
                row["amp1"] = complex_json(amp(o, 1));
            } else {
                row["amp0"] = nullptr;
                row["amp1"] = nullptr;
            }
            row["fidelity_sq"] = o.fidelity_sq;
            row["fidelity_amp"] = o.fidelity_amp;
            j["outcomes"].push_back(std::move(row));
        }
        j["avg_fidelity_sq"] = rep.avg_fidelity_sq;
        j["avg_fidelity_amp"] = rep.avg_fidelity_amp;
        j["fidelity"] = rep.average_fidelity();
        out << j.dump(2) << '\n';
        break;
    }
    case OutputFormat::Csv:
        out << "outcome,probability,amp0_re,amp0_im,amp1_re,amp1_im,fidelity_sq,fidelity_amp\n";
        for (const auto& o : rep.outcomes) {
            out << o.m1 << o.m2 << ',' << format_real(o.probability) << ',' << format_real(amp(o, 0).real()) << ','
                << format_real(amp(o, 0).imag()) << ',' << format_real(amp(o, 1).real()) << ','
                << format_real(amp(o, 1).imag()) << ',' << format_real(o.fidelity_sq) << ','
                << format_real(o.fidelity_amp) << '\n';
        }
        break;
    case OutputFormat::Table:
        out << "theta = " << format_real(cfg.theta) << ", ndelta = " << format_real(cfg.ndelta)
            << ", strategy = " << to_string(cfg.strategy) << '\n';
        out << "input: " << amp_text(input.alpha()) << " |0> + (" << amp_text(input.beta()) << ") |1>\n";
        out << std::left << std::setw(9) << "outcome" << std::setw(20) << "probability" << std::setw(68)
            << "teleported state" << std::setw(20) << "F_sq" << "F_amp\n";
        for (const auto& o : rep.outcomes) {
            std::string state = o.teleported ? "(" + amp_text(amp(o, 0)) + ") |0> + (" + amp_text(amp(o, 1)) + ") |1>"
                                             : "undefined";
            out << std::setw(9) << ("|" + std::to_string(o.m1) + std::to_string(o.m2) + ">") << std::setw(20)
                << format_real(o.probability) << std::setw(68) << state << std::setw(20) << format_real(o.fidelity_sq)
                << format_real(o.fidelity_amp) << '\n';
        }
        out << "average fidelity (sq)  = " << format_real(rep.avg_fidelity_sq) << '\n';
        out << "average fidelity (amp) = " << format_real(rep.avg_fidelity_amp) << '\n';
        break;
    }
    return kExitOk;
}

int cmd_table1(const CliConfig& cfg, std::ostream& out) {
    const auto input = InputState<double>::from_real(cfg.alpha, cfg.beta_phase);
    const double dev = cross_check_table1(cfg.theta, cfg.ndelta, input);
    const bool ok = dev <= cfg.tolerance;
    out << "max deviation = " << std::setprecision(6) << std::scientific << dev << " (tolerance "
        << cfg.tolerance << ")" << std::defaultfloat << '\n';
    out << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_sweep(const CliConfig& cfg, std::ostream& out) {
    SweepGrid grid = cfg.panel ? figure2_preset(*cfg.panel) : SweepGrid{};
    if (!cfg.panel) grid.strategy = cfg.strategy;
    grid.convention = cfg.convention;
    if (cfg.theta_points) grid.theta_points = *cfg.theta_points;
    if (cfg.alpha_points) grid.alpha_points = *cfg.alpha_points;
    if (cfg.ndelta_list) grid.ndelta_values = *cfg.ndelta_list;

    const auto rows = run_sweep(grid);
    std::ofstream file(*cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open " + *cfg.output_path + " for writing", 0);
    const std::size_t written = cfg.format == OutputFormat::Json ? write_json(rows, file) : write_csv(rows, file);

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& r : rows) {
        lo = std::min(lo, r.fidelity);
        hi = std::max(hi, r.fidelity);
    }
    out << "wrote " << written << " rows to " << *cfg.output_path << "; fidelity min " << std::setprecision(12) << lo
        << " max " << hi << std::setprecision(6) << '\n';
    return kExitOk;
}

int cmd_verify(const CliConfig& cfg, std::ostream& out) {
    const auto results = run_invariant_suite(cfg.seed);
    std::size_t failed = 0;
    for (const auto& r : results) {
        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << '\n';
        if (!r.passed) ++failed;
    }
    out << (results.size() - failed) << "/" << results.size() << " checks passed\n";
    if (failed) {
        out << "failed:";
        for (const auto& r : results)
            if (!r.passed) out << "\n  " << r.name;
        out << '\n';
    }
    return failed ? kExitCheckFailed : kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    try {
        cfg = parse_args(args);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\nrun with --help for usage\n";
        return kExitUsage;
    }
    if (cfg.help_text) {
        out << *cfg.help_text;
        return kExitOk;
    }
    try {
        switch (cfg.subcommand) {
        case Subcommand::Teleport: return cmd_teleport(cfg, out);
        case Subcommand::Table1: return cmd_table1(cfg, out);
        case Subcommand::Sweep: return cmd_sweep(cfg, out);
        case Subcommand::Verify: return cmd_verify(cfg, out);
        }
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << " (" << e.rows_written() << " rows written)\n";
        return kExitCheckFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitOk;
}

} // namespace bellport::cli

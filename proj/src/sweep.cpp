#include <bellport/sweep.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace bellport {

void SweepGrid::validate() const {
    if (ndelta_values.empty()) throw ArgumentError("sweep: n*delta list is empty");
    for (std::size_t i = 0; i < ndelta_values.size(); ++i) {
        if (!std::isfinite(ndelta_values[i])) throw ArgumentError("sweep: non-finite n*delta value");
        for (std::size_t j = 0; j < i; ++j) {
            if (ndelta_values[j] == ndelta_values[i]) throw ArgumentError("sweep: repeated n*delta value");
        }
    }
    if (theta_points < 2 || alpha_points < 2) throw ArgumentError("sweep: each axis needs at least 2 points");
    for (double b : {theta_min, theta_max, alpha_min, alpha_max, beta_phase}) {
        if (!std::isfinite(b)) throw ArgumentError("sweep: grid bounds must be finite");
    }
    if (std::abs(alpha_min) > 1.0 || std::abs(alpha_max) > 1.0) {
        throw ArgumentError("sweep: alpha bounds must satisfy |alpha| <= 1");
    }
}

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 2) throw ArgumentError("linspace: need at least 2 points");
    std::vector<double> v(points);
    const double step = (hi - lo) / double(points - 1);
    for (int i = 0; i < points; ++i) v[i] = lo + step * double(i);
    v.back() = hi;
    return v;
}

std::vector<double> SweepGrid::thetas() const { return linspace(theta_min, theta_max, theta_points); }
std::vector<double> SweepGrid::alphas() const { return linspace(alpha_min, alpha_max, alpha_points); }

std::size_t SweepGrid::row_count() const {
    return ndelta_values.size() * std::size_t(theta_points) * std::size_t(alpha_points);
}

SurfaceRow evaluate_point(double theta, double alpha, double ndelta, const SweepGrid& grid) {
    const auto input = InputState<double>::from_real(alpha, grid.beta_phase);
    const ResourceParams<double> params{theta, ndelta, std::nullopt};
    const auto report = run_enumerated(input, params, grid.strategy, grid.convention);
    SurfaceRow row;
    row.theta = theta;
    row.alpha = alpha;
    row.ndelta = ndelta;
    row.strategy = grid.strategy;
    row.convention = grid.convention;
    row.fidelity = report.average_fidelity();
    row.p00 = report.outcomes[0].probability;
    row.p01 = report.outcomes[1].probability;
    row.p10 = report.outcomes[2].probability;
    row.p11 = report.outcomes[3].probability;
    return row;
}

std::vector<SurfaceRow> run_sweep(const SweepGrid& grid) {
    grid.validate();
    const auto thetas = grid.thetas();
    const auto alphas = grid.alphas();
    std::vector<SurfaceRow> rows;
    rows.reserve(grid.row_count());
    for (double nd : grid.ndelta_values) {
        for (double th : thetas) {
            for (double al : alphas) rows.push_back(evaluate_point(th, al, nd, grid));
        }
    }
    return rows;
}

SweepGrid figure2_preset(char panel) {
    SweepGrid g;
    switch (panel) {
    case 'a': g.strategy = CorrectionStrategy::NoCorrection; break;
    case 'b': g.strategy = CorrectionStrategy::PauliOnly; break;
    case 'c': g.strategy = CorrectionStrategy::PauliPlusRotation; break;
    default: throw ArgumentError(std::string("unknown figure panel: ") + panel);
    }
    return g;
}

SweepGrid figure2_preset(std::string_view panel) {
    if (panel.size() != 1) throw ArgumentError("unknown figure panel: " + std::string(panel));
    return figure2_preset(panel.front());
}

std::string format_real(double v) {
    if (v == 0.0) v = 0.0;  // print -0 as 0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::size_t write_csv(const std::vector<SurfaceRow>& rows, std::ostream& out) {
    out << kCsvHeader << '\n';
    if (!out) throw IoError("write_csv: failed writing header", 0);
    std::size_t written = 0;
    for (const auto& r : rows) {
        out << format_real(r.theta) << ',' << format_real(r.alpha) << ',' << format_real(r.ndelta) << ','
            << to_string(r.strategy) << ',' << to_string(r.convention) << ',' << format_real(r.fidelity) << ','
            << format_real(r.p00) << ',' << format_real(r.p01) << ',' << format_real(r.p10) << ','
            << format_real(r.p11) << '\n';
        if (!out) throw IoError("write_csv: failed writing row", written);
        ++written;
    }
    out.flush();
    if (!out) throw IoError("write_csv: flush failed", written);
    return written;
}

std::size_t write_json(const std::vector<SurfaceRow>& rows, std::ostream& out) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        arr.push_back({{"theta", r.theta},
                       {"alpha", r.alpha},
                       {"ndelta", r.ndelta},
                       {"strategy", to_string(r.strategy)},
                       {"convention", to_string(r.convention)},
                       {"fidelity", r.fidelity},
                       {"p00", r.p00},
                       {"p01", r.p01},
                       {"p10", r.p10},
                       {"p11", r.p11}});
    }
    out << arr.dump(2) << '\n';
    out.flush();
    if (!out) throw IoError("write_json: write failed", 0);
    return rows.size();
}

} // namespace bellport

#pragma once

// Fidelity surfaces over (theta, alpha, n*delta) grids, written as tidy CSV.

#include <bellport/teleport.hpp>

#include <cstddef>
#include <numbers>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace bellport {

inline constexpr std::string_view kCsvHeader =
    "theta,alpha,ndelta,strategy,convention,fidelity,p00,p01,p10,p11";

struct SweepGrid {
    int theta_points = 33;
    double theta_min = 0.0;
    double theta_max = std::numbers::pi / 2;
    int alpha_points = 33;
    double alpha_min = 0.0;
    double alpha_max = 1.0;
    std::vector<double> ndelta_values{0.0, 0.05, 0.10, 0.15, 0.20, 0.25};
    double beta_phase = 0.0;
    CorrectionStrategy strategy = CorrectionStrategy::PauliPlusRotation;
    FidelityConvention convention = FidelityConvention::SquaredOverlap;

    /// Throws ArgumentError on an empty or repeated n*delta list, non-finite bounds,
    /// fewer than 2 points on an axis or |alpha| > 1.
    void validate() const;

    std::vector<double> thetas() const;
    std::vector<double> alphas() const;
    std::size_t row_count() const;
};

struct SurfaceRow {
    double theta = 0;
    double alpha = 0;
    double ndelta = 0;
    CorrectionStrategy strategy = CorrectionStrategy::PauliPlusRotation;
    FidelityConvention convention = FidelityConvention::SquaredOverlap;
    double fidelity = 0;
    double p00 = 0, p01 = 0, p10 = 0, p11 = 0;
};

/// Inclusive, evenly spaced; the last point is exactly `hi`.
std::vector<double> linspace(double lo, double hi, int points);

/// One point of a surface; identical to what run_sweep produces for it.
SurfaceRow evaluate_point(double theta, double alpha, double ndelta, const SweepGrid& grid);

/// Rows ordered n*delta-major, then theta, then alpha.
std::vector<SurfaceRow> run_sweep(const SweepGrid& grid);

/// Default grid with the strategy of panel 'a' (none), 'b' (pauli) or 'c' (pauli+rot).
SweepGrid figure2_preset(char panel);
SweepGrid figure2_preset(std::string_view panel);

/// Writes header plus one line per row; returns the number of data rows written.
/// Throws IoError (with the partial count) if the stream goes bad.
std::size_t write_csv(const std::vector<SurfaceRow>& rows, std::ostream& out);

/// Same fields as the CSV, one object per row.
std::size_t write_json(const std::vector<SurfaceRow>& rows, std::ostream& out);

/// Fixed-width real formatting used by every text output (15 significant digits).
std::string format_real(double v);

} // namespace bellport

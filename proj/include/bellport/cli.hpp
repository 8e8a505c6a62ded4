#pragma once

#include <bellport/teleport.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bellport::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

enum class Subcommand { Teleport, Sweep, Table1, Verify };
enum class OutputFormat { Table, Csv, Json };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CliConfig {
    Subcommand subcommand = Subcommand::Teleport;

    // teleport / table1; theta is stored in radians even when given with --degrees
    double theta = 0;
    double ndelta = 0;
    double alpha = 0;
    double beta_phase = 0;
    CorrectionStrategy strategy = CorrectionStrategy::PauliPlusRotation;
    FidelityConvention convention = FidelityConvention::SquaredOverlap;
    OutputFormat format = OutputFormat::Table;
    double tolerance = 1e-10;

    // sweep
    std::optional<char> panel;
    std::optional<int> theta_points;
    std::optional<int> alpha_points;
    std::optional<std::vector<double>> ndelta_list;
    std::optional<std::string> output_path;

    // verify
    std::uint64_t seed = 20240611;

    // set when --help was requested; nothing else is meaningful then
    std::optional<std::string> help_text;
};

/// `args` excludes the program name. Throws UsageError naming the offending flag.
CliConfig parse_args(const std::vector<std::string>& args);

int cmd_teleport(const CliConfig& config, std::ostream& out);
int cmd_table1(const CliConfig& config, std::ostream& out);
int cmd_sweep(const CliConfig& config, std::ostream& out);
int cmd_verify(const CliConfig& config, std::ostream& out);

/// Parses and dispatches; maps usage errors to exit code 2 and failed checks to 1.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bellport::cli

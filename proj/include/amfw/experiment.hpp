#ifndef AMFW_EXPERIMENT_HPP
#define AMFW_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace amfw {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MemoryCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class DtRule { EqualH, KappaH, KappaH53, Fixed };
enum class Estimator { Simultaneous, Spatial, TemporalFixedH };

struct ExperimentConfig {
    std::string problem = "problem1";
    double C = 0.0;
    std::string method = "amfw-hv";
    std::string correction = "none";
    std::vector<int> n_values;  // interior points per direction, h = 1/(n+1)
    DtRule dt_rule = DtRule::EqualH;
    double kappa = 1.0;
    std::vector<double> dt_values;  // used with DtRule::Fixed
    Estimator estimator = Estimator::Simultaneous;
    std::string output;
    int threads = 1;
    std::uint64_t seed = 1;
    double memory_cap_gib = 16.0;
    bool allow_large = false;  // lift the 3D desk-scale cap (h >= 1/64)
    std::string name;          // preset name, informational
};

/// Parse and validate a JSON config; unknown keys are rejected.
ExperimentConfig parse_config(const std::string& json_text);
/// Canonical single-line JSON form; parse(serialize(c)) == c.
std::string serialize_config(const ExperimentConfig& c);
/// Schema/value validation shared by parse and the preset registry.
void validate_config(const ExperimentConfig& c);

std::string dt_rule_label(DtRule r);
std::string estimator_label(Estimator e);

struct ReportRow {
    int n = 0;
    double h = 0.0, dt = 0.0;
    double ge_l2 = 0.0, ge_max = 0.0;  // valid only when has_values
    double p_l2 = 0.0, p_max = 0.0;    // valid only when has_orders
    bool has_values = false;
    bool has_orders = false;
    bool skipped = false;
    std::string note;
};

struct ErrorReport {
    ExperimentConfig config;
    std::vector<ReportRow> rows;
    double elapsed_seconds = 0.0;
};

ErrorReport run_experiment(const ExperimentConfig& cfg);

/// CSV with '#'-prefixed metadata lines, the fixed header
/// "h,dt,ge_l2,p_l2,ge_max,p_max", and full-precision scientific rows.
void write_csv(std::ostream& os, const ErrorReport& rep);

struct Preset {
    std::string name;
    std::string description;
    ExperimentConfig config;
};

const std::vector<Preset>& preset_registry();
const Preset& find_preset(const std::string& name);

struct VerifySummary {
    int rows_checked = 0;
    int rows_failed = 0;
    int rows_skipped = 0;
    bool ok() const { return rows_failed == 0 && rows_checked > 0; }
};

/// Re-run the named presets and compare against expected values under the
/// tolerance profile ("default", "strict", or "zero"); per-row deltas go to
/// `log`. Table names with no embedded expectations raise ConfigError.
VerifySummary verify_tables(const std::vector<std::string>& names, const std::string& profile,
                            std::ostream& log);
/// Preset names that have embedded expected values.
std::vector<std::string> verifiable_tables();

}  // namespace amfw

#endif

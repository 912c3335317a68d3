#pragma once

// Experiment driver behind the command-line tool: configuration, repeated
// Setup-1/Setup-2 runs, curve records and their CSV/JSON serialization.

#include "pomr/bounds.hpp"
#include "pomr/errors.hpp"
#include "pomr/extended_real.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pomr {

/// Bad user input; the tool exits with code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Failure inside a numerical stage; the tool exits with code 3.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& what)
        : Error(stage + ": " + what), stage_(std::move(stage)) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

struct RunConfig {
    std::int64_t setup = 2;

    std::int64_t cells = 24;
    double theta_min = 0.1;
    double theta_step = 0.1;
    std::int64_t T = 10;
    std::int64_t relax_subsample = 2000;
    double flux = 1.0;

    std::int64_t N = 200;
    std::int64_t n_max = 50;
    std::int64_t k_hat = 5;
    double delta = 1e-4;
    double eps_main = 1.0;
    double eps_perturb = 1e-3;
    std::int64_t points = 150;

    std::int64_t m = 25;
    std::int64_t n = 25;
    std::int64_t L = 11;
    std::int64_t per_point = 5;
    std::string pi = "mixture";
    double pi_uniform_weight = 0.1;
    double pi_scale = 1e4;
    double d_box = 10.0;
    std::int64_t max_draws = 100000;
    std::int64_t i_max = 50;
    std::int64_t bound_k = 5;
    std::int64_t reps = 5;
    std::int64_t threads = 0;  // 0: one worker per repetition
    std::uint64_t seed = 1;
    std::string out = "out";
};

RunConfig setup1_defaults();
RunConfig setup2_defaults();

struct ConfigField {
    std::string_view name;
    std::variant<std::int64_t*, std::uint64_t*, double*, std::string*> target;
    std::string_view help;
};

/// Every configurable key with a pointer into `config`.
std::vector<ConfigField> config_fields(RunConfig& config);

/// Throws ConfigError on the first inconsistent value.
void validate(const RunConfig& config);

struct CurveRecord {
    std::string method;  // perf, post_single, post_multi, point, prior_single, prior_multi, bound_dbar, bound_dbarbar
    std::int64_t rep = 0;
    std::int64_t i = 0;
    std::string target;  // M, Mpost, bound
    ExtendedReal value;
};

struct RepStats {
    std::int64_t rep = 0;
    std::int64_t single_draws = 0, single_samples = 0, single_incomplete = 0;
    std::int64_t multi_draws = 0, multi_samples = 0, multi_incomplete = 0;
};

struct WorldStats {
    std::int64_t ambient_dim = 0;
    std::int64_t manifold_points = 0;
    std::int64_t p = 0, q = 0;
    std::int64_t bound_k = 0;
    double bound_eps = 0.0;
    std::vector<double> prior_widths;  // multi prior, nested order
    std::vector<std::int64_t> prior_dims;
};

struct ExperimentResult {
    std::vector<CurveRecord> records;
    std::vector<RepStats> reps;
    WorldStats world;
};

ExperimentResult run_experiment(const RunConfig& config);

struct SummaryRow {
    std::string method, target;
    std::int64_t i = 0;
    ExtendedReal min, mean, max;
};

std::vector<SummaryRow> summarize(const std::vector<CurveRecord>& records);

std::string curves_csv(const std::vector<CurveRecord>& records);
std::string summary_csv(const std::vector<SummaryRow>& rows);

/// Writes curves.csv, summary.csv and manifest.json into config.out.
void write_experiment(const std::string& command, const RunConfig& config, const ExperimentResult& result);

/// Reads the command and config recorded in a manifest.
std::pair<std::string, RunConfig> read_manifest(const std::filesystem::path& path);

// ---- bounds-only runs ----

struct BoundsConfig {
    std::int64_t k = 4;
    std::int64_t n = 25;
    std::int64_t m = 25;
    std::int64_t N = 200;
    double eps = 1e-5;
    double eps_prime = 1e-2;
    std::string sigma;  // comma-separated; overrides geometry when set
    std::string geometry = "random";  // random | contained | orthogonal
    double tol_one = 1e-8;
    double tol_zero = 1e-10;
    std::int64_t i_max = 50;
    std::uint64_t seed = 1;
    std::string out = "out";
};

std::vector<ConfigField> config_fields(BoundsConfig& config);

BoundInputs bounds_inputs(const BoundsConfig& config);
/// Columns i,d_bar,d_bar_bar,min.
std::string bounds_csv(const BoundCurve& curve);
void write_bounds(const BoundsConfig& config, const BoundCurve& curve);

// ---- raw posterior samples of repetition 0 ----

/// Columns prior,sample,x0..x{N-1}.
void write_samples(const RunConfig& config);

std::string fields_json(std::vector<ConfigField> fields);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace pomr

/// @file scenario.hpp
/// @brief Scenario files and the batch runs behind the gaussentangle CLI.
///
/// A scenario is one JSON document (schema 1):
///
///     {
///       "schema": 1,                      optional, must be 1
///       "mass": 1,                        optional, default 1
///       "omega1": 1, "omega2": 3, "lambda": 0.1,
///       "state": {"type": "two_mode_squeezed", "r": 2},
///       "t_max": 25, "steps": 250,
///       "T_list": [0, 0.5, 1],
///       "rk4_check": false, "rk4_dt": 0.001,              optional
///       "esd": {"tolerance": 1e-9, "grid_points": 2000},  optional
///       "diffusion": [16 reals, row-major],               optional, evolve/validate only
///       "output": {"path": "out.csv", "format": "csv"}    optional
///     }
///
/// State types: "single_mode_squeezed" and "two_mode_squeezed" (key "r"),
/// "custom" (key "sigma", 16 reals row-major).

#pragma once

#include "gaussent/entanglement.hpp"

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gaussent {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::size_t kMaxSteps = 1000000;
/// Upper bound on max |S_closed - S_rk4| accepted by a sweep with rk4_check.
inline constexpr double kRk4CheckLimit = 1e-5;

enum class StateKind
{
	SingleModeSqueezed,
	TwoModeSqueezed,
	Custom,
};

struct InitialStateSpec
{
	StateKind kind = StateKind::TwoModeSqueezed;
	double r = 0.0;
	Mat4 custom;

	CovarianceState build() const;
};

enum class OutputFormat
{
	Csv,
	Json,
};

struct OutputSpec
{
	std::string path; ///< empty: standard output
	OutputFormat format = OutputFormat::Csv;
};

struct ScenarioConfig
{
	PhysParams params; ///< temperature is taken from T_list per run
	InitialStateSpec initial_state;
	double t_max = 0.0;
	std::size_t steps = 0;
	std::vector<double> temperatures;
	bool rk4_check = false;
	double rk4_dt = kDefaultRk4Step;
	double esd_tolerance = 1e-9;
	std::size_t esd_grid_points = 2000;
	std::optional<Mat4> diffusion;
	OutputSpec output;

	/// t_k = t_max k / steps, k = 0..steps
	std::vector<double> time_grid() const;

	PhysParams params_at(double temperature) const;
};

/// Parses and validates a scenario document. Syntax errors carry line and
/// column, schema violations the offending field; both as ConfigError. A
/// custom initial state that violates the uncertainty relation is rejected
/// with UnphysicalStateError.
ScenarioConfig parse_config(std::string_view text);

/// Re-checks numeric ranges, e.g. after command-line overrides.
void validate_config(const ScenarioConfig& cfg);

struct SweepRecord
{
	double t = 0.0;
	double T = 0.0;
	double S = 0.0;
	double nu_minus = 0.0;
	double E_N = 0.0;
	double uncertainty_residual = 0.0;
	bool is_entangled = false;
};

struct SweepResult
{
	std::vector<SweepRecord> records; ///< sorted by (T, t)
	std::optional<double> rk4_max_abs_dS;
};

/// Closed-form S, nu_minus and E_N on the t x T grid. Temperatures are
/// evaluated concurrently; the output order does not depend on scheduling.
SweepResult run_sweep(const ScenarioConfig& cfg);

struct EvolveRecord
{
	double t = 0.0;
	double T = 0.0;
	Mat4 sigma;
	double S = 0.0;
	double E_N = 0.0;
};

/// Single trajectory at @p temperature (or the raw diffusion matrix when the
/// scenario has one).
std::vector<EvolveRecord> run_evolve(const ScenarioConfig& cfg, double temperature);

/// Per-temperature ESD times. Throws PhysicsError for separable initial states.
nlohmann::ordered_json run_esd(const ScenarioConfig& cfg, bool list_all_crossings = false);

/// Per-temperature steady state, closed-form S(inf) and E_N(inf), and the same
/// quantities evaluated on the numerical steady state.
nlohmann::ordered_json run_asymptote(const ScenarioConfig& cfg);

/// Complete-positivity report for the raw diffusion matrix, or for the
/// thermal one at each temperature.
nlohmann::ordered_json run_validate(const ScenarioConfig& cfg, CPMode mode);

nlohmann::ordered_json scenario_json(const ScenarioConfig& cfg);

/// 12 significant digits, '.' decimal separator, locale independent.
std::string format_real(double value);

inline constexpr std::string_view kSweepCsvHeader = "t,T,S,nu_minus,E_N,uncertainty_residual,is_entangled";

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records);
nlohmann::ordered_json sweep_json(const std::vector<SweepRecord>& records);
void write_evolve_csv(std::ostream& out, const std::vector<EvolveRecord>& records);

} // namespace gaussent

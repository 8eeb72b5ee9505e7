#include "gaussent/scenario.hpp"

#include "gaussent/precise.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <ostream>
#include <set>
#include <sstream>

namespace gaussent {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what)
{
	throw ConfigError("config field '" + field + "': " + what);
}

double read_number(const json& node, const std::string& field)
{
	if (!node.is_number())
	{
		field_error(field, "expected a number, got " + std::string(node.type_name()));
	}
	const double v = node.get<double>();
	if (!std::isfinite(v))
	{
		field_error(field, "must be finite");
	}
	return v;
}

std::size_t read_count(const json& node, const std::string& field)
{
	if (node.is_number_unsigned())
	{
		return node.get<std::size_t>();
	}
	if (node.is_number_float())
	{
		const double v = node.get<double>();
		if (v >= 0.0 && v == std::floor(v) && v <= 1e15)
		{
			return static_cast<std::size_t>(v);
		}
	}
	field_error(field, "expected a non-negative integer");
}

bool read_bool(const json& node, const std::string& field)
{
	if (!node.is_boolean())
	{
		field_error(field, "expected true or false");
	}
	return node.get<bool>();
}

Mat4 read_matrix(const json& node, const std::string& field)
{
	if (!node.is_array() || node.size() != 16)
	{
		field_error(field, "expected an array of 16 numbers (row-major 4x4)");
	}
	std::array<double, 16> values{};
	for (std::size_t k = 0; k < 16; ++k)
	{
		values[k] = read_number(node[k], field + "[" + std::to_string(k) + "]");
	}
	return Mat4::from_row_major(values);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where)
{
	for (const auto& [key, value] : obj.items())
	{
		if (allowed.count(key) == 0)
		{
			field_error(where.empty() ? key : where + "." + key, "unknown key");
		}
	}
}

const json& require_key(const json& obj, const std::string& key, const std::string& where = "")
{
	const auto it = obj.find(key);
	if (it == obj.end())
	{
		field_error(where.empty() ? key : where + "." + key, "missing required key");
	}
	return *it;
}

InitialStateSpec read_state(const json& node)
{
	if (!node.is_object())
	{
		field_error("state", "expected an object with a \"type\" key");
	}
	const json& type = require_key(node, "type", "state");
	if (!type.is_string())
	{
		field_error("state.type", "expected a string");
	}
	const std::string name = type.get<std::string>();
	InitialStateSpec spec;
	if (name == "single_mode_squeezed" || name == "two_mode_squeezed")
	{
		reject_unknown_keys(node, {"type", "r"}, "state");
		spec.kind = name == "single_mode_squeezed" ? StateKind::SingleModeSqueezed : StateKind::TwoModeSqueezed;
		spec.r = read_number(require_key(node, "r", "state"), "state.r");
	}
	else if (name == "custom")
	{
		reject_unknown_keys(node, {"type", "sigma"}, "state");
		spec.kind = StateKind::Custom;
		spec.custom = read_matrix(require_key(node, "sigma", "state"), "state.sigma");
	}
	else
	{
		field_error("state.type", "unknown state type '" + name +
			"' (expected single_mode_squeezed, two_mode_squeezed or custom)");
	}
	return spec;
}

OutputSpec read_output(const json& node)
{
	if (!node.is_object())
	{
		field_error("output", "expected an object");
	}
	reject_unknown_keys(node, {"path", "format"}, "output");
	OutputSpec out;
	if (const auto it = node.find("path"); it != node.end())
	{
		if (!it->is_string())
		{
			field_error("output.path", "expected a string");
		}
		out.path = it->get<std::string>();
	}
	if (const auto it = node.find("format"); it != node.end())
	{
		const std::string f = it->is_string() ? it->get<std::string>() : "";
		if (f == "csv")
		{
			out.format = OutputFormat::Csv;
		}
		else if (f == "json")
		{
			out.format = OutputFormat::Json;
		}
		else
		{
			field_error("output.format", "expected \"csv\" or \"json\"");
		}
	}
	return out;
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte)
{
	std::size_t line = 1;
	std::size_t column = 1;
	for (std::size_t i = 0; i < std::min(byte, text.size()); ++i)
	{
		if (text[i] == '\n')
		{
			++line;
			column = 1;
		}
		else
		{
			++column;
		}
	}
	return {line, column};
}

void require_thermal(const ScenarioConfig& cfg, const char* command)
{
	if (cfg.diffusion)
	{
		throw ConfigError(std::string("config field 'diffusion': not supported by '") + command +
			"' (only evolve and validate accept a raw diffusion matrix)");
	}
}

ojson matrix_json(const Mat4& m)
{
	ojson rows = ojson::array();
	for (std::size_t i = 0; i < 4; ++i)
	{
		rows.push_back({m(i, 0), m(i, 1), m(i, 2), m(i, 3)});
	}
	return rows;
}

std::vector<SweepRecord> sweep_one_temperature(const ScenarioConfig& cfg, const CovarianceState& s0, double T,
	const std::vector<double>& grid, double* rk4_max)
{
	const Evolution evolution(cfg.params_at(T));
	std::vector<SweepRecord> out;
	out.reserve(grid.size());
	for (double t : grid)
	{
		const CovarianceState state = evolution.state_at(s0, t);
		const SymplecticSpectrum spectrum = symplectic_spectrum_pt(state);
		SweepRecord rec;
		rec.t = t;
		rec.T = T;
		rec.S = simon_function(state).S;
		rec.nu_minus = spectrum.nu_minus;
		rec.E_N = log_negativity(spectrum);
		rec.uncertainty_residual = state.uncertainty_residual();
		rec.is_entangled = rec.E_N > 0.0;
		out.push_back(rec);
	}
	if (rk4_max != nullptr)
	{
		const auto& env = evolution.environment();
		const auto rk4 = rk4_samples(s0, env.drift, env.diffusion, grid, cfg.rk4_dt);
		double worst = 0.0;
		for (std::size_t k = 0; k < grid.size(); ++k)
		{
			worst = std::max(worst, std::abs(out[k].S - simon_function(rk4[k]).S));
		}
		*rk4_max = worst;
	}
	return out;
}

} // namespace

CovarianceState InitialStateSpec::build() const
{
	switch (kind)
	{
	case StateKind::SingleModeSqueezed:
		return single_mode_squeezed(r);
	case StateKind::TwoModeSqueezed:
		return two_mode_squeezed(r);
	case StateKind::Custom:
		return from_raw(custom);
	}
	throw std::logic_error("unreachable state kind");
}

std::vector<double> ScenarioConfig::time_grid() const
{
	std::vector<double> grid(steps + 1);
	for (std::size_t k = 0; k <= steps; ++k)
	{
		grid[k] = t_max * static_cast<double>(k) / static_cast<double>(steps);
	}
	return grid;
}

PhysParams ScenarioConfig::params_at(double temperature) const
{
	PhysParams p = params;
	p.temperature = temperature;
	return p;
}

void validate_config(const ScenarioConfig& cfg)
{
	auto positive = [](double v, const char* field) {
		if (!(std::isfinite(v) && v > 0.0))
		{
			field_error(field, "must be finite and > 0");
		}
	};
	positive(cfg.params.mass, "mass");
	positive(cfg.params.omega1, "omega1");
	positive(cfg.params.omega2, "omega2");
	positive(cfg.params.lambda, "lambda");
	positive(cfg.t_max, "t_max");
	positive(cfg.rk4_dt, "rk4_dt");
	positive(cfg.esd_tolerance, "esd.tolerance");
	if (cfg.steps < 1 || cfg.steps > kMaxSteps)
	{
		field_error("steps", "must be between 1 and " + std::to_string(kMaxSteps));
	}
	if (cfg.esd_grid_points < 2)
	{
		field_error("esd.grid_points", "must be >= 2");
	}
	if (cfg.temperatures.empty())
	{
		field_error("T_list", "must not be empty");
	}
	for (std::size_t k = 0; k < cfg.temperatures.size(); ++k)
	{
		const double T = cfg.temperatures[k];
		if (!(std::isfinite(T) && T >= 0.0))
		{
			field_error("T_list[" + std::to_string(k) + "]", "must be finite and >= 0");
		}
	}
	if (cfg.diffusion && cfg.diffusion->asymmetry() > 1e-12 * std::max(1.0, cfg.diffusion->max_abs()))
	{
		field_error("diffusion", "must be symmetric");
	}
}

ScenarioConfig parse_config(std::string_view text)
{
	json doc;
	try
	{
		doc = json::parse(text.begin(), text.end());
	}
	catch (const json::parse_error& e)
	{
		const auto [line, column] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
		std::ostringstream msg;
		msg << "config syntax error at line " << line << ", column " << column << ": " << e.what();
		throw ConfigError(msg.str());
	}
	if (!doc.is_object())
	{
		throw ConfigError("config must be a JSON object");
	}
	reject_unknown_keys(doc, {"schema", "mass", "omega1", "omega2", "lambda", "state", "t_max", "steps", "T_list",
		"rk4_check", "rk4_dt", "esd", "diffusion", "output"}, "");

	if (const auto it = doc.find("schema"); it != doc.end())
	{
		if (!it->is_number_integer() || it->get<long long>() != kSchemaVersion)
		{
			field_error("schema", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
		}
	}

	ScenarioConfig cfg;
	if (const auto it = doc.find("mass"); it != doc.end())
	{
		cfg.params.mass = read_number(*it, "mass");
	}
	cfg.params.omega1 = read_number(require_key(doc, "omega1"), "omega1");
	cfg.params.omega2 = read_number(require_key(doc, "omega2"), "omega2");
	cfg.params.lambda = read_number(require_key(doc, "lambda"), "lambda");
	cfg.initial_state = read_state(require_key(doc, "state"));
	cfg.t_max = read_number(require_key(doc, "t_max"), "t_max");
	cfg.steps = read_count(require_key(doc, "steps"), "steps");

	const json& temps = require_key(doc, "T_list");
	if (!temps.is_array())
	{
		field_error("T_list", "expected an array of temperatures");
	}
	for (std::size_t k = 0; k < temps.size(); ++k)
	{
		cfg.temperatures.push_back(read_number(temps[k], "T_list[" + std::to_string(k) + "]"));
	}

	if (const auto it = doc.find("rk4_check"); it != doc.end())
	{
		cfg.rk4_check = read_bool(*it, "rk4_check");
	}
	if (const auto it = doc.find("rk4_dt"); it != doc.end())
	{
		cfg.rk4_dt = read_number(*it, "rk4_dt");
	}
	if (const auto it = doc.find("esd"); it != doc.end())
	{
		if (!it->is_object())
		{
			field_error("esd", "expected an object");
		}
		reject_unknown_keys(*it, {"tolerance", "grid_points"}, "esd");
		if (const auto jt = it->find("tolerance"); jt != it->end())
		{
			cfg.esd_tolerance = read_number(*jt, "esd.tolerance");
		}
		if (const auto jt = it->find("grid_points"); jt != it->end())
		{
			cfg.esd_grid_points = read_count(*jt, "esd.grid_points");
		}
	}
	if (const auto it = doc.find("diffusion"); it != doc.end())
	{
		cfg.diffusion = read_matrix(*it, "diffusion");
	}
	if (const auto it = doc.find("output"); it != doc.end())
	{
		cfg.output = read_output(*it);
	}

	validate_config(cfg);
	// certify a custom state up front
	cfg.initial_state.build();
	return cfg;
}

SweepResult run_sweep(const ScenarioConfig& cfg)
{
	validate_config(cfg);
	require_thermal(cfg, "sweep");
	const CovarianceState s0 = cfg.initial_state.build();
	const std::vector<double> grid = cfg.time_grid();

	std::vector<double> rk4_worst(cfg.temperatures.size(), 0.0);
	std::vector<std::future<std::vector<SweepRecord>>> jobs;
	jobs.reserve(cfg.temperatures.size());
	for (std::size_t k = 0; k < cfg.temperatures.size(); ++k)
	{
		double* worst = cfg.rk4_check ? &rk4_worst[k] : nullptr;
		jobs.push_back(std::async(std::launch::async, sweep_one_temperature, std::cref(cfg), std::cref(s0),
			cfg.temperatures[k], std::cref(grid), worst));
	}

	SweepResult result;
	for (auto& job : jobs)
	{
		auto part = job.get();
		result.records.insert(result.records.end(), part.begin(), part.end());
	}
	std::stable_sort(result.records.begin(), result.records.end(), [](const SweepRecord& a, const SweepRecord& b) {
		return a.T < b.T || (a.T == b.T && a.t < b.t);
	});
	if (cfg.rk4_check)
	{
		result.rk4_max_abs_dS = *std::max_element(rk4_worst.begin(), rk4_worst.end());
	}
	return result;
}

std::vector<EvolveRecord> run_evolve(const ScenarioConfig& cfg, double temperature)
{
	validate_config(cfg);
	const CovarianceState s0 = cfg.initial_state.build();
	const PhysParams p = cfg.params_at(temperature);
	const Evolution evolution = cfg.diffusion ? Evolution(p, *cfg.diffusion) : Evolution(p);
	std::vector<EvolveRecord> out;
	for (double t : cfg.time_grid())
	{
		const CovarianceState state = evolution.state_at(s0, t);
		out.push_back({t, temperature, state.sigma(), simon_function(state).S, log_negativity(state)});
	}
	return out;
}

ojson run_esd(const ScenarioConfig& cfg, bool list_all_crossings)
{
	validate_config(cfg);
	require_thermal(cfg, "esd");
	const CovarianceState s0 = cfg.initial_state.build();
	const double s_initial = simon_function(s0).S;
	if (!(s_initial < 0.0))
	{
		std::ostringstream msg;
		msg << "esd: the initial state is separable (S(0) = " << format_real(s_initial)
			<< " >= 0); sudden death needs an entangled start";
		throw PhysicsError(msg.str());
	}

	EsdOptions options;
	options.grid_points = cfg.esd_grid_points;
	options.list_all_crossings = list_all_crossings;

	ojson results = ojson::array();
	for (double T : cfg.temperatures)
	{
		const EsdResult r = esd_time(s0, cfg.params_at(T), cfg.t_max, cfg.esd_tolerance, options);
		ojson entry = {
			{"T", T},
			{"lambda", cfg.params.lambda},
			{"t_max", cfg.t_max},
			{"status", r.esd_time ? "finite" : "none"},
			{"esd_time", r.esd_time ? ojson(*r.esd_time) : ojson(nullptr)},
			{"bracket", {r.bracket_lo, r.bracket_hi}},
			{"bisection_iterations", r.iterations},
			{"precision_digits", r.precision_digits},
		};
		if (list_all_crossings)
		{
			ojson crossings = ojson::array();
			for (const auto& c : r.crossings)
			{
				crossings.push_back({{"t", c.time}, {"direction", c.to_separable ? "to_separable" : "to_entangled"}});
			}
			entry["crossings"] = crossings;
		}
		results.push_back(entry);
	}
	return {{"schema", kSchemaVersion}, {"scenario", scenario_json(cfg)}, {"results", results}};
}

ojson run_asymptote(const ScenarioConfig& cfg)
{
	validate_config(cfg);
	require_thermal(cfg, "asymptote");
	ojson results = ojson::array();
	for (double T : cfg.temperatures)
	{
		const PhysParams p = cfg.params_at(T);
		const Evolution evolution(p);
		const Mat4& sigma_inf = evolution.steady_state();
		const double s_closed = asymptotic_simon(p);
		const double en_closed = asymptotic_log_negativity(p);
		const double s_numeric = simon_function(sigma_inf).S;
		const double en_numeric = log_negativity(symplectic_spectrum_pt(sigma_inf));
		results.push_back({
			{"T", T},
			{"sigma_inf", matrix_json(sigma_inf)},
			{"S_inf", s_closed},
			{"E_N_inf", en_closed},
			{"S_inf_steady_state", s_numeric},
			{"E_N_inf_steady_state", en_numeric},
			{"separable", s_closed >= 0.0 && en_closed <= 0.0},
		});
	}
	return {{"schema", kSchemaVersion}, {"scenario", scenario_json(cfg)}, {"results", results}};
}

ojson run_validate(const ScenarioConfig& cfg, CPMode mode)
{
	validate_config(cfg);
	auto report_json = [](const CPReport& report) {
		ojson ineqs = ojson::array();
		for (const auto& i : report.inequalities)
		{
			ineqs.push_back({{"name", i.name}, {"residual", i.residual}, {"passed", i.passed}});
		}
		ojson out = {{"inequalities", ineqs}, {"passed", report.passed}};
		if (report.strict_min_eigenvalue)
		{
			out["strict_min_eigenvalue"] = *report.strict_min_eigenvalue;
		}
		return out;
	};

	ojson results = ojson::array();
	bool all_passed = true;
	if (cfg.diffusion)
	{
		const CPReport report = validate_cp(*cfg.diffusion, cfg.params.lambda, mode);
		all_passed = report.passed;
		ojson entry = report_json(report);
		entry["source"] = "raw";
		results.push_back(entry);
	}
	else
	{
		for (double T : cfg.temperatures)
		{
			const CPReport report = validate_cp(build_thermal_diffusion(cfg.params_at(T)), cfg.params.lambda, mode);
			all_passed = all_passed && report.passed;
			ojson entry = report_json(report);
			entry["source"] = "thermal";
			entry["T"] = T;
			results.push_back(entry);
		}
	}
	return {{"schema", kSchemaVersion}, {"scenario", scenario_json(cfg)}, {"passed", all_passed}, {"results", results}};
}

ojson scenario_json(const ScenarioConfig& cfg)
{
	ojson state;
	switch (cfg.initial_state.kind)
	{
	case StateKind::SingleModeSqueezed:
		state = {{"type", "single_mode_squeezed"}, {"r", cfg.initial_state.r}};
		break;
	case StateKind::TwoModeSqueezed:
		state = {{"type", "two_mode_squeezed"}, {"r", cfg.initial_state.r}};
		break;
	case StateKind::Custom:
		state = {{"type", "custom"}, {"sigma", cfg.initial_state.custom.entries()}};
		break;
	}
	ojson out = {
		{"mass", cfg.params.mass},
		{"omega1", cfg.params.omega1},
		{"omega2", cfg.params.omega2},
		{"lambda", cfg.params.lambda},
		{"state", state},
		{"t_max", cfg.t_max},
		{"steps", cfg.steps},
		{"T_list", cfg.temperatures},
	};
	if (cfg.diffusion)
	{
		out["diffusion"] = cfg.diffusion->entries();
	}
	return out;
}

std::string format_real(double value)
{
	char buf[64];
	const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
	return std::string(buf, res.ptr);
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records)
{
	out << kSweepCsvHeader << '\n';
	for (const auto& r : records)
	{
		out << format_real(r.t) << ',' << format_real(r.T) << ',' << format_real(r.S) << ','
			<< format_real(r.nu_minus) << ',' << format_real(r.E_N) << ',' << format_real(r.uncertainty_residual)
			<< ',' << (r.is_entangled ? 1 : 0) << '\n';
	}
}

ojson sweep_json(const std::vector<SweepRecord>& records)
{
	ojson rows = ojson::array();
	for (const auto& r : records)
	{
		rows.push_back({{"t", r.t}, {"T", r.T}, {"S", r.S}, {"nu_minus", r.nu_minus}, {"E_N", r.E_N},
			{"uncertainty_residual", r.uncertainty_residual}, {"is_entangled", r.is_entangled}});
	}
	return {{"schema", kSchemaVersion}, {"records", rows}};
}

void write_evolve_csv(std::ostream& out, const std::vector<EvolveRecord>& records)
{
	static constexpr const char* names[] = {"x", "px", "y", "py"};
	out << "t,T";
	for (std::size_t i = 0; i < 4; ++i)
	{
		for (std::size_t j = i; j < 4; ++j)
		{
			out << ",s_" << names[i] << '_' << names[j];
		}
	}
	out << ",S,E_N\n";
	for (const auto& r : records)
	{
		out << format_real(r.t) << ',' << format_real(r.T);
		for (std::size_t i = 0; i < 4; ++i)
		{
			for (std::size_t j = i; j < 4; ++j)
			{
				out << ',' << format_real(r.sigma(i, j));
			}
		}
		out << ',' << format_real(r.S) << ',' << format_real(r.E_N) << '\n';
	}
}

} // namespace gaussent

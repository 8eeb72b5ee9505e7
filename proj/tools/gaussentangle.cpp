// gaussentangle: command-line front end for two-mode Gaussian entanglement
// dynamics in a thermal bath.
//
// Exit codes: 0 success, 2 config error, 3 physics/validation error,
// 4 numerical failure.

#include "gaussent/scenario.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace gaussent;

struct Overrides
{
	std::string config_path;
	std::string out_path;
	std::optional<double> t_max;
	std::optional<std::size_t> steps;
	std::string temps;
	bool rk4_check = false;
	std::optional<double> dt;
};

std::vector<double> parse_temperature_list(const std::string& text)
{
	std::vector<double> out;
	std::stringstream ss(text);
	std::string item;
	while (std::getline(ss, item, ','))
	{
		try
		{
			std::size_t used = 0;
			out.push_back(std::stod(item, &used));
			if (used != item.size())
			{
				throw std::invalid_argument(item);
			}
		}
		catch (const std::exception&)
		{
			throw ConfigError("--temps: cannot parse '" + item + "' as a temperature");
		}
	}
	return out;
}

ScenarioConfig load(const Overrides& o)
{
	std::ifstream in(o.config_path);
	if (!in)
	{
		throw ConfigError("cannot open config file '" + o.config_path + "'");
	}
	std::stringstream buffer;
	buffer << in.rdbuf();
	ScenarioConfig cfg = parse_config(buffer.str());
	if (o.t_max)
	{
		cfg.t_max = *o.t_max;
	}
	if (o.steps)
	{
		cfg.steps = *o.steps;
	}
	if (!o.temps.empty())
	{
		cfg.temperatures = parse_temperature_list(o.temps);
	}
	if (o.rk4_check)
	{
		cfg.rk4_check = true;
	}
	if (o.dt)
	{
		cfg.rk4_dt = *o.dt;
	}
	if (!o.out_path.empty())
	{
		cfg.output.path = o.out_path;
	}
	validate_config(cfg);
	return cfg;
}

template <typename Writer>
void emit(const ScenarioConfig& cfg, Writer&& write)
{
	if (cfg.output.path.empty() || cfg.output.path == "-")
	{
		write(std::cout);
		std::cout.flush();
		return;
	}
	std::ofstream out(cfg.output.path, std::ios::binary);
	if (!out)
	{
		throw ConfigError("cannot open output file '" + cfg.output.path + "'");
	}
	write(out);
	if (!out)
	{
		throw ConfigError("failed writing '" + cfg.output.path + "'");
	}
}

void emit_json(const ScenarioConfig& cfg, const nlohmann::ordered_json& doc)
{
	emit(cfg, [&doc](std::ostream& os) { os << doc.dump(2) << '\n'; });
}

void add_common(CLI::App* cmd, Overrides& o)
{
	cmd->add_option("--config", o.config_path, "Scenario JSON file")->required();
	cmd->add_option("--out", o.out_path, "Output file (default: config output.path or stdout)");
	cmd->add_option("--t-max", o.t_max, "Override t_max");
	cmd->add_option("--steps", o.steps, "Override number of time steps");
	cmd->add_option("--temps", o.temps, "Override T_list, comma separated (e.g. 0,0.5,1)");
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"gaussentangle: entanglement dynamics of two oscillators in a thermal bath"};
	app.require_subcommand(1);

	Overrides o;
	double evolve_temperature = -1.0;
	bool all_crossings = false;
	bool strict = false;

	auto* evolve = app.add_subcommand("evolve", "Covariance trajectory at one temperature (CSV)");
	add_common(evolve, o);
	evolve->add_option("--temperature", evolve_temperature, "Bath temperature (default: first of T_list)");

	auto* sweep = app.add_subcommand("sweep", "S, nu_minus and E_N on the t x T grid (CSV)");
	add_common(sweep, o);
	sweep->add_flag("--rk4-check", o.rk4_check, "Cross-check S against an RK4 integration");
	sweep->add_option("--dt", o.dt, "RK4 step for --rk4-check");

	auto* esd = app.add_subcommand("esd", "Entanglement sudden death time per temperature (JSON)");
	add_common(esd, o);
	esd->add_flag("--all-crossings", all_crossings, "List every sign change of S, not only the first");

	auto* asymptote = app.add_subcommand("asymptote", "Steady state, S(inf) and E_N(inf) per temperature (JSON)");
	add_common(asymptote, o);

	auto* validate = app.add_subcommand("validate", "Complete-positivity report for the diffusion matrix (JSON)");
	add_common(validate, o);
	validate->add_flag("--strict", strict, "Also require the full coefficient matrix to be positive semidefinite");

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::CallForHelp& e)
	{
		return app.exit(e);
	}
	catch (const CLI::ParseError& e)
	{
		app.exit(e);
		return 2;
	}

	try
	{
		const ScenarioConfig cfg = load(o);
		if (evolve->parsed())
		{
			const double T = evolve_temperature >= 0.0 ? evolve_temperature : cfg.temperatures.front();
			const auto records = run_evolve(cfg, T);
			emit(cfg, [&records](std::ostream& os) { write_evolve_csv(os, records); });
		}
		else if (sweep->parsed())
		{
			const SweepResult result = run_sweep(cfg);
			if (cfg.output.format == OutputFormat::Json)
			{
				emit_json(cfg, sweep_json(result.records));
			}
			else
			{
				emit(cfg, [&result](std::ostream& os) { write_sweep_csv(os, result.records); });
			}
			if (result.rk4_max_abs_dS)
			{
				std::cerr << "rk4_check max_abs_dS=" << format_real(*result.rk4_max_abs_dS)
						  << " limit=" << format_real(kRk4CheckLimit) << '\n';
				if (*result.rk4_max_abs_dS > kRk4CheckLimit)
				{
					std::cerr << "error: closed form and RK4 disagree beyond the limit\n";
					return 4;
				}
			}
		}
		else if (esd->parsed())
		{
			emit_json(cfg, run_esd(cfg, all_crossings));
		}
		else if (asymptote->parsed())
		{
			emit_json(cfg, run_asymptote(cfg));
		}
		else if (validate->parsed())
		{
			const auto report = run_validate(cfg, strict ? CPMode::Strict : CPMode::Pairwise);
			emit_json(cfg, report);
			if (!report.at("passed").get<bool>())
			{
				std::cerr << "error: diffusion matrix violates complete positivity\n";
				return 3;
			}
		}
	}
	catch (const gaussent::Error& e)
	{
		std::cerr << "error: " << e.what() << '\n';
		return e.exit_code();
	}
	catch (const std::invalid_argument& e)
	{
		std::cerr << "error: " << e.what() << '\n';
		return 2;
	}
	catch (const std::exception& e)
	{
		std::cerr << "error: " << e.what() << '\n';
		return 4;
	}
	return 0;
}

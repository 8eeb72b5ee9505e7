// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "gaussent/entanglement.hpp"
#include "gaussent/precise.hpp"
#include "oracles.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

using namespace gaussent;

namespace {

struct Outcome
{
	bool passed = true;
	std::ostringstream detail;

	void require(bool ok, const std::string& what)
	{
		if (!ok)
		{
			if (passed)
			{
				detail << "; failed: ";
			}
			else
			{
				detail << " | ";
			}
			detail << what;
			passed = false;
		}
	}
};

// Worst uncertainty residual seen by criteria 4-6.
double g_min_residual = 1.0;
std::size_t g_residual_samples = 0;

void record_residual(const Mat4& sigma)
{
	g_min_residual = std::min(g_min_residual, uncertainty_residual(sigma));
	++g_residual_samples;
}

PhysParams scenario(double T, double lambda = 0.1, double omega2 = 3.0)
{
	return {1.0, 1.0, omega2, lambda, T};
}

std::vector<double> grid(double t_max, std::size_t points)
{
	std::vector<double> g(points);
	for (std::size_t k = 0; k < points; ++k)
	{
		g[k] = t_max * static_cast<double>(k) / static_cast<double>(points - 1);
	}
	return g;
}

std::string sci(double v)
{
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.3e", v);
	return buf;
}

template <typename Body>
bool criterion(int id, const std::string& title, double budget_seconds, Body&& body)
{
	Outcome out;
	const auto start = std::chrono::steady_clock::now();
	try
	{
		body(out);
	}
	catch (const std::exception& e)
	{
		out.require(false, std::string("exception: ") + e.what());
	}
	const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
	out.require(elapsed < budget_seconds, "runtime " + std::to_string(elapsed) + " s over budget");
	std::cout << (out.passed ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " ("
			  << std::to_string(elapsed).substr(0, 5) << " s" << out.detail.str() << ")" << std::endl;
	return out.passed;
}

// ESD instants for omega1 = 1, omega2 = 3, computed once with 50-digit arithmetic
// by bisection on the closed-form S(t) and frozen here.
struct EsdReference
{
	double r;
	double lambda;
	double T;
	double time;
};

constexpr EsdReference kEsdReference[] = {
	{0.5, 0.1, 0.5, 4.44675999391},
	{0.5, 0.1, 1.0, 1.99508778860},
	{0.5, 0.1, 2.0, 0.873988987883},
	{0.5, 0.1, 4.0, 0.390908578867},
	{0.5, 0.3, 0.5, 1.48225333130},
	{0.5, 0.3, 1.0, 0.665029262866},
	{0.5, 0.3, 2.0, 0.291329662628},
	{0.5, 0.3, 4.0, 0.130302859622},
	{2.0, 0.1, 0.5, 7.40871696744},
	{2.0, 0.1, 1.0, 3.67838028326},
	{2.0, 0.1, 2.0, 1.72838828004},
	{2.0, 0.1, 4.0, 0.810015067491},
	{2.0, 0.3, 0.5, 2.46957232248},
	{2.0, 0.3, 1.0, 1.22612676109},
	{2.0, 0.3, 2.0, 0.576129426680},
	{2.0, 0.3, 4.0, 0.270005022497},
};

double reference_esd(double r, double lambda, double T)
{
	for (const auto& e : kEsdReference)
	{
		if (e.r == r && e.lambda == lambda && e.T == T)
		{
			return e.time;
		}
	}
	return std::nan("");
}

std::string slurp(const std::filesystem::path& p)
{
	std::ifstream in(p, std::ios::binary);
	return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

int main()
{
	bool all = true;

	all &= criterion(1, "initial Simon values", 1.0, [](Outcome& out) {
		double worst_single = 0.0;
		for (double r : {0.0, 0.5, 1.0, 2.0, 3.0})
		{
			worst_single = std::max(worst_single, std::abs(simon_function(single_mode_squeezed(r)).S));
		}
		out.require(worst_single <= 1e-12, "single_mode_squeezed |S(0)| = " + sci(worst_single));

		// -sinh^2(r)/4 frozen at 40 digits
		const std::pair<double, double> expected[] = {
			{0.5, -0.06788507935190547231}, {1.0, -0.34527446138545393245}, {2.0, -3.2885291045020608287}};
		double worst_two = 0.0;
		for (const auto& [r, s] : expected)
		{
			worst_two = std::max(worst_two, std::abs(simon_function(two_mode_squeezed(r)).S - s));
		}
		out.require(worst_two <= 1e-10, "two_mode_squeezed deviation " + sci(worst_two));
		out.detail << ", max |S| single " << sci(worst_single) << ", max dev two-mode " << sci(worst_two);
	});

	all &= criterion(2, "steady state at lambda=0.1, w1=1, w2=3, T=1", 1.0, [](Outcome& out) {
		const auto env = thermal_environment(scenario(1.0));
		const Mat4 s = steady_state(env.drift, env.diffusion);
		const double expected[] = {1.0819767068693264244, 1.0819767068693264244, 0.18413189883041865066,
			1.6571870894737678559};
		double diag = 0.0, off = 0.0;
		for (std::size_t i = 0; i < 4; ++i)
		{
			diag = std::max(diag, std::abs(s(i, i) - expected[i]));
			for (std::size_t j = 0; j < 4; ++j)
			{
				if (i != j)
				{
					off = std::max(off, std::abs(s(i, j)));
				}
			}
		}
		out.require(diag <= 1e-9, "diagonal deviation " + sci(diag));
		out.require(off <= 1e-10, "off-diagonal magnitude " + sci(off));
		out.detail << ", diag dev " << sci(diag) << ", max off-diag " << sci(off);
	});

	all &= criterion(3, "asymptotic S and E_N over a 5x5 (T, w2) grid", 1.0, [](Outcome& out) {
		double worst_closed = 0.0, worst_ss = 0.0, worst_en = 0.0;
		for (double T : {0.0, 0.5, 1.0, 2.0, 5.0})
		{
			for (double w2 : {1.0, 2.0, 3.0, 4.0, 6.0})
			{
				const PhysParams p = scenario(T, 0.1, w2);
				const double c1 = T == 0.0 ? 1.0 : oracle::coth_reference(p.omega1 / (2.0 * T));
				const double c2 = T == 0.0 ? 1.0 : oracle::coth_reference(w2 / (2.0 * T));
				const double closed = (c1 * c1 - 1.0) * (c2 * c2 - 1.0) / 16.0;
				const auto env = thermal_environment(p);
				const auto inf = certify_state(steady_state(env.drift, env.diffusion));
				const double s_inf = asymptotic_simon(p);
				const double en_inf = asymptotic_log_negativity(p);
				worst_closed = std::max(worst_closed, std::abs(s_inf - closed));
				worst_ss = std::max(worst_ss, std::abs(s_inf - simon_function(inf).S));
				worst_en = std::max(worst_en, std::abs(en_inf - log_negativity(inf)));
				out.require(s_inf >= 0.0, "S(inf) < 0 at T=" + std::to_string(T));
				out.require(en_inf <= 0.0, "E_N(inf) > 0 at T=" + std::to_string(T));
				if (T == 0.0)
				{
					out.require(s_inf == 0.0 && en_inf == 0.0, "nonzero asymptote at T=0");
				}
			}
		}
		out.require(worst_closed <= 1e-10, "closed form deviation " + sci(worst_closed));
		out.require(worst_ss <= 1e-10, "steady-state S deviation " + sci(worst_ss));
		out.require(worst_en <= 1e-10, "steady-state E_N deviation " + sci(worst_en));
		out.detail << ", S vs closed " << sci(worst_closed) << ", S vs steady " << sci(worst_ss) << ", E_N vs steady "
				   << sci(worst_en);
	});

	all &= criterion(4, "closed form vs RK4 (dt=1e-3) on [0, 50]", 30.0, [](Outcome& out) {
		const auto times = grid(50.0, 501);
		double worst = 0.0;
		for (double T : {0.0, 1.0, 5.0})
		{
			const Evolution evo(scenario(T));
			for (double r : {0.5, 2.0})
			{
				for (const auto& s0 : {single_mode_squeezed(r), two_mode_squeezed(r)})
				{
					const auto rk4 = rk4_samples(s0, evo.environment().drift, evo.environment().diffusion, times, 1e-3);
					for (std::size_t k = 0; k < times.size(); ++k)
					{
						const Mat4 closed = evo.state_at(s0, times[k]).sigma();
						worst = std::max(worst, max_abs_diff(closed, rk4[k]));
						record_residual(closed);
						record_residual(rk4[k]);
					}
				}
			}
		}
		out.require(worst <= 1e-6, "max-norm difference " + sci(worst));
		out.detail << ", max |closed - rk4| " << sci(worst);
	});

	all &= criterion(5, "separable start stays separable on a 500x6 (t, T) grid", 10.0, [](Outcome& out) {
		const auto times = grid(100.0, 500);
		double lowest = 1.0;
		for (double r : {0.5, 2.0})
		{
			for (double T : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0})
			{
				const auto traj = sample_trajectory(single_mode_squeezed(r), scenario(T), times);
				for (const auto& sample : traj.samples)
				{
					lowest = std::min(lowest, simon_function(sample.state).S);
					record_residual(sample.state.sigma());
				}
			}
		}
		out.require(lowest >= -1e-10, "min S = " + sci(lowest));
		out.detail << ", min S " << sci(lowest);
	});

	all &= criterion(6, "sudden death: finite for T>0, none at T=0, earlier for larger T and lambda", 60.0,
		[](Outcome& out) {
			constexpr double t_max = 200.0;
			constexpr double tol = 1e-9;
			double worst_ref = 0.0, worst_en = 0.0;
			std::size_t finite = 0;
			for (double r : {0.5, 2.0})
			{
				const auto s0 = two_mode_squeezed(r);

				// zero temperature: no crossing, S < 0 at every scanned point in extended precision
				const auto cold = esd_time(s0, scenario(0.0), t_max, tol);
				out.require(!cold.esd_time, "crossing at T=0, r=" + std::to_string(r));
				const PreciseSimonTrace trace(s0, scenario(0.0), t_max);
				for (double t : grid(t_max, 4001))
				{
					if (trace(t).sign >= 0)
					{
						out.require(false, "S(t) >= 0 at T=0, t=" + std::to_string(t));
						break;
					}
				}
				const Evolution cold_evo(scenario(0.0));
				for (double t : grid(t_max, 401))
				{
					record_residual(cold_evo.state_at(s0, t).sigma());
				}

				std::vector<double> slow;
				for (double lambda : {0.1, 0.3})
				{
					std::vector<double> times;
					for (double T : {0.5, 1.0, 2.0, 4.0})
					{
						const auto res = esd_time(s0, scenario(T, lambda), t_max, tol);
						const std::string tag =
							"r=" + std::to_string(r) + " lambda=" + std::to_string(lambda) + " T=" + std::to_string(T);
						if (!res.esd_time)
						{
							out.require(false, "no crossing for " + tag);
							continue;
						}
						++finite;
						const double t_esd = *res.esd_time;
						times.push_back(t_esd);
						worst_ref = std::max(worst_ref, std::abs(t_esd - reference_esd(r, lambda, T)));

						// E_N crosses zero where S does
						const Evolution evo(scenario(T, lambda));
						const auto en_zero = oracle::first_zero(
							[&](double t) { return log_negativity(evo.state_at(s0, t)); }, 0.0, t_esd + 1.0, 4000,
							1e-11);
						if (!en_zero)
						{
							out.require(false, "E_N has no zero for " + tag);
						}
						else
						{
							worst_en = std::max(worst_en, std::abs(*en_zero - t_esd));
						}
						for (double t : grid(2.0 * t_esd, 201))
						{
							record_residual(evo.state_at(s0, t).sigma());
						}
					}
					for (std::size_t k = 1; k < times.size(); ++k)
					{
						out.require(times[k] < times[k - 1], "ESD not decreasing in T (r=" + std::to_string(r) +
								", lambda=" + std::to_string(lambda) + ")");
					}
					if (lambda == 0.1)
					{
						slow = times;
					}
					else
					{
						for (std::size_t k = 0; k < std::min(slow.size(), times.size()); ++k)
						{
							out.require(times[k] < slow[k], "lambda=0.3 not earlier (r=" + std::to_string(r) + ")");
						}
					}
				}
			}
			out.require(finite == 16, "expected 16 finite ESD times, got " + std::to_string(finite));
			out.require(worst_ref <= 1e-8, "regression deviation " + sci(worst_ref));
			out.require(worst_en <= 1e-6, "E_N vs S crossing gap " + sci(worst_en));
			out.detail << ", " << finite << " finite ESD times, max dev from reference " << sci(worst_ref)
					   << ", max |t_EN - t_S| " << sci(worst_en);
		});

	all &= criterion(7, "uncertainty relation preserved on every sampled state", 1.0, [](Outcome& out) {
		out.require(g_residual_samples > 0, "no samples recorded");
		out.require(g_min_residual >= -1e-8, "min residual " + sci(g_min_residual));
		out.detail << ", " << g_residual_samples << " states, min residual " << sci(g_min_residual);
	});

	all &= criterion(8, "two sweeps of the entangled scenario give byte-identical CSV", 30.0, [](Outcome& out) {
		namespace fs = std::filesystem;
		const fs::path dir = fs::temp_directory_path() / ("gaussentangle_accept_" + std::to_string(::getpid()));
		fs::create_directories(dir);
		const std::string config = std::string(GAUSSENT_CONFIG_DIR) + "/entangled_tmsv.json";
		std::string outputs[2];
		for (int k = 0; k < 2; ++k)
		{
			const fs::path csv = dir / ("run" + std::to_string(k) + ".csv");
			const std::string cmd = std::string("\"") + GAUSSENTANGLE_EXE + "\" sweep --config \"" + config +
				"\" --out \"" + csv.string() + "\"";
			const int status = std::system(cmd.c_str());
			out.require(WIFEXITED(status) && WEXITSTATUS(status) == 0, "sweep exited abnormally");
			outputs[k] = slurp(csv);
		}
		fs::remove_all(dir);
		out.require(!outputs[0].empty(), "empty CSV");
		out.require(outputs[0] == outputs[1], "CSV outputs differ");
		out.detail << ", " << outputs[0].size() << " bytes each";
	});

	std::cout << (all ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << std::endl;
	return all ? 0 : 1;
}

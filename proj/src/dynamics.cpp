#include "gaussent/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gaussent {

namespace {

Mat4 covariance_rhs(const Mat4& y, const Mat4& two_d, const Mat4& sigma)
{
	const Mat4 ys = y * sigma;
	return ys + ys.transpose() + two_d;
}

Mat4 rk4_step(const Mat4& y, const Mat4& two_d, const Mat4& sigma, double h)
{
	const Mat4 k1 = covariance_rhs(y, two_d, sigma);
	const Mat4 k2 = covariance_rhs(y, two_d, sigma + k1 * (h / 2.0));
	const Mat4 k3 = covariance_rhs(y, two_d, sigma + k2 * (h / 2.0));
	const Mat4 k4 = covariance_rhs(y, two_d, sigma + k3 * h);
	return (sigma + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)).symmetrized();
}

std::size_t rk4_step_count(double span, double dt)
{
	const double n = std::ceil(span / dt - 1e-9);
	if (!(n <= kMaxRk4Steps))
	{
		std::ostringstream msg;
		msg << "rk4: " << span << " / " << dt << " exceeds the step limit " << kMaxRk4Steps;
		throw NumericalError(msg.str());
	}
	return static_cast<std::size_t>(std::max(n, 1.0));
}

void check_rk4_arguments(double dt)
{
	if (!(dt > 0.0) || !std::isfinite(dt))
	{
		throw std::invalid_argument("rk4: step must be finite and > 0");
	}
}

void check_time(double t)
{
	if (!(t >= 0.0) || !std::isfinite(t))
	{
		throw std::invalid_argument("time must be finite and >= 0");
	}
}

} // namespace

Mat4 block_expm(const PhysParams& p, double t)
{
	p.validate();
	check_time(t);
	return detail::block_propagator<double>(p, t);
}

Propagator make_propagator(const PhysParams& p, double t)
{
	return {t, block_expm(p, t)};
}

Mat4 steady_state(const Mat4& drift, const Mat4& diffusion)
{
	if (!drift.all_finite() || !diffusion.all_finite())
	{
		throw NumericalError("steady_state: non-finite drift or diffusion");
	}
	return detail::lyapunov_solve(drift, diffusion);
}

Evolution::Evolution(const PhysParams& p) : Evolution(p, build_thermal_diffusion(p)) {}

Evolution::Evolution(const PhysParams& p, const Mat4& diffusion) : params_(p)
{
	p.validate();
	if (!diffusion.all_finite() || diffusion.asymmetry() > 1e-12 * std::max(1.0, diffusion.max_abs()))
	{
		throw PhysicsError("diffusion matrix must be finite and symmetric");
	}
	env_ = {build_drift(p), diffusion.symmetrized(), p.lambda};
	steady_ = gaussent::steady_state(env_.drift, env_.diffusion);
}

CovarianceState Evolution::state_at(const CovarianceState& s0, double t) const
{
	check_time(t);
	if (t == 0.0)
	{
		return s0;
	}
	const Mat4 m = detail::block_propagator<double>(params_, t);
	return certify_state(detail::closed_form_sigma(m, s0.sigma() - steady_, steady_), kTrajectoryTolerance);
}

Trajectory Evolution::sample(const CovarianceState& s0, std::span<const double> t_grid) const
{
	Trajectory traj{{}, params_, steady_};
	traj.samples.reserve(t_grid.size());
	double previous = -1.0;
	for (double t : t_grid)
	{
		check_time(t);
		if (!(t > previous))
		{
			throw std::invalid_argument("sample_trajectory: time grid must be strictly increasing");
		}
		previous = t;
		traj.samples.push_back({t, state_at(s0, t)});
	}
	return traj;
}

CovarianceState propagate(const CovarianceState& s0, const PhysParams& p, double t)
{
	return Evolution(p).state_at(s0, t);
}

Mat4 rk4_oracle(const CovarianceState& s0, const Mat4& drift, const Mat4& diffusion, double t, double dt)
{
	const double times[] = {t};
	return rk4_samples(s0, drift, diffusion, times, dt).front();
}

std::vector<Mat4> rk4_samples(const CovarianceState& s0, const Mat4& drift, const Mat4& diffusion,
	std::span<const double> times, double dt)
{
	check_rk4_arguments(dt);
	const Mat4 two_d = diffusion * 2.0;
	std::vector<Mat4> out;
	out.reserve(times.size());
	Mat4 sigma = s0.sigma();
	double now = 0.0;
	for (double target : times)
	{
		check_time(target);
		if (target < now)
		{
			throw std::invalid_argument("rk4_samples: times must be ascending");
		}
		const double span = target - now;
		if (span > 0.0)
		{
			const std::size_t steps = rk4_step_count(span, dt);
			const double h = span / static_cast<double>(steps);
			for (std::size_t k = 0; k < steps; ++k)
			{
				sigma = rk4_step(drift, two_d, sigma, h);
			}
		}
		now = target;
		out.push_back(sigma);
	}
	return out;
}

Trajectory sample_trajectory(const CovarianceState& s0, const PhysParams& p, std::span<const double> t_grid)
{
	return Evolution(p).sample(s0, t_grid);
}

} // namespace gaussent

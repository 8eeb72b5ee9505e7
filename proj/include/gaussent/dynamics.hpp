/// @file dynamics.hpp
/// @brief Time evolution of the covariance matrix under
/// d(sigma)/dt = Y sigma + sigma Y^T + 2D.
///
/// The production path is the closed-form solution
/// sigma(t) = M(t) [sigma(0) - sigma(inf)] M(t)^T + sigma(inf), M(t) = exp(Yt),
/// with sigma(inf) obtained from the Lyapunov equation by a 16x16 solve. A
/// fixed-step RK4 integrator of the same ODE is kept as an independent check.

#pragma once

#include "gaussent/physics.hpp"
#include "gaussent/states.hpp"

#include <span>
#include <vector>

namespace gaussent {

/// Evolved states are accepted down to this uncertainty residual.
inline constexpr double kTrajectoryTolerance = 1e-8;
inline constexpr double kDefaultRk4Step = 1e-3;
inline constexpr double kMaxRk4Steps = 1e7;

struct Propagator
{
	double t = 0.0;
	Mat4 M; ///< exp(Y t)
};

struct TrajectorySample
{
	double t;
	CovarianceState state;
};

struct Trajectory
{
	std::vector<TrajectorySample> samples;
	PhysParams params;
	Mat4 steady_state;
};

/// exp(Y t) in closed form: per mode the 2x2 block
/// e^{-lambda t} [[cos wt, sin(wt)/(m w)], [-m w sin wt, cos wt]].
Mat4 block_expm(const PhysParams& p, double t);

Propagator make_propagator(const PhysParams& p, double t);

/// Solves Y S + S Y^T = -2 D through the vectorized 16x16 system. Throws
/// NumericalError when the system is singular (for instance lambda = 0).
Mat4 steady_state(const Mat4& drift, const Mat4& diffusion);

/// Evolution in a fixed environment; sigma(inf) is computed once at
/// construction.
class Evolution
{
public:
	/// Thermal bath at p.temperature.
	explicit Evolution(const PhysParams& p);

	/// Drift from @p p, arbitrary symmetric diffusion matrix.
	Evolution(const PhysParams& p, const Mat4& diffusion);

	const PhysParams& params() const { return params_; }
	const EnvMatrices& environment() const { return env_; }
	const Mat4& steady_state() const { return steady_; }

	/// Closed-form sigma(t), symmetrized. t = 0 returns @p s0 unchanged.
	CovarianceState state_at(const CovarianceState& s0, double t) const;

	Trajectory sample(const CovarianceState& s0, std::span<const double> t_grid) const;

private:
	PhysParams params_;
	EnvMatrices env_;
	Mat4 steady_;
};

/// sigma(t) in a thermal bath at p.temperature.
CovarianceState propagate(const CovarianceState& s0, const PhysParams& p, double t);

/// Fixed-step RK4 integration of the covariance ODE from 0 to @p t. The step
/// is shrunk to t / ceil(t / dt) so that the end point is hit exactly.
Mat4 rk4_oracle(const CovarianceState& s0, const Mat4& drift, const Mat4& diffusion, double t,
	double dt = kDefaultRk4Step);

/// One RK4 pass that records sigma at every entry of the ascending @p times.
std::vector<Mat4> rk4_samples(const CovarianceState& s0, const Mat4& drift, const Mat4& diffusion,
	std::span<const double> times, double dt = kDefaultRk4Step);

/// Thermal-bath trajectory on an ascending, non-negative grid.
Trajectory sample_trajectory(const CovarianceState& s0, const PhysParams& p, std::span<const double> t_grid);

namespace detail {

template <typename Real>
Matrix<4, Real> block_propagator(const PhysParams& p, const Real& t)
{
	using std::cos;
	using std::exp;
	using std::sin;
	const Real m(p.mass);
	const Real damping = exp(-Real(p.lambda) * t);
	const std::array<Real, 2> w{Real(p.omega1), Real(p.omega2)};
	Matrix<4, Real> out;
	for (std::size_t mode = 0; mode < 2; ++mode)
	{
		const std::size_t q = 2 * mode;
		const Real phase = w[mode] * t;
		const Real c = cos(phase) * damping;
		const Real s = sin(phase) * damping;
		out(q, q) = c;
		out(q, q + 1) = s / (m * w[mode]);
		out(q + 1, q) = -m * w[mode] * s;
		out(q + 1, q + 1) = c;
	}
	return out;
}

/// Row-major vectorization: K[(i,j),(k,l)] = Y_ik d_jl + d_ik Y_jl.
template <typename Real>
Matrix<4, Real> lyapunov_solve(const Matrix<4, Real>& y, const Matrix<4, Real>& d)
{
	Matrix<16, Real> k;
	Vector<16, Real> rhs{};
	for (std::size_t i = 0; i < 4; ++i)
	{
		for (std::size_t j = 0; j < 4; ++j)
		{
			const std::size_t row = 4 * i + j;
			rhs[row] = Real(-2) * d(i, j);
			for (std::size_t c = 0; c < 4; ++c)
			{
				k(row, 4 * c + j) += y(i, c);
				k(row, 4 * i + c) += y(j, c);
			}
		}
	}
	const auto x = lu_solve(k, rhs);
	Matrix<4, Real> s;
	for (std::size_t i = 0; i < 4; ++i)
	{
		for (std::size_t j = 0; j < 4; ++j)
		{
			s(i, j) = x[4 * i + j];
		}
	}
	return s.symmetrized();
}

template <typename Real>
Matrix<4, Real> closed_form_sigma(const Matrix<4, Real>& propagator, const Matrix<4, Real>& deviation0,
	const Matrix<4, Real>& sigma_inf)
{
	return (propagator * deviation0 * propagator.transpose() + sigma_inf).symmetrized();
}

} // namespace detail

} // namespace gaussent

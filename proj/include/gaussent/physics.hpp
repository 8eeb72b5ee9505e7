/// @file physics.hpp
/// @brief Parameters of two uncoupled oscillators in a common thermal bath and
/// the drift / diffusion matrices of their second-moment equation of motion.
///
/// Units: hbar = k_B = 1. Phase-space ordering everywhere is (x, p_x, y, p_y).

#pragma once

#include "gaussent/linalg.hpp"

#include <array>
#include <optional>
#include <string>

namespace gaussent {

struct PhysParams
{
	double mass = 1.0;
	double omega1 = 1.0;
	double omega2 = 1.0;
	double lambda = 0.1; ///< dissipation constant, shared by both modes
	double temperature = 0.0;

	/// Throws PhysicsError unless mass, frequencies and lambda are finite and
	/// strictly positive and the temperature is finite and non-negative.
	void validate() const;
};

/// Drift Y, diffusion D and the lambda that enters the complete-positivity
/// constraints on D.
struct EnvMatrices
{
	Mat4 drift;
	Mat4 diffusion;
	double lambda = 0.0;
};

struct CPInequality
{
	std::string name;
	double residual = 0.0; ///< lhs - rhs
	bool passed = false;
};

enum class CPMode
{
	Pairwise, ///< the six Cauchy-Schwarz inequalities only
	Strict,   ///< additionally require the full Hermitian coefficient matrix to be PSD
};

struct CPReport
{
	std::array<CPInequality, 6> inequalities;
	std::optional<double> strict_min_eigenvalue; ///< set in CPMode::Strict
	bool passed = false;
};

inline constexpr double kCPTolerance = 1e-12;

Mat4 build_drift(const PhysParams& p);

/// coth(x) for x > 0 with relative error <= 1e-12: a three-term series below
/// 1e-2, 1 + 2/(e^{2x} - 1) up to 20 and 1 + 2e^{-2x} beyond. Throws
/// std::domain_error for x <= 0 or NaN.
double coth_stable(double x);

/// coth(omega / 2T), with the T = 0 limit returned as exactly 1.
double thermal_coth(double omega, double temperature);

/// Diagonal diffusion matrix of the thermal bath:
/// m w D_qq = D_pp / (m w) = (lambda/2) coth(w/2T) per mode, all cross terms 0.
Mat4 build_thermal_diffusion(const PhysParams& p);

EnvMatrices thermal_environment(const PhysParams& p);

/// Evaluates the Cauchy-Schwarz constraints that complete positivity imposes
/// on a diffusion matrix. Failures are reported, never thrown.
CPReport validate_cp(const Mat4& diffusion, double lambda, CPMode mode = CPMode::Pairwise);

namespace detail {

template <typename Real>
Matrix<4, Real> drift_matrix(const PhysParams& p)
{
	const Real m(p.mass);
	const Real lam(p.lambda);
	const std::array<Real, 2> w{Real(p.omega1), Real(p.omega2)};
	Matrix<4, Real> y;
	for (std::size_t mode = 0; mode < 2; ++mode)
	{
		const std::size_t q = 2 * mode;
		y(q, q) = -lam;
		y(q, q + 1) = Real(1) / m;
		y(q + 1, q) = -m * w[mode] * w[mode];
		y(q + 1, q + 1) = -lam;
	}
	return y;
}

/// Extended-precision counterpart of thermal_coth; the cancellation in
/// e^{2x} - 1 is absorbed by the working precision.
template <typename Real>
Real thermal_coth_generic(double omega, double temperature)
{
	if (temperature == 0.0)
	{
		return Real(1);
	}
	using std::exp;
	const Real x = Real(omega) / (Real(2) * Real(temperature));
	return Real(1) + Real(2) / (exp(Real(2) * x) - Real(1));
}

template <typename Real>
Matrix<4, Real> thermal_diffusion_from_coth(const PhysParams& p, const Real& coth1, const Real& coth2)
{
	const Real m(p.mass);
	const Real half_lambda = Real(p.lambda) / Real(2);
	const std::array<Real, 2> w{Real(p.omega1), Real(p.omega2)};
	const std::array<Real, 2> c{coth1, coth2};
	Matrix<4, Real> d;
	for (std::size_t mode = 0; mode < 2; ++mode)
	{
		const std::size_t q = 2 * mode;
		d(q, q) = half_lambda * c[mode] / (m * w[mode]);
		d(q + 1, q + 1) = half_lambda * c[mode] * m * w[mode];
	}
	return d;
}

} // namespace detail

} // namespace gaussent

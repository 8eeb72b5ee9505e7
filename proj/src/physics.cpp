#include "gaussent/physics.hpp"

#include <cmath>
#include <stdexcept>

namespace gaussent {

namespace {

void require(bool ok, const std::string& what)
{
	if (!ok)
	{
		throw PhysicsError("invalid parameters: " + what);
	}
}

} // namespace

void PhysParams::validate() const
{
	require(std::isfinite(mass) && mass > 0.0, "mass must be finite and > 0");
	require(std::isfinite(omega1) && omega1 > 0.0, "omega1 must be finite and > 0");
	require(std::isfinite(omega2) && omega2 > 0.0, "omega2 must be finite and > 0");
	require(std::isfinite(lambda) && lambda > 0.0, "lambda must be finite and > 0");
	require(std::isfinite(temperature) && temperature >= 0.0, "temperature must be finite and >= 0");
}

Mat4 build_drift(const PhysParams& p)
{
	p.validate();
	return detail::drift_matrix<double>(p);
}

double coth_stable(double x)
{
	if (!(x > 0.0))
	{
		throw std::domain_error("coth_stable: argument must be > 0");
	}
	if (x < 1e-2)
	{
		return 1.0 / x + x / 3.0 - x * x * x / 45.0;
	}
	if (x >= 20.0)
	{
		return 1.0 + 2.0 * std::exp(-2.0 * x);
	}
	return 1.0 + 2.0 / std::expm1(2.0 * x);
}

double thermal_coth(double omega, double temperature)
{
	if (temperature == 0.0)
	{
		return 1.0;
	}
	return coth_stable(omega / (2.0 * temperature));
}

Mat4 build_thermal_diffusion(const PhysParams& p)
{
	p.validate();
	return detail::thermal_diffusion_from_coth<double>(p, thermal_coth(p.omega1, p.temperature),
		thermal_coth(p.omega2, p.temperature));
}

EnvMatrices thermal_environment(const PhysParams& p)
{
	return {build_drift(p), build_thermal_diffusion(p), p.lambda};
}

CPReport validate_cp(const Mat4& d, double lambda, CPMode mode)
{
	// indices in (x, p_x, y, p_y)
	constexpr std::size_t x = 0, px = 1, y = 2, py = 3;
	const double quarter_l2 = lambda * lambda / 4.0;

	auto pair = [&d](std::size_t a, std::size_t b, std::size_t c, std::size_t e) {
		return d(a, a) * d(b, b) - d(c, e) * d(c, e);
	};

	CPReport report;
	report.inequalities = {{
		{"Dxx*Dpxpx - Dxpx^2 >= lambda^2/4", pair(x, px, x, px) - quarter_l2, false},
		{"Dyy*Dpypy - Dypy^2 >= lambda^2/4", pair(y, py, y, py) - quarter_l2, false},
		{"Dxx*Dyy - Dxy^2 >= 0", pair(x, y, x, y), false},
		{"Dpxpx*Dpypy - Dpxpy^2 >= 0", pair(px, py, px, py), false},
		{"Dxx*Dpypy - Dxpy^2 >= 0", pair(x, py, x, py), false},
		{"Dyy*Dpxpx - Dypx^2 >= 0", pair(y, px, px, y), false},
	}};

	report.passed = true;
	for (auto& ineq : report.inequalities)
	{
		ineq.passed = ineq.residual >= -kCPTolerance;
		report.passed = report.passed && ineq.passed;
	}

	if (mode == CPMode::Strict)
	{
		// Hermitian coefficient matrix of the Lindblad couplings, rows (x, p_x, y, p_y)
		Mat4 re;
		re(x, x) = d(x, x);
		re(px, px) = d(px, px);
		re(y, y) = d(y, y);
		re(py, py) = d(py, py);
		re(x, px) = re(px, x) = -d(x, px);
		re(x, y) = re(y, x) = d(x, y);
		re(x, py) = re(py, x) = -d(x, py);
		re(px, y) = re(y, px) = -d(px, y);
		re(px, py) = re(py, px) = d(px, py);
		re(y, py) = re(py, y) = -d(y, py);
		Mat4 im;
		im(x, px) = -lambda / 2.0;
		im(px, x) = lambda / 2.0;
		im(y, py) = -lambda / 2.0;
		im(py, y) = lambda / 2.0;
		const double min_eig = hermitian_min_eigenvalue(re, im);
		report.strict_min_eigenvalue = min_eig;
		report.passed = report.passed && min_eig >= -kCPTolerance;
	}
	return report;
}

} // namespace gaussent

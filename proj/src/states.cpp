#include "gaussent/states.hpp"

#include <cmath>
#include <sstream>

namespace gaussent {

namespace {

void require_finite_parameter(double r)
{
	if (!std::isfinite(r))
	{
		throw PhysicsError("squeezing parameter must be finite");
	}
}

} // namespace

Mat2 symplectic_j()
{
	Mat2 j;
	j(0, 1) = 1.0;
	j(1, 0) = -1.0;
	return j;
}

Mat4 symplectic_form()
{
	Mat4 omega;
	omega(0, 1) = 1.0;
	omega(1, 0) = -1.0;
	omega(2, 3) = 1.0;
	omega(3, 2) = -1.0;
	return omega;
}

double uncertainty_residual(const Mat4& sigma)
{
	return hermitian_min_eigenvalue(sigma, symplectic_form() * 0.5);
}

CovarianceState certify_state(const Mat4& sigma, double tolerance)
{
	if (!sigma.all_finite())
	{
		throw PhysicsError("covariance matrix has non-finite entries");
	}
	const Mat4 sym = sigma.symmetrized();
	const double residual = uncertainty_residual(sym);
	if (residual < -tolerance)
	{
		std::ostringstream msg;
		msg << "covariance matrix violates the uncertainty relation: min eig(sigma + i Omega/2) = " << residual
			<< " < -" << tolerance;
		throw UnphysicalStateError(msg.str(), residual);
	}
	return CovarianceState(sym, residual);
}

CovarianceState vacuum_state()
{
	return certify_state(Mat4::identity() * 0.5);
}

CovarianceState single_mode_squeezed(double r)
{
	require_finite_parameter(r);
	const double c = std::cosh(r) / 2.0;
	const double s = std::sinh(r) / 2.0;
	Mat4 sigma;
	for (std::size_t q : {0u, 2u})
	{
		sigma(q, q) = c;
		sigma(q, q + 1) = s;
		sigma(q + 1, q) = s;
		sigma(q + 1, q + 1) = c;
	}
	return certify_state(sigma);
}

CovarianceState two_mode_squeezed(double r)
{
	require_finite_parameter(r);
	const double c = std::cosh(r) / 2.0;
	const double s = std::sinh(r) / 2.0;
	Mat4 sigma = Mat4::diagonal({c, c, c, c});
	sigma(0, 2) = sigma(2, 0) = s;
	sigma(1, 3) = sigma(3, 1) = -s;
	return certify_state(sigma);
}

CovarianceState from_raw(const Mat4& sigma)
{
	if (!sigma.all_finite())
	{
		throw PhysicsError("covariance matrix has non-finite entries");
	}
	if (sigma.asymmetry() > kRawSymmetryTolerance)
	{
		std::ostringstream msg;
		msg << "covariance matrix is not symmetric: max |s_ij - s_ji| = " << sigma.asymmetry();
		throw PhysicsError(msg.str());
	}
	return certify_state(sigma);
}

BlockDecomp blocks(const CovarianceState& s)
{
	return split_blocks(s.sigma());
}

Mat4 assemble(const BlockDecomp& b)
{
	Mat4 s;
	for (std::size_t i = 0; i < 2; ++i)
	{
		for (std::size_t j = 0; j < 2; ++j)
		{
			s(i, j) = b.A(i, j);
			s(i + 2, j + 2) = b.B(i, j);
			s(i, j + 2) = b.C(i, j);
			s(j + 2, i) = b.C(i, j);
		}
	}
	return s;
}

} // namespace gaussent

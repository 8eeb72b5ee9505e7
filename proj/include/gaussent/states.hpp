/// @file states.hpp
/// @brief Zero-mean two-mode Gaussian states described by their 4x4
/// covariance matrix in the ordering (x, p_x, y, p_y), vacuum = I/2.

#pragma once

#include "gaussent/linalg.hpp"

namespace gaussent {

/// A covariance matrix is accepted when the smallest eigenvalue of
/// sigma + (i/2) Omega is at least -kPhysicalityTolerance.
inline constexpr double kPhysicalityTolerance = 1e-10;
/// Raw input may be asymmetric by at most this much before symmetrization.
inline constexpr double kRawSymmetryTolerance = 1e-9;

/// Rejection of a covariance matrix that violates the uncertainty relation.
class UnphysicalStateError : public PhysicsError
{
public:
	UnphysicalStateError(const std::string& what, double residual) : PhysicsError(what), residual_(residual) {}
	double residual() const noexcept { return residual_; }

private:
	double residual_;
};

/// sigma = [[A, C], [C^T, B]]
template <typename Real = double>
struct BlockDecomposition
{
	Matrix<2, Real> A;
	Matrix<2, Real> B;
	Matrix<2, Real> C;
};
using BlockDecomp = BlockDecomposition<double>;

/// A certified physical covariance matrix. Only obtainable through the
/// constructors below, all of which check the uncertainty relation.
class CovarianceState
{
public:
	const Mat4& sigma() const { return sigma_; }

	/// Smallest eigenvalue of sigma + (i/2) Omega at construction.
	double uncertainty_residual() const { return residual_; }

	friend CovarianceState certify_state(const Mat4& sigma, double tolerance);

private:
	CovarianceState(const Mat4& sigma, double residual) : sigma_(sigma), residual_(residual) {}

	Mat4 sigma_;
	double residual_;
};

/// J = [[0, 1], [-1, 0]]
Mat2 symplectic_j();

/// Omega = J (+) J
Mat4 symplectic_form();

/// Smallest eigenvalue of the Hermitian matrix sigma + (i/2) Omega.
double uncertainty_residual(const Mat4& sigma);

/// Symmetrizes @p sigma and wraps it after checking the uncertainty relation
/// against @p tolerance; throws UnphysicalStateError otherwise.
CovarianceState certify_state(const Mat4& sigma, double tolerance = kPhysicalityTolerance);

CovarianceState vacuum_state();

/// Both modes squeezed with the same parameter r, no cross-correlation.
CovarianceState single_mode_squeezed(double r);

/// Two-mode squeezed vacuum: A = B = (cosh r / 2) I, C = (sinh r / 2) diag(1, -1).
CovarianceState two_mode_squeezed(double r);

/// Accepts a user-supplied covariance matrix. Throws PhysicsError when the
/// input is asymmetric beyond kRawSymmetryTolerance or contains non-finite
/// entries, and UnphysicalStateError when the uncertainty relation fails.
CovarianceState from_raw(const Mat4& sigma);

template <typename Real>
BlockDecomposition<Real> split_blocks(const Matrix<4, Real>& s)
{
	BlockDecomposition<Real> b;
	for (std::size_t i = 0; i < 2; ++i)
	{
		for (std::size_t j = 0; j < 2; ++j)
		{
			b.A(i, j) = s(i, j);
			b.B(i, j) = s(i + 2, j + 2);
			b.C(i, j) = s(i, j + 2);
		}
	}
	return b;
}

BlockDecomp blocks(const CovarianceState& s);

Mat4 assemble(const BlockDecomp& b);

} // namespace gaussent

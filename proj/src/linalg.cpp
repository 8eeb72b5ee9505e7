#include "gaussent/linalg.hpp"

#include <stdexcept>

namespace gaussent {

double det4(const Mat4& m)
{
	return lu_determinant(m);
}

std::array<double, 4> sym_eig4(const Mat4& m)
{
	const double tol = 1e-12 * std::max(1.0, m.max_abs());
	if (m.asymmetry() > tol)
	{
		throw std::invalid_argument("sym_eig4: input is not symmetric (asymmetry " + std::to_string(m.asymmetry()) + ")");
	}
	return jacobi_eigen(m).values;
}

Mat4 expm4(const Mat4& m, ExpmMethod method)
{
	if (method != ExpmMethod::SeriesScalingSquaring)
	{
		throw std::invalid_argument("expm4: unsupported method");
	}
	if (!m.all_finite())
	{
		throw NumericalError("expm4: non-finite input");
	}
	const double norm = m.one_norm();
	if (norm > kExpmNormLimit)
	{
		throw NumericalError("expm4: one-norm " + std::to_string(norm) + " exceeds limit " + std::to_string(kExpmNormLimit));
	}

	int squarings = 0;
	double scaled_norm = norm;
	while (scaled_norm > 0.5)
	{
		scaled_norm /= 2.0;
		++squarings;
	}
	const Mat4 a = m * std::ldexp(1.0, -squarings);

	// Horner evaluation of sum_{k<=18} a^k / k!
	constexpr int order = 18;
	Mat4 result = Mat4::identity();
	for (int k = order; k >= 1; --k)
	{
		result = Mat4::identity() + (a * result) * (1.0 / k);
	}
	for (int i = 0; i < squarings; ++i)
	{
		result = result * result;
	}
	return result;
}

Vec16 solve16(const Mat16& coeff, const Vec16& rhs)
{
	return lu_solve(coeff, rhs);
}

double hermitian_min_eigenvalue(const Mat4& re, const Mat4& im)
{
	Mat8 embed;
	for (std::size_t i = 0; i < 4; ++i)
	{
		for (std::size_t j = 0; j < 4; ++j)
		{
			embed(i, j) = re(i, j);
			embed(i + 4, j + 4) = re(i, j);
			embed(i, j + 4) = -im(i, j);
			embed(i + 4, j) = im(i, j);
		}
	}
	return jacobi_eigen(embed).values[0];
}

} // namespace gaussent

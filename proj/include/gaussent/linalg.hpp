/// @file linalg.hpp
/// @brief Fixed-size dense real matrices and the handful of algorithms the
/// two-mode problem needs (determinants, symmetric eigenvalues, matrix
/// exponential, 16x16 linear solve).
///
/// The matrix type is a template over the scalar so that the same kernels can
/// run in double precision and in the MPFR-backed types used for certified
/// sign evaluation of tiny separability values.

#pragma once

#include "gaussent/errors.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <string>

namespace gaussent {

/// Row-major N x N matrix with value semantics. Default-constructed to zero.
template <std::size_t N, typename Real = double>
class Matrix
{
public:
	static constexpr std::size_t size = N;
	using value_type = Real;

	Matrix() = default;

	static Matrix identity()
	{
		Matrix m;
		for (std::size_t i = 0; i < N; ++i)
		{
			m(i, i) = Real(1);
		}
		return m;
	}

	static Matrix diagonal(const std::array<Real, N>& d)
	{
		Matrix m;
		for (std::size_t i = 0; i < N; ++i)
		{
			m(i, i) = d[i];
		}
		return m;
	}

	/// @p values must hold N*N entries in row-major order.
	static Matrix from_row_major(std::span<const Real> values)
	{
		if (values.size() != N * N)
		{
			throw std::invalid_argument("Matrix::from_row_major: expected " + std::to_string(N * N) + " entries");
		}
		Matrix m;
		for (std::size_t k = 0; k < N * N; ++k)
		{
			m.entries_[k] = values[k];
		}
		return m;
	}

	Real& operator()(std::size_t i, std::size_t j) { return entries_[i * N + j]; }
	const Real& operator()(std::size_t i, std::size_t j) const { return entries_[i * N + j]; }

	const std::array<Real, N * N>& entries() const { return entries_; }

	Matrix transpose() const
	{
		Matrix t;
		for (std::size_t i = 0; i < N; ++i)
		{
			for (std::size_t j = 0; j < N; ++j)
			{
				t(j, i) = (*this)(i, j);
			}
		}
		return t;
	}

	Real trace() const
	{
		Real s(0);
		for (std::size_t i = 0; i < N; ++i)
		{
			s += (*this)(i, i);
		}
		return s;
	}

	/// Largest absolute entry.
	Real max_abs() const
	{
		using std::abs;
		Real best(0);
		for (const auto& e : entries_)
		{
			if (abs(e) > best)
			{
				best = abs(e);
			}
		}
		return best;
	}

	/// Maximum absolute column sum.
	Real one_norm() const
	{
		using std::abs;
		Real best(0);
		for (std::size_t j = 0; j < N; ++j)
		{
			Real col(0);
			for (std::size_t i = 0; i < N; ++i)
			{
				col += abs((*this)(i, j));
			}
			if (col > best)
			{
				best = col;
			}
		}
		return best;
	}

	bool all_finite() const
	{
		for (const auto& e : entries_)
		{
			if (!std::isfinite(static_cast<double>(e)))
			{
				return false;
			}
		}
		return true;
	}

	/// (m + m^T) / 2
	Matrix symmetrized() const
	{
		Matrix s;
		for (std::size_t i = 0; i < N; ++i)
		{
			for (std::size_t j = 0; j < N; ++j)
			{
				s(i, j) = ((*this)(i, j) + (*this)(j, i)) / Real(2);
			}
		}
		return s;
	}

	/// Largest |m_ij - m_ji|.
	Real asymmetry() const
	{
		using std::abs;
		Real worst(0);
		for (std::size_t i = 0; i < N; ++i)
		{
			for (std::size_t j = i + 1; j < N; ++j)
			{
				const Real d = abs((*this)(i, j) - (*this)(j, i));
				if (d > worst)
				{
					worst = d;
				}
			}
		}
		return worst;
	}

	template <typename Other>
	Matrix<N, Other> cast() const
	{
		Matrix<N, Other> out;
		for (std::size_t i = 0; i < N; ++i)
		{
			for (std::size_t j = 0; j < N; ++j)
			{
				out(i, j) = Other((*this)(i, j));
			}
		}
		return out;
	}

	Matrix& operator+=(const Matrix& o)
	{
		for (std::size_t k = 0; k < N * N; ++k)
		{
			entries_[k] += o.entries_[k];
		}
		return *this;
	}

	Matrix& operator-=(const Matrix& o)
	{
		for (std::size_t k = 0; k < N * N; ++k)
		{
			entries_[k] -= o.entries_[k];
		}
		return *this;
	}

	Matrix& operator*=(const Real& s)
	{
		for (auto& e : entries_)
		{
			e *= s;
		}
		return *this;
	}

	friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
	friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
	friend Matrix operator*(Matrix a, const Real& s) { return a *= s; }
	friend Matrix operator*(const Real& s, Matrix a) { return a *= s; }
	friend Matrix operator-(Matrix a)
	{
		for (auto& e : a.entries_)
		{
			e = -e;
		}
		return a;
	}

	friend Matrix operator*(const Matrix& a, const Matrix& b)
	{
		Matrix c;
		for (std::size_t i = 0; i < N; ++i)
		{
			for (std::size_t k = 0; k < N; ++k)
			{
				const Real aik = a(i, k);
				for (std::size_t j = 0; j < N; ++j)
				{
					c(i, j) += aik * b(k, j);
				}
			}
		}
		return c;
	}

	friend bool operator==(const Matrix& a, const Matrix& b) { return a.entries_ == b.entries_; }

private:
	std::array<Real, N * N> entries_{};
};

template <std::size_t N, typename Real = double>
using Vector = std::array<Real, N>;

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;
using Mat8 = Matrix<8>;
using Mat16 = Matrix<16>;
using Vec16 = Vector<16>;

/// max_ij |a_ij - b_ij|
template <std::size_t N, typename Real>
Real max_abs_diff(const Matrix<N, Real>& a, const Matrix<N, Real>& b)
{
	return (a - b).max_abs();
}

template <typename Real>
Real det2(const Matrix<2, Real>& m)
{
	return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

/// Determinant by LU factorization with partial pivoting.
template <std::size_t N, typename Real>
Real lu_determinant(Matrix<N, Real> a)
{
	using std::abs;
	Real det(1);
	for (std::size_t col = 0; col < N; ++col)
	{
		std::size_t pivot = col;
		for (std::size_t r = col + 1; r < N; ++r)
		{
			if (abs(a(r, col)) > abs(a(pivot, col)))
			{
				pivot = r;
			}
		}
		if (a(pivot, col) == Real(0))
		{
			return Real(0);
		}
		if (pivot != col)
		{
			for (std::size_t j = 0; j < N; ++j)
			{
				std::swap(a(pivot, j), a(col, j));
			}
			det = -det;
		}
		det *= a(col, col);
		for (std::size_t r = col + 1; r < N; ++r)
		{
			const Real f = a(r, col) / a(col, col);
			for (std::size_t j = col; j < N; ++j)
			{
				a(r, j) -= f * a(col, j);
			}
		}
	}
	return det;
}

/// Solves coeff * x = rhs by Gaussian elimination with partial pivoting.
/// Throws NumericalError when a pivot falls below a relative threshold of
/// 64 machine epsilons times the largest coefficient.
template <std::size_t N, typename Real>
Vector<N, Real> lu_solve(Matrix<N, Real> a, Vector<N, Real> b)
{
	using std::abs;
	const Real scale = a.max_abs();
	const Real threshold = scale * Real(64) * std::numeric_limits<Real>::epsilon();
	if (scale == Real(0))
	{
		throw NumericalError("singular system: coefficient matrix is zero (smallest pivot 0)");
	}
	for (std::size_t col = 0; col < N; ++col)
	{
		std::size_t pivot = col;
		for (std::size_t r = col + 1; r < N; ++r)
		{
			if (abs(a(r, col)) > abs(a(pivot, col)))
			{
				pivot = r;
			}
		}
		if (abs(a(pivot, col)) <= threshold)
		{
			std::ostringstream msg;
			msg << "singular system: smallest pivot " << static_cast<double>(abs(a(pivot, col)))
				<< " at column " << col << " (threshold " << static_cast<double>(threshold) << ")";
			throw NumericalError(msg.str());
		}
		if (pivot != col)
		{
			for (std::size_t j = 0; j < N; ++j)
			{
				std::swap(a(pivot, j), a(col, j));
			}
			std::swap(b[pivot], b[col]);
		}
		for (std::size_t r = col + 1; r < N; ++r)
		{
			const Real f = a(r, col) / a(col, col);
			if (f == Real(0))
			{
				continue;
			}
			for (std::size_t j = col; j < N; ++j)
			{
				a(r, j) -= f * a(col, j);
			}
			b[r] -= f * b[col];
		}
	}
	Vector<N, Real> x{};
	for (std::size_t ii = N; ii-- > 0;)
	{
		Real s = b[ii];
		for (std::size_t j = ii + 1; j < N; ++j)
		{
			s -= a(ii, j) * x[j];
		}
		x[ii] = s / a(ii, ii);
	}
	return x;
}

/// Ascending eigenvalues plus the matching orthonormal eigenvectors stored as
/// columns of @p vectors.
template <std::size_t N>
struct SymmetricEigen
{
	std::array<double, N> values{};
	Matrix<N> vectors;
	int sweeps = 0;
};

/// Cyclic Jacobi diagonalization of a symmetric matrix. The input is
/// symmetrized first; iteration stops once the off-diagonal Frobenius norm is
/// at most 1e-14 times the Frobenius norm of the input.
template <std::size_t N>
SymmetricEigen<N> jacobi_eigen(const Matrix<N>& input)
{
	Matrix<N> a = input.symmetrized();
	Matrix<N> v = Matrix<N>::identity();

	double total = 0.0;
	for (double e : a.entries())
	{
		total += e * e;
	}
	const double stop = 1e-14 * std::sqrt(total);

	auto off_norm = [&a] {
		double s = 0.0;
		for (std::size_t i = 0; i < N; ++i)
		{
			for (std::size_t j = 0; j < N; ++j)
			{
				if (i != j)
				{
					s += a(i, j) * a(i, j);
				}
			}
		}
		return std::sqrt(s);
	};

	int sweep = 0;
	constexpr int max_sweeps = 100;
	while (sweep < max_sweeps && off_norm() > stop)
	{
		++sweep;
		for (std::size_t p = 0; p + 1 < N; ++p)
		{
			for (std::size_t q = p + 1; q < N; ++q)
			{
				const double apq = a(p, q);
				if (apq == 0.0)
				{
					continue;
				}
				const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
				const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
				const double c = 1.0 / std::sqrt(t * t + 1.0);
				const double s = t * c;
				for (std::size_t k = 0; k < N; ++k)
				{
					const double akp = a(k, p);
					const double akq = a(k, q);
					a(k, p) = c * akp - s * akq;
					a(k, q) = s * akp + c * akq;
				}
				for (std::size_t k = 0; k < N; ++k)
				{
					const double apk = a(p, k);
					const double aqk = a(q, k);
					a(p, k) = c * apk - s * aqk;
					a(q, k) = s * apk + c * aqk;
				}
				for (std::size_t k = 0; k < N; ++k)
				{
					const double vkp = v(k, p);
					const double vkq = v(k, q);
					v(k, p) = c * vkp - s * vkq;
					v(k, q) = s * vkp + c * vkq;
				}
			}
		}
	}
	if (off_norm() > stop)
	{
		throw NumericalError("Jacobi iteration did not converge in " + std::to_string(max_sweeps) + " sweeps");
	}

	// selection sort on (value, column) pairs
	SymmetricEigen<N> out;
	std::array<std::size_t, N> order{};
	for (std::size_t i = 0; i < N; ++i)
	{
		order[i] = i;
	}
	for (std::size_t i = 0; i < N; ++i)
	{
		for (std::size_t j = i + 1; j < N; ++j)
		{
			if (a(order[j], order[j]) < a(order[i], order[i]))
			{
				std::swap(order[i], order[j]);
			}
		}
	}
	for (std::size_t i = 0; i < N; ++i)
	{
		out.values[i] = a(order[i], order[i]);
		for (std::size_t k = 0; k < N; ++k)
		{
			out.vectors(k, i) = v(k, order[i]);
		}
	}
	out.sweeps = sweep;
	return out;
}

double det4(const Mat4& m);

/// Eigenvalues of a symmetric 4x4 matrix, ascending. Throws
/// std::invalid_argument when |m_ij - m_ji| exceeds 1e-12 * max(1, max|m|).
std::array<double, 4> sym_eig4(const Mat4& m);

enum class ExpmMethod
{
	SeriesScalingSquaring,
};

/// Inputs with one-norm above this are refused by expm4.
inline constexpr double kExpmNormLimit = 700.0;

/// Matrix exponential by scaling and squaring of a degree-18 Taylor
/// polynomial. Throws NumericalError for non-finite input or a one-norm above
/// kExpmNormLimit.
Mat4 expm4(const Mat4& m, ExpmMethod method = ExpmMethod::SeriesScalingSquaring);

/// LU solve of the 16x16 system; see lu_solve for the singularity rule.
Vec16 solve16(const Mat16& coeff, const Vec16& rhs);

/// Minimum eigenvalue of a Hermitian matrix together with the tolerance it is
/// judged against.
struct HermitianCheck
{
	double min_eigenvalue = 0.0;
	double tolerance = 1e-10;

	bool passed() const { return min_eigenvalue >= -tolerance; }
};

/// Smallest eigenvalue of the Hermitian matrix re + i*im (re symmetric, im
/// antisymmetric), computed on the 8x8 real symmetric embedding
/// [[re, -im], [im, re]], whose spectrum is that of re + i*im with every
/// eigenvalue doubled.
double hermitian_min_eigenvalue(const Mat4& re, const Mat4& im);

} // namespace gaussent

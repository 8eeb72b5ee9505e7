#include "gaussent/entanglement.hpp"

#include "gaussent/precise.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gaussent {

SimonValue simon_function(const CovarianceState& s)
{
	return simon_terms(s.sigma());
}

SimonValue simon_function(const Mat4& sigma)
{
	return simon_terms(sigma);
}

SymplecticSpectrum symplectic_spectrum_pt(const CovarianceState& s)
{
	return symplectic_spectrum_pt(s.sigma());
}

SymplecticSpectrum symplectic_spectrum_pt(const Mat4& sigma)
{
	SymplecticSpectrum out;
	const SimonValue inv = simon_terms(sigma);
	out.seralian = inv.det_a + inv.det_b - 2.0 * inv.det_c;
	out.det_sigma = det4(sigma);

	// Delta^2 - 4 det(sigma) rewritten through det(sigma) = detA detB + detC^2 - Tr[AJCJBJC^T J];
	// this form does not cancel when the two eigenvalues nearly coincide.
	const double gap = inv.det_a - inv.det_b;
	double disc = gap * gap - 4.0 * inv.det_c * (inv.det_a + inv.det_b) + 4.0 * inv.trace_term;
	if (disc < -kDiscriminantTolerance)
	{
		std::ostringstream msg;
		msg << "symplectic spectrum: Delta^2 - 4 det(sigma) = " << disc << " is negative (unphysical input)";
		throw PhysicsError(msg.str());
	}
	disc = std::max(disc, 0.0);
	const double nu_plus_sq = (out.seralian + std::sqrt(disc)) / 2.0;
	if (!(nu_plus_sq > 0.0))
	{
		throw PhysicsError("symplectic spectrum: non-positive seralian (unphysical input)");
	}
	out.nu_plus = std::sqrt(nu_plus_sq);
	out.nu_minus = std::sqrt(std::max(out.det_sigma / nu_plus_sq, 0.0));
	return out;
}

Mat4 partial_transpose(const Mat4& sigma)
{
	Mat4 out = sigma;
	for (std::size_t k = 0; k < 4; ++k)
	{
		if (k != 3)
		{
			out(3, k) = -out(3, k);
			out(k, 3) = -out(k, 3);
		}
	}
	return out;
}

std::array<double, 2> symplectic_spectrum_pt_explicit(const Mat4& sigma)
{
	const Mat4 transposed = partial_transpose(sigma);
	const auto eig = jacobi_eigen(transposed);
	if (eig.values[0] <= 0.0)
	{
		throw PhysicsError("partial transpose is not positive definite");
	}
	Mat4 root;
	for (std::size_t i = 0; i < 4; ++i)
	{
		for (std::size_t j = 0; j < 4; ++j)
		{
			double s = 0.0;
			for (std::size_t k = 0; k < 4; ++k)
			{
				s += eig.vectors(i, k) * std::sqrt(eig.values[k]) * eig.vectors(j, k);
			}
			root(i, j) = s;
		}
	}
	const Mat4 k = root * symplectic_form() * root;
	Mat8 embed;
	for (std::size_t i = 0; i < 4; ++i)
	{
		for (std::size_t j = 0; j < 4; ++j)
		{
			embed(i, j + 4) = -k(i, j);
			embed(i + 4, j) = k(i, j);
		}
	}
	// spectrum {-nu+, -nu+, -nu-, -nu-, nu-, nu-, nu+, nu+}
	const auto spec = jacobi_eigen(embed).values;
	return {spec[4], spec[6]};
}

double log_negativity(const SymplecticSpectrum& spectrum)
{
	if (spectrum.nu_minus == 0.0)
	{
		throw NumericalError("log negativity diverges: nu_minus = 0");
	}
	return -std::log2(2.0 * spectrum.nu_minus);
}

double log_negativity(const CovarianceState& s)
{
	return log_negativity(symplectic_spectrum_pt(s));
}

bool is_entangled(const CovarianceState& s)
{
	return log_negativity(s) > 0.0;
}

double asymptotic_simon(const PhysParams& p)
{
	p.validate();
	const double c1 = thermal_coth(p.omega1, p.temperature);
	const double c2 = thermal_coth(p.omega2, p.temperature);
	return (c1 - 1.0) * (c1 + 1.0) * (c2 - 1.0) * (c2 + 1.0) / 16.0;
}

double asymptotic_log_negativity(const PhysParams& p)
{
	p.validate();
	return -std::log2(thermal_coth(std::max(p.omega1, p.omega2), p.temperature));
}

namespace {

EsdResult find_esd(const CovarianceState& s0, const PreciseSimonTrace& trace, double t_max, double tolerance,
	const EsdOptions& options)
{
	if (!(tolerance > 0.0) || !std::isfinite(tolerance))
	{
		throw std::invalid_argument("esd_time: tolerance must be finite and > 0");
	}
	if (!(t_max > 0.0) || !std::isfinite(t_max))
	{
		throw std::invalid_argument("esd_time: t_max must be finite and > 0");
	}
	if (options.grid_points < 2)
	{
		throw std::invalid_argument("esd_time: need at least 2 grid points");
	}
	const double s_initial = simon_function(s0).S;
	if (!(s_initial < 0.0))
	{
		std::ostringstream msg;
		msg << "esd_time: initial state is not entangled (S(0) = " << s_initial << " >= 0)";
		throw PhysicsError(msg.str());
	}

	auto negative = [&trace](double t) { return trace(t).sign < 0; };

	EsdResult result;
	result.precision_digits = trace.digits();

	auto bisect = [&](double lo, double hi, bool lo_negative, int& iterations) {
		while (hi - lo > tolerance)
		{
			const double mid = 0.5 * (lo + hi);
			if (mid <= lo || mid >= hi)
			{
				break;
			}
			if (negative(mid) == lo_negative)
			{
				lo = mid;
			}
			else
			{
				hi = mid;
			}
			++iterations;
		}
		return std::pair{lo, hi};
	};

	const std::size_t n = options.grid_points;
	double prev_t = 0.0;
	bool prev_negative = negative(0.0);
	for (std::size_t k = 1; k < n; ++k)
	{
		const double t = t_max * static_cast<double>(k) / static_cast<double>(n - 1);
		const bool now_negative = negative(t);
		if (now_negative != prev_negative)
		{
			int iterations = 0;
			const auto [lo, hi] = bisect(prev_t, t, prev_negative, iterations);
			const double when = 0.5 * (lo + hi);
			if (prev_negative && !result.esd_time)
			{
				result.esd_time = when;
				result.bracket_lo = lo;
				result.bracket_hi = hi;
				result.iterations = iterations;
				if (!options.list_all_crossings)
				{
					return result;
				}
			}
			if (options.list_all_crossings)
			{
				result.crossings.push_back({when, prev_negative});
			}
		}
		prev_t = t;
		prev_negative = now_negative;
	}
	if (!result.esd_time)
	{
		result.bracket_lo = 0.0;
		result.bracket_hi = t_max;
	}
	return result;
}

} // namespace

EsdResult esd_time(const CovarianceState& s0, const PhysParams& p, double t_max, double tolerance,
	const EsdOptions& options)
{
	return find_esd(s0, PreciseSimonTrace(s0, p, t_max), t_max, tolerance, options);
}

EsdResult esd_time(const CovarianceState& s0, const PhysParams& p, const Mat4& diffusion, double t_max,
	double tolerance, const EsdOptions& options)
{
	return find_esd(s0, PreciseSimonTrace(s0, p, diffusion, t_max), t_max, tolerance, options);
}

} // namespace gaussent

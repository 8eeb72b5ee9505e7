/// @file entanglement.hpp
/// @brief Separability and entanglement measures for two-mode Gaussian
/// states: Simon's PPT function S, the symplectic spectrum of the partial
/// transpose, logarithmic negativity, thermal asymptotics and detection of
/// entanglement sudden death (ESD).

#pragma once

#include "gaussent/dynamics.hpp"

#include <optional>
#include <vector>

namespace gaussent {

/// S together with the invariants it is built from.
template <typename Real = double>
struct SimonTerms
{
	Real S{};
	Real det_a{};
	Real det_b{};
	Real det_c{};
	Real trace_term{}; ///< Tr[A J C J B J C^T J]
};
using SimonValue = SimonTerms<double>;

/// S = detA detB + (1/4 - |detC|)^2 - Tr[AJCJBJC^T J] - (detA + detB)/4
template <typename Real>
Real simon_from_invariants(const Real& det_a, const Real& det_b, const Real& det_c, const Real& trace_term)
{
	using std::abs;
	const Real quarter = Real(1) / Real(4);
	const Real gap = quarter - abs(det_c);
	return det_a * det_b + gap * gap - trace_term - quarter * (det_a + det_b);
}

template <typename Real>
SimonTerms<Real> simon_terms(const Matrix<4, Real>& sigma)
{
	const auto b = split_blocks(sigma);
	Matrix<2, Real> j;
	j(0, 1) = Real(1);
	j(1, 0) = Real(-1);
	const Matrix<2, Real> chain = b.A * j * b.C * j * b.B * j * b.C.transpose() * j;
	SimonTerms<Real> out;
	out.det_a = det2(b.A);
	out.det_b = det2(b.B);
	out.det_c = det2(b.C);
	out.trace_term = chain.trace();
	out.S = simon_from_invariants(out.det_a, out.det_b, out.det_c, out.trace_term);
	return out;
}

/// The state is separable iff S >= 0.
SimonValue simon_function(const CovarianceState& s);
SimonValue simon_function(const Mat4& sigma);

struct SymplecticSpectrum
{
	double nu_minus = 0.0;
	double nu_plus = 0.0;
	double seralian = 0.0; ///< detA + detB - 2 detC
	double det_sigma = 0.0;
};

/// Discriminants Delta^2 - 4 det(sigma) above -kDiscriminantTolerance are
/// clamped to zero; anything lower raises PhysicsError.
inline constexpr double kDiscriminantTolerance = 1e-12;

/// Symplectic eigenvalues of the partial transpose from the seralian:
/// 2 nu^2 = Delta -/+ sqrt(Delta^2 - 4 det sigma). The smaller root is taken
/// as det(sigma) / nu_plus^2 to avoid cancellation.
SymplecticSpectrum symplectic_spectrum_pt(const CovarianceState& s);
SymplecticSpectrum symplectic_spectrum_pt(const Mat4& sigma);

/// p_y -> -p_y
Mat4 partial_transpose(const Mat4& sigma);

/// Independent route to the same spectrum: explicit partial transposition,
/// then the eigenvalues of i Omega sigma~ read off the 8x8 real embedding of
/// the Hermitian matrix i sigma~^{1/2} Omega sigma~^{1/2}. Returns
/// {nu_minus, nu_plus}.
std::array<double, 2> symplectic_spectrum_pt_explicit(const Mat4& sigma);

/// E_N = -log2(2 nu_minus), unclamped; negative values measure the distance
/// from the separability boundary. Throws NumericalError when nu_minus = 0.
double log_negativity(const CovarianceState& s);
double log_negativity(const SymplecticSpectrum& spectrum);

/// E_N > 0
bool is_entangled(const CovarianceState& s);

/// Closed form of S for the thermal steady state:
/// (coth^2(w1/2T) - 1)(coth^2(w2/2T) - 1) / 16.
double asymptotic_simon(const PhysParams& p);

/// -log2 coth(w_max / 2T), w_max = max(w1, w2).
double asymptotic_log_negativity(const PhysParams& p);

struct EsdCrossing
{
	double time = 0.0;
	bool to_separable = true; ///< S goes from < 0 to >= 0
};

struct EsdOptions
{
	double tolerance = 1e-9;
	std::size_t grid_points = 2000;
	bool list_all_crossings = false;
};

struct EsdResult
{
	std::optional<double> esd_time;
	double bracket_lo = 0.0;
	double bracket_hi = 0.0;
	int iterations = 0;
	unsigned precision_digits = 0;
	std::vector<EsdCrossing> crossings; ///< filled when list_all_crossings is set
};

/// First time at which S(t) turns non-negative on [0, t_max] for the thermal
/// bath at p.temperature. S is scanned on a uniform grid and the first
/// bracketing interval is bisected to width <= tolerance. S(t) is evaluated
/// in extended precision (see PreciseSimonTrace), so the zero-temperature
/// decay of S towards 0 is never mistaken for a crossing.
///
/// Throws PhysicsError when s0 is not entangled (S(0) >= 0).
EsdResult esd_time(const CovarianceState& s0, const PhysParams& p, double t_max, double tolerance,
	const EsdOptions& options = {});

/// Same for an arbitrary symmetric diffusion matrix.
EsdResult esd_time(const CovarianceState& s0, const PhysParams& p, const Mat4& diffusion, double t_max,
	double tolerance, const EsdOptions& options = {});

} // namespace gaussent

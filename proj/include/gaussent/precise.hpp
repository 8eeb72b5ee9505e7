/// @file precise.hpp
/// @brief Extended-precision evaluation of S(t) along a closed-form
/// trajectory.
///
/// Near a zero-temperature steady state S(t) decays like exp(-4 lambda t),
/// which drops below double rounding of the O(1) terms it is assembled from
/// within a few dozen damping times. The evaluator below reruns the
/// closed-form pipeline (drift, thermal diffusion, Lyapunov solve, propagator,
/// Simon function) in MPFR arithmetic with enough digits for the requested
/// horizon: roughly 4 lambda t_max / ln 10 + 40 decimal digits, rounded up to
/// a fixed tier.

#pragma once

#include "gaussent/physics.hpp"
#include "gaussent/states.hpp"

#include <memory>

namespace gaussent {

struct SignedValue
{
	double value = 0.0; ///< may underflow to 0 in double
	int sign = 0;       ///< sign of the extended-precision result
};

class PreciseSimonTrace
{
public:
	/// Thermal bath at p.temperature.
	PreciseSimonTrace(const CovarianceState& s0, const PhysParams& p, double horizon);

	/// Arbitrary symmetric diffusion matrix.
	PreciseSimonTrace(const CovarianceState& s0, const PhysParams& p, const Mat4& diffusion, double horizon);

	SignedValue operator()(double t) const;

	/// Decimal digits of the working precision.
	unsigned digits() const;

	/// Digits needed to resolve S on [0, horizon] for damping lambda.
	static unsigned required_digits(double lambda, double horizon);

	/// Largest supported tier; longer horizons throw NumericalError.
	static constexpr unsigned kMaxDigits = 800;

	class Impl;

private:
	std::shared_ptr<const Impl> impl_;
};

} // namespace gaussent

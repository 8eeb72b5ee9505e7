#include "gaussent/precise.hpp"

#include "gaussent/dynamics.hpp"
#include "gaussent/entanglement.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <sstream>

namespace gaussent {

class PreciseSimonTrace::Impl
{
public:
	virtual ~Impl() = default;
	virtual SignedValue evaluate(double t) const = 0;
	virtual unsigned digits() const = 0;
};

namespace {

template <unsigned Digits>
class TierImpl final : public PreciseSimonTrace::Impl
{
public:
	using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<Digits>,
		boost::multiprecision::et_off>;

	TierImpl(const Mat4& sigma0, const PhysParams& p, const Matrix<4, Real>& diffusion) : params_(p)
	{
		const auto drift = detail::drift_matrix<Real>(p);
		sigma_inf_ = detail::lyapunov_solve(drift, diffusion);
		deviation0_ = sigma0.cast<Real>() - sigma_inf_;
	}

	SignedValue evaluate(double t) const override
	{
		const auto m = detail::block_propagator<Real>(params_, Real(t));
		const auto sigma = detail::closed_form_sigma(m, deviation0_, sigma_inf_);
		const Real s = simon_terms(sigma).S;
		return {static_cast<double>(s), s > 0 ? 1 : (s < 0 ? -1 : 0)};
	}

	unsigned digits() const override { return Digits; }

private:
	PhysParams params_;
	Matrix<4, Real> sigma_inf_;
	Matrix<4, Real> deviation0_;
};

template <unsigned Digits>
std::shared_ptr<const PreciseSimonTrace::Impl> make_tier(const CovarianceState& s0, const PhysParams& p,
	const Mat4* diffusion)
{
	using Real = typename TierImpl<Digits>::Real;
	Matrix<4, Real> d;
	if (diffusion != nullptr)
	{
		d = diffusion->cast<Real>();
	}
	else
	{
		d = detail::thermal_diffusion_from_coth<Real>(p, detail::thermal_coth_generic<Real>(p.omega1, p.temperature),
			detail::thermal_coth_generic<Real>(p.omega2, p.temperature));
	}
	return std::make_shared<TierImpl<Digits>>(s0.sigma(), p, d);
}

std::shared_ptr<const PreciseSimonTrace::Impl> make_impl(const CovarianceState& s0, const PhysParams& p,
	const Mat4* diffusion, double horizon)
{
	p.validate();
	if (!(horizon >= 0.0) || !std::isfinite(horizon))
	{
		throw std::invalid_argument("PreciseSimonTrace: horizon must be finite and >= 0");
	}
	if (diffusion != nullptr && (!diffusion->all_finite() || diffusion->asymmetry() > 1e-12 * std::max(1.0, diffusion->max_abs())))
	{
		throw PhysicsError("diffusion matrix must be finite and symmetric");
	}
	const unsigned need = PreciseSimonTrace::required_digits(p.lambda, horizon);
	if (need <= 50)
	{
		return make_tier<50>(s0, p, diffusion);
	}
	if (need <= 100)
	{
		return make_tier<100>(s0, p, diffusion);
	}
	if (need <= 200)
	{
		return make_tier<200>(s0, p, diffusion);
	}
	if (need <= 400)
	{
		return make_tier<400>(s0, p, diffusion);
	}
	if (need <= PreciseSimonTrace::kMaxDigits)
	{
		return make_tier<PreciseSimonTrace::kMaxDigits>(s0, p, diffusion);
	}
	std::ostringstream msg;
	msg << "horizon " << horizon << " with lambda " << p.lambda << " needs " << need
		<< " digits, more than the supported " << PreciseSimonTrace::kMaxDigits;
	throw NumericalError(msg.str());
}

} // namespace

PreciseSimonTrace::PreciseSimonTrace(const CovarianceState& s0, const PhysParams& p, double horizon)
	: impl_(make_impl(s0, p, nullptr, horizon))
{
}

PreciseSimonTrace::PreciseSimonTrace(const CovarianceState& s0, const PhysParams& p, const Mat4& diffusion,
	double horizon)
	: impl_(make_impl(s0, p, &diffusion, horizon))
{
}

SignedValue PreciseSimonTrace::operator()(double t) const
{
	return impl_->evaluate(t);
}

unsigned PreciseSimonTrace::digits() const
{
	return impl_->digits();
}

unsigned PreciseSimonTrace::required_digits(double lambda, double horizon)
{
	// S ~ exp(-4 lambda t) near a pure steady state; keep 40 digits of headroom
	const double decades = 4.0 * lambda * horizon / std::log(10.0);
	return static_cast<unsigned>(std::ceil(decades)) + 40u;
}

} // namespace gaussent

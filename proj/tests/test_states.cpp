#include "doctest.h"

#include "gaussent/states.hpp"
#include "oracles.hpp"

#include <cmath>
#include <limits>

using namespace gaussent;

TEST_CASE("symplectic form")
{
	const Mat2 j = symplectic_j();
	CHECK(j(0, 1) == 1.0);
	CHECK(j(1, 0) == -1.0);
	const Mat4 omega = symplectic_form();
	CHECK(omega(0, 1) == 1.0);
	CHECK(omega(3, 2) == -1.0);
	CHECK(omega * omega == Mat4::identity() * -1.0);
}

TEST_CASE("vacuum")
{
	const auto v = vacuum_state();
	CHECK(v.sigma() == Mat4::identity() * 0.5);
	CHECK(std::abs(v.uncertainty_residual()) <= 1e-14);
	const auto b = blocks(v);
	CHECK(b.A == Mat2::identity() * 0.5);
	CHECK(b.B == Mat2::identity() * 0.5);
	CHECK(b.C == Mat2{});
}

TEST_CASE("single_mode_squeezed")
{
	CHECK(single_mode_squeezed(0.0).sigma() == Mat4::identity() * 0.5);

	const auto s = single_mode_squeezed(0.5);
	const auto b = blocks(s);
	CHECK(b.A(0, 0) == doctest::Approx(0.56381298260319039261).epsilon(1e-14));
	CHECK(b.A(0, 1) == doctest::Approx(0.26054765274687368081).epsilon(1e-14));
	CHECK(b.A(1, 0) == b.A(0, 1));
	CHECK(b.A(1, 1) == b.A(0, 0));
	CHECK(b.B == b.A);
	CHECK(b.C == Mat2{});

	for (double r : {-3.0, -1.0, 0.3, 2.0, 3.0})
	{
		const auto bb = blocks(single_mode_squeezed(r));
		CHECK(det2(bb.A) == doctest::Approx(0.25).epsilon(1e-12));
		CHECK(det2(bb.B) == doctest::Approx(0.25).epsilon(1e-12));
		CHECK(det2(bb.C) == 0.0);
	}
	CHECK_THROWS_AS(single_mode_squeezed(std::nan("")), PhysicsError);
}

TEST_CASE("two_mode_squeezed")
{
	CHECK(two_mode_squeezed(0.0).sigma() == Mat4::identity() * 0.5);
	for (double r : {0.5, 1.0, 2.0})
	{
		const auto s = two_mode_squeezed(r);
		CHECK(oracle::cofactor_det4(s.sigma()) == doctest::Approx(1.0 / 16.0).epsilon(1e-11));
		const auto b = blocks(s);
		CHECK(b.A == Mat2::identity() * (std::cosh(r) / 2.0));
		CHECK(b.B == b.A);
		CHECK(b.C(0, 0) == std::sinh(r) / 2.0);
		CHECK(b.C(1, 1) == -std::sinh(r) / 2.0);
		CHECK(b.C(0, 1) == 0.0);
		CHECK(b.C(1, 0) == 0.0);
	}
	const double sh = std::sinh(2.0);
	CHECK(det2(blocks(two_mode_squeezed(2.0)).C) == doctest::Approx(-sh * sh / 4.0).epsilon(1e-13));
	CHECK(det2(blocks(two_mode_squeezed(2.0)).C) == doctest::Approx(-3.2885291045020608287).epsilon(1e-12));
}

TEST_CASE("constructor outputs are physical and pure states have unit purity")
{
	for (double r = -3.0; r <= 3.0; r += 0.25)
	{
		CHECK(uncertainty_residual(single_mode_squeezed(r).sigma()) >= -kPhysicalityTolerance);
		const auto t = two_mode_squeezed(r);
		CHECK(uncertainty_residual(t.sigma()) >= -kPhysicalityTolerance);
		CHECK(std::abs(det4(t.sigma()) - 1.0 / 16.0) <= 1e-12);
	}
}

TEST_CASE("from_raw")
{
	SUBCASE("vacuum accepted with zero residual")
	{
		const auto s = from_raw(Mat4::identity() * 0.5);
		CHECK(std::abs(s.uncertainty_residual()) <= 1e-14);
	}
	SUBCASE("below vacuum rejected, residual carried")
	{
		try
		{
			from_raw(Mat4::identity() * 0.25);
			FAIL("expected UnphysicalStateError");
		}
		catch (const UnphysicalStateError& e)
		{
			CHECK(e.residual() == doctest::Approx(-0.25).epsilon(1e-12));
			CHECK(e.exit_code() == 3);
		}
	}
	SUBCASE("constructor state accepted")
	{
		CHECK_NOTHROW(from_raw(two_mode_squeezed(2.0).sigma()));
	}
	SUBCASE("asymmetry")
	{
		Mat4 m = Mat4::identity() * 0.5;
		m(0, 1) = 1e-10;
		const auto s = from_raw(m);
		CHECK(s.sigma()(0, 1) == s.sigma()(1, 0));
		CHECK(s.sigma()(0, 1) == 5e-11);
		m(0, 1) = 1e-6;
		CHECK_THROWS_AS(from_raw(m), PhysicsError);
	}
	SUBCASE("non-finite")
	{
		Mat4 m = Mat4::identity() * 0.5;
		m(2, 2) = std::numeric_limits<double>::infinity();
		CHECK_THROWS_AS(from_raw(m), PhysicsError);
	}
}

TEST_CASE("uncertainty_residual")
{
	CHECK(std::abs(uncertainty_residual(Mat4::identity() * 0.5)) <= 1e-14);
	CHECK(uncertainty_residual(Mat4::identity() * 0.25) == doctest::Approx(-0.25).epsilon(1e-12));

	// unit-frequency thermal mode: [[c/2, i/2], [-i/2, c/2]] has lowest eigenvalue (c - 1)/2
	const Mat4 unit = oracle::thermal_steady_state(1.0, 1.0, 1.0, 1.0);
	CHECK(uncertainty_residual(unit) == doctest::Approx((oracle::kCoth05 - 1.0) / 2.0).epsilon(1e-12));

	// general diagonal mode diag(a, b): (a + b)/2 - sqrt(((a - b)/2)^2 + 1/4)
	const Mat4 thermal = oracle::thermal_steady_state(1.0, 1.0, 3.0, 1.0);
	const double a = thermal(2, 2), b = thermal(3, 3);
	const double expected = (a + b) / 2.0 - std::sqrt((a - b) * (a - b) / 4.0 + 0.25);
	CHECK(expected > 0.0);
	CHECK(uncertainty_residual(thermal) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("blocks and assemble round trip bit-exactly")
{
	std::mt19937_64 rng(11);
	for (int k = 0; k < 20; ++k)
	{
		const double r = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
		for (const auto& s : {single_mode_squeezed(r), two_mode_squeezed(r)})
		{
			CHECK(assemble(blocks(s)) == s.sigma());
		}
		const Mat4 m = oracle::random_symmetric(rng, 2.0);
		CHECK(assemble(split_blocks(m)) == m);
	}
}

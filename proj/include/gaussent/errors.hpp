#pragma once

#include <stdexcept>
#include <string>

namespace gaussent {

/// Base class for every error raised by the library. Each subclass maps onto
/// one process exit code of the command-line tool.
class Error : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
	virtual int exit_code() const noexcept = 0;
};

/// Malformed or out-of-schema scenario input.
class ConfigError : public Error
{
public:
	using Error::Error;
	int exit_code() const noexcept override { return 2; }
};

/// Physically inadmissible input: bad parameters, unphysical covariance
/// matrices, violated preconditions such as a separable ESD start state.
class PhysicsError : public Error
{
public:
	using Error::Error;
	int exit_code() const noexcept override { return 3; }
};

/// Numerical breakdown: singular systems, overflow guards, step-count limits.
class NumericalError : public Error
{
public:
	using Error::Error;
	int exit_code() const noexcept override { return 4; }
};

} // namespace gaussent

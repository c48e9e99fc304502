#ifndef POROCOUPLE_COMMON_HH
#define POROCOUPLE_COMMON_HH

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace Porocouple {

using Scalar = double;
using Vec2 = Eigen::Vector2d;
using Tensor = Eigen::Matrix2d;
using Index = std::size_t;

inline constexpr Index invalidIndex = std::numeric_limits<Index>::max();

//! Base class of all errors raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

//! Invalid or inconsistent grid input.
class GridError : public Error
{
public:
    using Error::Error;
};

//! A numerical operation failed (singular systems, negative pressure, no convergence).
class NumericalProblem : public Error
{
public:
    using Error::Error;
};

//! Missing or malformed runtime parameter.
class ParameterError : public Error
{
public:
    using Error::Error;
};

} // end namespace Porocouple

#endif

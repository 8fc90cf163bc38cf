// SPDX-License-Identifier: Apache-2.0
#include "thzrelay/quadrature.hpp"

#include "thzrelay/errors.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <string>

namespace thz::quad {

namespace {

QuadResult checked(double value, double error, double l1, const char* what, double rel_tol)
{
    if (!std::isfinite(value))
        throw QuadratureError(std::string(what) + ": non-finite result");
    // Boost reports its own error estimate; reject only gross failures.
    if (error > std::max(1e3 * rel_tol * std::abs(value), 1e-13 * l1) && error > 1e-12)
        throw QuadratureError(std::string(what) + ": error estimate " + std::to_string(error) +
                              " too large for value " + std::to_string(value));
    return {value, error};
}

} // namespace

QuadResult finite(const Fn& f, double a, double b, double rel_tol)
{
    if (!(a < b))
        throw DomainError("quad::finite: need a < b");
    boost::math::quadrature::tanh_sinh<double> rule(15);
    double err = 0.0;
    double l1 = 0.0;
    const double v = rule.integrate(f, a, b, rel_tol, &err, &l1);
    return checked(v, err, l1, "quad::finite", rel_tol);
}

QuadResult half_line(const Fn& f, double a, double rel_tol)
{
    boost::math::quadrature::exp_sinh<double> rule(12);
    double err = 0.0;
    double l1 = 0.0;
    const double v = rule.integrate(f, a, std::numeric_limits<double>::infinity(), rel_tol, &err,
                                    &l1);
    return checked(v, err, l1, "quad::half_line", rel_tol);
}

QuadResult real_line(const Fn& f, double rel_tol)
{
    boost::math::quadrature::sinh_sinh<double> rule(12);
    double err = 0.0;
    double l1 = 0.0;
    const double v = rule.integrate(f, rel_tol, &err, &l1);
    return checked(v, err, l1, "quad::real_line", rel_tol);
}

} // namespace thz::quad

// SPDX-License-Identifier: Apache-2.0
//
// Thin adaptive-quadrature helpers over Boost.Math double-exponential rules.
// Used as an independent route for the closed-form expressions.

#ifndef THZRELAY_QUADRATURE_HPP
#define THZRELAY_QUADRATURE_HPP

#include <functional>

namespace thz::quad {

using Fn = std::function<double(double)>;

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};

/// int_a^b f(x) dx, a < b finite.
QuadResult finite(const Fn& f, double a, double b, double rel_tol = 1e-10);

/// int_a^inf f(x) dx.
QuadResult half_line(const Fn& f, double a, double rel_tol = 1e-10);

/// int_{-inf}^{inf} f(x) dx.
QuadResult real_line(const Fn& f, double rel_tol = 1e-10);

} // namespace thz::quad

#endif

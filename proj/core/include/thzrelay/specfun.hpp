// SPDX-License-Identifier: Apache-2.0
//
// Special functions used throughout the library: complex log-gamma, the
// upper incomplete gamma function for any real order, and Mellin-Barnes
// contour evaluation of Meijer G, Fox H and bivariate Fox H functions.
//
// Contour integrals are evaluated on vertical lines with the trapezoidal
// rule. The abscissa is placed inside the pole-free strip at the point that
// minimises the integrand magnitude on the real axis, which keeps the
// oscillatory cancellation small for very large or very small arguments.
// Truncation length and node spacing are refined adaptively until two
// successive refinements agree.

#ifndef THZRELAY_SPECFUN_HPP
#define THZRELAY_SPECFUN_HPP

#include <complex>
#include <optional>
#include <vector>

namespace thz::specfun {

using cplx = std::complex<double>;

/// Principal branch of log Gamma(z). Throws PoleError at z = 0, -1, -2, ...
cplx log_gamma(cplx z);

/// Real log|Gamma(x)| together with the sign of Gamma(x). Thread safe.
struct SignedLog {
    double log_abs;
    int sign;
};
SignedLog log_gamma_signed(double x);

/// Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt for any real s and x >= 0.
/// x = 0 requires s > 0 (DomainError otherwise).
double upper_incomplete_gamma(double s, double x);

/// One (a_j, A_j) entry of a Fox H parameter list.
struct GammaPair {
    double a;
    double A = 1.0;
};

/// H^{m,n}_{p,q}[x | (a_j, A_j)_p ; (b_j, B_j)_q]; p and q are the list sizes.
struct FoxHParams {
    int m = 0;
    int n = 0;
    std::vector<GammaPair> upper;
    std::vector<GammaPair> lower;

    int p() const { return static_cast<int>(upper.size()); }
    int q() const { return static_cast<int>(lower.size()); }
    void validate() const;
};

/// Joint entry (a_j; alpha_j, A_j) of a bivariate Fox H function; the scales
/// belong to the first and second contour variable and may be negative.
struct JointPair {
    double a;
    double scale_x;
    double scale_y;
};

/// H^{0,n1:m2,n2:m3,n3}_{p1,q1:p2,q2:p3,q3}[x, y] in the Mittal-Gupta form,
///
///   -1/(4 pi^2) int int phi(s,t) theta_x(s) theta_y(t) x^s y^t ds dt,
///
/// phi(s,t) = prod_{j<=n1} G(1 - a_j + alpha_j s + A_j t)
///          / (prod_{j>n1} G(a_j - alpha_j s - A_j t) prod_j G(1 - b_j + beta_j s + B_j t)),
///
/// and theta_x, theta_y the one-variable Fox H kernels of `inner_x`, `inner_y`.
struct BivFoxHParams {
    int n1 = 0;
    std::vector<JointPair> joint_upper;   // p1 entries (a_j; alpha_j, A_j)
    std::vector<JointPair> joint_lower;   // q1 entries (b_j; beta_j, B_j)
    FoxHParams inner_x;
    FoxHParams inner_y;

    void validate() const;
};

/// Contour controls. Unset shifts are placed automatically.
struct ContourSpec {
    std::optional<double> shift_x;
    std::optional<double> shift_y;
    double half_length = 40.0;
    int nodes = 801;
    double rel_tol = 1e-8;
    int max_refinements = 4;

    void validate() const;
};

/// Value of a contour integral with its error estimate.
struct ContourResult {
    double value = 0.0;
    double error = 0.0;        // absolute error estimate
    double shift_x = 0.0;      // abscissa actually used
    double shift_y = 0.0;
    int refinements = 0;
};

/// Meijer G^{m,n}_{p,q}(x); all scales in `params` must equal 1.
double meijer_g(const FoxHParams& params, double x, const ContourSpec& spec = {});

/// Fox H^{m,n}_{p,q}[x].
double fox_h(const FoxHParams& params, double x, const ContourSpec& spec = {});
ContourResult fox_h_detailed(const FoxHParams& params, double x, const ContourSpec& spec = {});

/// Bivariate Fox H[x, y].
double bivariate_fox_h(const BivFoxHParams& params, double x, double y, const ContourSpec& spec = {});
ContourResult bivariate_fox_h_detailed(const BivFoxHParams& params, double x, double y,
                                       const ContourSpec& spec = {});

/// Same integrals with the argument supplied as a logarithm, for arguments
/// outside the double range. The result is exp(log_prefactor) * H.
ContourResult fox_h_log_arg(const FoxHParams& params, double log_x, double log_prefactor,
                            const ContourSpec& spec = {});
ContourResult bivariate_fox_h_log_args(const BivFoxHParams& params, double log_x, double log_y,
                                       double log_prefactor, const ContourSpec& spec = {});

} // namespace thz::specfun

#endif

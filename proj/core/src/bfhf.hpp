// SPDX-License-Identifier: Apache-2.0
// Parameter lists of the bivariate Fox H terms shared by e2e_stats and metrics.
#ifndef THZRELAY_BFHF_HPP
#define THZRELAY_BFHF_HPP

#include "thzrelay/channel.hpp"
#include "thzrelay/specfun.hpp"

namespace thz::detail {

/// Joint entry coupling the two hops: (1 + phi1/2 - phi2/2; -alpha2/2, alpha1/2).
specfun::JointPair coupling(const HopParams& h1, const HopParams& h2);

/// Hop-2 group for CDF-type terms (H^{1,3}_{4,2}).
specfun::FoxHParams hop2_group_cdf(const HopParams& h2);

/// Hop-2 group for density-type terms (H^{0,3}_{3,1}).
specfun::FoxHParams hop2_group_pdf(const HopParams& h2);

/// log of the first argument, gb2^{alpha2/2} / (B2 C^{alpha2/2}).
double log_hop2_arg(const HopParams& h2, double B2, double gamma_bar2, double C);

/// log of A1 A2 gb1^{-phi1/2} gb2^{-phi2/2} C^{phi2/2}.
double log_coupled_scale(double A1, double A2, const HopParams& h1, const HopParams& h2,
                         double gamma_bar1, double gamma_bar2, double C);

} // namespace thz::detail

#endif

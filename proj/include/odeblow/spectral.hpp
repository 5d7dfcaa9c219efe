#pragma once

#include <vector>

#include "odeblow/grid.hpp"

namespace odeblow {

/// Radial sine-transform pair in three dimensions, computed through the
/// substitution w = r*f:
///   nu fhat(nu) = sqrt(2/pi) int_0^inf sin(r nu) f(r) r dr
///   r  f(r)     = sqrt(2/pi) int_0^inf sin(r nu) fhat(nu) nu dnu
/// The discrete pair (rectangle rule + DST-I) is exactly unitary, so
/// forward o inverse is the identity up to round-off.

/// Populates the spectral view.  Throws TruncationError when |f| at the two
/// outermost nodes exceeds tail_tol.
RadialProfile forward_transform(const RadialProfile& f, double tail_tol = 1e-7);

/// Populates the physical view.  The value at r = 0 is the L'Hopital limit
/// of w(r)/r, i.e. sqrt(2/pi) * sum_k nu_k^2 fhat(nu_k) dnu.
RadialProfile inverse_transform(const RadialProfile& f);

/// H^s(R^3) norm from the spectral view with the 3D radial measure weights
/// mu_k = 4 pi nu_k^2 dnu; s = 0 is the L^2 norm by Plancherel.
double sobolev_norm(const RadialProfile& f, double s);

/// L^2(R^3) norm from the physical view (trapezoid on 4 pi (r f)^2 dr).
double l2_norm_physical(const RadialProfile& f);

/// Restriction of the spectral view to the annulus nu in [a, a+1).
RadialProfile annulus_project(const RadialProfile& f, int a);

/// Smooth Littlewood-Paley cutoff: chi = 1 on x <= 1/2, chi = 0 on x >= 1,
/// C^2 quintic transition in between.
double lp_cutoff(double x);

/// Multiplier chi_N of the dyadic projection Q_N; N in {1, 2, 4, ...}.
double lp_multiplier(double nu, int N);

/// Littlewood-Paley projection Q_N (spectral view only).
RadialProfile littlewood_paley(const RadialProfile& f, int N);

}  // namespace odeblow

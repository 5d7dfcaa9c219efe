#pragma once

#include <span>

namespace odeblow::kernels {

// Loop size below which the OpenMP variants fall back to a plain loop.
inline constexpr int omp_grain = 4096;

// Serial reference implementations.  These are the ground truth the tests
// and the benchmark compare against; keep them obvious rather than fast.
namespace serial {

/// DST-I: out_k = sum_{j=1}^{len} in_j sin(pi j k / (len+1)), k = 1..len.
/// Direct O(len^2) evaluation.
void dst_i(std::span<const double> in, std::span<double> out);

/// Semi-discrete RHS of the substituted radial wave equation
/// d2w/dt2 = w'' + w^5/r^4 on nodes r_j = j*h, j = 0..n, with w(0) = w(r_max) = 0.
void radial_wave_rhs(std::span<const double> w, double h, std::span<double> out);

/// Action of the similarity-coordinate operator on a pair (p1, p2) over
/// rho_j = j*h in [0, 1]:
///   o1 = -rho p1' - p1/2 + p2
///   o2 = (rho p1)''/rho - rho p2' - (3/2) p2 + potential * p1
/// Centered stencils inside, regularity closure at rho = 0 (3 p1''(0) by
/// even extension), one-sided interior stencils at rho = 1 (outflow).
void similarity_rhs(std::span<const double> p1, std::span<const double> p2,
                    std::span<double> o1, std::span<double> o2, double h, double potential);

}  // namespace serial

/// FFTW-backed DST-I, O(n log n).  Plans are cached per length and executed
/// with the new-array interface, so concurrent calls on distinct buffers are
/// safe.  Plans use FFTW_ESTIMATE, so results are bit-reproducible.
void dst_i(std::span<const double> in, std::span<double> out);

/// Batch of independent DST-I rows (row-major, n_rows x len), parallel over rows.
void dst_i_rows(const double* in, double* out, int n_rows, int len);

/// OpenMP variants of the grid sweeps; bit-identical to the serial ones
/// (elementwise maps, no reductions).
void radial_wave_rhs(std::span<const double> w, double h, std::span<double> out);
void similarity_rhs(std::span<const double> p1, std::span<const double> p2,
                    std::span<double> o1, std::span<double> o2, double h, double potential);

/// Cubic Lagrange interpolation of samples f_j at x_j = j*h to x, using even
/// extension below 0 and clamping above n (radial profiles are even and decay).
double interp_even(std::span<const double> f, double h, double x);

/// Fourth-difference (Kreiss-Oliger) dissipation: accumulates -rate * D4 f
/// into `add_into`.  Even extension below 0, backward windows at the top.
/// Annihilates constants exactly, O(h^3) on smooth fields.
void ko_dissipation(std::span<const double> f, double rate, std::span<double> add_into);

}  // namespace odeblow::kernels

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "odeblow/grid.hpp"

namespace odeblow {

/// Zero-mean, unit-variance, uniformly sub-gaussian coefficient families.
/// DegenerateOne (all coefficients 1) exists for testing only.
enum class CoefficientLaw { StandardGaussian, Rademacher, UniformSymmetric, DegenerateOne };

CoefficientLaw law_from_name(const std::string& name);
std::string law_name(CoefficientLaw law);

/// Counter-based seed: every coefficient is a pure function of
/// (master, sample, component, annulus), so ensembles replay bit-exactly
/// under any scheduling.
struct RandomSeed {
    std::uint64_t master = 0;
    std::uint64_t sample = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// The annulus coefficient X_n(omega).
double annulus_coefficient(CoefficientLaw law, const RandomSeed& seed, std::uint32_t component,
                           std::int64_t annulus);

/// Radial randomization: fhat_omega(nu) = X_{floor(nu)} fhat(nu) on each
/// unit annulus [n, n+1).  Requires the spectral view; returns a
/// spectral-only profile (the physical view follows by inverse_transform).
RadialProfile randomize(const RadialProfile& f, CoefficientLaw law, const RandomSeed& seed,
                        std::uint32_t component = 0);

/// Empirical moments of ||f_omega||_{H^s} at orders r = 2, 4, 8, and their
/// ratios against sqrt(r) ||f||_{H^s}.
struct MomentReport {
    double base_norm = 0.0;                 // ||f||_{H^s}
    std::array<double, 3> moment{};         // (E X^r)^(1/r), r = 2, 4, 8
    std::array<double, 3> ratio{};          // moment / (sqrt(r) base_norm)
    double mean_square = 0.0;               // E ||f_omega||^2
    double mean_square_stderr = 0.0;
    bool violation = false;                  // some ratio exceeded the flag constant
};
MomentReport hs_norm_statistics(const RadialProfile& f, double s, CoefficientLaw law,
                                int n_samples, std::uint64_t master, double flag_constant = 4.0);

/// Empirical tail P(|X| >= lambda) plus the fitted exponent of
/// log P against lambda^2 (slope must come out negative for sub-gaussian
/// samples).  Throws InsufficientExceedances when fewer than 10 samples
/// clear the requested lambda.
struct TailReport {
    double lambda = 0.0;
    double exceedance = 0.0;
    int n_exceed = 0;
    double fit_slope = 0.0;   // of log P vs lambda^2 over an internal grid
    int fit_points = 0;
};
TailReport tail_estimate_check(std::span<const double> samples, double lambda);

}  // namespace odeblow

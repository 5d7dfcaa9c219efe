#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "odeblow/ball.hpp"
#include "odeblow/cone.hpp"
#include "odeblow/grid.hpp"
#include "odeblow/random.hpp"

namespace odeblow {

/// Radial Cauchy data (f1, f2) for the free wave equation, kept with both
/// physical and spectral views.
struct WaveData {
    RadialProfile f1, f2;
};

/// Completes missing views (forward/inverse transform as needed).
WaveData make_wave_data(RadialProfile f1, RadialProfile f2, double tail_tol = 1e-6);

/// Spectral propagator of the free radial wave equation:
///   uhat(t) = cos(t nu) f1hat + sin(t nu)/nu f2hat.
/// Exact per mode, so the discrete free energy is conserved to round-off and
/// propagating by t then -t is the identity.  Throws CausalityError when the
/// data has not decayed inside the margin r_max - |t|.
RadialProfile propagate_free(const WaveData& data, double t, double tail_tol = 1e-6);
WaveData propagate_free_pair(const WaveData& data, double t, double tail_tol = 1e-6);

/// Discrete free energy int |grad u|^2 + (d_t u)^2 dx of the pair.
double free_energy(const WaveData& data);

/// Samples the free evolution on the backward-lightcone similarity grid:
/// f^T(tau, rho) = (T-t)^{1/2} f(t, rho (T-t)) with t = T(1 - e^{-tau}).
/// Cubic interpolation from the radial grid onto the cone radii.
ConeField pull_to_cone(const WaveData& data, double T, double tau_max, int n_tau, UnitGrid rho,
                       bool weighted = true, double tail_tol = 1e-6);

/// (T-t)-weight exponent relating the similarity-chart L^q_tau L^p_y norm to
/// Cartesian mixed norms: 1/2 - 1/q - 3/p.
double weight_exponent(double q, double p);

/// L^p norm over the unit ball with the 3D radial measure (p may be inf).
double ball_lp(const double* slice, const UnitGrid& grid, double p);

enum class HorizonPolicy { Throw, Record };

/// Mixed L^q_tau L^p_y norm over [0, tau_max] x B^3 of a similarity-chart
/// field.  When the last decade of tau carries more than `threshold` of the
/// q-th-power mass, either throws HorizonTruncation (Throw) or just records
/// the share (Record).
double strichartz_norm(const ConeField& field, double q, double p,
                       HorizonPolicy policy = HorizonPolicy::Throw,
                       double* share_out = nullptr, double threshold = 0.01);

struct SupTNorm {
    double value = 0.0;
    double T_at = 1.0;
    double max_share = 0.0;
};

/// sup over T in [T_lo, T_hi] of the (q, p) cone norm, realized on a uniform
/// grid with two refinement passes around the maximizer.
SupTNorm sup_T_norm(const WaveData& data, double q, double p, double T_lo, double T_hi, int n_T,
                    double tau_max, int n_tau, UnitGrid rho);

/// Monte Carlo moments of sup_T cone norms of randomized data, plus the
/// deterministic per-annulus sup-norm amplification battery.
struct StrichartzStats {
    double base_norm = 0.0;  // || (f1, f2) ||_{H^s x H^{s-1}}
    struct PerPair {
        double q = 0, p = 0;
        std::array<double, 3> moment{};  // r = 2, 4, 8 roots of E sup_T ||.||^r
        std::array<double, 3> ratio{};   // against sqrt(r) base_norm
    };
    std::vector<PerPair> pairs;
    std::vector<int> annuli;            // single-annulus battery
    std::vector<double> sup_ratio;      // ||1_[n,n+1] f||_inf / ||f||_L2
    double amplification_slope = 0.0;   // log-log fit, linear bound gives ~1
};
StrichartzStats strichartz_statistics(const WaveData& tpl, CoefficientLaw law, double s,
                                      int n_samples,
                                      const std::vector<std::pair<double, double>>& qp,
                                      std::uint64_t master, int n_T = 21, double tau_max = 6.0,
                                      int n_tau = 128, UnitGrid rho = UnitGrid{128});

}  // namespace odeblow

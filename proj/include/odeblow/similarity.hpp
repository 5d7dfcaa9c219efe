#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "odeblow/ball.hpp"
#include "odeblow/cone.hpp"

namespace odeblow {

/// kappa = (3/4)^{1/4}, the amplitude of the ODE-blowup kappa (T-t)^{-1/2}.
inline double kappa() {
    static const double k = std::pow(0.75, 0.25);
    return k;
}

/// The one-parameter blowup family u^{(T)}(t) = kappa (T-t)^{-1/2}, a space-
/// independent solution of d_t^2 u = u^5 blowing up at t = T.
struct BlowupProfile {
    double T = 1.0;
    double value(double t) const { return kappa() / std::sqrt(T - t); }
    double dt(double t) const { return 0.5 * kappa() * std::pow(T - t, -1.5); }
    double dtt(double t) const { return 0.75 * kappa() * std::pow(T - t, -2.5); }
};

/// Similarity coordinates on the backward lightcone C_T:
///   tau = -log(T - t) + log T,   rho = r / (T - t).
struct SimilarityChart {
    double T = 1.0;

    std::pair<double, double> to_similarity(double t, double r) const;
    std::pair<double, double> to_cartesian(double tau, double rho) const;
    double time_of(double tau) const { return T * (1.0 - std::exp(-tau)); }
    /// (T - t)^{1/2} at tau.
    double weight(double tau) const { return std::sqrt(T) * std::exp(-0.5 * tau); }
};

/// psi(tau, rho) = (T-t)^{1/2} v(t, r): re-weights a Cartesian-chart cone
/// field into the similarity chart.
ConeField psi_from_v(const ConeField& v, double T);

/// First-order variables (psi1, psi2) = (psi, (d_tau + rho d_rho + 1/2) psi)
/// at every tau node of a similarity-chart field.
std::vector<FieldPair> first_order_vars(const ConeField& psi);

/// H^1-type norm used throughout: ( int_0^1 ((rho phi1)')^2 + (rho phi2)^2 drho )^{1/2}.
double h1_norm(const FieldPair& phi);

/// Same norm squared on raw component rows (no allocations).
double h1_sq_row(const double* a, const double* b, const UnitGrid& grid);

/// Equivalent form int ((phi1')^2 + phi2^2) rho^2 drho + phi1(1)^2, obtained
/// by integrating by parts (the boundary term sits at rho = 1).
double h1_norm_alt(const FieldPair& phi);

/// Blowup-family initial data in phi variables:
///   phi_0^T = kappa (T^{1/2} - 1, (T^{3/2} - 1)/2),
/// with d_T phi_0^T |_{T=1} = (kappa/4) g.
FieldPair initial_perturbation(UnitGrid grid, double T);

}  // namespace odeblow

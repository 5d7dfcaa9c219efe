#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "odeblow/ball.hpp"

namespace odeblow {

enum class Chart { Cartesian, Similarity };

/// A radial space-time field on the backward lightcone C_T, sampled on the
/// similarity grid (tau_i, rho_j) with tau_i uniform on [0, tau_max].  In the
/// Cartesian chart the stored values are v(t(tau_i), rho_j (T - t)); in the
/// similarity chart they additionally carry the (T - t)^{1/2} amplitude weight.
struct ConeField {
    double T = 1.0;
    double tau_max = 8.0;
    int n_tau = 512;  // number of tau intervals
    UnitGrid rho;
    Chart chart = Chart::Similarity;
    std::vector<double> vals;  // (n_tau + 1) x (m + 1), row-major in tau

    ConeField() = default;
    ConeField(double T_, double tau_max_, int n_tau_, UnitGrid rho_,
              Chart chart_ = Chart::Similarity)
        : T(T_), tau_max(tau_max_), n_tau(n_tau_), rho(rho_), chart(chart_),
          vals(static_cast<size_t>(n_tau_ + 1) * rho_.size(), 0.0) {}

    double dtau() const { return tau_max / n_tau; }
    double tau_node(int i) const { return i * dtau(); }
    double time_of(int i) const { return T * (1.0 - std::exp(-tau_node(i))); }

    double* row(int i) { return vals.data() + static_cast<size_t>(i) * rho.size(); }
    const double* row(int i) const { return vals.data() + static_cast<size_t>(i) * rho.size(); }
    double at(int i, int j) const { return row(i)[j]; }
    double& at(int i, int j) { return row(i)[j]; }

    bool compatible(const ConeField& o) const {
        return T == o.T && tau_max == o.tau_max && n_tau == o.n_tau && rho == o.rho;
    }

    /// Bicubic sample at (tau, rho) inside the grid.
    double sample(double tau, double rho_x) const;
};

}  // namespace odeblow

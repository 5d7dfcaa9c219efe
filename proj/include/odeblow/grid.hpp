#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace odeblow {

/// Uniform radial grid on [0, r_max] with nodes r_j = j*h, h = r_max/n.
/// The dual sine-frequency grid is nu_k = k*pi/r_max for k = 1..n.
struct RadialGrid {
    double r_max = 4.0;
    int n = 2048;

    double h() const { return r_max / n; }
    double node(int j) const { return j * h(); }
    double dnu() const { return M_PI / r_max; }
    double freq(int k) const { return k * dnu(); }
    double nu_max() const { return freq(n); }
    /// Half-open annulus [m, m+1) containing nu.
    static int annulus_of(double nu) { return static_cast<int>(std::floor(nu)); }

    bool operator==(const RadialGrid&) const = default;
};

/// A radial function of one variable with a physical-space view f(r_j),
/// j = 0..n, and/or a spectral view fhat(nu_k), k = 1..n, related by the
/// 3D radial Fourier (sine) transform pair.  Immutable after construction;
/// transforms hand back new profiles.
class RadialProfile {
  public:
    RadialProfile() = default;

    static RadialProfile from_physical(const RadialGrid& g, std::vector<double> values) {
        if (static_cast<int>(values.size()) != g.n + 1)
            throw std::invalid_argument("RadialProfile: physical size must be n+1");
        RadialProfile p;
        p.grid_ = g;
        p.phys_ = std::move(values);
        return p;
    }

    static RadialProfile from_spectral(const RadialGrid& g, std::vector<double> values) {
        if (static_cast<int>(values.size()) != g.n)
            throw std::invalid_argument("RadialProfile: spectral size must be n");
        RadialProfile p;
        p.grid_ = g;
        p.spec_ = std::move(values);
        return p;
    }

    static RadialProfile with_views(const RadialGrid& g, std::vector<double> phys,
                                    std::vector<double> spec) {
        RadialProfile p = from_physical(g, std::move(phys));
        if (static_cast<int>(spec.size()) != g.n)
            throw std::invalid_argument("RadialProfile: spectral size must be n");
        p.spec_ = std::move(spec);
        return p;
    }

    static RadialProfile zero(const RadialGrid& g) {
        RadialProfile p;
        p.grid_ = g;
        p.phys_ = std::vector<double>(g.n + 1, 0.0);
        p.spec_ = std::vector<double>(g.n, 0.0);
        return p;
    }

    const RadialGrid& grid() const { return grid_; }
    bool has_physical() const { return phys_.has_value(); }
    bool has_spectral() const { return spec_.has_value(); }

    const std::vector<double>& physical() const {
        if (!phys_) throw std::logic_error("RadialProfile: physical view absent");
        return *phys_;
    }
    const std::vector<double>& spectral() const {
        if (!spec_) throw std::logic_error("RadialProfile: spectral view absent");
        return *spec_;
    }

    /// fhat(nu_k); k = 1..n.
    double spectral_at(int k) const { return spectral()[k - 1]; }

  private:
    RadialGrid grid_;
    std::optional<std::vector<double>> phys_;
    std::optional<std::vector<double>> spec_;
};

}  // namespace odeblow

#include "odeblow/spectral.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "odeblow/errors.hpp"
#include "odeblow/kernels.hpp"

namespace odeblow {

namespace {
const double sqrt_2_over_pi = std::sqrt(2.0 / M_PI);
}

RadialProfile forward_transform(const RadialProfile& f, double tail_tol) {
    const RadialGrid& g = f.grid();
    const auto& phys = f.physical();
    const int n = g.n;
    const double tail = std::max(std::fabs(phys[n]), std::fabs(phys[n - 1]));
    if (tail > tail_tol)
        throw TruncationError("forward_transform: |f| = " + std::to_string(tail) +
                              " at r_max exceeds tail tolerance " + std::to_string(tail_tol));

    std::vector<double> w(n - 1), s(n - 1);
    const double h = g.h();
    for (int j = 1; j < n; ++j) w[j - 1] = (j * h) * phys[j];
    kernels::dst_i(w, s);

    std::vector<double> spec(n);
    const double c = sqrt_2_over_pi * h;
    for (int k = 1; k < n; ++k) spec[k - 1] = c * s[k - 1] / g.freq(k);
    spec[n - 1] = 0.0;  // sin(k pi r_j / r_max) vanishes on the grid for k = n
    return RadialProfile::with_views(g, phys, std::move(spec));
}

RadialProfile inverse_transform(const RadialProfile& f) {
    const RadialGrid& g = f.grid();
    const auto& spec = f.spectral();
    const int n = g.n;

    std::vector<double> what(n - 1), s(n - 1);
    for (int k = 1; k < n; ++k) what[k - 1] = g.freq(k) * spec[k - 1];
    kernels::dst_i(what, s);

    std::vector<double> phys(n + 1);
    const double c = sqrt_2_over_pi * g.dnu();
    const double h = g.h();
    for (int j = 1; j < n; ++j) phys[j] = c * s[j - 1] / (j * h);
    phys[n] = 0.0;
    // L'Hopital limit of w(r)/r through the even extension: O(h^4) and
    // insensitive to slowly decaying spectral tails
    phys[0] = (4.0 * phys[1] - phys[2]) / 3.0;
    return RadialProfile::with_views(g, std::move(phys), spec);
}

double sobolev_norm(const RadialProfile& f, double s) {
    const RadialGrid& g = f.grid();
    const auto& spec = f.spectral();
    double acc = 0.0;
    for (int k = 1; k <= g.n; ++k) {
        const double nu = g.freq(k);
        const double jap = 1.0 + nu * nu;
        acc += std::pow(jap, s) * spec[k - 1] * spec[k - 1] * nu * nu;
    }
    return std::sqrt(4.0 * M_PI * g.dnu() * acc);
}

double l2_norm_physical(const RadialProfile& f) {
    const RadialGrid& g = f.grid();
    const auto& phys = f.physical();
    const double h = g.h();
    double acc = 0.0;
    for (int j = 1; j < g.n; ++j) {
        const double w = (j * h) * phys[j];
        acc += w * w;
    }
    const double wn = g.r_max * phys[g.n];
    acc += 0.5 * wn * wn;
    return std::sqrt(4.0 * M_PI * h * acc);
}

RadialProfile annulus_project(const RadialProfile& f, int a) {
    const RadialGrid& g = f.grid();
    std::vector<double> spec = f.spectral();
    for (int k = 1; k <= g.n; ++k)
        if (RadialGrid::annulus_of(g.freq(k)) != a) spec[k - 1] = 0.0;
    return RadialProfile::from_spectral(g, std::move(spec));
}

double lp_cutoff(double x) {
    x = std::fabs(x);
    if (x <= 0.5) return 1.0;
    if (x >= 1.0) return 0.0;
    const double t = 2.0 * x - 1.0;  // (1/2, 1) -> (0, 1)
    return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double lp_multiplier(double nu, int N) {
    if (N == 1) return lp_cutoff(nu);
    return lp_cutoff(nu / N) - lp_cutoff(2.0 * nu / N);
}

RadialProfile littlewood_paley(const RadialProfile& f, int N) {
    if (N < 1 || (N & (N - 1)) != 0)
        throw std::invalid_argument("littlewood_paley: N must be a dyadic integer");
    const RadialGrid& g = f.grid();
    std::vector<double> spec = f.spectral();
    for (int k = 1; k <= g.n; ++k) spec[k - 1] *= lp_multiplier(g.freq(k), N);
    return RadialProfile::from_spectral(g, std::move(spec));
}

}  // namespace odeblow

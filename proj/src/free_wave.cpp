#include "odeblow/free_wave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "odeblow/errors.hpp"
#include "odeblow/kernels.hpp"
#include "odeblow/spectral.hpp"

namespace odeblow {

namespace {
const double sqrt_2_over_pi = std::sqrt(2.0 / M_PI);
const double inf = std::numeric_limits<double>::infinity();

void causality_check(const WaveData& data, double t, double tail_tol) {
    const RadialGrid& g = data.f1.grid();
    const auto& p1 = data.f1.physical();
    const auto& p2 = data.f2.physical();
    const double margin = g.r_max - std::fabs(t);
    double worst = 0.0;
    for (int j = g.n; j >= 0 && g.node(j) > margin; --j)
        worst = std::max({worst, std::fabs(p1[j]), std::fabs(p2[j])});
    if (worst > tail_tol)
        throw CausalityError("free wave: data of size " + std::to_string(worst) +
                             " inside the causality margin r > " + std::to_string(margin));
}
}  // namespace

WaveData make_wave_data(RadialProfile f1, RadialProfile f2, double tail_tol) {
    auto complete = [&](RadialProfile& p) {
        if (!p.has_spectral())
            p = forward_transform(p, tail_tol);
        else if (!p.has_physical())
            p = inverse_transform(p);
    };
    complete(f1);
    complete(f2);
    if (!(f1.grid() == f2.grid())) throw std::invalid_argument("make_wave_data: grid mismatch");
    return WaveData{std::move(f1), std::move(f2)};
}

WaveData propagate_free_pair(const WaveData& data, double t, double tail_tol) {
    if (std::fabs(t) > 2.0)
        throw std::invalid_argument("propagate_free: |t| must not exceed 2");
    causality_check(data, t, tail_tol);
    const RadialGrid& g = data.f1.grid();
    const auto& s1 = data.f1.spectral();
    const auto& s2 = data.f2.spectral();
    std::vector<double> u(g.n), ut(g.n);
    for (int k = 1; k <= g.n; ++k) {
        const double nu = g.freq(k);
        const double c = std::cos(t * nu), s = std::sin(t * nu);
        u[k - 1] = c * s1[k - 1] + s / nu * s2[k - 1];
        ut[k - 1] = -nu * s * s1[k - 1] + c * s2[k - 1];
    }
    return WaveData{inverse_transform(RadialProfile::from_spectral(g, std::move(u))),
                    inverse_transform(RadialProfile::from_spectral(g, std::move(ut)))};
}

RadialProfile propagate_free(const WaveData& data, double t, double tail_tol) {
    return propagate_free_pair(data, t, tail_tol).f1;
}

double free_energy(const WaveData& data) {
    const RadialGrid& g = data.f1.grid();
    const auto& s1 = data.f1.spectral();
    const auto& s2 = data.f2.spectral();
    double acc = 0.0;
    for (int k = 1; k <= g.n; ++k) {
        const double nu = g.freq(k);
        const double w = nu * s1[k - 1];
        const double wt = nu * s2[k - 1];
        acc += nu * nu * w * w + wt * wt;
    }
    return 4.0 * M_PI * g.dnu() * acc;
}

ConeField pull_to_cone(const WaveData& data, double T, double tau_max, int n_tau, UnitGrid rho,
                       bool weighted, double tail_tol) {
    (void)tail_tol;
    if (T < 0.5 || T > 1.5)
        throw std::invalid_argument("pull_to_cone: T must lie in [1/2, 3/2]");
    // Cone samples live at r <= T - t, so their domain of dependence r + t <= T
    // never reaches the outer boundary: no tail condition is needed beyond this.
    if (data.f1.grid().r_max < 2.0 * T)
        throw std::invalid_argument("pull_to_cone: r_max must be at least 2T");
    const RadialGrid& g = data.f1.grid();
    const auto& s1 = data.f1.spectral();
    const auto& s2 = data.f2.spectral();
    const int len = g.n - 1;
    const int rows = n_tau + 1;

    // what rows: what_k(t) = cos(t nu_k) (nu_k f1hat_k) + sin(t nu_k) f2hat_k
    std::vector<double> what(static_cast<size_t>(rows) * len);
    std::vector<double> w(static_cast<size_t>(rows) * len);
    const double dtau = tau_max / n_tau;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < rows; ++i) {
        const double t = T * (1.0 - std::exp(-i * dtau));
        double* row = what.data() + static_cast<size_t>(i) * len;
        for (int k = 1; k <= len; ++k) {
            const double nu = g.freq(k);
            row[k - 1] = std::cos(t * nu) * nu * s1[k - 1] + std::sin(t * nu) * s2[k - 1];
        }
    }
    kernels::dst_i_rows(what.data(), w.data(), rows, len);

    ConeField cone(T, tau_max, n_tau, rho, weighted ? Chart::Similarity : Chart::Cartesian);
    const double h = g.h();
    const double c = sqrt_2_over_pi * g.dnu();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < rows; ++i) {
        // physical slice f(t_i, r_j) on the radial grid
        std::vector<double> f(g.n + 1);
        const double* wr = w.data() + static_cast<size_t>(i) * len;
        for (int j = 1; j < g.n; ++j) f[j] = c * wr[j - 1] / (j * h);
        f[g.n] = 0.0;
        f[0] = (4.0 * f[1] - f[2]) / 3.0;
        const double Tmt = T * std::exp(-i * dtau);
        const double amp = weighted ? std::sqrt(Tmt) : 1.0;
        double* dst = cone.row(i);
        for (int j = 0; j < rho.size(); ++j)
            dst[j] = amp * kernels::interp_even(f, h, rho.node(j) * Tmt);
    }
    return cone;
}

double weight_exponent(double q, double p) { return 0.5 - 1.0 / q - 3.0 / p; }

double ball_lp(const double* slice, const UnitGrid& grid, double p) {
    if (p == inf) {
        double mx = 0.0;
        for (int j = 0; j < grid.size(); ++j) mx = std::max(mx, std::fabs(slice[j]));
        return mx;
    }
    std::vector<double> integrand(grid.size());
    for (int j = 0; j < grid.size(); ++j) {
        const double rho = grid.node(j);
        integrand[j] = std::pow(std::fabs(slice[j]), p) * rho * rho;
    }
    return std::pow(4.0 * M_PI * simpson(integrand, grid.h()), 1.0 / p);
}

double strichartz_norm(const ConeField& field, double q, double p, HorizonPolicy policy,
                       double* share_out, double threshold) {
    if (field.chart != Chart::Similarity)
        throw std::invalid_argument("strichartz_norm: expected a similarity-chart field");
    if (q == inf) throw std::invalid_argument("strichartz_norm: q = inf not supported");
    const int rows = field.n_tau + 1;
    std::vector<double> inner(rows);
    for (int i = 0; i < rows; ++i) inner[i] = std::pow(ball_lp(field.row(i), field.rho, p), q);

    const double dtau = field.dtau();
    const double total = simpson(inner, dtau);
    // share of the last decade of tau (trapezoid; diagnostic only)
    const int i0 = static_cast<int>(std::ceil(0.9 * field.n_tau));
    double tail = 0.0;
    for (int i = i0; i < rows - 1; ++i) tail += 0.5 * (inner[i] + inner[i + 1]) * dtau;
    const double share = total > 0.0 ? tail / total : 0.0;
    if (share_out) *share_out = share;
    if (policy == HorizonPolicy::Throw && share > threshold)
        throw HorizonTruncation("strichartz_norm: last tau decade carries " +
                                std::to_string(share) + " of the mass");
    return std::pow(total, 1.0 / q);
}

SupTNorm sup_T_norm(const WaveData& data, double q, double p, double T_lo, double T_hi, int n_T,
                    double tau_max, int n_tau, UnitGrid rho) {
    SupTNorm best;
    auto eval = [&](double T) {
        double share = 0.0;
        auto cone = pull_to_cone(data, T, tau_max, n_tau, rho);
        const double v = strichartz_norm(cone, q, p, HorizonPolicy::Record, &share);
        best.max_share = std::max(best.max_share, share);
        return v;
    };
    double lo = T_lo, hi = T_hi;
    int pts = n_T;
    for (int level = 0; level < 3; ++level) {
        double arg = lo;
        double top = -1.0;
        for (int i = 0; i < pts; ++i) {
            const double T = lo + (hi - lo) * i / (pts - 1);
            const double v = eval(T);
            if (v > top) {
                top = v;
                arg = T;
            }
        }
        if (top > best.value) {
            best.value = top;
            best.T_at = arg;
        }
        const double span = (hi - lo) / (pts - 1);
        lo = std::max(T_lo, arg - span);
        hi = std::min(T_hi, arg + span);
        pts = 11;
    }
    return best;
}

StrichartzStats strichartz_statistics(const WaveData& tpl, CoefficientLaw law, double s,
                                      int n_samples,
                                      const std::vector<std::pair<double, double>>& qp,
                                      std::uint64_t master, int n_T, double tau_max, int n_tau,
                                      UnitGrid rho) {
    if (n_samples < 100)
        throw std::invalid_argument("strichartz_statistics: need at least 100 samples");
    StrichartzStats stats;
    const double n1 = sobolev_norm(tpl.f1, s);
    const double n2 = sobolev_norm(tpl.f2, s - 1.0);
    stats.base_norm = std::sqrt(n1 * n1 + n2 * n2);

    std::vector<std::vector<double>> sups(qp.size(), std::vector<double>(n_samples));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n_samples; ++i) {
        const RandomSeed seed{master, static_cast<std::uint64_t>(i)};
        auto d = make_wave_data(inverse_transform(randomize(tpl.f1, law, seed, 0)),
                                inverse_transform(randomize(tpl.f2, law, seed, 1)));
        for (size_t iq = 0; iq < qp.size(); ++iq)
            sups[iq][i] =
                sup_T_norm(d, qp[iq].first, qp[iq].second, 0.5, 1.5, n_T, tau_max, n_tau, rho)
                    .value;
    }
    for (size_t iq = 0; iq < qp.size(); ++iq) {
        StrichartzStats::PerPair pp;
        pp.q = qp[iq].first;
        pp.p = qp[iq].second;
        double m2 = 0, m4 = 0, m8 = 0;
        for (double v : sups[iq]) {
            const double v2 = v * v;
            m2 += v2;
            m4 += v2 * v2;
            m8 += v2 * v2 * v2 * v2;
        }
        m2 /= n_samples;
        m4 /= n_samples;
        m8 /= n_samples;
        pp.moment = {std::sqrt(m2), std::pow(m4, 0.25), std::pow(m8, 0.125)};
        const double r[3] = {2, 4, 8};
        for (int j = 0; j < 3; ++j)
            pp.ratio[j] = stats.base_norm > 0
                              ? pp.moment[j] / (std::sqrt(r[j]) * stats.base_norm)
                              : 0.0;
        stats.pairs.push_back(pp);
    }

    // deterministic single-annulus amplification battery
    const RadialGrid& g = tpl.f1.grid();
    std::vector<double> lx, ly;
    for (int a : {4, 8, 16, 32}) {
        std::vector<double> spec(g.n, 0.0);
        for (int k = 1; k <= g.n; ++k)
            if (RadialGrid::annulus_of(g.freq(k)) == a) spec[k - 1] = 1.0;
        auto f = inverse_transform(RadialProfile::from_spectral(g, spec));
        double sup = 0.0;
        for (double v : f.physical()) sup = std::max(sup, std::fabs(v));
        const double l2 = sobolev_norm(RadialProfile::from_spectral(g, spec), 0.0);
        stats.annuli.push_back(a);
        stats.sup_ratio.push_back(sup / l2);
        lx.push_back(std::log(static_cast<double>(a)));
        ly.push_back(std::log(sup / l2));
    }
    {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(lx.size());
        for (size_t i = 0; i < lx.size(); ++i) {
            sx += lx[i];
            sy += ly[i];
            sxx += lx[i] * lx[i];
            sxy += lx[i] * ly[i];
        }
        stats.amplification_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return stats;
}

}  // namespace odeblow

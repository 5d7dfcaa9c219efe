#include "odeblow/kernels.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace odeblow::kernels {

namespace {

// FFTW planner is not thread-safe; executing a cached plan on fresh arrays is.
std::mutex plan_mutex;
std::map<int, fftw_plan> plan_cache;

fftw_plan plan_for(int len) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = plan_cache.find(len);
    if (it != plan_cache.end()) return it->second;
    double* a = fftw_alloc_real(len);
    double* b = fftw_alloc_real(len);
    fftw_plan p = fftw_plan_r2r_1d(len, a, b, FFTW_RODFT00, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(a);
    fftw_free(b);
    if (!p) throw std::runtime_error("fftw: RODFT00 plan failed");
    plan_cache.emplace(len, p);
    return p;
}

}  // namespace

namespace serial {

void dst_i(std::span<const double> in, std::span<double> out) {
    const int len = static_cast<int>(in.size());
    const double arg = M_PI / (len + 1);
    for (int k = 1; k <= len; ++k) {
        double s = 0.0;
        for (int j = 1; j <= len; ++j) s += in[j - 1] * std::sin(arg * j * k);
        out[k - 1] = s;
    }
}

void radial_wave_rhs(std::span<const double> w, double h, std::span<double> out) {
    const int n = static_cast<int>(w.size()) - 1;
    const double ih2 = 1.0 / (h * h);
    out[0] = 0.0;
    out[n] = 0.0;
    for (int j = 1; j < n; ++j) {
        const double r = j * h;
        const double r2 = r * r;
        const double w2 = w[j] * w[j];
        out[j] = (w[j + 1] - 2.0 * w[j] + w[j - 1]) * ih2 + w2 * w2 * w[j] / (r2 * r2);
    }
}

void similarity_rhs(std::span<const double> p1, std::span<const double> p2,
                    std::span<double> o1, std::span<double> o2, double h, double potential) {
    const int m = static_cast<int>(p1.size()) - 1;
    const double ih2 = 1.0 / (h * h);
    const double i2h = 1.0 / (2.0 * h);

    // rho = 0: advection terms vanish, Laplacian closes as 3 p1''(0).
    o1[0] = -0.5 * p1[0] + p2[0];
    o2[0] = 6.0 * (p1[1] - p1[0]) * ih2 - 1.5 * p2[0] + potential * p1[0];

    for (int j = 1; j < m; ++j) {
        const double rho = j * h;
        const double d1 = (p1[j + 1] - p1[j - 1]) * i2h;
        const double d2 = (p2[j + 1] - p2[j - 1]) * i2h;
        const double lap =
            ((j + 1) * p1[j + 1] - 2.0 * j * p1[j] + (j - 1) * p1[j - 1]) * ih2 / j;
        o1[j] = -rho * d1 - 0.5 * p1[j] + p2[j];
        o2[j] = lap - rho * d2 - 1.5 * p2[j] + potential * p1[j];
    }

    // rho = 1: characteristics exit, one-sided interior stencils.
    {
        const double d1 = (3.0 * p1[m] - 4.0 * p1[m - 1] + p1[m - 2]) * i2h;
        const double d2 = (3.0 * p2[m] - 4.0 * p2[m - 1] + p2[m - 2]) * i2h;
        const double lap = (2.0 * m * p1[m] - 5.0 * (m - 1) * p1[m - 1] +
                            4.0 * (m - 2) * p1[m - 2] - (m - 3) * p1[m - 3]) *
                           h * ih2;  // one-sided (rho p1)'' at rho = 1
        o1[m] = -d1 - 0.5 * p1[m] + p2[m];
        o2[m] = lap - d2 - 1.5 * p2[m] + potential * p1[m];
    }
}

}  // namespace serial

void dst_i(std::span<const double> in, std::span<double> out) {
    const int len = static_cast<int>(in.size());
    fftw_plan p = plan_for(len);
    // RODFT00 computes 2x the plain sine sum.
    fftw_execute_r2r(p, const_cast<double*>(in.data()), out.data());
    for (int k = 0; k < len; ++k) out[k] *= 0.5;
}

void dst_i_rows(const double* in, double* out, int n_rows, int len) {
    fftw_plan p = plan_for(len);
#pragma omp parallel for schedule(static) if (n_rows > 1)
    for (int r = 0; r < n_rows; ++r) {
        const double* src = in + static_cast<std::size_t>(r) * len;
        double* dst = out + static_cast<std::size_t>(r) * len;
        fftw_execute_r2r(p, const_cast<double*>(src), dst);
        for (int k = 0; k < len; ++k) dst[k] *= 0.5;
    }
}

void radial_wave_rhs(std::span<const double> w, double h, std::span<double> out) {
    const int n = static_cast<int>(w.size()) - 1;
    const double ih2 = 1.0 / (h * h);
    out[0] = 0.0;
    out[n] = 0.0;
#pragma omp parallel for schedule(static) if (n >= omp_grain)
    for (int j = 1; j < n; ++j) {
        const double r = j * h;
        const double r2 = r * r;
        const double w2 = w[j] * w[j];
        out[j] = (w[j + 1] - 2.0 * w[j] + w[j - 1]) * ih2 + w2 * w2 * w[j] / (r2 * r2);
    }
}

void similarity_rhs(std::span<const double> p1, std::span<const double> p2,
                    std::span<double> o1, std::span<double> o2, double h, double potential) {
    const int m = static_cast<int>(p1.size()) - 1;
    if (m < omp_grain) {
        serial::similarity_rhs(p1, p2, o1, o2, h, potential);
        return;
    }
    const double ih2 = 1.0 / (h * h);
    const double i2h = 1.0 / (2.0 * h);
    o1[0] = -0.5 * p1[0] + p2[0];
    o2[0] = 6.0 * (p1[1] - p1[0]) * ih2 - 1.5 * p2[0] + potential * p1[0];
#pragma omp parallel for schedule(static)
    for (int j = 1; j < m; ++j) {
        const double rho = j * h;
        const double d1 = (p1[j + 1] - p1[j - 1]) * i2h;
        const double d2 = (p2[j + 1] - p2[j - 1]) * i2h;
        const double lap =
            ((j + 1) * p1[j + 1] - 2.0 * j * p1[j] + (j - 1) * p1[j - 1]) * ih2 / j;
        o1[j] = -rho * d1 - 0.5 * p1[j] + p2[j];
        o2[j] = lap - rho * d2 - 1.5 * p2[j] + potential * p1[j];
    }
    const double d1 = (3.0 * p1[m] - 4.0 * p1[m - 1] + p1[m - 2]) * i2h;
    const double d2 = (3.0 * p2[m] - 4.0 * p2[m - 1] + p2[m - 2]) * i2h;
    const double lap = (2.0 * m * p1[m] - 5.0 * (m - 1) * p1[m - 1] + 4.0 * (m - 2) * p1[m - 2] -
                        (m - 3) * p1[m - 3]) *
                       h * ih2;
    o1[m] = -d1 - 0.5 * p1[m] + p2[m];
    o2[m] = lap - d2 - 1.5 * p2[m] + potential * p1[m];
}

void ko_dissipation(std::span<const double> f, double rate, std::span<double> add_into) {
    const int n = static_cast<int>(f.size()) - 1;
    if (n < 4) return;
    // second difference with even ghost at the origin, Dirichlet-style cap at
    // the top; composing it with its transpose keeps the operator dissipative
    // at every row
    static thread_local std::vector<double> d;
    d.assign(n + 1, 0.0);
    d[0] = 2.0 * (f[1] - f[0]);
#pragma omp parallel for schedule(static) if (n >= omp_grain)
    for (int j = 1; j <= n - 1; ++j) d[j] = f[j - 1] - 2.0 * f[j] + f[j + 1];
    add_into[0] -= rate * (2.0 * d[1] - 2.0 * d[0]);
#pragma omp parallel for schedule(static) if (n >= omp_grain)
    for (int j = 1; j <= n - 1; ++j) add_into[j] -= rate * (d[j - 1] - 2.0 * d[j] + d[j + 1]);
    add_into[n] -= rate * d[n - 1];
}

double interp_even(std::span<const double> f, double h, double x) {
    const int n = static_cast<int>(f.size()) - 1;
    const double s = x / h;
    int j = static_cast<int>(std::floor(s));
    if (j < 0) j = 0;
    if (j > n - 1) j = n - 1;
    const double u = s - j;
    // Nodes j-1, j, j+1, j+2 with even reflection below 0 and clamp above n.
    auto at = [&](int i) {
        if (i < 0) i = -i;
        if (i > n) i = n;
        return f[i];
    };
    const double pm1 = at(j - 1), p0 = at(j), p1 = at(j + 1), p2 = at(j + 2);
    const double um1 = u - 1.0, um2 = u - 2.0, up1 = u + 1.0;
    return pm1 * (-u * um1 * um2 / 6.0) + p0 * (up1 * um1 * um2 / 2.0) +
           p1 * (-up1 * u * um2 / 2.0) + p2 * (up1 * u * um1 / 6.0);
}

}  // namespace odeblow::kernels

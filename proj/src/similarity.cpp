#include "odeblow/similarity.hpp"

#include <stdexcept>

#include "odeblow/kernels.hpp"

namespace odeblow {

double simpson(const std::vector<double>& f, double h) {
    const int n = static_cast<int>(f.size()) - 1;
    if (n % 2 != 0) throw std::invalid_argument("simpson: need an even interval count");
    double acc = f[0] + f[n];
    for (int j = 1; j < n; j += 2) acc += 4.0 * f[j];
    for (int j = 2; j < n; j += 2) acc += 2.0 * f[j];
    return acc * h / 3.0;
}

std::vector<double> derivative(const std::vector<double>& f, double h) {
    const int n = static_cast<int>(f.size()) - 1;
    std::vector<double> d(n + 1);
    const double i2h = 1.0 / (2.0 * h);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * i2h;
    for (int j = 1; j < n; ++j) d[j] = (f[j + 1] - f[j - 1]) * i2h;
    d[n] = (3.0 * f[n] - 4.0 * f[n - 1] + f[n - 2]) * i2h;
    return d;
}

double ConeField::sample(double tau, double rho_x) const {
    if (tau < 0.0 || tau > tau_max + 1e-12)
        throw std::domain_error("ConeField::sample: tau outside [0, tau_max]");
    const double dt = dtau();
    const double s = tau / dt;
    int i = static_cast<int>(std::floor(s));
    if (i > n_tau - 1) i = n_tau - 1;
    if (i < 0) i = 0;
    const double u = s - i;
    // cubic in tau over rows i-1..i+2 (clamped), cubic in rho per row
    double vals4[4];
    for (int r = 0; r < 4; ++r) {
        int ir = i - 1 + r;
        if (ir < 0) ir = 0;
        if (ir > n_tau) ir = n_tau;
        vals4[r] = kernels::interp_even(
            std::span<const double>(row(ir), static_cast<size_t>(rho.size())), rho.h(), rho_x);
    }
    const double um1 = u - 1.0, um2 = u - 2.0, up1 = u + 1.0;
    return vals4[0] * (-u * um1 * um2 / 6.0) + vals4[1] * (up1 * um1 * um2 / 2.0) +
           vals4[2] * (-up1 * u * um2 / 2.0) + vals4[3] * (up1 * u * um1 / 6.0);
}

std::pair<double, double> SimilarityChart::to_similarity(double t, double r) const {
    if (t < 0.0 || t >= T) throw std::domain_error("similarity: t outside [0, T)");
    const double rho = r / (T - t);
    if (r < 0.0 || rho > 1.0 + 1e-14) throw std::domain_error("similarity: point outside C_T");
    return {-std::log(T - t) + std::log(T), std::min(rho, 1.0)};
}

std::pair<double, double> SimilarityChart::to_cartesian(double tau, double rho) const {
    if (tau < 0.0 || rho < 0.0 || rho > 1.0 + 1e-14)
        throw std::domain_error("similarity: (tau, rho) outside chart");
    const double Tmt = T * std::exp(-tau);
    return {T - Tmt, rho * Tmt};
}

ConeField psi_from_v(const ConeField& v, double T) {
    if (v.chart != Chart::Cartesian)
        throw std::invalid_argument("psi_from_v: expected a Cartesian-chart field");
    ConeField psi(T, v.tau_max, v.n_tau, v.rho, Chart::Similarity);
    SimilarityChart chart{T};
    for (int i = 0; i <= v.n_tau; ++i) {
        const double w = chart.weight(v.tau_node(i));
        const double* src = v.row(i);
        double* dst = psi.row(i);
        for (int j = 0; j < v.rho.size(); ++j) dst[j] = w * src[j];
    }
    return psi;
}

std::vector<FieldPair> first_order_vars(const ConeField& psi) {
    if (psi.chart != Chart::Similarity)
        throw std::invalid_argument("first_order_vars: expected a similarity-chart field");
    const int m = psi.rho.m;
    const double h = psi.rho.h();
    const double dt = psi.dtau();
    std::vector<FieldPair> out;
    out.reserve(psi.n_tau + 1);
    for (int i = 0; i <= psi.n_tau; ++i) {
        FieldPair p(psi.rho, PairRole::Psi);
        std::vector<double> slice(psi.row(i), psi.row(i) + m + 1);
        auto drho = derivative(slice, h);
        for (int j = 0; j <= m; ++j) {
            double dtau;
            if (i == 0)
                dtau = (-3.0 * psi.at(0, j) + 4.0 * psi.at(1, j) - psi.at(2, j)) / (2.0 * dt);
            else if (i == psi.n_tau)
                dtau = (3.0 * psi.at(i, j) - 4.0 * psi.at(i - 1, j) + psi.at(i - 2, j)) /
                       (2.0 * dt);
            else
                dtau = (psi.at(i + 1, j) - psi.at(i - 1, j)) / (2.0 * dt);
            p.a[j] = psi.at(i, j);
            p.b[j] = dtau + psi.rho.node(j) * drho[j] + 0.5 * psi.at(i, j);
        }
        out.push_back(std::move(p));
    }
    return out;
}

double h1_sq_row(const double* a, const double* b, const UnitGrid& grid) {
    const int m = grid.m;
    const double h = grid.h();
    const double i2h = 1.0 / (2.0 * h);
    auto ra = [&](int j) { return grid.node(j) * a[j]; };
    auto integrand = [&](int j) {
        double d;
        if (j == 0)
            d = (-3.0 * ra(0) + 4.0 * ra(1) - ra(2)) * i2h;
        else if (j == m)
            d = (3.0 * ra(m) - 4.0 * ra(m - 1) + ra(m - 2)) * i2h;
        else
            d = (ra(j + 1) - ra(j - 1)) * i2h;
        const double rb = grid.node(j) * b[j];
        return d * d + rb * rb;
    };
    double acc = integrand(0) + integrand(m);
    for (int j = 1; j < m; j += 2) acc += 4.0 * integrand(j);
    for (int j = 2; j < m; j += 2) acc += 2.0 * integrand(j);
    return acc * h / 3.0;
}

double h1_norm(const FieldPair& phi) {
    return std::sqrt(h1_sq_row(phi.a.data(), phi.b.data(), phi.grid));
}

double h1_norm_alt(const FieldPair& phi) {
    const int m = phi.grid.m;
    const double h = phi.grid.h();
    auto da = derivative(phi.a, h);
    std::vector<double> integrand(m + 1);
    for (int j = 0; j <= m; ++j) {
        const double rho2 = phi.grid.node(j) * phi.grid.node(j);
        integrand[j] = (da[j] * da[j] + phi.b[j] * phi.b[j]) * rho2;
    }
    return std::sqrt(simpson(integrand, h) + phi.a[m] * phi.a[m]);
}

FieldPair initial_perturbation(UnitGrid grid, double T) {
    const double sT = std::sqrt(T);
    return FieldPair::constant(grid, kappa() * (sT - 1.0), 0.5 * kappa() * (T * sT - 1.0),
                               PairRole::Phi);
}

}  // namespace odeblow

#include "odeblow/semigroup.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include "odeblow/errors.hpp"
#include "odeblow/free_wave.hpp"
#include "odeblow/kernels.hpp"
#include "odeblow/similarity.hpp"

namespace odeblow {

double LinearOperator::potential() const {
    return kind == OperatorKind::L ? 3.75 : 0.0;
}

void LinearOperator::apply(const FieldPair& in, FieldPair& out) const {
    if (!(in.grid == grid)) throw std::invalid_argument("LinearOperator: grid mismatch");
    if (kind == OperatorKind::Lprime) {
        for (int j = 0; j < grid.size(); ++j) {
            out.a[j] = 0.0;
            out.b[j] = 3.75 * in.a[j];
        }
        return;
    }
    kernels::similarity_rhs(in.a, in.b, out.a, out.b, grid.h(), potential());
}

FieldPair LinearOperator::apply(const FieldPair& in) const {
    FieldPair out(grid);
    apply(in, out);
    return out;
}

void SparseOperator::apply(const std::vector<double>& x, std::vector<double>& y) const {
    for (int i = 0; i < dim; ++i) {
        double acc = 0.0;
        for (int idx = row_ptr[i]; idx < row_ptr[i + 1]; ++idx) acc += val[idx] * x[col[idx]];
        y[i] = acc;
    }
}

namespace {
// probe with unit vectors; the stencils touch a handful of neighbours
SparseOperator assemble_by_probing(UnitGrid grid,
                                   const std::function<void(const FieldPair&, FieldPair&)>& ap) {
    const int sz = grid.size();
    const int dim = 2 * sz;
    std::vector<std::vector<std::pair<int, double>>> rows(dim);
    FieldPair e(grid), out(grid);
    for (int c = 0; c < dim; ++c) {
        if (c < sz)
            e.a[c] = 1.0;
        else
            e.b[c - sz] = 1.0;
        ap(e, out);
        for (int j = 0; j < sz; ++j) {
            if (out.a[j] != 0.0) rows[j].emplace_back(c, out.a[j]);
            if (out.b[j] != 0.0) rows[sz + j].emplace_back(c, out.b[j]);
        }
        if (c < sz)
            e.a[c] = 0.0;
        else
            e.b[c - sz] = 0.0;
    }
    SparseOperator s;
    s.dim = dim;
    s.row_ptr.assign(dim + 1, 0);
    for (int i = 0; i < dim; ++i) s.row_ptr[i + 1] = s.row_ptr[i] + static_cast<int>(rows[i].size());
    s.col.resize(s.row_ptr[dim]);
    s.val.resize(s.row_ptr[dim]);
    for (int i = 0; i < dim; ++i) {
        int at = s.row_ptr[i];
        for (auto& [c, v] : rows[i]) {
            s.col[at] = c;
            s.val[at] = v;
            ++at;
        }
    }
    return s;
}
}  // namespace

SparseOperator assemble(const LinearOperator& op) {
    return assemble_by_probing(op.grid,
                               [&](const FieldPair& in, FieldPair& out) { op.apply(in, out); });
}

SparseOperator assemble_effective(const Semigroup& sg) {
    return assemble_by_probing(
        sg.grid(), [&](const FieldPair& in, FieldPair& out) { sg.apply_effective(in, out); });
}

SparseOperator transpose(const SparseOperator& s) {
    SparseOperator t;
    t.dim = s.dim;
    t.row_ptr.assign(s.dim + 1, 0);
    for (int c : s.col) ++t.row_ptr[c + 1];
    for (int i = 0; i < s.dim; ++i) t.row_ptr[i + 1] += t.row_ptr[i];
    t.col.resize(s.col.size());
    t.val.resize(s.val.size());
    std::vector<int> fill(t.row_ptr.begin(), t.row_ptr.end() - 1);
    for (int i = 0; i < s.dim; ++i)
        for (int idx = s.row_ptr[i]; idx < s.row_ptr[i + 1]; ++idx) {
            const int c = s.col[idx];
            t.col[fill[c]] = i;
            t.val[fill[c]] = s.val[idx];
            ++fill[c];
        }
    return t;
}

void Semigroup::apply_effective(const FieldPair& in, FieldPair& out) const {
    op_.apply(in, out);
    if (dissipation_ > 0.0) {
        const double rate = dissipation_rate();
        kernels::ko_dissipation(in.a, rate, out.a);
        kernels::ko_dissipation(in.b, rate, out.b);
    }
}

void Semigroup::advance(FieldPair& phi, double tau0, double dtau, const Source* source,
                        double dt_override) const {
    if (dtau <= 0.0) return;
    int steps;
    double dt;
    if (dt_override > 0.0) {
        if (dt_override > max_step() * (1.0 + 1e-9))
            throw CflError("semigroup: dt = " + std::to_string(dt_override) +
                           " exceeds the CFL limit " + std::to_string(max_step()));
        steps = static_cast<int>(std::ceil(dtau / dt_override - 1e-12));
        dt = dtau / steps;
    } else {
        steps = static_cast<int>(std::ceil(dtau / max_step() - 1e-12));
        dt = dtau / steps;
    }

    FieldPair k1(grid_), k2(grid_), k3(grid_), k4(grid_), tmp(grid_);
    const int sz = grid_.size();
    auto stage = [&](const FieldPair& y, double tau, FieldPair& k) {
        apply_effective(y, k);
        if (source) (*source)(tau, k);
    };
    for (int s = 0; s < steps; ++s) {
        const double tau = tau0 + s * dt;
        stage(phi, tau, k1);
        for (int j = 0; j < sz; ++j) {
            tmp.a[j] = phi.a[j] + 0.5 * dt * k1.a[j];
            tmp.b[j] = phi.b[j] + 0.5 * dt * k1.b[j];
        }
        stage(tmp, tau + 0.5 * dt, k2);
        for (int j = 0; j < sz; ++j) {
            tmp.a[j] = phi.a[j] + 0.5 * dt * k2.a[j];
            tmp.b[j] = phi.b[j] + 0.5 * dt * k2.b[j];
        }
        stage(tmp, tau + 0.5 * dt, k3);
        for (int j = 0; j < sz; ++j) {
            tmp.a[j] = phi.a[j] + dt * k3.a[j];
            tmp.b[j] = phi.b[j] + dt * k3.b[j];
        }
        stage(tmp, tau + dt, k4);
        const double w = dt / 6.0;
        for (int j = 0; j < sz; ++j) {
            phi.a[j] += w * (k1.a[j] + 2.0 * (k2.a[j] + k3.a[j]) + k4.a[j]);
            phi.b[j] += w * (k1.b[j] + 2.0 * (k2.b[j] + k3.b[j]) + k4.b[j]);
        }
    }
}

FieldPair Semigroup::propagate(const FieldPair& phi0, double tau) const {
    FieldPair phi = phi0;
    advance(phi, 0.0, tau);
    return phi;
}

void Semigroup::propagate_with_snapshots(
    const FieldPair& phi0, double tau_max, int n_snap,
    const std::function<void(int, const FieldPair&)>& on_snapshot, const Source* source) const {
    FieldPair phi = phi0;
    on_snapshot(0, phi);
    const double dtau = tau_max / n_snap;
    for (int i = 1; i <= n_snap; ++i) {
        advance(phi, (i - 1) * dtau, dtau, source);
        on_snapshot(i, phi);
    }
}

double seed_functional(const FieldPair& phi) {
    const int mq = phi.grid.m / 4;
    double acc = 0.0;
    for (int j = 0; j <= mq; ++j) acc += phi.b[j];
    return acc / (mq + 1) / 3.0;
}

double Projector::coefficient(const FieldPair& phi) const {
    if (!(phi.grid == grid_)) throw std::invalid_argument("Projector: grid mismatch");
    double acc = 0.0;
    for (int j = 0; j < grid_.size(); ++j) acc += ell_a_[j] * phi.a[j] + ell_b_[j] * phi.b[j];
    return acc;
}

FieldPair Projector::project(const FieldPair& phi) const {
    const double alpha = coefficient(phi);
    return FieldPair::constant(grid_, 2.0 * alpha, 3.0 * alpha, phi.role);
}

FieldPair Projector::remainder(const FieldPair& phi) const {
    const double alpha = coefficient(phi);
    FieldPair out = phi;
    for (auto& v : out.a) v -= 2.0 * alpha;
    for (auto& v : out.b) v -= 3.0 * alpha;
    return out;
}

namespace {
std::mutex projector_mutex;
std::map<int, std::shared_ptr<Projector>> projector_cache;
}  // namespace

Projector make_projector(UnitGrid grid, double cfl) {
    {
        std::lock_guard<std::mutex> lock(projector_mutex);
        auto it = projector_cache.find(grid.m);
        if (it != projector_cache.end()) return *it->second;
    }

    const Semigroup sg(grid, cfl);
    const SparseOperator adj = transpose(assemble_effective(sg));
    const int sz = grid.size();
    const int dim = 2 * sz;

    // seed with the representer of the deflation functional
    std::vector<double> v(dim, 0.0);
    const int mq = grid.m / 4;
    for (int j = 0; j <= mq; ++j) v[sz + j] = 1.0 / (3.0 * (mq + 1));

    const double dt0 = cfl * grid.h() / 2.0;
    const double chunk = 4.0;
    const int steps = static_cast<int>(std::ceil(chunk / dt0));
    const double dt = chunk / steps;

    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim), prev(dim);
    auto normalize = [&]() {
        double lg = 0.0;  // ell(g) with g = (2, 3)
        for (int j = 0; j < sz; ++j) lg += 2.0 * v[j] + 3.0 * v[sz + j];
        if (lg == 0.0) throw ConvergenceError("projector: functional orthogonal to g");
        for (auto& x : v) x /= lg;
    };
    normalize();

    bool converged = false;
    for (int it = 0; it < 40 && !converged; ++it) {
        prev = v;
        for (int s = 0; s < steps; ++s) {
            adj.apply(v, k1);
            for (int i = 0; i < dim; ++i) tmp[i] = v[i] + 0.5 * dt * k1[i];
            adj.apply(tmp, k2);
            for (int i = 0; i < dim; ++i) tmp[i] = v[i] + 0.5 * dt * k2[i];
            adj.apply(tmp, k3);
            for (int i = 0; i < dim; ++i) tmp[i] = v[i] + dt * k3[i];
            adj.apply(tmp, k4);
            for (int i = 0; i < dim; ++i)
                v[i] += dt / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
        }
        normalize();
        double diff = 0.0, scale = 0.0;
        for (int i = 0; i < dim; ++i) {
            diff = std::max(diff, std::fabs(v[i] - prev[i]));
            scale = std::max(scale, std::fabs(v[i]));
        }
        converged = diff <= 1e-13 * scale;
    }
    if (!converged) {
        double diff = 0.0, scale = 0.0;
        for (int i = 0; i < dim; ++i) {
            diff = std::max(diff, std::fabs(v[i] - prev[i]));
            scale = std::max(scale, std::fabs(v[i]));
        }
        if (diff > 1e-8 * scale)
            throw ConvergenceError("projector: adjoint deflation failed to stabilize");
    }

    auto proj = std::make_shared<Projector>(
        grid, std::vector<double>(v.begin(), v.begin() + sz),
        std::vector<double>(v.begin() + sz, v.end()));
    std::lock_guard<std::mutex> lock(projector_mutex);
    projector_cache[grid.m] = proj;
    return *proj;
}

DeflationResult project_unstable(const FieldPair& phi, double tau_deflate, double rel_tol,
                                 double cfl) {
    DeflationResult res;
    const double c0 = seed_functional(phi);
    FieldPair psi = phi;
    psi.axpy(-c0, unstable_mode(phi.grid));

    const Semigroup sg(phi.grid, cfl);
    const double dtau_check = 0.25;
    const int n_check = static_cast<int>(std::ceil(tau_deflate / dtau_check));
    const double scale = std::max(1e-2 * h1_norm(phi), 1e-300);

    double alpha = c0;
    res.history.emplace_back(0.0, alpha);
    FieldPair state = psi;
    for (int i = 1; i <= n_check; ++i) {
        sg.advance(state, (i - 1) * dtau_check, dtau_check);
        const double tau = i * dtau_check;
        const double cur = c0 + std::exp(-tau) * seed_functional(state);
        res.history.emplace_back(tau, cur);
        const double prev = alpha;
        alpha = cur;
        if (tau >= 1.0 && std::fabs(cur - prev) <= rel_tol * std::max(std::fabs(cur), scale)) {
            res.converged = true;
            break;
        }
    }
    res.alpha = alpha;
    res.remainder = phi;
    res.remainder.axpy(-alpha, unstable_mode(phi.grid));
    return res;
}

std::vector<StrichartzCheck> strichartz_check(const std::vector<FieldPair>& battery,
                                              const std::vector<std::pair<double, double>>& qp,
                                              double tau_max, int n_snap, const Semigroup& sg,
                                              const Projector& proj) {
    std::vector<StrichartzCheck> out;
    for (auto [q, p] : qp) out.push_back({q, p, 0.0, 0});

    for (const auto& phi0 : battery) {
        FieldPair phip = proj.remainder(phi0);
        const double base = h1_norm(phip);
        if (base < 1e-13 * (1.0 + h1_norm(phi0))) {
            for (auto& c : out) ++c.skipped;
            continue;
        }
        ConeField traj(1.0, tau_max, n_snap, sg.grid(), Chart::Similarity);
        sg.propagate_with_snapshots(phip, tau_max, n_snap, [&](int i, const FieldPair& f) {
            double* dst = traj.row(i);
            for (int j = 0; j < sg.grid().size(); ++j) dst[j] = f.a[j];
        });
        for (size_t iq = 0; iq < qp.size(); ++iq) {
            const double norm =
                strichartz_norm(traj, qp[iq].first, qp[iq].second, HorizonPolicy::Record);
            out[iq].max_ratio = std::max(out[iq].max_ratio, norm / base);
        }
    }
    return out;
}

}  // namespace odeblow

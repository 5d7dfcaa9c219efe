#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "odeblow/ball.hpp"

namespace odeblow {

enum class OperatorKind { L0, Lprime, L };

/// Discretization of the similarity-coordinate generators on [0, 1]:
///   L0 phi = (-rho phi1' - phi1/2 + phi2,
///             (rho phi1)''/rho - rho phi2' - (3/2) phi2)
///   L' phi = (0, (15/4) phi1),          L = L0 + L'.
/// Centered second-order stencils inside, even-extension closure at rho = 0,
/// one-sided interior stencils at rho = 1 (all characteristics exit there).
/// The constant pair g = (2, 3) satisfies L g = g exactly on the grid.
struct LinearOperator {
    OperatorKind kind = OperatorKind::L;
    UnitGrid grid;

    void apply(const FieldPair& in, FieldPair& out) const;
    FieldPair apply(const FieldPair& in) const;
    double potential() const;
};

/// Compressed sparse rows of the discrete operator on the stacked vector
/// (a_0..a_m, b_0..b_m); used to run the adjoint propagation.
struct SparseOperator {
    int dim = 0;
    std::vector<int> row_ptr, col;
    std::vector<double> val;
    void apply(const std::vector<double>& x, std::vector<double>& y) const;
};
SparseOperator assemble(const LinearOperator& op);
SparseOperator transpose(const SparseOperator& s);

class Semigroup;
/// Sparse form of the stepping generator (L plus dissipation).
SparseOperator assemble_effective(const Semigroup& sg);

/// Explicit RK4 time stepper for d_tau phi = L phi (+ source).  The system is
/// hyperbolic with characteristic speeds rho -+ 1, so the step obeys
/// dtau <= cfl * h / 2.  A symmetric fourth-difference dissipation (zero on
/// constants, O(h^3) on smooth fields) controls the boundary closure; it is
/// part of the effective generator, so the projector is built against it.
class Semigroup {
  public:
    explicit Semigroup(UnitGrid grid, double cfl = 0.5, OperatorKind kind = OperatorKind::L,
                       double dissipation = 0.5)
        : op_{kind, grid}, grid_(grid), cfl_(cfl), dissipation_(dissipation) {}

    const UnitGrid& grid() const { return grid_; }
    double max_speed() const { return 2.0; }
    double max_step() const { return cfl_ * grid_.h() / max_speed(); }
    double dissipation_rate() const { return dissipation_ * max_speed() / (16.0 * grid_.h()); }

    /// L phi plus the dissipation term; what the stepper integrates.
    void apply_effective(const FieldPair& in, FieldPair& out) const;

    using Source = std::function<void(double tau, FieldPair& add_into)>;

    /// Advances phi from tau to tau + dtau.  Throws CflError when an explicit
    /// dt above the CFL limit is requested.
    void advance(FieldPair& phi, double tau0, double dtau, const Source* source = nullptr,
                 double dt_override = 0.0) const;

    FieldPair propagate(const FieldPair& phi0, double tau) const;

    /// Advances over [0, tau_max] delivering snapshots at the n_snap+1 uniform
    /// coarse nodes (including tau = 0).
    void propagate_with_snapshots(const FieldPair& phi0, double tau_max, int n_snap,
                                  const std::function<void(int, const FieldPair&)>& on_snapshot,
                                  const Source* source = nullptr) const;

    const LinearOperator& op() const { return op_; }

  private:
    LinearOperator op_;
    UnitGrid grid_;
    double cfl_;
    double dissipation_;
};

/// Rank-one spectral projection P phi = ell(phi) g onto the unstable mode,
/// realized by deflation: ell is the limit of e^{-tau} c(S(tau)^* .) applied
/// to the seed functional c(phi) = mean of phi2 over rho in [0, 1/4] divided
/// by 3.  Normalized so that ell(g) = 1 holds to round-off and P g = g is
/// exact for the public operations.
class Projector {
  public:
    Projector(UnitGrid grid, std::vector<double> ell_a, std::vector<double> ell_b)
        : grid_(grid), ell_a_(std::move(ell_a)), ell_b_(std::move(ell_b)) {}

    const UnitGrid& grid() const { return grid_; }
    double coefficient(const FieldPair& phi) const;
    FieldPair project(const FieldPair& phi) const;
    FieldPair remainder(const FieldPair& phi) const;
    const std::vector<double>& ell_a() const { return ell_a_; }
    const std::vector<double>& ell_b() const { return ell_b_; }

  private:
    UnitGrid grid_;
    std::vector<double> ell_a_, ell_b_;
};

/// Seed functional of the deflation.
double seed_functional(const FieldPair& phi);

/// Builds the projector by power iteration on the adjoint propagator
/// (chunks of e^{-tau} S(tau)^T, renormalized against g).  Results are cached
/// per grid size.
Projector make_projector(UnitGrid grid, double cfl = 0.5);

/// The spec-level deflation: propagate phi, track alpha(tau) = e^{-tau}
/// c(S(tau) phi), and report the stabilized coefficient plus remainder.
/// alpha is assembled as c(phi) + deflation of phi - c(phi) g, which makes
/// project_unstable(g) exact.
struct DeflationResult {
    double alpha = 0.0;
    FieldPair remainder;
    std::vector<std::pair<double, double>> history;  // (tau, alpha)
    bool converged = false;
};
DeflationResult project_unstable(const FieldPair& phi, double tau_deflate = 10.0,
                                 double rel_tol = 1e-4, double cfl = 0.5);

/// Empirical Strichartz constants of the projected semigroup over a battery
/// of initial pairs: max over the battery of
///   ||(S(tau)(I-P) phi0)_1||_{L^q L^p} / ||(I-P) phi0||_{H1}.
struct StrichartzCheck {
    double q = 0, p = 0;
    double max_ratio = 0.0;
    int skipped = 0;  // members with (I-P) phi0 = 0
};
std::vector<StrichartzCheck> strichartz_check(const std::vector<FieldPair>& battery,
                                              const std::vector<std::pair<double, double>>& qp,
                                              double tau_max, int n_snap,
                                              const Semigroup& sg, const Projector& proj);

}  // namespace odeblow

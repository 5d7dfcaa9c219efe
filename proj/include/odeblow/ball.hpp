#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace odeblow {

/// Uniform grid on the unit-ball radius rho in [0, 1]: rho_j = j/m, j = 0..m.
struct UnitGrid {
    int m = 512;
    double h() const { return 1.0 / m; }
    double node(int j) const { return j * h(); }
    int size() const { return m + 1; }
    bool operator==(const UnitGrid&) const = default;
};

enum class PairRole { CauchyData, Psi, Phi };

/// A pair of radial functions on the closed unit ball, used for (psi1, psi2)
/// and (phi1, phi2) states of the first-order similarity system.
struct FieldPair {
    UnitGrid grid;
    std::vector<double> a, b;
    PairRole role = PairRole::Phi;

    FieldPair() = default;
    explicit FieldPair(UnitGrid g, PairRole r = PairRole::Phi)
        : grid(g), a(g.size(), 0.0), b(g.size(), 0.0), role(r) {}

    static FieldPair constant(UnitGrid g, double ca, double cb, PairRole r = PairRole::Phi) {
        FieldPair p(g, r);
        for (auto& v : p.a) v = ca;
        for (auto& v : p.b) v = cb;
        return p;
    }

    void check_compatible(const FieldPair& o) const {
        if (!(grid == o.grid)) throw std::invalid_argument("FieldPair: grid mismatch");
    }

    FieldPair& axpy(double alpha, const FieldPair& x) {
        check_compatible(x);
        for (int j = 0; j < grid.size(); ++j) {
            a[j] += alpha * x.a[j];
            b[j] += alpha * x.b[j];
        }
        return *this;
    }
    FieldPair& scale(double alpha) {
        for (auto& v : a) v *= alpha;
        for (auto& v : b) v *= alpha;
        return *this;
    }
};

inline FieldPair operator+(FieldPair x, const FieldPair& y) { return x.axpy(1.0, y); }
inline FieldPair operator-(FieldPair x, const FieldPair& y) { return x.axpy(-1.0, y); }
inline FieldPair operator*(double c, FieldPair x) { return x.scale(c); }

/// The unstable mode g = (2, 3) of the linearized similarity flow.
inline FieldPair unstable_mode(UnitGrid g) { return FieldPair::constant(g, 2.0, 3.0); }

/// Composite Simpson over [0, 1]; m must be even.
double simpson(const std::vector<double>& f, double h);

/// Second-order derivative on the uniform grid (centered inside, one-sided ends).
std::vector<double> derivative(const std::vector<double>& f, double h);

}  // namespace odeblow

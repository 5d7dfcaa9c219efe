#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "odeblow/errors.hpp"
#include "odeblow/io.hpp"
#include "odeblow/spectral.hpp"
#include "test_util.hpp"

using namespace odeblow;
using testutil::sample_profile;

namespace {
const RadialGrid kGaussGrid{12.0, 2048};
}

TEST_CASE("gaussian self-duality") {
    auto f = sample_profile(kGaussGrid, [](double r) { return std::exp(-0.5 * r * r); });
    auto ft = forward_transform(f);
    double worst = 0.0;
    for (int k = 1; k <= kGaussGrid.n; ++k) {
        const double nu = kGaussGrid.freq(k);
        worst = std::max(worst, std::fabs(ft.spectral_at(k) - std::exp(-0.5 * nu * nu)));
    }
    CHECK(worst < 1e-8);

    // inverse recovers the gaussian: interior nodes to round-off, the origin
    // through the O(h^4) even-extension limit
    auto spec_only = RadialProfile::from_spectral(kGaussGrid, ft.spectral());
    auto back = inverse_transform(spec_only);
    double worst_interior = 0.0;
    for (int j = 1; j < kGaussGrid.n; ++j)
        worst_interior = std::max(worst_interior,
                                  std::fabs(back.physical()[j] - f.physical()[j]));
    CHECK(worst_interior < 1e-12);
    CHECK(std::fabs(back.physical()[0] - 1.0) < 1e-8);
}

TEST_CASE("zero maps to zero") {
    auto z = RadialProfile::zero({8.0, 256});
    auto zt = forward_transform(z);
    for (double v : zt.spectral()) CHECK(v == 0.0);
    auto zb = inverse_transform(z);
    for (double v : zb.physical()) CHECK(v == 0.0);
}

TEST_CASE("single low mode concentrates at k = 1") {
    const RadialGrid g{10.0, 1024};
    const double nu1 = g.freq(1);
    auto f = sample_profile(g, [&](double r) { return r == 0.0 ? nu1 : std::sin(nu1 * r) / r; });
    auto ft = forward_transform(f, 1.0);  // sin(nu1 r)/r ~ 1/r tail; disable the tail check
    const double lead = std::fabs(ft.spectral_at(1));
    REQUIRE(lead > 0.0);
    double rest = 0.0;
    for (int k = 2; k <= g.n; ++k) rest = std::max(rest, std::fabs(ft.spectral_at(k)));
    CHECK(rest / lead < 1e-10);
}

TEST_CASE("round trip and Plancherel") {
    const RadialGrid g{10.0, 1024};
    auto f = sample_profile(g, [](double r) { return (1.0 + r * r) * std::exp(-r * r); });
    auto ft = forward_transform(f);
    auto back = inverse_transform(RadialProfile::from_spectral(g, ft.spectral()));
    // relative L^2 with the radial measure (the origin carries zero weight)
    double num = 0.0, den = 0.0;
    for (int j = 0; j <= g.n; ++j) {
        const double r2 = g.node(j) * g.node(j);
        num += r2 * (back.physical()[j] - f.physical()[j]) * (back.physical()[j] - f.physical()[j]);
        den += r2 * f.physical()[j] * f.physical()[j];
    }
    CHECK(std::sqrt(num / den) < 1e-12);

    const double phys = l2_norm_physical(f);
    const double spec = sobolev_norm(ft, 0.0);
    CHECK(std::fabs(phys - spec) / phys < 1e-10);
}

TEST_CASE("truncation error signalled") {
    const RadialGrid g{4.0, 128};
    auto f = sample_profile(g, [](double r) { return std::exp(-0.1 * r * r); });
    CHECK_THROWS_AS((void)forward_transform(f, 1e-7), TruncationError);
}

TEST_CASE("sobolev norm") {
    auto f = sample_profile(kGaussGrid, [](double r) { return std::exp(-0.5 * r * r); });
    auto ft = forward_transform(f);

    SUBCASE("zero profile") {
        auto z = RadialProfile::zero(kGaussGrid);
        CHECK(sobolev_norm(z, 0.0) == 0.0);
        CHECK(sobolev_norm(z, 1.7) == 0.0);
    }
    SUBCASE("gaussian L2 norm is pi^(3/4)") {
        CHECK(sobolev_norm(ft, 0.0) == doctest::Approx(std::pow(M_PI, 0.75)).epsilon(1e-10));
    }
    SUBCASE("monotone in s") {
        double prev = sobolev_norm(ft, -0.5);
        for (double s : {0.0, 0.3, 0.8, 1.5, 2.0}) {
            const double cur = sobolev_norm(ft, s);
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("annulus projections") {
    const RadialGrid g{16.0, 512};
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> spec(g.n);
    for (auto& v : spec) v = unif(rng);
    auto f = RadialProfile::from_spectral(g, spec);

    SUBCASE("support algebra") {
        std::vector<double> s23(g.n, 0.0);
        for (int k = 1; k <= g.n; ++k) {
            const double nu = g.freq(k);
            if (nu >= 2.0 && nu < 3.0) s23[k - 1] = spec[k - 1];
        }
        auto f23 = RadialProfile::from_spectral(g, s23);
        CHECK(annulus_project(f23, 2).spectral() == s23);
        auto p5 = annulus_project(f23, 5);
        for (double v : p5.spectral()) CHECK(v == 0.0);
    }
    SUBCASE("partition of unity is exact") {
        std::vector<double> acc(g.n, 0.0);
        for (int a = 0; a <= static_cast<int>(g.nu_max()); ++a) {
            auto pa = annulus_project(f, a).spectral();
            for (int k = 0; k < g.n; ++k) acc[k] += pa[k];
        }
        CHECK(acc == spec);
    }
    SUBCASE("Parseval additivity, idempotence, orthogonality") {
        const double total = sobolev_norm(f, 0.0);
        double sumsq = 0.0;
        for (int a = 0; a <= static_cast<int>(g.nu_max()); ++a) {
            auto pa = annulus_project(f, a);
            const double na = sobolev_norm(pa, 0.0);
            sumsq += na * na;
            CHECK(annulus_project(pa, a).spectral() == pa.spectral());
            if (a >= 1) {
                // disjoint supports
                auto pb = annulus_project(pa, a - 1);
                for (double v : pb.spectral()) CHECK(v == 0.0);
            }
        }
        CHECK(std::sqrt(sumsq) == doctest::Approx(total).epsilon(1e-12));
    }
    SUBCASE("discrete self-adjointness") {
        std::vector<double> spec2(g.n);
        for (auto& v : spec2) v = unif(rng);
        auto f2 = RadialProfile::from_spectral(g, spec2);
        auto dot = [&](const RadialProfile& x, const RadialProfile& y) {
            double acc = 0.0;
            for (int k = 1; k <= g.n; ++k) {
                const double nu = g.freq(k);
                acc += x.spectral()[k - 1] * y.spectral()[k - 1] * nu * nu;
            }
            return acc;
        };
        auto p3f = annulus_project(f, 3);
        auto p3f2 = annulus_project(f2, 3);
        CHECK(dot(p3f, f2) == doctest::Approx(dot(f, p3f2)).epsilon(1e-13));
    }
}

TEST_CASE("littlewood-paley projections") {
    const RadialGrid g{16.0, 512};

    SUBCASE("cutoff plateaus") {
        CHECK(lp_cutoff(0.3) == 1.0);
        CHECK(lp_cutoff(0.5) == 1.0);
        CHECK(lp_cutoff(1.0) == 0.0);
        CHECK(lp_cutoff(2.5) == 0.0);
        CHECK(lp_cutoff(0.75) > 0.0);
        CHECK(lp_cutoff(0.75) < 1.0);
    }

    std::vector<double> spec(g.n, 0.0);
    for (int k = 1; k <= g.n; ++k) {
        const double nu = g.freq(k);
        if (nu >= 8.0 && nu < 9.0) spec[k - 1] = 1.0;
    }
    auto f = RadialProfile::from_spectral(g, spec);

    SUBCASE("support arithmetic for [8,9)") {
        for (int N : {1, 2, 4}) {
            auto q = littlewood_paley(f, N);
            for (double v : q.spectral()) CHECK(v == 0.0);
        }
        for (int N : {64, 128}) {
            auto q = littlewood_paley(f, N);
            for (double v : q.spectral()) CHECK(v == 0.0);
        }
        double mass16 = sobolev_norm(littlewood_paley(f, 16), 0.0);
        CHECK(mass16 > 0.0);
    }
    SUBCASE("telescoping reconstruction") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        std::vector<double> full(g.n);
        for (auto& v : full) v = unif(rng);
        auto h = RadialProfile::from_spectral(g, full);
        std::vector<double> acc(g.n, 0.0);
        int n_top = 1;
        while (n_top < 2 * g.nu_max()) n_top *= 2;
        for (int N = 1; N <= n_top; N *= 2) {
            auto q = littlewood_paley(h, N).spectral();
            for (int k = 0; k < g.n; ++k) acc[k] += q[k];
        }
        CHECK(testutil::max_abs_diff(acc, full) < 1e-13);
    }
    SUBCASE("Q_N is an L2 contraction") {
        std::mt19937_64 rng(13);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        std::vector<double> full(g.n);
        for (auto& v : full) v = unif(rng);
        auto h = RadialProfile::from_spectral(g, full);
        const double base = sobolev_norm(h, 0.0);
        for (int N = 1; N <= 64; N *= 2) CHECK(sobolev_norm(littlewood_paley(h, N), 0.0) <= base);
    }
    SUBCASE("rejects non-dyadic N") {
        CHECK_THROWS_AS((void)littlewood_paley(f, 3), std::invalid_argument);
        CHECK_THROWS_AS((void)littlewood_paley(f, 0), std::invalid_argument);
    }
}

TEST_CASE("grid convergence of the transform is at least second order") {
    // f = exp(-r) has a derivative kink in its even extension at r = 0, which
    // caps the quadrature at the generic second order.
    const double rmax = 30.0;
    auto error_at = [&](int n) {
        const RadialGrid g{rmax, n};
        auto f = sample_profile(g, [](double r) { return std::exp(-r); });
        auto ft = forward_transform(f);
        double worst = 0.0;
        for (int k = 1; k <= 40; ++k) {
            const double nu = g.freq(k);
            const double exact = std::sqrt(2.0 / M_PI) * 2.0 / ((1.0 + nu * nu) * (1.0 + nu * nu));
            worst = std::max(worst, std::fabs(ft.spectral_at(k) - exact));
        }
        return worst;
    };
    const double e1 = error_at(1024);
    const double e2 = error_at(2048);
    CHECK(e1 / e2 > 3.4);  // order >= 2 would give 4
}

TEST_CASE("profile serialization") {
    const RadialGrid g{6.0, 64};
    auto f = sample_profile(g, [](double r) { return std::exp(-r * r) * std::cos(r); });

    SUBCASE("csv round trip") {
        const std::string path = "/tmp/odeblow_test_profile.csv";
        write_profile_csv(path, f);
        auto back = read_profile_csv(path);
        CHECK(back.grid().n == g.n);
        CHECK(back.grid().r_max == doctest::Approx(g.r_max).epsilon(1e-15));
        CHECK(testutil::max_abs_diff(back.physical(), f.physical()) < 1e-14);
    }
    SUBCASE("binary round trip is exact") {
        const std::string path = "/tmp/odeblow_test_profile.bin";
        write_profile_bin(path, f);
        auto back = read_profile_bin(path);
        CHECK(back.grid() == g);
        CHECK(back.physical() == f.physical());
    }
    SUBCASE("binary header is validated") {
        const std::string path = "/tmp/odeblow_test_garbage.bin";
        {
            std::vector<double> junk{1.0, 2.0};
            write_profile_bin(path, f);
        }
        FILE* fp = std::fopen(path.c_str(), "r+b");
        REQUIRE(fp);
        const unsigned bad = 0xDEADBEEF;
        std::fwrite(&bad, sizeof bad, 1, fp);
        std::fclose(fp);
        CHECK_THROWS((void)read_profile_bin(path));
    }
}

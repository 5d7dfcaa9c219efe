#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "odeblow/errors.hpp"
#include "odeblow/random.hpp"
#include "odeblow/spectral.hpp"
#include "test_util.hpp"

using namespace odeblow;
using testutil::sample_profile;

namespace {
const RadialGrid kGrid{8.0, 512};

RadialProfile base_profile() {
    static auto f = forward_transform(
        sample_profile(kGrid, [](double r) { return (1.0 + 0.3 * r) * std::exp(-r * r); }));
    return f;
}

std::vector<double> gaussian_scalars(int n, std::uint64_t master) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = annulus_coefficient(CoefficientLaw::StandardGaussian,
                                   RandomSeed{master, static_cast<std::uint64_t>(i)}, 0, 0);
    return v;
}
}  // namespace

TEST_CASE("determinism and purity of the coefficient stream") {
    auto f = base_profile();
    const RandomSeed seed{123456789ull, 42ull};
    auto a = randomize(f, CoefficientLaw::StandardGaussian, seed);
    auto b = randomize(f, CoefficientLaw::StandardGaussian, seed);
    CHECK(a.spectral() == b.spectral());

    auto c = randomize(f, CoefficientLaw::StandardGaussian, RandomSeed{123456789ull, 43ull});
    CHECK(a.spectral() != c.spectral());
    auto d = randomize(f, CoefficientLaw::StandardGaussian, seed, /*component=*/1);
    CHECK(a.spectral() != d.spectral());
}

TEST_CASE("degenerate law is the identity") {
    auto f = base_profile();
    auto fo = randomize(f, CoefficientLaw::DegenerateOne, RandomSeed{9, 9});
    CHECK(fo.spectral() == f.spectral());
}

TEST_CASE("single-annulus profile becomes a scalar multiple") {
    std::vector<double> spec(kGrid.n, 0.0);
    for (int k = 1; k <= kGrid.n; ++k) {
        const double nu = kGrid.freq(k);
        if (nu >= 5.0 && nu < 6.0) spec[k - 1] = std::sin(0.37 * k);
    }
    auto f = RadialProfile::from_spectral(kGrid, spec);
    const RandomSeed seed{777, 3};
    auto fo = randomize(f, CoefficientLaw::StandardGaussian, seed);
    const double x5 = annulus_coefficient(CoefficientLaw::StandardGaussian, seed, 0, 5);
    for (int k = 1; k <= kGrid.n; ++k) CHECK(fo.spectral()[k - 1] == x5 * spec[k - 1]);
}

TEST_CASE("mean of ||f_omega||^2 matches ||f||^2 over 1e4 seeds") {
    auto f = base_profile();
    auto rep = hs_norm_statistics(f, 0.0, CoefficientLaw::StandardGaussian, 10000, 2024);
    const double target = sobolev_norm(f, 0.0);
    CHECK(std::fabs(rep.mean_square - target * target) <= 3.0 * rep.mean_square_stderr);

    // same second-moment identity in H^s
    auto rep_s = hs_norm_statistics(f, 0.8, CoefficientLaw::StandardGaussian, 10000, 2025);
    const double ts = sobolev_norm(f, 0.8);
    CHECK(std::fabs(rep_s.mean_square - ts * ts) <= 3.0 * rep_s.mean_square_stderr);
}

TEST_CASE("zero profile has zero moments") {
    auto z = RadialProfile::zero(kGrid);
    auto rep = hs_norm_statistics(z, 0.8, CoefficientLaw::StandardGaussian, 200, 7);
    CHECK(rep.moment[0] == 0.0);
    CHECK(rep.moment[1] == 0.0);
    CHECK(rep.moment[2] == 0.0);
    CHECK(!rep.violation);
}

TEST_CASE("moment ratios stay bounded across laws and profiles") {
    auto f = base_profile();
    auto g = forward_transform(
        sample_profile(kGrid, [](double r) { return std::sin(4.0 * r) * std::exp(-2.0 * r * r); }));
    for (auto law : {CoefficientLaw::StandardGaussian, CoefficientLaw::Rademacher,
                     CoefficientLaw::UniformSymmetric}) {
        for (const auto& p : {f, g}) {
            auto rep = hs_norm_statistics(p, 0.8, law, 2000, 31);
            CHECK(!rep.violation);
            for (double r : rep.ratio) CHECK(r < 2.0);
        }
    }
}

TEST_CASE("sub-gaussian tail estimates") {
    auto samples = gaussian_scalars(100000, 555);

    SUBCASE("lambda = 0 exceedance is 1") {
        auto rep = tail_estimate_check(samples, 0.0);
        CHECK(rep.exceedance == 1.0);
    }
    SUBCASE("lambda = 2 matches 2(1 - Phi(2))") {
        auto rep = tail_estimate_check(samples, 2.0);
        const double p = std::erfc(2.0 / std::sqrt(2.0));  // 0.04550026
        const double se = std::sqrt(p * (1.0 - p) / samples.size());
        CHECK(std::fabs(rep.exceedance - p) <= 3.0 * se);
    }
    SUBCASE("fitted exponent is negative, consistent with exp(-lambda^2/2) tails") {
        auto rep = tail_estimate_check(samples, 1.0);
        CHECK(rep.fit_slope < 0.0);
        CHECK(rep.fit_slope <= -0.4);
        // exact LS value of the erfc tail over this grid is about -0.64
        CHECK(rep.fit_slope >= -0.75);
    }
    SUBCASE("insufficient exceedances throws") {
        CHECK_THROWS_AS((void)tail_estimate_check(samples, 10.0), InsufficientExceedances);
    }
}

TEST_CASE("annulus coefficients are empirically independent") {
    const int n = 20000;
    double s_mn = 0.0, s_m = 0.0, s_n = 0.0, s_mm = 0.0, s_nn = 0.0;
    for (int i = 0; i < n; ++i) {
        const RandomSeed seed{88, static_cast<std::uint64_t>(i)};
        const double xm = annulus_coefficient(CoefficientLaw::StandardGaussian, seed, 0, 3);
        const double xn = annulus_coefficient(CoefficientLaw::StandardGaussian, seed, 0, 11);
        s_mn += xm * xn;
        s_m += xm;
        s_n += xn;
        s_mm += xm * xm;
        s_nn += xn * xn;
    }
    const double cov = s_mn / n - (s_m / n) * (s_n / n);
    const double corr = cov / std::sqrt((s_mm / n - (s_m / n) * (s_m / n)) *
                                        (s_nn / n - (s_n / n) * (s_n / n)));
    CHECK(std::fabs(corr) <= 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("Khintchine: psi2 proxy of random sums is controlled by the l2 norm") {
    const int n_vec = 20, n_samples = 20000, dim = 48;
    for (auto law : {CoefficientLaw::StandardGaussian, CoefficientLaw::Rademacher}) {
        double worst = 0.0;
        for (int v = 0; v < n_vec; ++v) {
            // deterministic battery of coefficient vectors
            std::vector<double> a(dim);
            double l2 = 0.0;
            for (int j = 0; j < dim; ++j) {
                a[j] = std::sin(1.0 + 0.7 * j * (v + 1)) / (1.0 + 0.2 * j);
                l2 += a[j] * a[j];
            }
            l2 = std::sqrt(l2);
            double m2 = 0, m4 = 0, m8 = 0;
            for (int i = 0; i < n_samples; ++i) {
                double s = 0.0;
                const RandomSeed seed{4040, static_cast<std::uint64_t>(i)};
                for (int j = 0; j < dim; ++j)
                    s += a[j] * annulus_coefficient(law, seed, static_cast<std::uint32_t>(v), j);
                const double s2 = s * s;
                m2 += s2;
                m4 += s2 * s2;
                m8 += s2 * s2 * s2 * s2;
            }
            m2 /= n_samples;
            m4 /= n_samples;
            m8 /= n_samples;
            const double proxy = std::max({std::sqrt(m2) / std::sqrt(2.0),
                                           std::pow(m4, 0.25) / 2.0,
                                           std::pow(m8, 0.125) / std::sqrt(8.0)});
            worst = std::max(worst, proxy / l2);
        }
        CHECK(worst < 1.0);  // gaussian exact value is ~0.71; MC noise stays well below 1
    }
}

TEST_CASE("maximum of sub-gaussians grows like sqrt(log(2+J))") {
    const int reps = 200;
    for (int J : {10, 100, 1000, 10000}) {
        double acc = 0.0;
        for (int rep = 0; rep < reps; ++rep) {
            double mx = 0.0;
            const RandomSeed seed{909, static_cast<std::uint64_t>(rep)};
            for (int j = 0; j < J; ++j)
                mx = std::max(mx, std::fabs(annulus_coefficient(CoefficientLaw::StandardGaussian,
                                                                seed, 1, j)));
            acc += mx;
        }
        const double ratio = (acc / reps) / std::sqrt(std::log(2.0 + J));
        CHECK(ratio < 2.0);
        CHECK(ratio > 0.5);
    }
}

TEST_CASE("law names round trip") {
    for (auto law : {CoefficientLaw::StandardGaussian, CoefficientLaw::Rademacher,
                     CoefficientLaw::UniformSymmetric, CoefficientLaw::DegenerateOne})
        CHECK(law_from_name(law_name(law)) == law);
    CHECK_THROWS((void)law_from_name("cauchy"));
}

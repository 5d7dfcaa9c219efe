#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "odeblow/kernels.hpp"
#include "test_util.hpp"

using namespace odeblow;

namespace {
std::vector<double> random_vec(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = unif(rng);
    return v;
}
}  // namespace

TEST_CASE("fast DST matches the serial reference") {
    for (int len : {7, 64, 255, 1023, 2047}) {
        auto in = random_vec(len, 100 + len);
        std::vector<double> a(len), b(len);
        kernels::serial::dst_i(in, a);
        kernels::dst_i(in, b);
        double scale = 0.0;
        for (double v : a) scale = std::max(scale, std::fabs(v));
        CHECK(testutil::max_abs_diff(a, b) < 1e-11 * std::max(1.0, scale));
    }
}

TEST_CASE("DST is an involution up to the known factor") {
    // sum_k sin(jk pi/n) sin(ik pi/n) = (n/2) delta_ij over k = 1..n-1
    const int len = 511;
    auto in = random_vec(len, 5);
    std::vector<double> mid(len), out(len);
    kernels::dst_i(in, mid);
    kernels::dst_i(mid, out);
    const double factor = (len + 1) / 2.0;
    for (int i = 0; i < len; ++i) out[i] /= factor;
    CHECK(testutil::max_abs_diff(out, in) < 1e-12);
}

TEST_CASE("batched DST rows equal individual transforms") {
    const int len = 255, rows = 9;
    std::vector<double> in(rows * len), out(rows * len);
    for (int r = 0; r < rows; ++r) {
        auto v = random_vec(len, 31 + r);
        std::copy(v.begin(), v.end(), in.begin() + r * len);
    }
    kernels::dst_i_rows(in.data(), out.data(), rows, len);
    for (int r = 0; r < rows; ++r) {
        std::vector<double> one(len);
        kernels::dst_i(std::span<const double>(in.data() + r * len, len), one);
        for (int k = 0; k < len; ++k) CHECK(out[r * len + k] == one[k]);
    }
}

TEST_CASE("omp wave rhs is bit-identical to serial") {
    const int n = 8192;
    auto w = random_vec(n + 1, 42);
    w[0] = 0.0;
    w[n] = 0.0;
    std::vector<double> a(n + 1), b(n + 1);
    kernels::serial::radial_wave_rhs(w, 0.5 / n, a);
    kernels::radial_wave_rhs(w, 0.5 / n, b);
    CHECK(a == b);
}

TEST_CASE("omp similarity rhs is bit-identical to serial") {
    const int m = 8192;
    auto p1 = random_vec(m + 1, 43);
    auto p2 = random_vec(m + 1, 44);
    std::vector<double> a1(m + 1), a2(m + 1), b1(m + 1), b2(m + 1);
    kernels::serial::similarity_rhs(p1, p2, a1, a2, 1.0 / m, 3.75);
    kernels::similarity_rhs(p1, p2, b1, b2, 1.0 / m, 3.75);
    CHECK(a1 == b1);
    CHECK(a2 == b2);
}

TEST_CASE("cubic interpolation reproduces cubics and respects parity") {
    const int n = 64;
    const double h = 0.125;
    std::vector<double> f(n + 1);
    auto cubic = [](double x) { return 2.0 - 0.5 * x + 3.0 * x * x - 0.25 * x * x * x; };
    for (int j = 0; j <= n; ++j) f[j] = cubic(j * h);
    // interior points: exact on cubics
    for (double x : {0.2, 0.49, 1.7321, 5.25, 7.6}) {
        CHECK(kernels::interp_even(f, h, x) == doctest::Approx(cubic(x)).epsilon(1e-12));
    }
    // near the origin the even extension keeps accuracy for even functions
    std::vector<double> g(n + 1);
    for (int j = 0; j <= n; ++j) g[j] = std::cos(j * h);
    CHECK(kernels::interp_even(g, h, 0.02) == doctest::Approx(std::cos(0.02)).epsilon(1e-5));
}

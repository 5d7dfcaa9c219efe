#include "odeblow/random.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "odeblow/errors.hpp"
#include "odeblow/spectral.hpp"

namespace odeblow {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

CoefficientLaw law_from_name(const std::string& name) {
    if (name == "standard-gaussian" || name == "gaussian") return CoefficientLaw::StandardGaussian;
    if (name == "rademacher") return CoefficientLaw::Rademacher;
    if (name == "uniform-symmetric" || name == "uniform") return CoefficientLaw::UniformSymmetric;
    if (name == "degenerate-one") return CoefficientLaw::DegenerateOne;
    throw std::invalid_argument("unknown coefficient law: " + name);
}

std::string law_name(CoefficientLaw law) {
    switch (law) {
        case CoefficientLaw::StandardGaussian: return "standard-gaussian";
        case CoefficientLaw::Rademacher: return "rademacher";
        case CoefficientLaw::UniformSymmetric: return "uniform-symmetric";
        case CoefficientLaw::DegenerateOne: return "degenerate-one";
    }
    return "?";
}

namespace {
// (u >> 11) has 53 random bits; the offset keeps the value inside (0, 1).
double to_unit(std::uint64_t u) { return (static_cast<double>(u >> 11) + 0.5) * 0x1.0p-53; }
}  // namespace

double annulus_coefficient(CoefficientLaw law, const RandomSeed& seed, std::uint32_t component,
                           std::int64_t annulus) {
    if (law == CoefficientLaw::DegenerateOne) return 1.0;
    std::uint64_t key = splitmix64(seed.master);
    key = splitmix64(key ^ seed.sample);
    key = splitmix64(key ^ (static_cast<std::uint64_t>(component) << 48) ^
                     static_cast<std::uint64_t>(annulus));
    const std::uint64_t a = splitmix64(key ^ 0x243F6A8885A308D3ull);
    const std::uint64_t b = splitmix64(key ^ 0x13198A2E03707344ull);
    switch (law) {
        case CoefficientLaw::StandardGaussian:
            return std::sqrt(-2.0 * std::log(to_unit(a))) * std::cos(2.0 * M_PI * to_unit(b));
        case CoefficientLaw::Rademacher:
            return (a & 1u) ? 1.0 : -1.0;
        case CoefficientLaw::UniformSymmetric:
            return (2.0 * to_unit(a) - 1.0) * std::sqrt(3.0);
        case CoefficientLaw::DegenerateOne:
            break;
    }
    return 1.0;
}

RadialProfile randomize(const RadialProfile& f, CoefficientLaw law, const RandomSeed& seed,
                        std::uint32_t component) {
    const RadialGrid& g = f.grid();
    const auto& spec = f.spectral();
    std::vector<double> out(g.n);
    int current = -1;
    double coeff = 0.0;
    for (int k = 1; k <= g.n; ++k) {
        const int a = RadialGrid::annulus_of(g.freq(k));
        if (a != current) {
            current = a;
            coeff = annulus_coefficient(law, seed, component, a);
        }
        out[k - 1] = coeff * spec[k - 1];
    }
    return RadialProfile::from_spectral(g, std::move(out));
}

MomentReport hs_norm_statistics(const RadialProfile& f, double s, CoefficientLaw law,
                                int n_samples, std::uint64_t master, double flag_constant) {
    if (n_samples < 100)
        throw std::invalid_argument("hs_norm_statistics: need at least 100 samples");
    MomentReport rep;
    rep.base_norm = sobolev_norm(f, s);

    double m2 = 0.0, m4 = 0.0, m8 = 0.0, sq_sum = 0.0, sq_sumsq = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : m2, m4, m8, sq_sum, sq_sumsq)
    for (int i = 0; i < n_samples; ++i) {
        auto fo = randomize(f, law, RandomSeed{master, static_cast<std::uint64_t>(i)});
        const double x = sobolev_norm(fo, s);
        const double x2 = x * x;
        const double x4 = x2 * x2;
        m2 += x2;
        m4 += x4;
        m8 += x4 * x4;
        sq_sum += x2;
        sq_sumsq += x2 * x2;
    }
    m2 /= n_samples;
    m4 /= n_samples;
    m8 /= n_samples;
    rep.moment = {std::sqrt(m2), std::pow(m4, 0.25), std::pow(m8, 0.125)};
    const double r[3] = {2.0, 4.0, 8.0};
    for (int i = 0; i < 3; ++i) {
        rep.ratio[i] =
            rep.base_norm > 0 ? rep.moment[i] / (std::sqrt(r[i]) * rep.base_norm) : 0.0;
        if (rep.ratio[i] > flag_constant) rep.violation = true;
    }
    rep.mean_square = sq_sum / n_samples;
    const double var = sq_sumsq / n_samples - rep.mean_square * rep.mean_square;
    rep.mean_square_stderr = std::sqrt(std::max(0.0, var) / n_samples);
    return rep;
}

TailReport tail_estimate_check(std::span<const double> samples, double lambda) {
    if (samples.size() < 1000)
        throw std::invalid_argument("tail_estimate_check: need at least 1e3 samples");
    TailReport rep;
    rep.lambda = lambda;
    const double n = static_cast<double>(samples.size());

    auto exceed_count = [&](double lam) {
        long c = 0;
        for (double x : samples)
            if (std::fabs(x) >= lam) ++c;
        return c;
    };

    const long at_lambda = exceed_count(lambda);
    rep.n_exceed = static_cast<int>(at_lambda);
    rep.exceedance = at_lambda / n;
    if (at_lambda < 10)
        throw InsufficientExceedances("tail_estimate_check: only " + std::to_string(at_lambda) +
                                      " samples exceed lambda");

    // log P against lambda^2 over an RMS-scaled grid; only populated levels count.
    double rms = 0.0;
    for (double x : samples) rms += x * x;
    rms = std::sqrt(rms / n);
    std::vector<double> xs, ys;
    for (double factor : {0.5, 1.0, 1.5, 2.0, 2.5}) {
        const double lam = factor * rms;
        const long c = exceed_count(lam);
        if (c >= 10) {
            xs.push_back(lam * lam);
            ys.push_back(std::log(c / n));
        }
    }
    rep.fit_points = static_cast<int>(xs.size());
    if (rep.fit_points >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        const double m = static_cast<double>(xs.size());
        rep.fit_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    }
    return rep;
}

}  // namespace odeblow

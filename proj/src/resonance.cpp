#include "paik/resonance.hpp"

#include "paik/errors.hpp"
#include "paik/response.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

namespace paik {

namespace {

double j0(double x) { return std::cyl_bessel_j(0.0, x); }
double j1(double x) { return std::cyl_bessel_j(1.0, x); }

// McMahon's expansion for the n-th zero of J0.
double mcmahon(std::size_t n) {
    const double b = (static_cast<double>(n) - 0.25) * std::numbers::pi;
    const double b8 = 8.0 * b;
    return b + 1.0 / b8 - 124.0 / (3.0 * b8 * b8 * b8);
}

}  // namespace

std::vector<double> bessel_j0_roots(std::size_t count) {
    if (count == 0) throw InvalidArgument("root count must be at least 1");
    std::vector<double> roots;
    roots.reserve(count);
    for (std::size_t n = 1; n <= count; ++n) {
        double x = mcmahon(n);
        for (int it = 0; it < 50; ++it) {
            const double step = j0(x) / (-j1(x));  // J0' = -J1
            x -= step;
            if (std::abs(step) < 1e-16 * x) break;
        }
        if (std::abs(j0(x)) >= 1e-12) throw Error("J0 root did not converge");
        roots.push_back(x);
    }
    return roots;
}

RadialModeSet radial_modes(double diameter, double v_shear, std::size_t count) {
    if (!(diameter > 0.0) || !std::isfinite(diameter)) throw InvalidParameter("diameter must be positive");
    if (!(v_shear > 0.0) || !std::isfinite(v_shear)) throw InvalidParameter("shear velocity must be positive");
    RadialModeSet set{diameter, v_shear, {}};
    const auto roots = bessel_j0_roots(count);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        set.modes.push_back({i + 1, roots[i], v_shear * roots[i] / (std::numbers::pi * diameter)});
    }
    return set;
}

InverseDiameterFit fit_inverse_diameter(const std::vector<ResonancePoint>& points) {
    if (points.size() < 2) throw DegenerateFit("inverse-diameter fit needs at least two points");
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd a(n, 2);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& p = points[static_cast<std::size_t>(i)];
        if (!(p.diameter > 0.0)) throw InvalidParameter("fit diameters must be positive");
        a(i, 0) = 1.0 / p.diameter;
        a(i, 1) = 1.0;
        y(i) = p.f_lowest;
    }
    const double x0 = a(0, 0);
    bool distinct = false;
    for (Eigen::Index i = 1; i < n; ++i) distinct = distinct || a(i, 0) != x0;
    if (!distinct) throw DegenerateFit("all diameters are equal");

    const Eigen::Vector2d beta = a.colPivHouseholderQr().solve(y);
    InverseDiameterFit fit{beta(0), beta(1), 1.0};
    const double mean = y.mean();
    const double ss_tot = (y.array() - mean).square().sum();
    const double ss_res = (y - a * beta).squaredNorm();
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

double lowest_resonance(const Spectrum& spectrum, double lo, double hi) {
    spectrum.validate();
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
        if (spectrum.freqs[i] >= lo && spectrum.freqs[i] <= hi) idx.push_back(i);
    }
    if (idx.size() < 3) throw InvalidArgument("search band holds fewer than three bins");
    Spectrum sub;
    sub.unit = spectrum.unit;
    sub.freqs.resize(static_cast<Eigen::Index>(idx.size()));
    sub.values.resize(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) {
        sub.freqs[static_cast<Eigen::Index>(i)] = spectrum.freqs[idx[i]];
        sub.values[static_cast<Eigen::Index>(i)] = spectrum.values[idx[i]];
    }
    return band_metrics(sub, -6.0).f_center;
}

std::vector<ResonancePoint> synthetic_resonance_scan(const std::vector<double>& diameters, double v_shear,
                                                     double jitter, std::uint64_t seed) {
    if (!(jitter >= 0.0)) throw InvalidParameter("jitter must be non-negative");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, jitter > 0.0 ? jitter : 1.0);
    std::vector<ResonancePoint> out;
    out.reserve(diameters.size());
    for (const double d : diameters) {
        const double f1 = radial_modes(d, v_shear, 1).modes.front().f_hz;
        out.push_back({d, jitter > 0.0 ? f1 * (1.0 + noise(rng)) : f1});
    }
    return out;
}

}  // namespace paik

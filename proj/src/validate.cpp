#include "paik/validate.hpp"

#include "paik/klm.hpp"
#include "paik/response.hpp"
#include "paik/transfer.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

namespace paik {

namespace {

using C = std::complex<double>;

constexpr double two_pi = 2.0 * std::numbers::pi;

double rel(C got, C want) {
    const double scale = std::abs(want);
    return scale > 0.0 ? std::abs(got - want) / scale : std::abs(got);
}

IdentityCheck finish(std::string name, double max_error, double tolerance, std::size_t samples) {
    return {std::move(name), samples > 0 && max_error <= tolerance, max_error, tolerance, samples};
}

bool plate_regular(const PiezoPlate& plate, double omega) {
    const double kl = derived_constants(plate, omega).k * plate.thickness;
    return std::abs(std::sin(kl)) > 1e-6 && std::abs(std::sin(kl / 2)) > 1e-6 && std::abs(std::cos(kl / 2)) > 1e-6;
}

}  // namespace

std::vector<double> identity_frequencies(const ReadoutChain& chain, const IdentityOptions& options) {
    const FrequencyGrid grid{options.f_min, options.f_max, options.n_points};
    const Eigen::ArrayXd f = grid.frequencies();
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(f.size()));
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        const double fi = nudged_frequency(chain, f[i], grid.step(), nullptr);
        // the three-port identities also need tan(kL), tan(kL/2) finite
        if (plate_regular(chain.plate, two_pi * fi)) out.push_back(fi);
    }
    return out;
}

IdentityCheck check_open_circuit(const ReadoutChain& chain, const IdentityOptions& options) {
    double worst = 0.0;
    const auto freqs = identity_frequencies(chain, options);
    for (const double f : freqs) {
        const double w = two_pi * f;
        const C want = 1.0 / (C(0, 1) * w * derived_constants(chain.plate, w).c0);
        const C got = electrical_input_impedance(w, chain, LookFrom::piezo_terminals, AcousticTermination::open);
        worst = std::max(worst, rel(got, want));
    }
    return finish("open-circuit input impedance = 1/(j w C0)", worst, 1e-9, freqs.size());
}

IdentityCheck check_short_circuit(const ReadoutChain& chain, const IdentityOptions& options) {
    double worst = 0.0;
    const auto freqs = identity_frequencies(chain, options);
    const auto& p = chain.plate;
    for (const double f : freqs) {
        const double w = two_pi * f;
        const auto dc = derived_constants(p, w);
        const C want = C(0, 2) * p.h33 * p.h33 * std::tan(dc.k * p.thickness / 2) / (w * w * dc.z0) +
                       1.0 / (C(0, 1) * w * dc.c0);
        const C got = electrical_input_impedance(w, chain, LookFrom::piezo_terminals, AcousticTermination::shorted);
        worst = std::max(worst, rel(got, want));
    }
    return finish("short-circuit input impedance", worst, 1e-9, freqs.size());
}

IdentityCheck check_three_port(const ReadoutChain& chain, const IdentityOptions& options) {
    const auto freqs = identity_frequencies(chain, options);
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, freqs.empty() ? 0 : freqs.size() - 1);
    double worst = 0.0;
    std::size_t n = 0;
    for (std::size_t draw = 0; draw < options.random_draws && !freqs.empty(); ++draw) {
        const double w = two_pi * freqs[pick(rng)];
        const auto z = three_port_impedance(w, chain.plate);
        const Eigen::Vector3cd x(C(u(rng), u(rng)), C(u(rng), u(rng)), C(u(rng), u(rng)) * 1e-3);
        const Eigen::Vector3cd want = z * x;
        const auto s = solve_klm_circuit(w, chain.plate, PortDrive::velocity(x(0)), PortDrive::velocity(x(1)), x(2));
        const double scale = want.norm();
        const double err = (Eigen::Vector3cd(s.force_back, s.force_front, s.voltage) - want).norm() / scale;
        worst = std::max(worst, err);
        ++n;
    }
    return finish("circuit ports match the three-port impedance matrix", worst, 1e-9, n);
}

IdentityCheck check_three_port_symmetry(const ReadoutChain& chain, const IdentityOptions& options) {
    double worst = 0.0;
    const auto freqs = identity_frequencies(chain, options);
    for (const double f : freqs) {
        const auto z = three_port_impedance(two_pi * f, chain.plate);
        worst = std::max(worst, (z - z.transpose()).norm() / z.norm());
    }
    return finish("three-port impedance matrix is symmetric", worst, 1e-12, freqs.size());
}

IdentityCheck check_unit_determinant(const ReadoutChain& chain, const IdentityOptions& options) {
    double worst = 0.0;
    const auto freqs = identity_frequencies(chain, options);
    for (const double f : freqs) {
        worst = std::max(worst, std::abs(chain_matrix(two_pi * f, chain).determinant() - 1.0));
    }
    return finish("chain matrix determinant = 1", worst, 1e-9, freqs.size());
}

IdentityCheck check_factorization(const ReadoutChain& chain, const IdentityOptions& options) {
    double worst = 0.0;
    const auto freqs = identity_frequencies(chain, options);
    for (const double f : freqs) {
        const double w = two_pi * f;
        const C got = h1(w, thevenin_h1_inputs(w, chain)) * open_circuit_gain(w, chain);
        worst = std::max(worst, rel(got, h2(w, chain)));
    }
    return finish("h2 = h1 * open-circuit gain", worst, 1e-9, freqs.size());
}

IdentityCheck check_area_invariance(const ReadoutChain& chain, const IdentityOptions& options) {
    double worst = 0.0;
    std::size_t n = 0;
    for (const double f : identity_frequencies(chain, options)) {
        const double w = two_pi * f;
        const C ref = open_circuit_gain_pressure(w, chain);
        for (const double s : {0.25, 4.0}) {
            const auto scaled = with_area(chain, chain.plate.area * s);
            worst = std::max(worst, rel(open_circuit_gain_pressure(w, scaled), ref));
            ++n;
        }
    }
    return finish("pressure-referred open-circuit gain independent of area", worst, 1e-12, n);
}

std::vector<IdentityCheck> run_identity_suite(const ReadoutChain& chain, const IdentityOptions& options) {
    chain.validate();
    return {check_open_circuit(chain, options),        check_short_circuit(chain, options),
            check_three_port(chain, options),          check_three_port_symmetry(chain, options),
            check_unit_determinant(chain, options),    check_factorization(chain, options),
            check_area_invariance(chain, options)};
}

}  // namespace paik

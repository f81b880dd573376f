#include "paik/spectrum.hpp"

#include "paik/errors.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace paik {

std::string_view to_string(SpectrumUnit unit) {
    switch (unit) {
        case SpectrumUnit::volt_per_newton: return "V/N";
        case SpectrumUnit::volt_per_pascal: return "V/Pa";
        case SpectrumUnit::ohm: return "ohm";
        case SpectrumUnit::dimensionless: return "1";
        case SpectrumUnit::volt2_per_hz: return "V^2/Hz";
    }
    return "?";
}

void Spectrum::validate() const {
    if (freqs.size() != values.size()) throw InvalidArgument("spectrum frequency and value arrays differ in length");
    for (Eigen::Index i = 0; i < freqs.size(); ++i) {
        if (!(freqs[i] > 0.0)) throw InvalidArgument("spectrum frequencies must be positive");
        if (i > 0 && !(freqs[i] > freqs[i - 1])) {
            throw InvalidArgument("spectrum frequencies must be strictly increasing");
        }
    }
}

Eigen::ArrayXd FrequencyGrid::frequencies() const {
    validate();
    Eigen::ArrayXd f(static_cast<Eigen::Index>(n_points));
    const double df = step();
    for (std::size_t i = 0; i < n_points; ++i) f[static_cast<Eigen::Index>(i)] = f_min + static_cast<double>(i) * df;
    f[f.size() - 1] = f_max;
    return f;
}

void FrequencyGrid::validate() const {
    if (n_points < 2) throw InvalidArgument("frequency grid needs at least 2 points");
    if (!(f_max > f_min) || !std::isfinite(f_max) || !std::isfinite(f_min)) {
        throw InvalidArgument("frequency grid needs f_min < f_max");
    }
}

FrequencyGrid FrequencyGrid::parse(std::string_view text) {
    double parts[3] = {};
    std::size_t count = 0;
    while (count < 3) {
        const auto comma = text.find(',');
        const auto token = text.substr(0, comma);
        const auto res = std::from_chars(token.data(), token.data() + token.size(), parts[count]);
        if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
            throw InvalidArgument("grid must be 'fmin,fmax,n': cannot parse '" + std::string(token) + "'");
        }
        ++count;
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
        if (count == 3) throw InvalidArgument("grid must be 'fmin,fmax,n': too many fields");
    }
    if (count != 3 || parts[2] < 2 || parts[2] != std::floor(parts[2])) {
        throw InvalidArgument("grid must be 'fmin,fmax,n' with integer n >= 2");
    }
    FrequencyGrid g{parts[0], parts[1], static_cast<std::size_t>(parts[2])};
    if (!(g.f_max > g.f_min)) throw InvalidArgument("grid needs fmin < fmax");
    return g;
}

}  // namespace paik

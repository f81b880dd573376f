#pragma once

// ABCD transfer matrices. Convention: (in_across, in_through) = M * (out_across, out_through),
// with the output "through" variable flowing out of the output port. Across/through is
// (F, v) on acoustic ports and (V, I) on electrical ports.

#include "paik/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace paik {

enum class Domain { acoustic, electrical };

inline const char* to_string(Domain d) { return d == Domain::acoustic ? "acoustic" : "electrical"; }

template <typename Real>
class TwoPortT {
public:
    using Complex = std::complex<Real>;
    using Matrix = Eigen::Matrix<Complex, 2, 2>;

    TwoPortT() : TwoPortT(Matrix::Identity(), Domain::electrical, Domain::electrical) {}

    TwoPortT(const Matrix& m, Domain input, Domain output) : m_(m), input_(input), output_(output) {}

    TwoPortT(Complex a, Complex b, Complex c, Complex d, Domain input, Domain output)
        : input_(input), output_(output) {
        m_ << a, b, c, d;
    }

    const Matrix& matrix() const { return m_; }
    Complex a() const { return m_(0, 0); }
    Complex b() const { return m_(0, 1); }
    Complex c() const { return m_(1, 0); }
    Complex d() const { return m_(1, 1); }
    Domain input() const { return input_; }
    Domain output() const { return output_; }

    Complex determinant() const { return m_.determinant(); }

    /// Impedance looking into the input port with `load` on the output port.
    Complex input_impedance(Complex load) const { return (a() * load + b()) / (c() * load + d()); }

    /// Impedance looking back into the output port with `source` terminating the input port.
    Complex output_impedance(Complex source) const { return (d() * source + b()) / (c() * source + a()); }

    /// (in_across, in_through) for a given output state.
    Eigen::Matrix<Complex, 2, 1> apply(Complex out_across, Complex out_through) const {
        return m_ * Eigen::Matrix<Complex, 2, 1>(out_across, out_through);
    }

private:
    Matrix m_;
    Domain input_;
    Domain output_;
};

template <typename Real>
TwoPortT<Real> operator*(const TwoPortT<Real>& lhs, const TwoPortT<Real>& rhs) {
    if (lhs.output() != rhs.input()) {
        throw InvalidArgument(std::string("cannot cascade a two-port with ") + to_string(lhs.output()) +
                              " output into one with " + to_string(rhs.input()) + " input");
    }
    return TwoPortT<Real>(lhs.matrix() * rhs.matrix(), lhs.input(), rhs.output());
}

template <typename Real>
TwoPortT<Real> cascade(std::span<const TwoPortT<Real>> parts) {
    if (parts.empty()) throw InvalidArgument("cascade of an empty list");
    TwoPortT<Real> out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) out = out * parts[i];
    return out;
}

template <typename Real>
TwoPortT<Real> cascade(std::initializer_list<TwoPortT<Real>> parts) {
    return cascade(std::span<const TwoPortT<Real>>(parts.begin(), parts.size()));
}

template <typename Real>
TwoPortT<Real> identity(Domain domain) {
    return TwoPortT<Real>(TwoPortT<Real>::Matrix::Identity(), domain, domain);
}

template <typename Real>
TwoPortT<Real> series(std::complex<Real> z, Domain domain = Domain::electrical) {
    using C = std::complex<Real>;
    return TwoPortT<Real>(C(1), z, C(0), C(1), domain, domain);
}

template <typename Real>
TwoPortT<Real> shunt(std::complex<Real> y, Domain domain = Domain::electrical) {
    using C = std::complex<Real>;
    return TwoPortT<Real>(C(1), C(0), y, C(1), domain, domain);
}

/// Ideal electromechanical transformer: F = phi * V, v = I / phi.
template <typename Real>
TwoPortT<Real> transformer(std::complex<Real> phi) {
    using C = std::complex<Real>;
    if (phi == C(0)) throw InvalidArgument("transformer turns ratio must be non-zero");
    if (!std::isfinite(static_cast<double>(std::abs(phi)))) {
        throw InvalidArgument("transformer turns ratio must be finite");
    }
    return TwoPortT<Real>(phi, C(0), C(0), C(1) / phi, Domain::acoustic, Domain::electrical);
}

/// Lossless line section of electrical length theta = k * length.
template <typename Real>
TwoPortT<Real> tline(Real theta, std::complex<Real> z_line, Domain domain = Domain::acoustic) {
    using C = std::complex<Real>;
    if (z_line == C(0)) throw InvalidArgument("line impedance must be non-zero");
    const C j(0, 1);
    const Real cs = std::cos(theta);
    const Real sn = std::sin(theta);
    return TwoPortT<Real>(C(cs), j * z_line * sn, j * sn / z_line, C(cs), domain, domain);
}

/// Symmetric lumped T-section: series z_half, shunt y, series z_half.
template <typename Real>
TwoPortT<Real> t_network(std::complex<Real> z_half, std::complex<Real> y) {
    return series(z_half) * shunt(y) * series(z_half);
}

using TwoPort = TwoPortT<double>;

}  // namespace paik

#include "oracles.hpp"

#include "paik/twoport.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace paik;
using C = std::complex<double>;

namespace {

void expect_matrix_near(const TwoPort& m, C a, C b, C c, C d, double tol) {
    EXPECT_LE(std::abs(m.a() - a), tol);
    EXPECT_LE(std::abs(m.b() - b), tol);
    EXPECT_LE(std::abs(m.c() - c), tol);
    EXPECT_LE(std::abs(m.d() - d), tol);
}

}  // namespace

TEST(TwoPort, CascadeOfIdentitiesIsIdentity) {
    const auto i = identity<double>(Domain::electrical);
    expect_matrix_near(cascade({i, i}), 1, 0, 0, 1, 0);
}

TEST(TwoPort, SeriesElementsAdd) {
    const C z(3, -4), w(-1, 7);
    expect_matrix_near(cascade({series(z), series(w)}), 1, z + w, 0, 1, 1e-15);
}

TEST(TwoPort, EmptyCascadeThrows) {
    EXPECT_THROW(cascade(std::span<const TwoPort>{}), InvalidArgument);
}

TEST(TwoPort, DomainMismatchThrows) {
    const auto acoustic = identity<double>(Domain::acoustic);
    EXPECT_THROW(series(C(1)) * acoustic, InvalidArgument);
    EXPECT_NO_THROW(acoustic * transformer(C(2)));
}

TEST(TwoPort, ZeroLengthLineIsIdentity) { expect_matrix_near(tline(0.0, C(50)), 1, 0, 0, 1, 0); }

TEST(TwoPort, QuarterWaveLine) {
    const C z(40, 0);
    expect_matrix_near(tline(std::numbers::pi / 2, z), 0, C(0, 1) * z, C(0, 1) / z, 0, 1e-15);
}

TEST(TwoPort, TransformerInversePair) {
    const C phi(1.7, 0);
    const TwoPort a(transformer(phi).matrix(), Domain::electrical, Domain::electrical);
    const TwoPort b(transformer(C(1) / phi).matrix(), Domain::electrical, Domain::electrical);
    expect_matrix_near(a * b, 1, 0, 0, 1, 1e-15);
    EXPECT_THROW(transformer(C(0)), InvalidArgument);
    EXPECT_THROW(tline(1.0, C(0)), InvalidArgument);
}

TEST(TwoPort, UnitDeterminantForRandomElements) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    std::uniform_real_distribution<double> ang(-20, 20);
    for (int i = 0; i < 500; ++i) {
        const C z(u(rng), u(rng));
        for (const auto& m : {series(z), shunt(z), transformer(z), tline(ang(rng), z)}) {
            EXPECT_LT(std::abs(m.determinant() - 1.0), 1e-12) << i;
        }
    }
}

TEST(TwoPort, CascadeIsAssociative) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int i = 0; i < 100; ++i) {
        const auto a = tline(u(rng), C(u(rng) + 6, u(rng)), Domain::electrical);
        const auto b = shunt(C(u(rng), u(rng)));
        const auto c = series(C(u(rng), u(rng)));
        const auto left = (a * b) * c;
        const auto right = a * (b * c);
        EXPECT_LT((left.matrix() - right.matrix()).norm(), 1e-12 * left.matrix().norm());
    }
}

TEST(TwoPort, CascadeMatchesHandRolledProduct) {
    const C z1(10, 3), y(0.01, -0.2), z2(0, 40);
    const auto m = cascade({tline(0.7, C(25), Domain::electrical), shunt(y), series(z1), tline(1.3, z2, Domain::electrical)});
    auto r = oracle::mul(oracle::mul(oracle::mul(oracle::line(0.7, C(25)), oracle::shunt(y)), oracle::series(z1)),
                         oracle::line(1.3, z2));
    expect_matrix_near(m, r[0][0], r[0][1], r[1][0], r[1][1], 1e-13);
}

TEST(TwoPort, PortImpedances) {
    const auto m = series(C(10)) * shunt(C(0.1));
    EXPECT_LT(std::abs(m.input_impedance(C(1e300)) - C(20)), 1e-12);
    EXPECT_LT(std::abs(m.output_impedance(C(0)) - C(10.0 / 2.0)), 1e-12);
}

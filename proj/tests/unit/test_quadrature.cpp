#include "../oracles/oracles.hpp"
#include "../support/common.hpp"

using namespace gdqh;
using testing_support::num;
using testing_support::R;

namespace {

const R half = num("0.5");

} // namespace

TEST(Lattice, Validation) {
    EXPECT_THROW((LatticeSpec<R>{half, 0, 5}.validate()), domain_error);
    EXPECT_THROW((LatticeSpec<R>{half, -5, 0}.validate()), domain_error);
    EXPECT_THROW((LatticeSpec<R>{R(1), -5, 5}.validate()), domain_error);
    const auto w = LatticeSpec<R>{half, -5, 7}.widened(10);
    EXPECT_EQ(w.k_min, -15);
    EXPECT_EQ(w.k_max, 17);
}

TEST(Lattice, DefaultSizes) {
    const auto a = default_lattice(half);
    EXPECT_EQ(a.k_max, 399);
    EXPECT_EQ(a.k_min, -399);
    EXPECT_EQ(default_lattice(num("0.99")).k_max, 4000);
}

TEST(Jackson, OddIntegrandIsZero) {
    const auto v = jackson_bilateral([](const R& x) { return R(x * x * x); }, LatticeSpec<R>{half, -20, 20});
    EXPECT_EQ(v.value, R(0));
}

TEST(Jackson, IndicatorOfUnitInterval) {
    auto indicator = [](const R& x) { return abs_value(x) <= R(1) ? R(1) : R(0); };
    EXPECT_REL(jackson_bilateral(indicator, default_lattice(half)).value, R(2), 1e-45);
}

TEST(Jackson, WeightTailStability) {
    const auto p = QParams<R>::make(half, R(0));
    auto f = [&](const R& x) { return R(orthogonality_weight(x, p) * abs_value(x)); };
    const auto lat = default_lattice(half);
    const auto base = jackson_bilateral(f, lat);
    const auto wide = jackson_bilateral(f, lat.widened(10));
    EXPECT_LT(abs_value(R(base.value - wide.value)), R(1e-20));
    EXPECT_LT(base.tail_far, R(1e-60));
    EXPECT_LT(base.tail_near_zero, R(1e-60));
}

TEST(Jackson, NonFiniteIntegrandNamesPoint) {
    auto f = [](const R& x) { return R(1) / (x - R(1) / R(4)); };
    try {
        (void)jackson_bilateral(f, LatticeSpec<R>{half, -3, 3});
        FAIL();
    } catch (const evaluation_error& e) {
        EXPECT_NE(std::string(e.what()).find("+q^2"), std::string::npos) << e.what();
    }
}

TEST(OrthogonalityConstant, ClosedFormOracles) {
    EXPECT_REL(orthogonality_constant(0, QParams<R>::make(half, R(0))), R(2) * half * half, 1e-45);
    const auto p = QParams<R>::make(half, half);
    EXPECT_REL(orthogonality_constant(0, p), num(oracle::orth_const_q05_a05_n0), 1e-45);
    EXPECT_REL(orthogonality_constant(1, p), num(oracle::orth_const_q05_a05_n1), 1e-45);
    EXPECT_REL(orthogonality_constant(2, p), num(oracle::orth_const_q05_a05_n2), 1e-45);
    EXPECT_REL(orthogonality_constant(3, p), num(oracle::orth_const_q05_a05_n3), 1e-45);
}

// Infinite products vs. long finite products.
TEST(OrthogonalityConstant, TwoPathProducts) {
    const R q = num("0.6");
    const R q2 = q * q;
    const R alpha = num("0.3");
    const R shift = real_pow(q, R(R(2) * alpha + R(2)));
    auto finite = [&](const R& a) { return q_pochhammer(a, q2, 600); };
    const R direct = R(2) * (R(1) - q) * finite(R(-q)) * finite(R(-q)) * finite(q2) /
                     (finite(R(-q / shift)) * finite(R(-shift * q)) * finite(shift));
    EXPECT_REL(orthogonality_constant(0, QParams<R>::make(q, alpha)), direct, 1e-45);
}

TEST(Orthogonality, OppositeParityIsExactlyZero) {
    const auto p = QParams<R>::make(half, R(0));
    const auto r = orthogonality_check(0, 1, p, default_lattice(half), 1e-12);
    EXPECT_EQ(r.lhs, R(0));
    EXPECT_TRUE(r.pass);
}

TEST(Orthogonality, SameParityOffDiagonalSmall) {
    const auto p = QParams<R>::make(half, half);
    const auto r = orthogonality_check(1, 3, p, default_lattice(half), 1e-12);
    EXPECT_TRUE(r.pass);
    EXPECT_LT(r.rel_residual, R(1e-40));
}

TEST(Orthogonality, DiagonalExamples) {
    const auto r0 = orthogonality_check(0, 0, QParams<R>::make(half, R(0)), default_lattice(half), 1e-12);
    EXPECT_TRUE(r0.pass);
    EXPECT_REL(r0.rhs, R(2) * half * half, 1e-45);
    const auto r3 = orthogonality_check(3, 3, QParams<R>::make(half, half), default_lattice(half), 1e-10);
    EXPECT_TRUE(r3.pass);
    EXPECT_LT(r3.rel_residual, R(1e-10));
}

TEST(Orthogonality, LatticeRefinementStable) {
    const auto p = QParams<R>::make(half, half);
    const auto lat = default_lattice(half);
    const auto a = orthogonality_check(2, 2, p, lat, 1e-10);
    const auto b = orthogonality_check(2, 2, p, lat.widened(10), 1e-10);
    EXPECT_LT(abs_value(R(a.lhs - b.lhs)), R(1e-45));
}

TEST(Orthogonality, NarrowLatticeIsTruncationError) {
    const auto p = QParams<R>::make(half, R(0));
    EXPECT_THROW((void)orthogonality_check(1, 1, p, LatticeSpec<R>{half, -4, 4}, 1e-10), truncation_error);
}

TEST(Orthogonality, LatticeBaseMustMatch) {
    const auto p = QParams<R>::make(half, R(0));
    EXPECT_THROW((void)orthogonality_check(1, 1, p, default_lattice(num("0.4")), 1e-10), domain_error);
}

TEST(Orthogonality, DoubleBackend) {
    const auto p = QParams<double>::make(0.5, 0.0);
    const auto r = orthogonality_check(2, 2, p, LatticeSpec<double>{0.5, -60, 200}, 1e-10, Truncation{100000, 1e-30, 1e-12});
    EXPECT_TRUE(r.pass) << r.rel_residual;
}

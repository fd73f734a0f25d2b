#include <random>

#include "../oracles/oracles.hpp"
#include "../support/common.hpp"

using namespace gdqh;
using testing_support::num;
using testing_support::Q;
using testing_support::R;
using testing_support::rat;

TEST(QPochhammer, EmptyProductIsOne) {
    EXPECT_EQ(q_pochhammer(num("0.7"), num("0.3"), 0), R(1));
    EXPECT_EQ(q_pochhammer(rat("7/3"), rat("1/3"), 0), Q(1));
}

TEST(QPochhammer, FiniteExample) {
    EXPECT_REL(q_pochhammer(num("0.5"), num("0.5"), 2), num("0.375"), 1e-48);
    EXPECT_EQ(q_pochhammer(rat("1/2"), rat("1/2"), 2), rat("3/8"));
}

TEST(QPochhammer, InfiniteMatchesOracle) {
    EXPECT_REL(q_pochhammer(num("-1"), num("0.5"), infinity), num(oracle::poch_minus1_half_inf), 1e-45);
    EXPECT_REL(q_pochhammer(num("0.5"), num("0.5"), infinity), num(oracle::poch_half_half_inf), 1e-45);
}

TEST(QPochhammer, InfiniteReportsTermsAndTail) {
    const auto v = q_pochhammer_product(num("0.5"), num("0.5"), Truncation{});
    EXPECT_GT(v.terms_used, 150U);
    EXPECT_LT(v.tail_estimate, R(1e-59));
}

TEST(QPochhammer, InfiniteHitsTermCap) {
    Truncation t;
    t.max_terms = 10;
    EXPECT_THROW((void)q_pochhammer(num("0.5"), num("0.99"), infinity, t), divergence_error);
}

TEST(QPochhammer, RejectsBadQ) {
    EXPECT_THROW((void)q_pochhammer(num("0.5"), num("1"), 3), domain_error);
    EXPECT_THROW((void)q_pochhammer(num("0.5"), num("-0.2"), 3), domain_error);
    try {
        (void)q_pochhammer(num("0.5"), num("1.5"), 3);
        FAIL();
    } catch (const domain_error& e) {
        EXPECT_STREQ(e.what(), "q out of range (0,1)");
    }
}

TEST(QPochhammer, RecursionConsistencyProperty) {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> da(-3.0, 3.0);
    std::uniform_real_distribution<double> dq(0.05, 0.95);
    for (int trial = 0; trial < 50; ++trial) {
        const R a(da(gen));
        const R q(dq(gen));
        for (std::size_t n = 1; n <= 15; ++n) {
            EXPECT_REL(q_pochhammer(a, q, n), R(R(1) - a) * q_pochhammer(R(a * q), q, n - 1), 1e-45);
        }
    }
}

// (a;q)_{n-k} = (a;q)_n / (a^{-1} q^{1-n};q)_k (-q/a)^k q^{C(k,2) - nk}
TEST(QPochhammer, ReversalIdentityProperty) {
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> da(0.2, 2.5);
    std::uniform_real_distribution<double> dq(0.1, 0.9);
    for (int trial = 0; trial < 20; ++trial) {
        const R a(da(gen));
        const R q(dq(gen));
        for (std::size_t n = 0; n <= 20; ++n) {
            for (std::size_t k = 0; k <= n; ++k) {
                const long long nn = static_cast<long long>(n);
                const long long kk = static_cast<long long>(k);
                const R rhs = q_pochhammer(a, q, n) / q_pochhammer(R(ipow(q, 1 - nn) / a), q, k) *
                              ipow(R(-q / a), kk) * ipow(q, binom2(kk) - nn * kk);
                EXPECT_REL(q_pochhammer(a, q, n - k), rhs, 1e-40);
            }
        }
    }
}

TEST(QNumber, Examples) {
    EXPECT_EQ(q_number(0, num("0.5")), R(0));
    EXPECT_REL(q_number(3, num("0.5")), num("1.75"), 1e-48);
    EXPECT_REL(q_factorial(3, num("0.5")), num("2.625"), 1e-48);
    EXPECT_EQ(q_factorial(3, rat("1/2")), rat("21/8"));
    EXPECT_EQ(q_factorial(0, rat("1/2")), Q(1));
}

TEST(QNumber, TendsToNAsQToOne) {
    EXPECT_NEAR(static_cast<double>(q_number(7, num("0.999999"))), 7.0, 1e-4);
}

TEST(Theta, Parity) {
    static_assert(theta(0) == 1);
    EXPECT_EQ(theta(3), 0);
    EXPECT_EQ(theta(2), 1);
}

TEST(GenShiftedFactorial, Examples) {
    const auto p = QParams<R>::make(num("0.5"), R(0));
    EXPECT_REL(gen_q_shifted_factorial(1, p), num("0.75"), 1e-48);
    EXPECT_REL(gen_q_shifted_factorial(2, p), num("0.5625"), 1e-48);
    EXPECT_REL(gen_q_shifted_factorial(2, p, FactorialMethod::closed_form), num("0.5625"), 1e-48);
}

TEST(GenShiftedFactorial, MinusHalfReducesToPlainFactorial) {
    const auto p = QParams<R>::make(num("0.37"), num("-0.5"));
    for (std::size_t n = 0; n <= 12; ++n) {
        EXPECT_REL(gen_q_shifted_factorial(n, p), q_pochhammer(p.q, p.q, n), 1e-45);
    }
}

TEST(GenShiftedFactorial, RecursionEqualsClosedFormOnGrid) {
    for (const char* q : {"0.1", "0.3", "0.5", "0.7", "0.9"}) {
        for (const char* a : {"-0.9", "-0.4", "0", "0.7", "2", "5.5"}) {
            const auto p = QParams<R>::make(num(q), num(a));
            for (std::size_t n = 0; n <= 40; ++n) {
                EXPECT_REL(gen_q_shifted_factorial(n, p, FactorialMethod::recursion),
                           gen_q_shifted_factorial(n, p, FactorialMethod::closed_form), 1e-40)
                    << "q=" << q << " alpha=" << a << " n=" << n;
            }
        }
    }
}

TEST(GenShiftedFactorial, ExactBackendIntegralAlpha) {
    const auto p = QParams<Q>::make(rat("1/3"), Q(2));
    for (std::size_t n = 0; n <= 10; ++n) {
        EXPECT_EQ(gen_q_shifted_factorial(n, p, FactorialMethod::recursion),
                  gen_q_shifted_factorial(n, p, FactorialMethod::closed_form));
    }
}

TEST(GenShiftedFactorial, ExactBackendRefusesNonIntegralPower) {
    const auto p = QParams<Q>::make(rat("1/3"), rat("1/4"));
    EXPECT_THROW((void)gen_q_shifted_factorial(2, p), exact_backend_error);
}

// [n]_{q,-1/2}! equals (1-q)^{-n}(q;q)_n when built from its recursion; the
// variant (1-q)^{n}(q;q)_n does not hold for n >= 1.
TEST(GenQFactorial, MinusHalfFollowsRecursion) {
    const R q = num("0.6");
    const auto p = QParams<R>::make(q, num("-0.5"));
    for (std::size_t n = 0; n <= 10; ++n) {
        const long long nn = static_cast<long long>(n);
        const R recursion = gen_q_factorial(n, p);
        EXPECT_REL(recursion, ipow(R(1 - q), -nn) * q_pochhammer(q, q, n), 1e-45);
        if (n > 0) {
            EXPECT_FALSE(testing_support::rel_close(recursion, R(ipow(R(1 - q), nn) * q_pochhammer(q, q, n)), 1e-3));
        }
    }
}

TEST(GenQFactorial, RelatesToShiftedFactorial) {
    const auto p = QParams<R>::make(num("0.45"), num("0.8"));
    for (std::size_t n = 0; n <= 15; ++n) {
        EXPECT_REL(gen_q_factorial(n, p) * ipow(R(1 - p.q), static_cast<long long>(n)), gen_q_shifted_factorial(n, p),
                   1e-45);
    }
}

TEST(Hahn, Examples) {
    const R x = num("1.3");
    const R q = num("0.4");
    EXPECT_REL(hahn_add_power(x, R(0), q, 5), ipow(x, 5), 1e-48);
    EXPECT_EQ(hahn_add_power(x, num("2"), q, 0), R(1));
    EXPECT_REL(hahn_add_power(R(1), R(1), num("0.5"), 2), R(3), 1e-48);
    EXPECT_EQ(hahn_add_power(Q(1), Q(1), rat("1/2"), 2, HahnForm::product), Q(3));
}

TEST(Hahn, SumEqualsProductProperty) {
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> dx(-2.0, 2.0);
    std::uniform_real_distribution<double> dq(0.1, 0.9);
    for (int trial = 0; trial < 20; ++trial) {
        const R x(dx(gen));
        const R y(dx(gen));
        const R q(dq(gen));
        for (std::size_t n = 0; n <= 30; ++n) {
            EXPECT_REL(hahn_add_power(x, y, q, n, HahnForm::sum), hahn_add_power(x, y, q, n, HahnForm::product),
                       1e-35);
        }
    }
}

TEST(Hahn, SumEqualsProductExact) {
    for (std::size_t n = 0; n <= 12; ++n) {
        EXPECT_EQ(hahn_sub_power(rat("3/7"), rat("5/2"), rat("2/5"), n, HahnForm::sum),
                  hahn_sub_power(rat("3/7"), rat("5/2"), rat("2/5"), n, HahnForm::product));
    }
}

TEST(MixedSub, Examples) {
    const R a = num("0.8");
    const R b = num("-0.35");
    const R q = num("0.6");
    EXPECT_EQ(mixed_sub_power(a, b, q, 0), R(1));
    EXPECT_REL(mixed_sub_power(a, b, q, 1), R(a - b), 1e-48);
    EXPECT_REL(mixed_sub_power(a, R(0), q, 6), ipow(a, 6), 1e-48);
    EXPECT_EQ(mixed_sub_power(rat("4/5"), rat("1/3"), rat("3/5"), 1), rat("7/15"));
}

TEST(Scalar, IntegerPowerPole) {
    EXPECT_THROW((void)ipow(R(0), -2), pole_error);
    EXPECT_EQ(ipow(R(0), 0), R(1));
    EXPECT_EQ(ipow(rat("2/3"), -2), rat("9/4"));
}

TEST(Scalar, RealPowerDomain) {
    EXPECT_THROW((void)real_pow(num("-0.5"), num("0.5")), domain_error);
    EXPECT_REL(real_pow(num("0.25"), num("0.5")), num("0.5"), 1e-48);
    EXPECT_EQ(real_pow(rat("1/2"), Q(3)), rat("1/8"));
}

TEST(Scalar, QParamsValidation) {
    EXPECT_THROW((void)QParams<R>::make(num("0.5"), num("-1")), domain_error);
    EXPECT_THROW((void)QParams<R>::make(num("0"), num("0")), domain_error);
    EXPECT_NO_THROW((void)QParams<R>::make(num("0.5"), num("-0.99")));
}

TEST(Scalar, TruncationValidation) {
    Truncation t;
    t.tail_tol = 0;
    EXPECT_THROW(t.validate(), domain_error);
    t = Truncation{};
    t.max_terms = 0;
    EXPECT_THROW(t.validate(), domain_error);
}

TEST(Scalar, ExactParsing) {
    EXPECT_EQ(rat("0.125"), Q(1) / Q(8));
    EXPECT_EQ(rat("-3/12"), Q(-1) / Q(4));
    EXPECT_EQ(rat("2.5e-1"), Q(1) / Q(4));
}

TEST(Scalar, CompensatedSumRecoversSmallTerms) {
    compensated_sum<double> s;
    s += 1.0;
    for (int i = 0; i < 10; ++i) {
        s += 1e-17;
    }
    s += -1.0;
    EXPECT_NEAR(s.value(), 1e-16, 1e-30);
}

TEST(Scalar, DoubleBackendWorks) {
    EXPECT_NEAR(q_pochhammer(-1.0, 0.5, infinity), 4.768462058062743, 1e-14);
    EXPECT_NEAR(gen_q_shifted_factorial(2, QParams<double>::make(0.5, 0.0)), 0.5625, 1e-15);
}

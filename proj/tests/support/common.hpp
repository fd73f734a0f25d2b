#pragma once

#include <string>

#include <gtest/gtest.h>

#include <gdqh/gdqh.hpp>

namespace testing_support {

using R = gdqh::mp_real;
using Q = gdqh::exact_rational;

// Runs before any namespace-scope R in a test file is constructed.
inline const bool working_precision_set = (R::default_precision(50), true);

inline R num(const char* text) { return gdqh::parse_scalar<R>(text); }
inline Q rat(const char* text) { return gdqh::parse_scalar<Q>(text); }

/// |a - b| <= tol * max(1, |a|, |b|)
template <class T>
::testing::AssertionResult rel_close(const T& a, const T& b, double tol) {
    using gdqh::abs_value;
    using gdqh::max_value;
    const T denom = max_value(T(1), max_value(abs_value(a), abs_value(b)));
    const T rel = abs_value(T(a - b)) / denom;
    if (!(T(tol) < rel)) {
        return ::testing::AssertionSuccess();
    }
    return ::testing::AssertionFailure() << gdqh::format_scientific(a, 30) << " vs " << gdqh::format_scientific(b, 30)
                                         << " (rel " << gdqh::format_scientific(rel, 4) << " > " << tol << ")";
}

} // namespace testing_support

#define EXPECT_REL(a, b, tol) EXPECT_TRUE(::testing_support::rel_close((a), (b), (tol)))

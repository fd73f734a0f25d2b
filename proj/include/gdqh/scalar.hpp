#pragma once

// Scalar-field plumbing shared by every module: field traits, integer and
// real powers, compensated summation, truncation policy and (q, alpha)
// validation. Every algorithm in the library is a template over a scalar
// type T satisfying `Field`.

#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/multiprecision/number.hpp>

#include "errors.hpp"

namespace gdqh {

template <class T>
concept Field = requires(T a, T b) {
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
    { a / b } -> std::convertible_to<T>;
    { -a } -> std::convertible_to<T>;
    { a < b } -> std::convertible_to<bool>;
    { a == b } -> std::convertible_to<bool>;
    T(1);
};

/// Traits describing a scalar backend. The primary template covers
/// floating types (double, Boost.Multiprecision floats). Rational types
/// specialise `exact = true`.
template <class T>
struct field_traits {
    static constexpr bool exact = false;
};

template <class T>
inline constexpr bool is_exact_v = field_traits<T>::exact;

template <Field T>
[[nodiscard]] T abs_value(const T& x) {
    return x < T(0) ? T(-x) : x;
}

template <Field T>
[[nodiscard]] T max_value(const T& a, const T& b) {
    return a < b ? b : a;
}

template <Field T>
[[nodiscard]] bool is_integral_value(const T& x) {
    if constexpr (is_exact_v<T>) {
        return field_traits<T>::is_integer(x);
    } else {
        using std::floor;
        return floor(x) == x;
    }
}

template <Field T>
[[nodiscard]] long long to_integer(const T& x) {
    if constexpr (is_exact_v<T>) {
        return field_traits<T>::to_integer(x);
    } else {
        return static_cast<long long>(x);
    }
}

template <Field T>
[[nodiscard]] bool is_finite_value(const T& x) {
    if constexpr (is_exact_v<T>) {
        return true;
    } else {
        return (boost::math::isfinite)(x);
    }
}

/// x^e for integral e by binary powering; 0^0 = 1, 0^(negative) is a pole.
template <Field T>
[[nodiscard]] T ipow(T base, long long e) {
    if (e < 0) {
        if (base == T(0)) {
            throw pole_error("zero raised to a negative power");
        }
        return T(1) / ipow(base, -e);
    }
    T result(1);
    while (e > 0) {
        if (e & 1) {
            result *= base;
        }
        e >>= 1;
        if (e > 0) {
            base *= base;
        }
    }
    return result;
}

/// base^exponent for a real exponent. Integral exponents use `ipow` and
/// work on every backend; otherwise the float backend evaluates
/// exp(exponent * ln base) and the exact backend refuses.
template <Field T>
[[nodiscard]] T real_pow(const T& base, const T& exponent) {
    if (is_integral_value(exponent)) {
        return ipow(base, to_integer(exponent));
    }
    if constexpr (is_exact_v<T>) {
        throw exact_backend_error("exact backend cannot raise to a non-integral exponent");
    } else {
        if (base < T(0)) {
            throw domain_error("real power of a negative base with non-integral exponent");
        }
        if (base == T(0)) {
            if (exponent < T(0)) {
                throw pole_error("zero raised to a negative power");
            }
            return T(0);
        }
        using std::exp;
        using std::log;
        return exp(exponent * log(base));
    }
}

[[nodiscard]] constexpr long long binom2(long long k) noexcept {
    return k * (k - 1) / 2;
}

/// Neumaier-compensated accumulator; plain summation on exact backends.
template <Field T>
class compensated_sum {
public:
    compensated_sum() : sum_(0), carry_(0) {}

    void add(const T& x) {
        if constexpr (is_exact_v<T>) {
            sum_ += x;
        } else {
            T t = sum_ + x;
            if (abs_value(sum_) < abs_value(x)) {
                carry_ += (x - t) + sum_;
            } else {
                carry_ += (sum_ - t) + x;
            }
            sum_ = t;
        }
    }

    compensated_sum& operator+=(const T& x) {
        add(x);
        return *this;
    }

    [[nodiscard]] T value() const { return sum_ + carry_; }

private:
    T sum_;
    T carry_;
};

/// Series/product cutoff policy.
struct Truncation {
    std::size_t max_terms = 100000;
    double tail_tol = 1e-60; ///< absolute
    double rel_tol = 1e-25;

    void validate() const {
        if (max_terms < 1) {
            throw domain_error("truncation max_terms must be >= 1");
        }
        if (!(tail_tol > 0.0)) {
            throw domain_error("truncation tail_tol must be > 0");
        }
        if (!(rel_tol > 0.0)) {
            throw domain_error("truncation rel_tol must be > 0");
        }
    }
};

template <Field T>
void require_q(const T& q) {
    if (!(T(0) < q && q < T(1))) {
        throw domain_error("q out of range (0,1)");
    }
}

/// The pair (q, alpha) with 0 < q < 1 and alpha > -1.
template <Field T>
struct QParams {
    T q;
    T alpha;

    static QParams make(T q, T alpha) {
        QParams p{std::move(q), std::move(alpha)};
        p.validate();
        return p;
    }

    void validate() const {
        require_q(q);
        if (!(T(-1) < alpha)) {
            throw domain_error("alpha out of range: requires alpha > -1");
        }
    }
};

/// Parses a decimal literal ("0.3", "-1.5e-2") or, on exact backends, also
/// a fraction ("3/10"). Decimal input is converted exactly on exact backends.
template <Field T>
[[nodiscard]] T parse_scalar(std::string_view text) {
    if constexpr (is_exact_v<T>) {
        return field_traits<T>::parse(text);
    } else if constexpr (std::is_floating_point_v<T>) {
        std::size_t used = 0;
        const std::string s(text);
        double v = std::stod(s, &used);
        if (used != s.size()) {
            throw domain_error("not a number: " + s);
        }
        return static_cast<T>(v);
    } else {
        return T(std::string(text));
    }
}

} // namespace gdqh

#pragma once

// Concrete scalar backends: a runtime-precision MPFR float and an exact GMP
// rational. Link with mpfr and gmp.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cctype>
#include <string>
#include <type_traits>
#include <utility>
#include <string_view>

#include "scalar.hpp"

namespace gdqh {

using mp_real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                              boost::multiprecision::et_off>;
using exact_rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                                     boost::multiprecision::et_off>;

template <>
struct field_traits<exact_rational> {
    static constexpr bool exact = true;

    static bool is_integer(const exact_rational& x) {
        return boost::multiprecision::denominator(x) == 1;
    }

    static long long to_integer(const exact_rational& x) {
        return boost::multiprecision::numerator(x).convert_to<long long>();
    }

    static exact_rational parse(std::string_view text) {
        using boost::multiprecision::mpz_int;
        std::string s(text);
        if (s.find('/') != std::string::npos) {
            return exact_rational(s);
        }
        // decimal with optional exponent, converted exactly
        std::size_t pos = 0;
        bool negative = false;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            negative = s[pos] == '-';
            ++pos;
        }
        mpz_int digits = 0;
        long long scale = 0;
        bool any = false;
        bool after_point = false;
        for (; pos < s.size(); ++pos) {
            const char c = s[pos];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                digits = digits * 10 + (c - '0');
                if (after_point) {
                    --scale;
                }
                any = true;
            } else if (c == '.' && !after_point) {
                after_point = true;
            } else {
                break;
            }
        }
        if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
            scale += std::stoll(s.substr(pos + 1));
            pos = s.size();
        }
        if (!any || pos != s.size()) {
            throw domain_error("not a number: " + s);
        }
        exact_rational value(digits);
        value *= ipow(exact_rational(10), scale);
        return negative ? exact_rational(-value) : value;
    }
};

/// Sets the default MPFR precision (in decimal digits) for mp_real values
/// created on this thread, restoring the previous value on destruction.
class precision_scope {
public:
    explicit precision_scope(unsigned digits10) : saved_(mp_real::default_precision()) {
        mp_real::default_precision(digits10);
    }
    ~precision_scope() { mp_real::default_precision(saved_); }

    precision_scope(const precision_scope&) = delete;
    precision_scope& operator=(const precision_scope&) = delete;

private:
    unsigned saved_;
};

/// Copies x at the current default precision (no-op for fixed-precision T).
template <Field T>
[[nodiscard]] T widen(const T& x) {
    if constexpr (std::is_same_v<T, mp_real>) {
        T r(x);
        r.precision(mp_real::default_precision());
        return r;
    } else {
        return x;
    }
}

/// Evaluates fn() with `extra` additional decimal digits when T has runtime
/// precision; fn is responsible for widening its inputs. fn returns T or a
/// std::pair<T, T>, rounded back to the caller's precision.
template <Field T, class Fn>
[[nodiscard]] auto with_guard_digits(unsigned extra, Fn&& fn) {
    if constexpr (std::is_same_v<T, mp_real>) {
        const unsigned base = mp_real::default_precision();
        auto result = [&] {
            const precision_scope scope(base + extra);
            return fn();
        }();
        if constexpr (std::is_same_v<decltype(result), T>) {
            result.precision(base);
        } else {
            result.first.precision(base);
            result.second.precision(base);
        }
        return result;
    } else {
        return fn();
    }
}

/// Formats a float value in scientific notation with `digits` significant
/// digits.
template <Field T>
[[nodiscard]] std::string format_scientific(const T& x, unsigned digits) {
    if constexpr (is_exact_v<T>) {
        return x.str();
    } else if constexpr (std::is_floating_point_v<T>) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*e", static_cast<int>(digits > 0 ? digits - 1 : 0),
                      static_cast<double>(x));
        return buf;
    } else {
        return x.str(static_cast<std::streamsize>(digits > 0 ? digits - 1 : 0),
                     std::ios_base::scientific);
    }
}

} // namespace gdqh

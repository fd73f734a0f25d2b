#pragma once

// q-calculus primitives: q-shifted factorials (finite and infinite),
// q-numbers and q-factorials, the parity-weighted generalized q-shifted
// factorials (q;q)_{n,alpha}, and Hahn q-addition powers.

#include <cstddef>
#include <string>

#include "scalar.hpp"

namespace gdqh {

struct infinity_t {
    explicit constexpr infinity_t() = default;
};
inline constexpr infinity_t infinity{};

template <Field T>
struct ProductValue {
    T value;
    std::size_t terms_used = 0;
    T tail_estimate; ///< |log of the omitted factors|, approximately
};

/// (a;q)_n = prod_{k=0}^{n-1} (1 - a q^k).
template <Field T>
[[nodiscard]] T q_pochhammer(const T& a, const T& q, std::size_t n) {
    require_q(q);
    T result(1);
    T aqk = a;
    for (std::size_t k = 0; k < n; ++k) {
        result *= T(1) - aqk;
        aqk *= q;
    }
    return result;
}

/// (a;q)_inf truncated once the next factor differs from 1 by less than
/// trunc.tail_tol. Throws divergence_error if that needs more than
/// trunc.max_terms factors.
template <Field T>
[[nodiscard]] ProductValue<T> q_pochhammer_product(const T& a, const T& q, const Truncation& trunc) {
    require_q(q);
    trunc.validate();
    const T tol(trunc.tail_tol);
    T result(1);
    T aqk = a;
    std::size_t k = 0;
    while (!(abs_value(aqk) < tol)) {
        if (k >= trunc.max_terms) {
            throw divergence_error("infinite q-product did not reach tail_tol within max_terms=" +
                                   std::to_string(trunc.max_terms));
        }
        result *= T(1) - aqk;
        aqk *= q;
        ++k;
    }
    // omitted factors contribute about sum_j |a q^{k+j}| = |a q^k| / (1-q)
    return {result, k, abs_value(aqk) / (T(1) - q)};
}

template <Field T>
[[nodiscard]] T q_pochhammer(const T& a, const T& q, infinity_t, const Truncation& trunc = {}) {
    return q_pochhammer_product(a, q, trunc).value;
}

/// [r]_q = (1 - q^r)/(1 - q) for a real (possibly non-integral) r.
template <Field T>
[[nodiscard]] T q_number_real(const T& r, const T& q) {
    require_q(q);
    return (T(1) - real_pow(q, r)) / (T(1) - q);
}

/// [n]_q = (1 - q^n)/(1 - q).
template <Field T>
[[nodiscard]] T q_number(long long n, const T& q) {
    require_q(q);
    return (T(1) - ipow(q, n)) / (T(1) - q);
}

/// n!_q = [1]_q [2]_q ... [n]_q, 0!_q = 1.
template <Field T>
[[nodiscard]] T q_factorial(std::size_t n, const T& q) {
    T result(1);
    for (std::size_t k = 1; k <= n; ++k) {
        result *= q_number(static_cast<long long>(k), q);
    }
    return result;
}

/// 1 for even n, 0 for odd n.
[[nodiscard]] constexpr int theta(std::size_t n) noexcept {
    return n % 2 == 0 ? 1 : 0;
}

enum class FactorialMethod { recursion, closed_form };

/// (Q;Q)_{n,alpha} in base Q. The recursion is
/// (Q;Q)_{n+1,alpha} = (1 - Q^{n+1+theta_n(2alpha+1)}) (Q;Q)_{n,alpha};
/// the closed form splits by parity into (Q^2;Q^2)_m (Q^{2alpha+2};Q^2)_{m or m+1}.
template <Field T>
[[nodiscard]] T gen_q_shifted_factorial(std::size_t n, const T& base, const T& alpha,
                                        FactorialMethod method = FactorialMethod::recursion) {
    require_q(base);
    if (method == FactorialMethod::closed_form) {
        const std::size_t m = n / 2;
        const T base2 = base * base;
        const T shifted = real_pow(base, T(2) * alpha + T(2));
        const std::size_t upper = n % 2 == 0 ? m : m + 1;
        return q_pochhammer(base2, base2, m) * q_pochhammer(shifted, base2, upper);
    }
    T result(1);
    const T odd_shift = T(2) * alpha + T(1);
    for (std::size_t j = 0; j < n; ++j) {
        const T exponent = theta(j) ? T(j + 1) + odd_shift : T(j + 1);
        result *= T(1) - real_pow(base, exponent);
    }
    return result;
}

template <Field T>
[[nodiscard]] T gen_q_shifted_factorial(std::size_t n, const QParams<T>& p,
                                        FactorialMethod method = FactorialMethod::recursion) {
    return gen_q_shifted_factorial(n, p.q, p.alpha, method);
}

/// [n]_{q,alpha}! from [n+1]_{q,alpha}! = [n+1+theta_n(2alpha+1)]_q [n]_{q,alpha}!.
template <Field T>
[[nodiscard]] T gen_q_factorial(std::size_t n, const QParams<T>& p) {
    T result(1);
    const T odd_shift = T(2) * p.alpha + T(1);
    for (std::size_t j = 0; j < n; ++j) {
        const T r = theta(j) ? T(j + 1) + odd_shift : T(j + 1);
        result *= q_number_real(r, p.q);
    }
    return result;
}

enum class HahnForm { sum, product };

/// (x (+)_q y)^n = (x+y)(x+qy)...(x+q^{n-1}y), equivalently
/// (q;q)_n sum_k q^{k(k-1)/2} x^{n-k} y^k / ((q;q)_k (q;q)_{n-k}).
template <Field T>
[[nodiscard]] T hahn_add_power(const T& x, const T& y, const T& q, std::size_t n,
                               HahnForm form = HahnForm::sum) {
    require_q(q);
    if (form == HahnForm::product) {
        T result(1);
        T qky = y;
        for (std::size_t k = 0; k < n; ++k) {
            result *= x + qky;
            qky *= q;
        }
        return result;
    }
    const T qq_n = q_pochhammer(q, q, n);
    compensated_sum<T> sum;
    for (std::size_t k = 0; k <= n; ++k) {
        const T coeff = qq_n / (q_pochhammer(q, q, k) * q_pochhammer(q, q, n - k));
        sum += coeff * ipow(q, binom2(static_cast<long long>(k))) *
               ipow(x, static_cast<long long>(n - k)) * ipow(y, static_cast<long long>(k));
    }
    return sum.value();
}

/// (x (-)_q y)^n = (x (+)_q (-y))^n.
template <Field T>
[[nodiscard]] T hahn_sub_power(const T& x, const T& y, const T& q, std::size_t n,
                               HahnForm form = HahnForm::sum) {
    return hahn_add_power(x, T(-y), q, n, form);
}

/// (a (-)_{q,q^2} b)^n = n!_q sum_k (-1)^k q^{k(k-1)} a^{n-k} b^k / ((n-k)!_q k!_{q^2}).
template <Field T>
[[nodiscard]] T mixed_sub_power(const T& a, const T& b, const T& q, std::size_t n) {
    require_q(q);
    const T q2 = q * q;
    const T nq = q_factorial(n, q);
    compensated_sum<T> sum;
    for (std::size_t k = 0; k <= n; ++k) {
        const long long kk = static_cast<long long>(k);
        T term = ipow(q, kk * (kk - 1)) * ipow(a, static_cast<long long>(n - k)) * ipow(b, kk) /
                 (q_factorial(n - k, q) * q_factorial(k, q2));
        sum += k % 2 == 0 ? term : T(-term);
    }
    return nq * sum.value();
}

} // namespace gdqh

#pragma once

// Basic hypergeometric series rPhis, Euler's q-exponentials and their
// parity-weighted generalisations, Jackson's second q-Bessel function and
// the generalized q-Cosine / q-Sine.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qcore.hpp"
#include "scalar.hpp"

namespace gdqh {

template <Field T>
struct SeriesValue {
    T value;
    std::size_t terms_used = 0;
    T tail_estimate;
};

/// rPhis(a_1..a_r; b_1..b_s; q, z).
template <Field T>
struct PhiSpec {
    std::vector<T> upper;
    std::vector<T> lower;
    T q;
    T z;
};

namespace detail {

// Relative slack for recognising a == q^{-n} in float arithmetic.
inline constexpr double termination_slack = 1e-12;

/// Smallest n <= cap with a q^n == 1 (exactly, or within termination_slack
/// on float backends).
template <Field T>
std::optional<std::size_t> q_power_index(const T& a, const T& q, std::size_t cap) {
    T aqn = a;
    const T slack(termination_slack);
    for (std::size_t n = 0; n <= cap; ++n) {
        if constexpr (is_exact_v<T>) {
            if (aqn == T(1)) {
                return n;
            }
        } else {
            if (abs_value(T(aqn - T(1))) < slack) {
                return n;
            }
        }
        // |a q^n| only shrinks from here on
        if (abs_value(aqn) < T(0.5)) {
            return std::nullopt;
        }
        aqn *= q;
    }
    return std::nullopt;
}

/// Sums 1 + t_1 + t_2 + ... where t_{k+1} = t_k * ratio(k). Stops once the
/// geometric bound on the tail, taken from the larger of the next two
/// ratios, is below trunc.tail_tol.
template <Field T, class Ratio>
SeriesValue<T> sum_by_ratio(Ratio&& ratio, const Truncation& trunc, const char* what) {
    trunc.validate();
    const T tol(trunc.tail_tol);
    compensated_sum<T> sum;
    T term(1);
    T r0 = ratio(std::size_t{0});
    T r1 = ratio(std::size_t{1});
    for (std::size_t k = 0;; ++k) {
        sum += term;
        const T next = term * r0;
        const T r2 = ratio(k + 2);
        const T rho = max_value(abs_value(r1), abs_value(r2));
        if (next == T(0)) {
            return {sum.value(), k + 1, T(0)};
        }
        if (rho < T(1)) {
            const T estimate = abs_value(next) / (T(1) - rho);
            if (estimate <= tol) {
                return {sum.value(), k + 1, estimate};
            }
        }
        if (k + 1 >= trunc.max_terms) {
            throw divergence_error(std::string(what) + ": tail above tail_tol after max_terms=" +
                                   std::to_string(trunc.max_terms) + " terms");
        }
        term = next;
        r0 = r1;
        r1 = r2;
    }
}

} // namespace detail

/// Evaluates sum_k [(-1)^k q^{k(k-1)/2}]^{1+s-r} (a;q)_k... / (b;q)_k... z^k/(q;q)_k.
/// Terminating series (an upper parameter equal to q^{-n}) are summed over
/// k = 0..n exactly.
template <Field T>
[[nodiscard]] SeriesValue<T> phi_rs(const PhiSpec<T>& spec, const Truncation& trunc = {}) {
    require_q(spec.q);
    trunc.validate();
    const T& q = spec.q;
    const long long r = static_cast<long long>(spec.upper.size());
    const long long s = static_cast<long long>(spec.lower.size());
    const long long twist = 1 + s - r;

    std::optional<std::size_t> stop;
    for (const T& a : spec.upper) {
        if (auto n = detail::q_power_index(a, q, trunc.max_terms)) {
            if (!stop || *n < *stop) {
                stop = n;
            }
        }
    }
    for (std::size_t j = 0; j < spec.lower.size(); ++j) {
        if (auto m = detail::q_power_index(spec.lower[j], q, trunc.max_terms)) {
            if (!stop || *m < *stop) {
                throw pole_error("lower parameter b" + std::to_string(j + 1) + " = q^-" +
                                 std::to_string(*m) + " makes (b;q)_k vanish before the series terminates");
            }
        }
    }
    if (!stop) {
        if (twist < 0) {
            throw divergence_error("non-terminating rPhis with r > s+1 diverges");
        }
        if (twist == 0 && !(abs_value(spec.z) < T(1))) {
            throw divergence_error("non-terminating rPhis with r = s+1 requires |z| < 1");
        }
    }

    auto ratio = [&](std::size_t k) {
        const T qk = ipow(q, static_cast<long long>(k));
        T value = spec.z / (T(1) - qk * q);
        for (const T& a : spec.upper) {
            value *= T(1) - a * qk;
        }
        for (const T& b : spec.lower) {
            value /= T(1) - b * qk;
        }
        if (twist != 0) {
            value *= ipow(T(-qk), twist);
        }
        return value;
    };

    if (stop) {
        compensated_sum<T> sum;
        T term(1);
        for (std::size_t k = 0; k <= *stop; ++k) {
            sum += term;
            if (k < *stop) {
                term *= ratio(k);
            }
        }
        return {sum.value(), *stop + 1, T(0)};
    }
    return detail::sum_by_ratio<T>(ratio, trunc, "rPhis");
}

/// E_q(x) = sum q^{k(k-1)/2} x^k / (q;q)_k.
template <Field T>
[[nodiscard]] T euler_E(const T& x, const T& q, const Truncation& trunc = {}) {
    require_q(q);
    auto ratio = [&](std::size_t k) {
        const T qk = ipow(q, static_cast<long long>(k));
        return qk * x / (T(1) - qk * q);
    };
    return detail::sum_by_ratio<T>(ratio, trunc, "E_q").value;
}

/// E_q(x) = (-x;q)_inf.
template <Field T>
[[nodiscard]] T euler_E_product(const T& x, const T& q, const Truncation& trunc = {}) {
    return q_pochhammer(T(-x), q, infinity, trunc);
}

/// e_q(x) = sum x^k / (q;q)_k, |x| < 1.
template <Field T>
[[nodiscard]] T euler_e(const T& x, const T& q, const Truncation& trunc = {}) {
    require_q(q);
    if (!(abs_value(x) < T(1))) {
        throw domain_error("e_q(x) requires |x| < 1");
    }
    auto ratio = [&](std::size_t k) { return x / (T(1) - ipow(q, static_cast<long long>(k + 1))); };
    return detail::sum_by_ratio<T>(ratio, trunc, "e_q").value;
}

/// e_q(x) = 1/(x;q)_inf, |x| < 1.
template <Field T>
[[nodiscard]] T euler_e_product(const T& x, const T& q, const Truncation& trunc = {}) {
    if (!(abs_value(x) < T(1))) {
        throw domain_error("e_q(x) requires |x| < 1");
    }
    return T(1) / q_pochhammer(x, q, infinity, trunc);
}

namespace detail {

// (Q;Q)_{k+1,alpha} / (Q;Q)_{k,alpha} with Q^{2alpha+1} precomputed.
template <Field T>
T gen_factorial_step(std::size_t k, const T& base, const T& base_odd_shift) {
    const T qk1 = ipow(base, static_cast<long long>(k + 1));
    return T(1) - (theta(k) ? qk1 * base_odd_shift : qk1);
}

} // namespace detail

/// E~_{q^m,alpha}(x) = sum q^{m k(k-1)/2} x^k / (q^m;q^m)_{k,alpha}.
template <Field T>
[[nodiscard]] SeriesValue<T> gen_E_series(const T& x, const QParams<T>& p, unsigned m,
                                          const Truncation& trunc = {}) {
    p.validate();
    if (m < 1) {
        throw domain_error("generalized q-exponential requires m >= 1");
    }
    const T base = ipow(p.q, static_cast<long long>(m));
    const T odd_shift = real_pow(base, T(T(2) * p.alpha + T(1)));
    auto ratio = [&](std::size_t k) {
        return ipow(base, static_cast<long long>(k)) * x / detail::gen_factorial_step(k, base, odd_shift);
    };
    return detail::sum_by_ratio<T>(ratio, trunc, "E~_{q^m,alpha}");
}

template <Field T>
[[nodiscard]] T gen_E(const T& x, const QParams<T>& p, unsigned m, const Truncation& trunc = {}) {
    return gen_E_series(x, p, m, trunc).value;
}

/// e~_{q^m,alpha}(x) = sum x^k / (q^m;q^m)_{k,alpha}, |x| < 1.
template <Field T>
[[nodiscard]] SeriesValue<T> gen_e_series(const T& x, const QParams<T>& p, unsigned m,
                                          const Truncation& trunc = {}) {
    p.validate();
    if (m < 1) {
        throw domain_error("generalized q-exponential requires m >= 1");
    }
    if (!(abs_value(x) < T(1))) {
        throw domain_error("e~_{q^m,alpha}(x) requires |x| < 1");
    }
    const T base = ipow(p.q, static_cast<long long>(m));
    const T odd_shift = real_pow(base, T(T(2) * p.alpha + T(1)));
    auto ratio = [&](std::size_t k) { return x / detail::gen_factorial_step(k, base, odd_shift); };
    return detail::sum_by_ratio<T>(ratio, trunc, "e~_{q^m,alpha}");
}

template <Field T>
[[nodiscard]] T gen_e(const T& x, const QParams<T>& p, unsigned m, const Truncation& trunc = {}) {
    return gen_e_series(x, p, m, trunc).value;
}

/// Jackson's second q-Bessel function
/// J_nu^(2)(z;q) = (q^{nu+1};q)_inf/(q;q)_inf (z/2)^nu 0Phi1(-; q^{nu+1}; q, -q^{nu+1} z^2/4).
template <Field T>
[[nodiscard]] T q_bessel2(const T& nu, const T& z, const T& q, const Truncation& trunc = {}) {
    require_q(q);
    if (!(T(-1) < nu)) {
        throw domain_error("q-Bessel J^(2) requires nu > -1");
    }
    if (z < T(0) && !is_integral_value(nu)) {
        throw domain_error("q-Bessel J^(2) with non-integral nu requires z >= 0");
    }
    const T qnu1 = real_pow(q, T(nu + T(1)));
    const T prefactor = q_pochhammer(qnu1, q, infinity, trunc) / q_pochhammer(q, q, infinity, trunc);
    const T power = real_pow(T(z / T(2)), nu);
    if (power == T(0)) {
        return T(0);
    }
    PhiSpec<T> spec{{}, {qnu1}, q, T(-qnu1 * z * z / T(4))};
    return prefactor * power * phi_rs(spec, trunc).value;
}

/// Cos_{q,alpha}(x) = sum (-1)^n q^{n(2n-1)} x^{2n} / (q;q)_{2n,alpha}.
template <Field T>
[[nodiscard]] T q_cos_alpha(const T& x, const QParams<T>& p, const Truncation& trunc = {}) {
    p.validate();
    const T& q = p.q;
    const T shift = real_pow(q, T(T(2) * p.alpha + T(2)));
    const T x2 = x * x;
    auto ratio = [&](std::size_t n) {
        const long long nn = static_cast<long long>(n);
        const T q2n2 = ipow(q, 2 * nn + 2);
        return T(-ipow(q, 4 * nn + 1) * x2) / ((T(1) - ipow(q, 2 * nn) * shift) * (T(1) - q2n2));
    };
    return detail::sum_by_ratio<T>(ratio, trunc, "Cos_{q,alpha}").value;
}

/// Sin_{q,alpha}(x) = sum (-1)^n q^{n(2n+1)} x^{2n+1} / (q;q)_{2n+1,alpha}.
template <Field T>
[[nodiscard]] T q_sin_alpha(const T& x, const QParams<T>& p, const Truncation& trunc = {}) {
    p.validate();
    const T& q = p.q;
    const T shift = real_pow(q, T(T(2) * p.alpha + T(2)));
    const T x2 = x * x;
    auto ratio = [&](std::size_t n) {
        const long long nn = static_cast<long long>(n);
        return T(-ipow(q, 4 * nn + 3) * x2) /
               ((T(1) - ipow(q, 2 * nn + 2)) * (T(1) - ipow(q, 2 * nn + 2) * shift));
    };
    return x / (T(1) - shift) * detail::sum_by_ratio<T>(ratio, trunc, "Sin_{q,alpha}").value;
}

/// Cos_{q,alpha}(x) = 0Phi1(-; q^{2alpha+2}; q^2, -q x^2).
template <Field T>
[[nodiscard]] T q_cos_alpha_phi(const T& x, const QParams<T>& p, const Truncation& trunc = {}) {
    p.validate();
    const T& q = p.q;
    PhiSpec<T> spec{{}, {real_pow(q, T(T(2) * p.alpha + T(2)))}, T(q * q), T(-q * x * x)};
    return phi_rs(spec, trunc).value;
}

/// Sin_{q,alpha}(x) = x/(1-q^{2alpha+2}) 0Phi1(-; q^{2alpha+4}; q^2, -q^3 x^2).
template <Field T>
[[nodiscard]] T q_sin_alpha_phi(const T& x, const QParams<T>& p, const Truncation& trunc = {}) {
    p.validate();
    const T& q = p.q;
    const T shift = real_pow(q, T(T(2) * p.alpha + T(2)));
    PhiSpec<T> spec{{}, {T(shift * q * q)}, T(q * q), T(-q * q * q * x * x)};
    return x / (T(1) - shift) * phi_rs(spec, trunc).value;
}

} // namespace gdqh

#pragma once

// Polynomial families: q-Laguerre, Stieltjes-Wigert, discrete q-Hermite II,
// the mu-extension H_n^(mu), Rosenblum's generalized Hermite (q -> 1
// target) and the two-variable generalized discrete q-Hermite II family
// h_{n,alpha}(x,y|q) with its three representations and recursion.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qcore.hpp"
#include "qseries.hpp"
#include "scalar.hpp"

namespace gdqh {

enum class Representation { definition_sum, phi_form, laguerre_form };

enum class LaguerreRep { phi11, phi21 };

[[nodiscard]] inline std::string_view to_string(Representation r) {
    switch (r) {
    case Representation::definition_sum: return "definition_sum";
    case Representation::phi_form: return "phi_form";
    case Representation::laguerre_form: return "laguerre_form";
    }
    return "?";
}

template <Field T>
struct PolyValue {
    T value;
    Representation used = Representation::definition_sum;
    std::size_t terms_used = 0;
};

namespace detail {

/// L_n^{(alpha)}(x;q) given shifted = q^{alpha+1}. Lets callers pass
/// (q^2)^{alpha+1} = q^{2alpha+2} without a half-integral exponent.
template <Field T>
SeriesValue<T> q_laguerre_shifted(std::size_t n, const T& shifted, const T& x, const T& q,
                                  LaguerreRep rep, const Truncation& trunc) {
    const long long nn = static_cast<long long>(n);
    const T qn = ipow(q, nn);
    const T q_minus_n = ipow(q, -nn);
    const T qq_n = q_pochhammer(q, q, n);
    if (rep == LaguerreRep::phi11) {
        PhiSpec<T> spec{{q_minus_n}, {shifted}, q, T(-qn * shifted * x)};
        auto series = phi_rs(spec, trunc);
        series.value *= q_pochhammer(shifted, q, n) / qq_n;
        return series;
    }
    PhiSpec<T> spec{{q_minus_n, T(-x)}, {T(0)}, q, T(qn * shifted)};
    auto series = phi_rs(spec, trunc);
    series.value /= qq_n;
    return series;
}

} // namespace detail

/// q-Laguerre polynomial L_n^{(alpha)}(x;q), alpha > -1.
template <Field T>
[[nodiscard]] T q_laguerre(std::size_t n, const T& alpha, const T& x, const T& q,
                           LaguerreRep rep = LaguerreRep::phi11, const Truncation& trunc = {}) {
    require_q(q);
    if (!(T(-1) < alpha)) {
        throw domain_error("q-Laguerre requires alpha > -1");
    }
    return detail::q_laguerre_shifted(n, real_pow(q, T(alpha + T(1))), x, q, rep, trunc).value;
}

/// Stieltjes-Wigert polynomial S_n(x;q) = 1Phi1(q^{-n}; 0; q, -q^{n+1} x)/(q;q)_n.
template <Field T>
[[nodiscard]] T stieltjes_wigert(std::size_t n, const T& x, const T& q, const Truncation& trunc = {}) {
    require_q(q);
    const long long nn = static_cast<long long>(n);
    PhiSpec<T> spec{{ipow(q, -nn)}, {T(0)}, q, T(-ipow(q, nn + 1) * x)};
    return phi_rs(spec, trunc).value / q_pochhammer(q, q, n);
}

namespace detail {

template <Field T>
PolyValue<T> gdqh2_definition(std::size_t n, const QParams<T>& p, const T& x, const T& y) {
    const T& q = p.q;
    const T q2 = q * q;
    // (q;q)_{j,alpha} for j = 0..n by the recursion
    std::vector<T> gen(n + 1, T(1));
    const T odd_shift = T(T(2) * p.alpha + T(1));
    for (std::size_t j = 0; j < n; ++j) {
        const T exponent = theta(j) ? T(T(j + 1) + odd_shift) : T(j + 1);
        gen[j + 1] = gen[j] * (T(1) - real_pow(q, exponent));
    }
    const long long nn = static_cast<long long>(n);
    compensated_sum<T> sum;
    T q2_k(1); // (q^2;q^2)_k
    for (std::size_t k = 0; 2 * k <= n; ++k) {
        const long long kk = static_cast<long long>(k);
        if (k > 0) {
            q2_k *= T(1) - ipow(q2, kk);
        }
        T term = ipow(q, -2 * nn * kk + kk * (2 * kk + 1)) * ipow(x, nn - 2 * kk) * ipow(y, kk) /
                 (gen[n - 2 * k] * q2_k);
        sum += k % 2 == 0 ? term : T(-term);
    }
    return {q_pochhammer(q, q, n) * sum.value(), Representation::definition_sum, n / 2 + 1};
}

template <Field T>
PolyValue<T> gdqh2_phi(std::size_t n, const QParams<T>& p, const T& x, const T& y,
                       const Truncation& trunc) {
    const T& q = p.q;
    const long long lower_half = static_cast<long long>(n / 2);
    const long long upper_half = static_cast<long long>((n + 1) / 2);
    const T q2alpha = real_pow(q, T(T(2) * p.alpha));
    PhiSpec<T> spec{{ipow(q, -2 * lower_half), T(ipow(q, -2 * upper_half) / q2alpha)},
                    {T(0)},
                    T(q * q),
                    T(-y * q2alpha * ipow(q, 3) / (x * x))};
    auto series = phi_rs(spec, trunc);
    const T prefactor = q_pochhammer(q, q, n) / gen_q_shifted_factorial(n, p) *
                        ipow(x, static_cast<long long>(n));
    return {prefactor * series.value, Representation::phi_form, series.terms_used};
}

template <Field T>
PolyValue<T> gdqh2_laguerre(std::size_t n, const QParams<T>& p, const T& x, const T& y,
                            const Truncation& trunc) {
    const T& q = p.q;
    const T q2 = q * q;
    const std::size_t m = n / 2;
    const long long mm = static_cast<long long>(m);
    const T shift = real_pow(q, T(T(2) * p.alpha + T(2))); // q^{2alpha+2}
    const T arg = x * x / y / (shift / q);                  // x^2 y^-1 q^{-2alpha-1}
    const T neg_y_m = ipow(T(-y), mm);
    if (n % 2 == 0) {
        auto lag = q_laguerre_shifted(m, shift, arg, q2, LaguerreRep::phi11, trunc);
        T value = ipow(q, -mm * (2 * mm - 1)) * q_pochhammer(q, q, n) / q_pochhammer(shift, q2, m) *
                  neg_y_m * lag.value;
        return {value, Representation::laguerre_form, lag.terms_used};
    }
    auto lag = q_laguerre_shifted(m, T(shift * q2), arg, q2, LaguerreRep::phi11, trunc);
    T value = ipow(q, -mm * (2 * mm + 1)) * q_pochhammer(q, q, n) / q_pochhammer(shift, q2, m + 1) * x *
              neg_y_m * lag.value;
    return {value, Representation::laguerre_form, lag.terms_used};
}

} // namespace detail

/// h_{n,alpha}(x,y|q) in the requested representation. phi_form at x = 0
/// and laguerre_form at y = 0 fall back to the definition sum (reported in
/// `used`); laguerre_form with y < 0 throws representation_error.
template <Field T>
[[nodiscard]] PolyValue<T> gdqh2_eval(std::size_t n, const QParams<T>& p, const T& x, const T& y,
                                      Representation rep = Representation::definition_sum,
                                      const Truncation& trunc = {}) {
    p.validate();
    switch (rep) {
    case Representation::definition_sum:
        return detail::gdqh2_definition(n, p, x, y);
    case Representation::phi_form:
        if (x == T(0)) {
            return detail::gdqh2_definition(n, p, x, y);
        }
        return detail::gdqh2_phi(n, p, x, y, trunc);
    case Representation::laguerre_form:
        if (y == T(0)) {
            return detail::gdqh2_definition(n, p, x, y);
        }
        if (y < T(0)) {
            throw representation_error("laguerre_form requires y > 0; use definition_sum");
        }
        return detail::gdqh2_laguerre(n, p, x, y, trunc);
    }
    throw representation_error("unknown representation");
}

template <Field T>
[[nodiscard]] T gdqh2(std::size_t n, const QParams<T>& p, const T& x, const T& y,
                      Representation rep = Representation::definition_sum, const Truncation& trunc = {}) {
    return gdqh2_eval(n, p, x, y, rep, trunc).value;
}

/// (n, h_n, h_{n-1}); seeded as (0, 1, 0).
template <Field T>
struct RecurrenceState {
    std::size_t n = 0;
    T h_n = T(1);
    T h_prev = T(0);
};

/// Advances the three-term recursion
/// (1 - q^{n+1+theta_n(2alpha+1)})/(1 - q^{n+1}) h_{n+1} = x h_n - y q^{-2n+1}(1 - q^n) h_{n-1}.
template <Field T>
[[nodiscard]] RecurrenceState<T> gdqh2_recurrence_step(const RecurrenceState<T>& state, const QParams<T>& p,
                                                       const T& x, const T& y) {
    const T& q = p.q;
    const long long n = static_cast<long long>(state.n);
    const T qn = ipow(q, n);
    const T qn1 = qn * q;
    const T shifted = theta(state.n) ? T(qn1 * real_pow(q, T(T(2) * p.alpha + T(1)))) : qn1;
    const T rhs = x * state.h_n - y * ipow(q, -2 * n + 1) * (T(1) - qn) * state.h_prev;
    return {state.n + 1, (T(1) - qn1) / (T(1) - shifted) * rhs, state.h_n};
}

template <Field T>
[[nodiscard]] T gdqh2_by_recurrence(std::size_t n, const QParams<T>& p, const T& x, const T& y) {
    p.validate();
    RecurrenceState<T> state;
    while (state.n < n) {
        state = gdqh2_recurrence_step(state, p, x, y);
    }
    return state.h_n;
}

/// Discrete q-Hermite II polynomial h_n(x;q) = h_{n,-1/2}(x,1|q).
template <Field T>
[[nodiscard]] T discrete_q_hermite2(std::size_t n, const T& x, const T& q) {
    return gdqh2(n, QParams<T>::make(q, T(T(-1) / T(2))), x, T(1));
}

/// One-variable generalized discrete q-Hermite II h_{n,alpha}(x;q) from its
/// q-Laguerre closed forms in base q^2.
template <Field T>
[[nodiscard]] T gdqh1(std::size_t n, const QParams<T>& p, const T& x, const Truncation& trunc = {}) {
    p.validate();
    const T& q = p.q;
    const T q2 = q * q;
    const std::size_t m = n / 2;
    const long long mm = static_cast<long long>(m);
    const T shift = real_pow(q, T(T(2) * p.alpha + T(2)));
    const T arg = x * x * q / shift;
    const T sign = m % 2 == 0 ? T(1) : T(-1);
    if (n % 2 == 0) {
        return sign * ipow(q, -mm * (2 * mm - 1)) * q_pochhammer(q, q, n) / q_pochhammer(shift, q2, m) *
               detail::q_laguerre_shifted(m, shift, arg, q2, LaguerreRep::phi11, trunc).value;
    }
    return sign * ipow(q, -mm * (2 * mm + 1)) * q_pochhammer(q, q, n) / q_pochhammer(shift, q2, m + 1) * x *
           detail::q_laguerre_shifted(m, T(shift * q2), arg, q2, LaguerreRep::phi11, trunc).value;
}

/// H_n^{(mu)}(x;q): H_{2n} = (-1)^n (q;q)_n L_n^{(mu-1/2)}(x^2;q),
/// H_{2n+1} = (-1)^n (q;q)_n x L_n^{(mu+1/2)}(x^2;q); mu > -1/2.
template <Field T>
[[nodiscard]] T mu_hermite(std::size_t n, const T& mu, const T& x, const T& q, const Truncation& trunc = {}) {
    require_q(q);
    const T half = T(1) / T(2);
    if (!(-half < mu)) {
        throw domain_error("mu-Hermite requires mu > -1/2");
    }
    const std::size_t m = n / 2;
    const T sign = m % 2 == 0 ? T(1) : T(-1);
    const T factor = sign * q_pochhammer(q, q, m);
    if (n % 2 == 0) {
        return factor * q_laguerre(m, T(mu - half), T(x * x), q, LaguerreRep::phi11, trunc);
    }
    return factor * x * q_laguerre(m, T(mu + half), T(x * x), q, LaguerreRep::phi11, trunc);
}

/// Classical Laguerre L_n^{(a)}(x) = sum_k (-1)^k (a+k+1)_{n-k}/((n-k)! k!) x^k.
template <Field T>
[[nodiscard]] T classical_laguerre(std::size_t n, const T& a, const T& x) {
    compensated_sum<T> sum;
    for (std::size_t k = 0; k <= n; ++k) {
        T coeff(1);
        for (std::size_t j = 0; j < n - k; ++j) {
            coeff *= (a + T(k + 1 + j)) / T(j + 1);
        }
        for (std::size_t j = 1; j <= k; ++j) {
            coeff /= T(j);
        }
        const T term = coeff * ipow(x, static_cast<long long>(k));
        sum += k % 2 == 0 ? term : T(-term);
    }
    return sum.value();
}

/// Rosenblum's generalized Hermite polynomial, normalised so that mu = 0
/// gives the physicists' Hermite H_n:
/// h_{2m}^mu = (-1)^m 2^{2m} m! L_m^{(mu-1/2)}(x^2), h_{2m+1}^mu = (-1)^m 2^{2m+1} m! x L_m^{(mu+1/2)}(x^2).
template <Field T>
[[nodiscard]] T rosenblum_hermite(std::size_t n, const T& mu, const T& x) {
    const T half = T(1) / T(2);
    if (!(-half < mu)) {
        throw domain_error("Rosenblum Hermite requires mu > -1/2");
    }
    const std::size_t m = n / 2;
    T factor = ipow(T(2), static_cast<long long>(n));
    for (std::size_t j = 2; j <= m; ++j) {
        factor *= T(j);
    }
    if (m % 2 == 1) {
        factor = -factor;
    }
    if (n % 2 == 0) {
        return factor * classical_laguerre(m, T(mu - half), T(x * x));
    }
    return factor * x * classical_laguerre(m, T(mu + half), T(x * x));
}

enum class Family { q_laguerre, stieltjes_wigert, discrete_q_hermite2, mu_hermite, gdqh2, rosenblum_hermite };

/// A family evaluation request. `alpha` doubles as the q-Laguerre
/// parameter; `mu` is used by the mu-Hermite and Rosenblum families.
/// For q_laguerre, definition_sum selects the 1Phi1 form and phi_form the
/// 2Phi1 form.
template <Field T>
struct PolyEval {
    Family family = Family::gdqh2;
    std::size_t n = 0;
    T q = T(1) / T(2);
    T alpha = T(0);
    T mu = T(0);
    T x = T(0);
    T y = T(1);
    Representation rep = Representation::definition_sum;
};

template <Field T>
[[nodiscard]] PolyValue<T> evaluate(const PolyEval<T>& e, const Truncation& trunc = {}) {
    auto only_definition = [&](std::string_view family) {
        if (e.rep != Representation::definition_sum) {
            throw representation_error(std::string(family) + " supports only definition_sum, not " +
                                       std::string(to_string(e.rep)));
        }
    };
    switch (e.family) {
    case Family::gdqh2:
        return gdqh2_eval(e.n, QParams<T>::make(e.q, e.alpha), e.x, e.y, e.rep, trunc);
    case Family::q_laguerre: {
        if (e.rep == Representation::laguerre_form) {
            throw representation_error("q-Laguerre supports definition_sum (1Phi1) and phi_form (2Phi1)");
        }
        require_q(e.q);
        if (!(T(-1) < e.alpha)) {
            throw domain_error("q-Laguerre requires alpha > -1");
        }
        const auto rep = e.rep == Representation::phi_form ? LaguerreRep::phi21 : LaguerreRep::phi11;
        auto s = detail::q_laguerre_shifted(e.n, real_pow(e.q, T(e.alpha + T(1))), e.x, e.q, rep, trunc);
        return {s.value, e.rep, s.terms_used};
    }
    case Family::stieltjes_wigert:
        only_definition("Stieltjes-Wigert");
        return {stieltjes_wigert(e.n, e.x, e.q, trunc), e.rep, e.n + 1};
    case Family::discrete_q_hermite2:
        only_definition("discrete q-Hermite II");
        return {discrete_q_hermite2(e.n, e.x, e.q), e.rep, e.n / 2 + 1};
    case Family::mu_hermite:
        only_definition("mu-Hermite");
        return {mu_hermite(e.n, e.mu, e.x, e.q, trunc), e.rep, e.n / 2 + 1};
    case Family::rosenblum_hermite:
        only_definition("Rosenblum Hermite");
        return {rosenblum_hermite(e.n, e.mu, e.x), e.rep, e.n / 2 + 1};
    }
    throw representation_error("unknown family");
}

} // namespace gdqh

#pragma once

// Bilateral Jackson q-integral over the real line and the orthogonality
// relation of h_{n,alpha}(x;q) = h_{n,alpha}(x,1|q).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>

#include "polyfam.hpp"
#include "qcore.hpp"
#include "report.hpp"
#include "scalar.hpp"

namespace gdqh {

/// Lattice +-q^k for k in [k_min, k_max]. Large k_max reaches towards 0,
/// very negative k_min reaches far out.
template <Field T>
struct LatticeSpec {
    T q;
    long k_min = -1;
    long k_max = 1;

    void validate() const {
        require_q(q);
        if (!(k_min < 0 && 0 < k_max)) {
            throw domain_error("lattice requires k_min < 0 < k_max");
        }
    }

    [[nodiscard]] LatticeSpec widened(long by) const { return {q, k_min - by, k_max + by}; }
};

/// k_max = ceil(120 / |log10 q|) capped at 4000, k_min = -k_max.
template <Field T>
[[nodiscard]] LatticeSpec<T> default_lattice(const T& q) {
    require_q(q);
    const double lq = std::fabs(std::log10(static_cast<double>(q)));
    const long k = std::min<long>(4000, static_cast<long>(std::ceil(120.0 / lq)));
    return {q, -k, k};
}

template <Field T>
struct JacksonValue {
    T value;
    T tail_near_zero; ///< |contribution| of the k = k_max pair
    T tail_far;       ///< |contribution| of the k = k_min pair
};

/// (1-q) sum_{k=k_min}^{k_max} q^k [f(q^k) + f(-q^k)].
template <Field T, class F>
[[nodiscard]] JacksonValue<T> jackson_bilateral(F&& f, const LatticeSpec<T>& lat) {
    lat.validate();
    const T& q = lat.q;
    compensated_sum<T> sum;
    T near(0);
    T far(0);
    T qk = ipow(q, lat.k_min);
    for (long k = lat.k_min; k <= lat.k_max; ++k) {
        const T plus = f(qk);
        const T minus = f(T(-qk));
        if (!is_finite_value(plus) || !is_finite_value(minus)) {
            std::ostringstream msg;
            msg << "integrand non-finite at x = " << (is_finite_value(plus) ? "-" : "+") << "q^" << k;
            throw evaluation_error(msg.str());
        }
        const T contribution = qk * (plus + minus);
        sum += contribution;
        if (k == lat.k_min) {
            far = abs_value(contribution);
        }
        if (k == lat.k_max) {
            near = abs_value(contribution);
        }
        qk *= q;
    }
    const T scale = T(1) - q;
    return {scale * sum.value(), scale * near, scale * far};
}

/// omega_alpha(x) = 1/(-q^{-2alpha-1} x^2; q^2)_inf.
template <Field T>
[[nodiscard]] T orthogonality_weight(const T& x, const QParams<T>& p, const Truncation& trunc = {}) {
    const T& q = p.q;
    const T c = real_pow(q, T(T(-2) * p.alpha - T(1)));
    return T(1) / q_pochhammer(T(-c * x * x), T(q * q), infinity, trunc);
}

/// 2 q^{-n^2}(1-q)(-q,-q,q^2;q^2)_inf / (-q^{-2alpha-1},-q^{2alpha+3},q^{2alpha+2};q^2)_inf
///   (q;q)_n^2 / (q;q)_{n,alpha}.
template <Field T>
[[nodiscard]] T orthogonality_constant(std::size_t n, const QParams<T>& p, const Truncation& trunc = {}) {
    p.validate();
    const T& q = p.q;
    const T q2 = q * q;
    const T shift = real_pow(q, T(T(2) * p.alpha + T(2))); // q^{2alpha+2}
    auto prod = [&](const T& a) { return q_pochhammer(a, q2, infinity, trunc); };
    const T minus_q = prod(T(-q));
    const T numerator = T(2) * (T(1) - q) * minus_q * minus_q * prod(q2);
    const T denominator = prod(T(-q / shift)) * prod(T(-shift * q)) * prod(shift);
    const long long nn = static_cast<long long>(n);
    const T qq_n = q_pochhammer(q, q, n);
    return ipow(q, -nn * nn) * numerator / denominator * qq_n * qq_n / gen_q_shifted_factorial(n, p);
}

/// Quadrature of h_n h_m omega_alpha |x|^{2alpha+1} against the closed-form
/// constant (zero for n != m). Residuals are normalised by
/// sqrt(c_n c_m); boundary contributions above trunc.tail_tol * sqrt(c_n c_m)
/// raise truncation_error.
template <Field T>
[[nodiscard]] IdentityReport<T> orthogonality_check(std::size_t n, std::size_t m, const QParams<T>& p,
                                                    const LatticeSpec<T>& lat, double tolerance,
                                                    const Truncation& trunc = {}) {
    p.validate();
    if (lat.q != p.q) {
        throw domain_error("lattice base must equal q");
    }
    const T power = T(T(2) * p.alpha + T(1));
    auto integrand = [&](const T& x) {
        const T hn = gdqh2(n, p, x, T(1));
        const T hm = m == n ? hn : gdqh2(m, p, x, T(1));
        return hn * hm * orthogonality_weight(x, p, trunc) * real_pow(abs_value(x), power);
    };
    const auto quad = jackson_bilateral(integrand, lat);
    const T cn = orthogonality_constant(n, p, trunc);
    const T cm = m == n ? cn : orthogonality_constant(m, p, trunc);
    using std::sqrt;
    T scale;
    if constexpr (is_exact_v<T>) {
        scale = m == n ? cn : T(1);
    } else {
        scale = sqrt(cn * cm);
    }
    const T limit = T(trunc.tail_tol) * scale;
    if (limit < quad.tail_near_zero || limit < quad.tail_far) {
        std::ostringstream msg;
        msg << "Jackson lattice [" << lat.k_min << ", " << lat.k_max
            << "] not converged: boundary contributions near 0 = " << static_cast<double>(quad.tail_near_zero)
            << ", far = " << static_cast<double>(quad.tail_far) << ", limit = " << static_cast<double>(limit);
        throw truncation_error(msg.str());
    }
    ParamList<T> params{{"n", T(n)}, {"m", T(m)}, {"q", p.q}, {"alpha", p.alpha},
                        {"k_min", T(lat.k_min)}, {"k_max", T(lat.k_max)}};
    return make_report(IdentityId::orthogonality, std::move(params), quad.value, m == n ? cn : T(0), trunc,
                       tolerance, scale);
}

} // namespace gdqh

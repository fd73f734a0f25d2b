#pragma once

// Verification harness: evaluates both sides of the identities satisfied by
// h_{n,alpha}(x,y|q) and reports residuals.

#include <cmath>
#include <cstddef>
#include <exception>
#include <string>
#include <vector>

#include "multiprecision.hpp"
#include "polyfam.hpp"
#include "qcore.hpp"
#include "qseries.hpp"
#include "report.hpp"
#include "scalar.hpp"

namespace gdqh {

namespace detail {

/// Sums term(0) + term(1) + ... until two successive partial sums have
/// each moved by less than trunc.tail_tol.
template <Field T, class Term>
SeriesValue<T> adaptive_sum(Term&& term, const Truncation& trunc, const char* what) {
    trunc.validate();
    const T tol(trunc.tail_tol);
    compensated_sum<T> sum;
    int quiet = 0;
    for (std::size_t n = 0; n < trunc.max_terms; ++n) {
        const T t = term(n);
        sum += t;
        quiet = abs_value(t) < tol ? quiet + 1 : 0;
        if (quiet == 2) {
            return {sum.value(), n + 1, abs_value(t)};
        }
    }
    throw divergence_error(std::string(what) + ": partial sums still moving after max_terms=" +
                           std::to_string(trunc.max_terms));
}

template <Field T>
ParamList<T> poly_params(std::size_t n, const QParams<T>& p, const T& x, const T& y) {
    return {{"n", T(n)}, {"q", p.q}, {"alpha", p.alpha}, {"x", x}, {"y", y}};
}

/// |y t| < 1 and |y t^2| < 1; returns which of the two is the binding one.
template <Field T>
std::string require_generating_region(const T& t, const T& y) {
    const T yt = abs_value(T(y * t));
    const T yt2 = abs_value(T(y * t * t));
    if (!(yt < T(1)) || !(yt2 < T(1))) {
        throw divergence_error("generating function requires |y t| < 1 and |y t^2| < 1");
    }
    return yt2 < yt ? "binding bound: |y t| < 1" : "binding bound: |y t^2| < 1";
}

/// (xt)^{-alpha} needs xt != 0, and xt > 0 unless alpha is integral.
template <Field T>
void require_bessel_argument(const T& xt, const T& alpha) {
    if (xt == T(0)) {
        throw domain_error("Bessel form requires x t != 0");
    }
    if (xt < T(0) && !is_integral_value(alpha)) {
        throw domain_error("Bessel form with non-integral alpha requires x t > 0");
    }
}

} // namespace detail

/// definition_sum against phi_form or laguerre_form.
template <Field T>
[[nodiscard]] IdentityReport<T> check_representation(std::size_t n, const QParams<T>& p, const T& x, const T& y,
                                                     Representation rep, double tolerance,
                                                     const Truncation& trunc = {}) {
    const auto id = rep == Representation::phi_form ? IdentityId::representation_phi
                                                    : IdentityId::representation_laguerre;
    const T lhs = gdqh2(n, p, x, y, Representation::definition_sum, trunc);
    const auto alt = gdqh2_eval(n, p, x, y, rep, trunc);
    auto report = make_report(id, detail::poly_params(n, p, x, y), lhs, alt.value, trunc, tolerance);
    if (alt.used != rep) {
        report.note = "routed to " + std::string(to_string(alt.used));
    }
    return report;
}

/// Iterated three-term recursion against the definition sum.
template <Field T>
[[nodiscard]] IdentityReport<T> check_recurrence(std::size_t n, const QParams<T>& p, const T& x, const T& y,
                                                 double tolerance, const Truncation& trunc = {}) {
    return make_report(IdentityId::recurrence, detail::poly_params(n, p, x, y), gdqh2_by_recurrence(n, p, x, y),
                       gdqh2(n, p, x, y), trunc, tolerance);
}

/// h_{n,alpha}(x,omega|q) = (q;q)_n sum_k q^{-2nk+k(2k+1)} (-omega (+)_{q^2} y)^k
///                          / ((q^2;q^2)_k (q;q)_{n-2k}) h_{n-2k,alpha}(x,y|q).
template <Field T>
[[nodiscard]] IdentityReport<T> check_connection(std::size_t n, const QParams<T>& p, const T& x, const T& y,
                                                 const T& omega, double tolerance, const Truncation& trunc = {}) {
    p.validate();
    const T& q = p.q;
    const T q2 = q * q;
    const long long nn = static_cast<long long>(n);
    const T lhs = gdqh2(n, p, x, omega);
    compensated_sum<T> sum;
    for (std::size_t k = 0; 2 * k <= n; ++k) {
        const long long kk = static_cast<long long>(k);
        const T shift = hahn_add_power(T(-omega), y, q2, k);
        if (shift == T(0)) {
            continue;
        }
        sum += ipow(q, -2 * nn * kk + kk * (2 * kk + 1)) * shift /
               (q_pochhammer(q2, q2, k) * q_pochhammer(q, q, n - 2 * k)) * gdqh2(n - 2 * k, p, x, y);
    }
    auto params = detail::poly_params(n, p, x, y);
    params.emplace_back("omega", omega);
    return make_report(IdentityId::connection, std::move(params), lhs, T(q_pochhammer(q, q, n) * sum.value()),
                       trunc, tolerance);
}

/// x^n = (q;q)_{n,alpha} sum_k q^{-2nk+3k^2} y^k / ((q^2;q^2)_k (q;q)_{n-2k}) h_{n-2k,alpha}(x,y|q).
template <Field T>
[[nodiscard]] IdentityReport<T> check_inversion(std::size_t n, const QParams<T>& p, const T& x, const T& y,
                                                double tolerance, const Truncation& trunc = {}) {
    p.validate();
    const long long nn = static_cast<long long>(n);
    // Returns {sum, largest |summand|}.
    auto evaluate = [&] {
        const QParams<T> pw{widen(p.q), widen(p.alpha)};
        const T xw = widen(x);
        const T yw = widen(y);
        const T& q = pw.q;
        const T q2 = q * q;
        compensated_sum<T> sum;
        T largest(0);
        for (std::size_t k = 0; 2 * k <= n; ++k) {
            const long long kk = static_cast<long long>(k);
            const T term = ipow(q, -2 * nn * kk + 3 * kk * kk) * ipow(yw, kk) /
                           (q_pochhammer(q2, q2, k) * q_pochhammer(q, q, n - 2 * k)) *
                           gdqh2(n - 2 * k, pw, xw, yw);
            largest = max_value(largest, abs_value(term));
            sum += term;
        }
        return std::pair<T, T>{T(gen_q_shifted_factorial(n, pw) * sum.value()),
                               T(gen_q_shifted_factorial(n, pw) * largest)};
    };
    // The alternating sum cancels heavily for small q and large n; rerun with
    // enough guard digits to absorb the observed loss.
    auto [rhs, largest] = evaluate();
    std::string note;
    if constexpr (!is_exact_v<T>) {
        // Measured against the report denominator; the first-pass rhs may be noise.
        const double magnitude = static_cast<double>(max_value(T(1), abs_value(ipow(x, nn))));
        const double loss = std::log10(static_cast<double>(largest) / magnitude);
        if (loss > 1.0) {
            const auto guard = static_cast<unsigned>(std::ceil(loss)) + 10U;
            rhs = with_guard_digits<T>(guard, evaluate).first;
            note = "cancellation ~1e" + std::to_string(static_cast<int>(std::ceil(loss))) + ", " +
                   std::to_string(guard) + " guard digits";
        }
    }
    auto report = make_report(IdentityId::inversion, detail::poly_params(n, p, x, y), ipow(x, nn), rhs, trunc,
                              tolerance);
    report.note = note;
    return report;
}

/// e~_{q^2,-1/2}(-y t^2) E~_{q,alpha}(x t) = sum_n q^{n(n-1)/2} t^n h_{n,alpha}(x,y|q) / (q;q)_n,
/// the right side summed until the partial sums settle below trunc.tail_tol.
template <Field T>
[[nodiscard]] IdentityReport<T> check_generating_function(const T& t, const T& x, const T& y, const QParams<T>& p,
                                                          double tolerance, const Truncation& trunc = {}) {
    p.validate();
    const std::string bound = detail::require_generating_region(t, y);
    const T& q = p.q;
    const QParams<T> plain{q, T(T(-1) / T(2))};
    const T lhs = gen_e(T(-y * t * t), plain, 2, trunc) * gen_E(T(x * t), p, 1, trunc);
    auto term = [&](std::size_t n) {
        const long long nn = static_cast<long long>(n);
        return ipow(q, binom2(nn)) * ipow(t, nn) * gdqh2(n, p, x, y) / q_pochhammer(q, q, n);
    };
    const auto rhs = detail::adaptive_sum<T>(term, trunc, "generating function");
    ParamList<T> params{{"t", t}, {"x", x}, {"y", y}, {"q", q}, {"alpha", p.alpha}, {"N", T(rhs.terms_used)}};
    auto report = make_report(IdentityId::generating_function, std::move(params), lhs, rhs.value, trunc, tolerance);
    report.note = bound;
    return report;
}

template <Field T>
struct EvenOddReports {
    IdentityReport<T> even;        ///< even series vs Cos_{q,alpha}(xt) e~(yt^2)
    IdentityReport<T> odd;         ///< odd series vs Sin_{q,alpha}(xt) e~(yt^2)
    IdentityReport<T> even_bessel; ///< even series vs q-Bessel product
    IdentityReport<T> odd_bessel;  ///< odd series vs q-Bessel product
};

/// Even part of the generating function through J_alpha^(2):
/// q^{alpha(alpha+1/2)} (q^2;q^2)_inf/(q^{2alpha+2};q^2)_inf (xt)^{-alpha}
///   J_alpha^(2)(2xt q^{-alpha-1/2}; q^2) / (yt^2;q^2)_inf.
template <Field T>
[[nodiscard]] T even_bessel_product(const T& t, const T& x, const T& y, const QParams<T>& p,
                                    const Truncation& trunc = {}) {
    const T& q = p.q;
    const T& a = p.alpha;
    const T q2 = q * q;
    const T half = T(1) / T(2);
    const T xt = x * t;
    detail::require_bessel_argument(xt, a);
    const T prefactor = real_pow(q, T(a * (a + half))) * q_pochhammer(q2, q2, infinity, trunc) /
                        q_pochhammer(real_pow(q, T(T(2) * a + T(2))), q2, infinity, trunc);
    const T arg = T(2) * xt / real_pow(q, T(a + half));
    return prefactor / real_pow(xt, a) * q_bessel2(a, arg, q2, trunc) /
           q_pochhammer(T(y * t * t), q2, infinity, trunc);
}

/// Odd part: q^{(alpha+1)(alpha+1/2)} (q^2;q^2)_inf/(q^{2alpha+2};q^2)_inf (xt)^{-alpha}
///   J_{alpha+1}^(2)(2xt q^{-alpha-1/2}; q^2) / (yt^2;q^2)_inf.
template <Field T>
[[nodiscard]] T odd_bessel_product(const T& t, const T& x, const T& y, const QParams<T>& p,
                                   const Truncation& trunc = {}) {
    const T& q = p.q;
    const T& a = p.alpha;
    const T q2 = q * q;
    const T half = T(1) / T(2);
    const T xt = x * t;
    detail::require_bessel_argument(xt, a);
    const T prefactor = real_pow(q, T((a + T(1)) * (a + half))) * q_pochhammer(q2, q2, infinity, trunc) /
                        q_pochhammer(real_pow(q, T(T(2) * a + T(2))), q2, infinity, trunc);
    const T arg = T(2) * xt / real_pow(q, T(a + half));
    return prefactor / real_pow(xt, a) * q_bessel2(T(a + T(1)), arg, q2, trunc) /
           q_pochhammer(T(y * t * t), q2, infinity, trunc);
}

/// Even/odd split of the generating function, each checked against the
/// trigonometric product and against the q-Bessel product.
template <Field T>
[[nodiscard]] EvenOddReports<T> check_even_odd_gf(const T& t, const T& x, const T& y, const QParams<T>& p,
                                                  double series_tolerance, double bessel_tolerance,
                                                  const Truncation& trunc = {}) {
    p.validate();
    const std::string bound = detail::require_generating_region(t, y);
    const T& q = p.q;
    const QParams<T> plain{q, T(T(-1) / T(2))};
    auto even_term = [&](std::size_t n) {
        const long long nn = static_cast<long long>(n);
        const T term = ipow(q, nn * (2 * nn - 1)) * ipow(t, 2 * nn) * gdqh2(2 * n, p, x, y) /
                       q_pochhammer(q, q, 2 * n);
        return n % 2 == 0 ? term : T(-term);
    };
    auto odd_term = [&](std::size_t n) {
        const long long nn = static_cast<long long>(n);
        const T term = ipow(q, nn * (2 * nn + 1)) * ipow(t, 2 * nn + 1) * gdqh2(2 * n + 1, p, x, y) /
                       q_pochhammer(q, q, 2 * n + 1);
        return n % 2 == 0 ? term : T(-term);
    };
    const auto even = detail::adaptive_sum<T>(even_term, trunc, "even generating function");
    const auto odd = detail::adaptive_sum<T>(odd_term, trunc, "odd generating function");
    const T xt = x * t;
    const T e_factor = gen_e(T(y * t * t), plain, 2, trunc);
    ParamList<T> params{{"t", t}, {"x", x}, {"y", y}, {"q", q}, {"alpha", p.alpha}};

    auto with_n = [&](std::size_t used) {
        auto out = params;
        out.emplace_back("N", T(used));
        return out;
    };
    EvenOddReports<T> out{
        make_report(IdentityId::even_generating_function, with_n(even.terms_used), even.value,
                    T(q_cos_alpha(xt, p, trunc) * e_factor), trunc, series_tolerance),
        make_report(IdentityId::odd_generating_function, with_n(odd.terms_used), odd.value,
                    T(q_sin_alpha(xt, p, trunc) * e_factor), trunc, series_tolerance),
        {},
        {},
    };
    out.even.note = bound;
    out.odd.note = bound;
    try {
        out.even_bessel = make_report(IdentityId::even_bessel_form, with_n(even.terms_used), even.value,
                                      even_bessel_product(t, x, y, p, trunc), trunc, bessel_tolerance);
    } catch (const std::exception& e) {
        out.even_bessel = make_error_report(IdentityId::even_bessel_form, params, e.what(), trunc, bessel_tolerance);
    }
    try {
        out.odd_bessel = make_report(IdentityId::odd_bessel_form, with_n(odd.terms_used), odd.value,
                                     odd_bessel_product(t, x, y, p, trunc), trunc, bessel_tolerance);
    } catch (const std::exception& e) {
        out.odd_bessel = make_error_report(IdentityId::odd_bessel_form, params, e.what(), trunc, bessel_tolerance);
    }
    return out;
}

/// H_n^{(0)}(x;q^2) = q^{n(n-1)/2} h_n(x;q).
template <Field T>
[[nodiscard]] IdentityReport<T> check_mu_hermite_reduction(std::size_t n, const T& x, const T& q, double tolerance,
                                                           const Truncation& trunc = {}) {
    require_q(q);
    const long long nn = static_cast<long long>(n);
    ParamList<T> params{{"n", T(n)}, {"q", q}, {"x", x}};
    return make_report(IdentityId::mu_hermite_reduction, std::move(params), mu_hermite(n, T(0), x, T(q * q), trunc),
                       T(ipow(q, binom2(nn)) * discrete_q_hermite2(n, x, q)), trunc, tolerance);
}

struct Tolerances {
    double algebraic = 1e-25; ///< representations, recursion, connection, inversion, reductions
    double series = 1e-20;    ///< generating functions and their even/odd parts
    double bessel = 1e-15;    ///< q-Bessel closed forms
};

template <Field T>
struct IdentityGrid {
    std::vector<T> q;
    std::vector<T> alpha;
    std::size_t n_max = 0;
    std::vector<T> x;
    std::vector<T> y;
    std::vector<T> omega;
    std::vector<T> t;
    std::vector<IdentityId> identities; ///< empty = every identity of this module

    [[nodiscard]] bool empty() const {
        return q.empty() || alpha.empty() || x.empty() || y.empty();
    }

    [[nodiscard]] bool wants(IdentityId id) const {
        if (identities.empty()) {
            return id != IdentityId::orthogonality;
        }
        for (IdentityId i : identities) {
            if (i == id) {
                return true;
            }
        }
        return false;
    }
};

/// q in {0.2,0.5,0.8}, alpha in {-0.4,0,1.5}, n in 0..12, x in {-1.1,0.4,1.7},
/// y in {0.3,1}, omega in {0.6}, t in {0.2}.
template <Field T>
[[nodiscard]] IdentityGrid<T> default_grid() {
    auto s = [](const char* text) { return parse_scalar<T>(text); };
    IdentityGrid<T> g;
    g.q = {s("0.2"), s("0.5"), s("0.8")};
    g.alpha = {s("-0.4"), s("0"), s("1.5")};
    g.n_max = 12;
    g.x = {s("-1.1"), s("0.4"), s("1.7")};
    g.y = {s("0.3"), s("1")};
    g.omega = {s("0.6")};
    g.t = {s("0.2")};
    return g;
}

/// Runs every requested identity over the grid in a fixed order (q, alpha,
/// identity, n, x, y, omega / t). Evaluation errors become failing reports
/// carrying the message. Bessel forms are only evaluated where x t > 0.
template <Field T>
[[nodiscard]] std::vector<IdentityReport<T>> run_identity_suite(const IdentityGrid<T>& grid, const Tolerances& tol = {},
                                                                const Truncation& trunc = {}) {
    std::vector<IdentityReport<T>> out;
    if (grid.empty()) {
        return out;
    }
    auto guarded = [&](IdentityId id, ParamList<T> params, double tolerance, auto&& fn) {
        try {
            out.push_back(fn());
        } catch (const std::exception& e) {
            out.push_back(make_error_report(id, std::move(params), e.what(), trunc, tolerance));
        }
    };
    for (const T& q : grid.q) {
        const double alg = tol.algebraic;
        const double ser = tol.series;
        const double bes = tol.bessel;
        if (grid.wants(IdentityId::mu_hermite_reduction)) {
            for (std::size_t n = 0; n <= grid.n_max; ++n) {
                for (const T& x : grid.x) {
                    guarded(IdentityId::mu_hermite_reduction, {{"n", T(n)}, {"q", q}, {"x", x}}, alg,
                            [&] { return check_mu_hermite_reduction(n, x, q, alg, trunc); });
                }
            }
        }
        for (const T& alpha : grid.alpha) {
            const QParams<T> p{q, alpha};
            auto each_poly = [&](IdentityId id, auto&& fn) {
                if (!grid.wants(id)) {
                    return;
                }
                for (std::size_t n = 0; n <= grid.n_max; ++n) {
                    for (const T& x : grid.x) {
                        for (const T& y : grid.y) {
                            guarded(id, detail::poly_params(n, p, x, y), alg, [&] { return fn(n, x, y); });
                        }
                    }
                }
            };
            each_poly(IdentityId::representation_phi, [&](std::size_t n, const T& x, const T& y) {
                return check_representation(n, p, x, y, Representation::phi_form, alg, trunc);
            });
            each_poly(IdentityId::representation_laguerre, [&](std::size_t n, const T& x, const T& y) {
                return check_representation(n, p, x, y, Representation::laguerre_form, alg, trunc);
            });
            each_poly(IdentityId::recurrence, [&](std::size_t n, const T& x, const T& y) {
                return check_recurrence(n, p, x, y, alg, trunc);
            });
            if (grid.wants(IdentityId::connection)) {
                for (std::size_t n = 0; n <= grid.n_max; ++n) {
                    for (const T& x : grid.x) {
                        for (const T& y : grid.y) {
                            for (const T& omega : grid.omega) {
                                auto params = detail::poly_params(n, p, x, y);
                                params.emplace_back("omega", omega);
                                guarded(IdentityId::connection, std::move(params), alg,
                                        [&] { return check_connection(n, p, x, y, omega, alg, trunc); });
                            }
                        }
                    }
                }
            }
            each_poly(IdentityId::inversion, [&](std::size_t n, const T& x, const T& y) {
                return check_inversion(n, p, x, y, alg, trunc);
            });
            const bool want_gf = grid.wants(IdentityId::generating_function);
            const bool want_split = grid.wants(IdentityId::even_generating_function) ||
                                    grid.wants(IdentityId::odd_generating_function) ||
                                    grid.wants(IdentityId::even_bessel_form) ||
                                    grid.wants(IdentityId::odd_bessel_form);
            for (const T& x : grid.x) {
                for (const T& y : grid.y) {
                    for (const T& t : grid.t) {
                        ParamList<T> params{{"t", t}, {"x", x}, {"y", y}, {"q", q}, {"alpha", alpha}};
                        if (want_gf) {
                            guarded(IdentityId::generating_function, params, ser,
                                    [&] { return check_generating_function(t, x, y, p, ser, trunc); });
                        }
                        if (!want_split) {
                            continue;
                        }
                        try {
                            auto split = check_even_odd_gf(t, x, y, p, ser, bes, trunc);
                            const bool bessel_defined = T(0) < T(x * t) || (x * t != T(0) && is_integral_value(alpha));
                            if (grid.wants(IdentityId::even_generating_function)) {
                                out.push_back(std::move(split.even));
                            }
                            if (grid.wants(IdentityId::odd_generating_function)) {
                                out.push_back(std::move(split.odd));
                            }
                            if (bessel_defined && grid.wants(IdentityId::even_bessel_form)) {
                                out.push_back(std::move(split.even_bessel));
                            }
                            if (bessel_defined && grid.wants(IdentityId::odd_bessel_form)) {
                                out.push_back(std::move(split.odd_bessel));
                            }
                        } catch (const std::exception& e) {
                            out.push_back(make_error_report(IdentityId::even_generating_function, params, e.what(),
                                                            trunc, ser));
                        }
                    }
                }
            }
        }
    }
    return out;
}

} // namespace gdqh

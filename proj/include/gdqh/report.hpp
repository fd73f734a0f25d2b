#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace gdqh {

enum class IdentityId {
    representation_phi,
    representation_laguerre,
    recurrence,
    connection,
    inversion,
    generating_function,
    even_generating_function,
    odd_generating_function,
    even_bessel_form,
    odd_bessel_form,
    mu_hermite_reduction,
    orthogonality,
};

inline constexpr IdentityId all_identity_ids[] = {
    IdentityId::representation_phi,       IdentityId::representation_laguerre,
    IdentityId::recurrence,               IdentityId::connection,
    IdentityId::inversion,                IdentityId::generating_function,
    IdentityId::even_generating_function, IdentityId::odd_generating_function,
    IdentityId::even_bessel_form,         IdentityId::odd_bessel_form,
    IdentityId::mu_hermite_reduction,     IdentityId::orthogonality,
};

[[nodiscard]] inline std::string_view to_string(IdentityId id) {
    switch (id) {
    case IdentityId::representation_phi: return "representation_phi";
    case IdentityId::representation_laguerre: return "representation_laguerre";
    case IdentityId::recurrence: return "recurrence";
    case IdentityId::connection: return "connection";
    case IdentityId::inversion: return "inversion";
    case IdentityId::generating_function: return "generating_function";
    case IdentityId::even_generating_function: return "even_generating_function";
    case IdentityId::odd_generating_function: return "odd_generating_function";
    case IdentityId::even_bessel_form: return "even_bessel_form";
    case IdentityId::odd_bessel_form: return "odd_bessel_form";
    case IdentityId::mu_hermite_reduction: return "mu_hermite_reduction";
    case IdentityId::orthogonality: return "orthogonality";
    }
    return "?";
}

[[nodiscard]] inline std::optional<IdentityId> parse_identity_id(std::string_view name) {
    for (IdentityId id : all_identity_ids) {
        if (to_string(id) == name) {
            return id;
        }
    }
    return std::nullopt;
}

template <Field T>
using ParamList = std::vector<std::pair<std::string, T>>;

/// Both sides of one identity instance and how far apart they are.
/// rel_residual = |lhs - rhs| / max(scale, |lhs|, |rhs|) with scale = 1
/// unless the check supplies a natural magnitude (orthogonality norms).
template <Field T>
struct IdentityReport {
    IdentityId id = IdentityId::connection;
    ParamList<T> params;
    T lhs = T(0);
    T rhs = T(0);
    T abs_residual = T(0);
    T rel_residual = T(0);
    Truncation truncation;
    double tolerance = 0.0;
    bool pass = false;
    std::string error; ///< non-empty when evaluation threw
    std::string note;
};

template <Field T>
[[nodiscard]] IdentityReport<T> make_report(IdentityId id, ParamList<T> params, T lhs, T rhs,
                                            const Truncation& trunc, double tolerance, const T& scale = T(1)) {
    IdentityReport<T> r;
    r.id = id;
    r.params = std::move(params);
    r.abs_residual = abs_value(T(lhs - rhs));
    const T denom = max_value(scale, max_value(abs_value(lhs), abs_value(rhs)));
    r.rel_residual = denom == T(0) ? r.abs_residual : T(r.abs_residual / denom);
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    r.truncation = trunc;
    r.tolerance = tolerance;
    r.pass = !(T(tolerance) < r.rel_residual);
    return r;
}

template <Field T>
[[nodiscard]] IdentityReport<T> make_error_report(IdentityId id, ParamList<T> params, std::string message,
                                                  const Truncation& trunc, double tolerance) {
    IdentityReport<T> r;
    r.id = id;
    r.params = std::move(params);
    r.truncation = trunc;
    r.tolerance = tolerance;
    r.pass = false;
    r.error = std::move(message);
    return r;
}

template <Field T>
struct IdentitySummary {
    std::size_t count = 0;
    std::size_t passed = 0;
    std::size_t failed = 0; ///< residual above tolerance
    std::size_t errors = 0; ///< evaluation threw
    T worst_rel_residual = T(0);
};

/// Per-identity aggregate, keyed in IdentityId order.
template <Field T>
[[nodiscard]] std::map<IdentityId, IdentitySummary<T>> summarize(const std::vector<IdentityReport<T>>& reports) {
    std::map<IdentityId, IdentitySummary<T>> out;
    for (const auto& r : reports) {
        auto& s = out[r.id];
        ++s.count;
        if (!r.error.empty()) {
            ++s.errors;
            continue;
        }
        if (r.pass) {
            ++s.passed;
        } else {
            ++s.failed;
        }
        if (s.worst_rel_residual < r.rel_residual) {
            s.worst_rel_residual = r.rel_residual;
        }
    }
    return out;
}

} // namespace gdqh

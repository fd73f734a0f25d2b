#pragma once

// Command implementations behind the `gdqh` executable. Every command takes
// already-parsed string options, sets the working precision, evaluates with
// mp_real and writes to the given stream. Return value is the exit code:
// 0 success / all checks pass, 1 residual failure, 2 invalid input or
// evaluation error.

#include <chrono>
#include <ctime>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <gdqh/gdqh.hpp>

namespace gdqh::cli {

using real = mp_real;
using json = nlohmann::ordered_json;

enum class Format { human, json, csv };

struct GlobalOptions {
    unsigned precision = 50;
    double rel_tol = 1e-25;
    double tail_tol = 1e-60;
    double series_tol = 1e-20;
    double bessel_tol = 1e-15;
    std::size_t max_terms = 100000;
    std::string format = "human";
    bool no_timestamp = false;
    std::string output; ///< report file for check/orthogonality; empty = stdout
};

struct EvalOptions {
    std::string family = "gdqh2";
    std::size_t n = 0;
    std::string q = "0.5";
    std::string alpha = "0";
    std::string mu = "0";
    std::string x = "0";
    std::string y = "1";
    std::string rep = "definition";
};

struct TableOptions {
    std::string family = "gdqh2";
    std::size_t n_max = 0;
    std::string q = "0.5";
    std::string alpha = "0";
    std::string mu = "0";
    std::vector<std::string> x{"0"};
    std::string y = "1";
    std::string rep = "definition";
};

/// Unset vectors fall back to the default identity grid.
struct CheckOptions {
    std::string identity = "all";
    std::vector<std::string> q;
    std::vector<std::string> alpha;
    std::optional<std::size_t> n_max;
    std::vector<std::string> x;
    std::vector<std::string> y;
    std::vector<std::string> omega;
    std::vector<std::string> t;
};

struct OrthogonalityOptions {
    std::string q = "0.5";
    std::string alpha = "0";
    std::size_t n_max = 3;
    std::optional<long> k_min;
    std::optional<long> k_max;
    double tol = 1e-10;
    double offdiag_tol = 1e-12;
};

/// Thrown for malformed or out-of-range command-line input (exit code 2).
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline Format parse_format(const std::string& name) {
    if (name == "human") return Format::human;
    if (name == "json") return Format::json;
    if (name == "csv") return Format::csv;
    throw usage_error("format must be one of json, csv, human (got '" + name + "')");
}

inline Family parse_family(const std::string& name) {
    if (name == "gdqh2") return Family::gdqh2;
    if (name == "qlaguerre" || name == "q-laguerre") return Family::q_laguerre;
    if (name == "stieltjes-wigert" || name == "sw") return Family::stieltjes_wigert;
    if (name == "discrete-qh2" || name == "dqh2") return Family::discrete_q_hermite2;
    if (name == "mu-hermite") return Family::mu_hermite;
    if (name == "rosenblum") return Family::rosenblum_hermite;
    throw usage_error("unknown family '" + name +
                      "' (expected gdqh2, qlaguerre, stieltjes-wigert, discrete-qh2, mu-hermite, rosenblum)");
}

inline std::string family_name(Family f) {
    switch (f) {
    case Family::gdqh2: return "gdqh2";
    case Family::q_laguerre: return "qlaguerre";
    case Family::stieltjes_wigert: return "stieltjes-wigert";
    case Family::discrete_q_hermite2: return "discrete-qh2";
    case Family::mu_hermite: return "mu-hermite";
    case Family::rosenblum_hermite: return "rosenblum";
    }
    return "?";
}

inline Representation parse_rep(const std::string& name) {
    if (name == "definition" || name == "definition_sum") return Representation::definition_sum;
    if (name == "phi" || name == "phi_form") return Representation::phi_form;
    if (name == "laguerre" || name == "laguerre_form") return Representation::laguerre_form;
    throw usage_error("unknown representation '" + name + "' (expected definition, phi, laguerre)");
}

inline real parse_real(const std::string& name, const std::string& text) {
    try {
        return parse_scalar<real>(text);
    } catch (const std::exception&) {
        throw usage_error("--" + name + ": not a number: '" + text + "'");
    }
}

inline std::vector<real> parse_reals(const std::string& name, const std::vector<std::string>& texts) {
    std::vector<real> out;
    out.reserve(texts.size());
    for (const auto& t : texts) {
        out.push_back(parse_real(name, t));
    }
    return out;
}

inline std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

inline const std::set<std::string>& integer_params() {
    static const std::set<std::string> names{"n", "m", "N", "k_min", "k_max"};
    return names;
}

/// RFC-4180 field quoting.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

class Formatter {
public:
    explicit Formatter(unsigned digits) : digits_(digits) {}

    [[nodiscard]] std::string num(const real& v) const { return format_scientific(v, digits_); }

    [[nodiscard]] std::string param(const std::string& name, const real& v) const {
        if (integer_params().count(name) != 0 && is_integral_value(v)) {
            return std::to_string(to_integer(v));
        }
        return num(v);
    }

    [[nodiscard]] std::string tol(double v) const {
        std::ostringstream s;
        s << std::scientific << std::setprecision(2) << v;
        return s.str();
    }

private:
    unsigned digits_;
};

inline int exit_code_for(const std::vector<IdentityReport<real>>& reports) {
    bool failed = false;
    for (const auto& r : reports) {
        if (!r.error.empty()) {
            return 2;
        }
        failed = failed || !r.pass;
    }
    return failed ? 1 : 0;
}

inline void write_reports(std::ostream& out, const std::string& command,
                          const std::vector<IdentityReport<real>>& reports, const GlobalOptions& g, Format format) {
    const Formatter fmt(g.precision);
    const auto summary = summarize(reports);
    const int code = exit_code_for(reports);
    if (format == Format::json) {
        json doc;
        doc["command"] = command;
        if (!g.no_timestamp) {
            doc["timestamp"] = timestamp_utc();
        }
        doc["precision_digits"] = g.precision;
        doc["all_pass"] = code == 0;
        json sums = json::array();
        for (const auto& [id, s] : summary) {
            sums.push_back({{"identity", std::string(to_string(id))},
                            {"count", s.count},
                            {"passed", s.passed},
                            {"failed", s.failed},
                            {"errors", s.errors},
                            {"worst_rel_residual", fmt.num(s.worst_rel_residual)}});
        }
        doc["summary"] = sums;
        json rows = json::array();
        for (const auto& r : reports) {
            json params = json::object();
            for (const auto& [name, value] : r.params) {
                params[name] = fmt.param(name, value);
            }
            rows.push_back({{"identity", std::string(to_string(r.id))},
                            {"params", params},
                            {"lhs", fmt.num(r.lhs)},
                            {"rhs", fmt.num(r.rhs)},
                            {"abs_residual", fmt.num(r.abs_residual)},
                            {"rel_residual", fmt.num(r.rel_residual)},
                            {"truncation",
                             {{"max_terms", r.truncation.max_terms},
                              {"tail_tol", fmt.tol(r.truncation.tail_tol)},
                              {"rel_tol", fmt.tol(r.truncation.rel_tol)}}},
                            {"tolerance", fmt.tol(r.tolerance)},
                            {"pass", r.pass},
                            {"error", r.error},
                            {"note", r.note}});
        }
        doc["reports"] = rows;
        out << doc.dump(2) << "\n";
        return;
    }
    if (format == Format::csv) {
        out << "identity,params,lhs,rhs,abs_residual,rel_residual,max_terms,tail_tol,rel_tol,tolerance,pass,error,note\r\n";
        for (const auto& r : reports) {
            std::string params;
            for (const auto& [name, value] : r.params) {
                if (!params.empty()) {
                    params += ";";
                }
                params += name + "=" + fmt.param(name, value);
            }
            out << to_string(r.id) << "," << csv_field(params) << "," << fmt.num(r.lhs) << "," << fmt.num(r.rhs)
                << "," << fmt.num(r.abs_residual) << "," << fmt.num(r.rel_residual) << ","
                << r.truncation.max_terms << "," << fmt.tol(r.truncation.tail_tol) << ","
                << fmt.tol(r.truncation.rel_tol) << "," << fmt.tol(r.tolerance) << ","
                << (r.pass ? "true" : "false") << "," << csv_field(r.error) << "," << csv_field(r.note) << "\r\n";
        }
        return;
    }
    out << command << " report";
    if (!g.no_timestamp) {
        out << " (" << timestamp_utc() << ")";
    }
    out << "\nprecision: " << g.precision << " digits\n";
    out << std::left << std::setw(26) << "identity" << std::right << std::setw(7) << "count" << std::setw(8)
        << "passed" << std::setw(8) << "failed" << std::setw(8) << "errors" << "  worst_rel_residual\n";
    const Formatter brief(6);
    for (const auto& [id, s] : summary) {
        out << std::left << std::setw(26) << to_string(id) << std::right << std::setw(7) << s.count << std::setw(8)
            << s.passed << std::setw(8) << s.failed << std::setw(8) << s.errors << "  "
            << brief.num(s.worst_rel_residual) << "\n";
    }
    for (const auto& r : reports) {
        if (r.pass) {
            continue;
        }
        out << (r.error.empty() ? "FAIL " : "ERROR ") << to_string(r.id) << " [";
        bool first = true;
        for (const auto& [name, value] : r.params) {
            out << (first ? "" : " ") << name << "=" << brief.param(name, value);
            first = false;
        }
        out << "]";
        if (r.error.empty()) {
            out << " rel_residual=" << brief.num(r.rel_residual) << " tolerance=" << fmt.tol(r.tolerance);
        } else {
            out << " " << r.error;
        }
        out << "\n";
    }
    out << "result: " << (code == 0 ? "PASS" : code == 1 ? "FAIL" : "ERROR") << "\n";
}

inline void validate_global(const GlobalOptions& g) {
    if (g.precision < 15) {
        throw usage_error("precision_digits must be >= 15");
    }
    if (g.precision > 300) {
        throw usage_error("precision_digits must be <= 300");
    }
    if (!(g.rel_tol > 0) || !(g.tail_tol > 0) || !(g.series_tol > 0) || !(g.bessel_tol > 0)) {
        throw usage_error("tolerances must be > 0");
    }
    if (g.max_terms < 1) {
        throw usage_error("max_terms must be >= 1");
    }
    parse_format(g.format);
}

inline Truncation truncation_of(const GlobalOptions& g) {
    return {g.max_terms, g.tail_tol, g.rel_tol};
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

inline PolyEval<real> make_eval(Family family, std::size_t n, const std::string& q, const std::string& alpha,
                                const std::string& mu, const real& x, const std::string& y, Representation rep) {
    PolyEval<real> e;
    e.family = family;
    e.n = n;
    e.q = parse_real("q", q);
    e.alpha = parse_real("alpha", alpha);
    e.mu = parse_real("mu", mu);
    e.x = x;
    e.y = parse_real("y", y);
    e.rep = rep;
    return e;
}

} // namespace detail

/// Evaluates one family member; prints value, representation used and terms.
inline int cmd_eval(const GlobalOptions& g, const EvalOptions& o, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        detail::validate_global(g);
        const precision_scope scope(g.precision);
        const auto format = detail::parse_format(g.format);
        const auto family = detail::parse_family(o.family);
        const auto e = detail::make_eval(family, o.n, o.q, o.alpha, o.mu, detail::parse_real("x", o.x), o.y,
                                         detail::parse_rep(o.rep));
        const auto v = evaluate(e, detail::truncation_of(g));
        const detail::Formatter fmt(g.precision);
        const std::string name = detail::family_name(family);
        if (format == Format::json) {
            json doc{{"family", name},  {"n", o.n},         {"q", fmt.num(e.q)},
                     {"alpha", fmt.num(e.alpha)}, {"mu", fmt.num(e.mu)}, {"x", fmt.num(e.x)},
                     {"y", fmt.num(e.y)}, {"value", fmt.num(v.value)},
                     {"representation", std::string(to_string(v.used))}, {"terms_used", v.terms_used}};
            out << doc.dump(2) << "\n";
        } else if (format == Format::csv) {
            out << "family,n,q,alpha,mu,x,y,value,representation,terms_used\r\n";
            out << name << "," << o.n << "," << fmt.num(e.q) << "," << fmt.num(e.alpha) << "," << fmt.num(e.mu)
                << "," << fmt.num(e.x) << "," << fmt.num(e.y) << "," << fmt.num(v.value) << "," << to_string(v.used)
                << "," << v.terms_used << "\r\n";
        } else {
            out << "family: " << name << "\n"
                << "n: " << o.n << "\n"
                << "value: " << fmt.num(v.value) << "\n"
                << "representation: " << to_string(v.used) << "\n"
                << "terms_used: " << v.terms_used << "\n";
        }
        return 0;
    });
}

/// Deterministic table over n = 0..n_max (outer) and the x points (inner).
inline int cmd_table(const GlobalOptions& g, const TableOptions& o, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        detail::validate_global(g);
        const precision_scope scope(g.precision);
        const auto format = detail::parse_format(g.format);
        const auto family = detail::parse_family(o.family);
        const auto rep = detail::parse_rep(o.rep);
        const auto xs = detail::parse_reals("x", o.x);
        if (xs.empty()) {
            throw usage_error("--x needs at least one point");
        }
        const auto trunc = detail::truncation_of(g);
        const detail::Formatter fmt(g.precision);
        struct Row {
            std::size_t n;
            real x;
            PolyValue<real> v;
        };
        std::vector<Row> rows;
        for (std::size_t n = 0; n <= o.n_max; ++n) {
            for (const auto& x : xs) {
                rows.push_back({n, x, evaluate(detail::make_eval(family, n, o.q, o.alpha, o.mu, x, o.y, rep), trunc)});
            }
        }
        if (format == Format::json) {
            json doc = json::array();
            for (const auto& r : rows) {
                doc.push_back({{"n", r.n},
                               {"x", fmt.num(r.x)},
                               {"value", fmt.num(r.v.value)},
                               {"representation", std::string(to_string(r.v.used))}});
            }
            out << doc.dump(2) << "\n";
        } else if (format == Format::csv) {
            out << "n,x,value,representation\r\n";
            for (const auto& r : rows) {
                out << r.n << "," << fmt.num(r.x) << "," << fmt.num(r.v.value) << "," << to_string(r.v.used)
                    << "\r\n";
            }
        } else {
            const std::size_t width = g.precision + 8;
            out << std::left << std::setw(4) << "n" << std::setw(static_cast<int>(width)) << "x"
                << std::setw(static_cast<int>(width)) << "value"
                << "representation\n";
            for (const auto& r : rows) {
                out << std::left << std::setw(4) << r.n << std::setw(static_cast<int>(width)) << fmt.num(r.x)
                    << std::setw(static_cast<int>(width)) << fmt.num(r.v.value) << to_string(r.v.used) << "\n";
            }
        }
        return 0;
    });
}

namespace detail {

inline std::ostream& report_stream(const GlobalOptions& g, std::ostream& out, std::ofstream& file) {
    if (g.output.empty()) {
        return out;
    }
    file.open(g.output, std::ios::binary);
    if (!file) {
        throw usage_error("cannot open report file '" + g.output + "'");
    }
    return file;
}

} // namespace detail

/// Runs one identity (or all) over the default grid with overrides.
inline int cmd_check(const GlobalOptions& g, const CheckOptions& o, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        detail::validate_global(g);
        const precision_scope scope(g.precision);
        const auto format = detail::parse_format(g.format);
        auto grid = default_grid<real>();
        if (o.identity != "all") {
            std::string name = o.identity;
            for (char& c : name) {
                if (c == '-') {
                    c = '_';
                }
            }
            const auto id = parse_identity_id(name);
            if (!id || *id == IdentityId::orthogonality) {
                throw usage_error("unknown identity '" + o.identity + "' (use 'all' or an identity id; "
                                  "orthogonality has its own command)");
            }
            grid.identities = {*id};
        }
        if (!o.q.empty()) grid.q = detail::parse_reals("q", o.q);
        if (!o.alpha.empty()) grid.alpha = detail::parse_reals("alpha", o.alpha);
        if (o.n_max) grid.n_max = *o.n_max;
        if (!o.x.empty()) grid.x = detail::parse_reals("x", o.x);
        if (!o.y.empty()) grid.y = detail::parse_reals("y", o.y);
        if (!o.omega.empty()) grid.omega = detail::parse_reals("omega", o.omega);
        if (!o.t.empty()) grid.t = detail::parse_reals("t", o.t);
        for (const auto& q : grid.q) {
            require_q(q);
        }
        for (const auto& a : grid.alpha) {
            QParams<real>{real(0.5), a}.validate();
        }
        Tolerances tol;
        tol.algebraic = g.rel_tol;
        tol.series = g.series_tol;
        tol.bessel = g.bessel_tol;
        const auto reports = run_identity_suite(grid, tol, detail::truncation_of(g));
        std::ofstream file;
        detail::write_reports(detail::report_stream(g, out, file), "check " + o.identity, reports, g, format);
        return detail::exit_code_for(reports);
    });
}

/// Orthogonality of h_{n,alpha}(x;q) for all 0 <= n <= m <= n_max.
inline int cmd_orthogonality(const GlobalOptions& g, const OrthogonalityOptions& o, std::ostream& out,
                             std::ostream& err) {
    return detail::guarded(err, [&] {
        detail::validate_global(g);
        const precision_scope scope(g.precision);
        const auto format = detail::parse_format(g.format);
        const auto p = QParams<real>::make(detail::parse_real("q", o.q), detail::parse_real("alpha", o.alpha));
        auto lat = default_lattice(p.q);
        if (o.k_min) lat.k_min = *o.k_min;
        if (o.k_max) lat.k_max = *o.k_max;
        lat.validate();
        const auto trunc = detail::truncation_of(g);
        std::vector<IdentityReport<real>> reports;
        for (std::size_t n = 0; n <= o.n_max; ++n) {
            for (std::size_t m = n; m <= o.n_max; ++m) {
                const double tol = m == n ? o.tol : o.offdiag_tol;
                try {
                    reports.push_back(orthogonality_check(n, m, p, lat, tol, trunc));
                } catch (const std::exception& e) {
                    reports.push_back(make_error_report<real>(
                        IdentityId::orthogonality, {{"n", real(n)}, {"m", real(m)}, {"q", p.q}, {"alpha", p.alpha}},
                        e.what(), trunc, tol));
                }
            }
        }
        std::ofstream file;
        detail::write_reports(detail::report_stream(g, out, file), "orthogonality", reports, g, format);
        return detail::exit_code_for(reports);
    });
}

} // namespace gdqh::cli

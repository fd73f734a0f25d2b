#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace gdqh::cli;

    CLI::App app{"gdqh: q-polynomial evaluation, identity checks and orthogonality quadrature"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "flat key=value configuration file (flags override it)");

    GlobalOptions g;
    app.add_option("--precision", g.precision, "working precision in decimal digits (>= 15)")->capture_default_str();
    app.add_option("--rel-tol", g.rel_tol, "tolerance for algebraic identities and series truncation")
        ->capture_default_str();
    app.add_option("--tail-tol", g.tail_tol, "absolute tail tolerance for series and products")->capture_default_str();
    app.add_option("--series-tol", g.series_tol, "tolerance for generating-function identities")
        ->capture_default_str();
    app.add_option("--bessel-tol", g.bessel_tol, "tolerance for q-Bessel forms")->capture_default_str();
    app.add_option("--max-terms", g.max_terms, "term cap for series and products")->capture_default_str();
    app.add_option("--format", g.format, "output format: json, csv or human")->capture_default_str();
    app.add_option("--output", g.output, "write the check/orthogonality report to this file");
    app.add_flag("--no-timestamp", g.no_timestamp, "omit the timestamp from reports");

    EvalOptions e;
    auto* eval = app.add_subcommand("eval", "evaluate one polynomial");
    eval->add_option("family", e.family, "gdqh2, qlaguerre, stieltjes-wigert, discrete-qh2, mu-hermite, rosenblum")
        ->required();
    eval->add_option("--n", e.n, "degree")->capture_default_str();
    eval->add_option("--q", e.q)->capture_default_str();
    eval->add_option("--alpha", e.alpha)->capture_default_str();
    eval->add_option("--mu", e.mu, "mu-hermite / rosenblum parameter")->capture_default_str();
    eval->add_option("--x", e.x)->capture_default_str();
    eval->add_option("--y", e.y, "second variable of gdqh2")->capture_default_str();
    eval->add_option("--rep", e.rep, "definition, phi or laguerre")->capture_default_str();

    TableOptions t;
    auto* table = app.add_subcommand("table", "tabulate a family for n = 0..n_max");
    table->add_option("family", t.family, "family name, as for eval")->required();
    table->add_option("--n-max", t.n_max)->capture_default_str();
    table->add_option("--q", t.q)->capture_default_str();
    table->add_option("--alpha", t.alpha)->capture_default_str();
    table->add_option("--mu", t.mu)->capture_default_str();
    table->add_option("--x", t.x, "comma-separated points")->delimiter(',')->capture_default_str();
    table->add_option("--y", t.y)->capture_default_str();
    table->add_option("--rep", t.rep)->capture_default_str();

    CheckOptions c;
    auto* check = app.add_subcommand("check", "run identity checks over a parameter grid");
    check->add_option("identity", c.identity, "identity id or 'all'")->capture_default_str();
    check->add_option("--q", c.q, "q values, comma-separated (default 0.2,0.5,0.8)")->delimiter(',');
    check->add_option("--alpha", c.alpha, "alpha values (default -0.4,0,1.5)")->delimiter(',');
    check->add_option("--n-max", c.n_max, "largest degree (default 12)");
    check->add_option("--x", c.x, "x values (default -1.1,0.4,1.7)")->delimiter(',');
    check->add_option("--y", c.y, "y values (default 0.3,1)")->delimiter(',');
    check->add_option("--omega", c.omega, "connection-formula omega (default 0.6)")->delimiter(',');
    check->add_option("--t", c.t, "generating-function t (default 0.2)")->delimiter(',');

    OrthogonalityOptions o;
    auto* orth = app.add_subcommand("orthogonality", "Jackson-quadrature orthogonality check");
    orth->add_option("--q", o.q)->capture_default_str();
    orth->add_option("--alpha", o.alpha)->capture_default_str();
    orth->add_option("--n-max", o.n_max)->capture_default_str();
    orth->add_option("--k-min", o.k_min, "lowest lattice exponent (default from q)");
    orth->add_option("--k-max", o.k_max, "highest lattice exponent (default from q)");
    orth->add_option("--tol", o.tol, "diagonal relative tolerance")->capture_default_str();
    orth->add_option("--offdiag-tol", o.offdiag_tol, "off-diagonal tolerance")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::CallForAllHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }

    if (eval->parsed()) return cmd_eval(g, e, std::cout, std::cerr);
    if (table->parsed()) return cmd_table(g, t, std::cout, std::cerr);
    if (check->parsed()) return cmd_check(g, c, std::cout, std::cerr);
    return cmd_orthogonality(g, o, std::cout, std::cerr);
}

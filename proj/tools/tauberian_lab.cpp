// tauberian-lab: run the verification suite, print the named constants,
// sweep the bound parameters, and solve the zig-zag comparison LPs.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tauberian/acceptance.hpp"
#include "tauberian/bounds.hpp"
#include "tauberian/config.hpp"
#include "tauberian/extremal_opt.hpp"
#include "tauberian/kernels.hpp"
#include "tauberian/pwl.hpp"

namespace {

using tauberian::cli::OutputFormat;
using tauberian::cli::RunConfig;

constexpr double kPi = tauberian::kernels::pi;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int cmd_verify(const RunConfig& cfg) {
    const auto results = tauberian::acceptance::run_all(cfg);
    bool all = true;
    for (const auto& r : results) {
        std::printf("%s  %-20s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        all = all && r.pass;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(std::count_if(
                                                results.begin(), results.end(),
                                                [](const auto& r) { return r.pass; })),
                results.size());
    return all ? 0 : 1;
}

struct ConstantRow {
    std::string name;
    double value;
    std::string provenance;
};

int cmd_constants(const RunConfig& cfg) {
    namespace bounds = tauberian::bounds;
    namespace kernels = tauberian::kernels;
    const auto fej = bounds::fejer_argument(4.2, 0.001);
    const auto [gv_lo, gv_hi] = bounds::graham_vaaler_window(1.0, 1.0, 1.0);
    std::vector<ConstantRow> rows = {
        {"two_sided_constant", bounds::two_sided_bound(1.0, 1.0), "paper"},
        {"one_sided_constant", bounds::one_sided_bound(1.0, 1.0), "paper"},
        {"jackson_moment_constant", kernels::kernel_constant(kernels::jackson_kernel()), "paper"},
        {"sharp_kernel_at_zero", kernels::eval_sharp_kernel(0.0), "trivial"},
        {"sharp_kernel_at_half_pi", kernels::eval_sharp_kernel(kPi / 2), "paper"},
        {"fejer_window_integral", fej.first_constant, "paper"},
        {"fejer_weighted_integral", fej.second_constant, "paper"},
        {"fejer_mass", fej.mass, "trivial"},
        {"theta_sharpness_left_end", bounds::theta_sharpness(1e-3), "derived"},
        {"theta_sharpness_right_end_scaled", 50.0 * bounds::theta_sharpness(50.0), "derived"},
        {"graham_vaaler_lower_at_1", gv_lo, "paper"},
        {"graham_vaaler_upper_at_1", gv_hi, "paper"},
        {"gamma_margin_unit", bounds::gamma_margin(1.0), "derived"},
        {"one_sided_chain_limit", bounds::one_sided_chain(1e-8), "derived"},
    };
    switch (cfg.format) {
        case OutputFormat::csv: {
            std::printf("name,value,provenance\n");
            for (const auto& r : rows)
                std::printf("%s,%s,%s\n", r.name.c_str(), num(r.value).c_str(),
                            r.provenance.c_str());
            break;
        }
        case OutputFormat::json: {
            nlohmann::json j = nlohmann::json::array();
            for (const auto& r : rows)
                j.push_back({{"name", r.name}, {"value", r.value}, {"provenance", r.provenance}});
            std::printf("%s\n", j.dump(2).c_str());
            break;
        }
        case OutputFormat::table: {
            std::printf("%-34s %-24s %s\n", "name", "value", "provenance");
            for (const auto& r : rows)
                std::printf("%-34s %-24.17g %s\n", r.name.c_str(), r.value, r.provenance.c_str());
            break;
        }
    }
    return 0;
}

int cmd_sweep(const std::string& what, double from, double to, int steps) {
    if (steps < 1) {
        std::fprintf(stderr, "sweep: steps must be >= 1\n");
        return 2;
    }
    if (!(from <= to)) {
        std::fprintf(stderr, "sweep: empty or inverted range\n");
        return 2;
    }
    const auto tau = tauberian::pwl::build_two_sided_extremal();
    const auto K = tauberian::kernels::sharp_kernel();
    auto eval = [&](double v) -> double {
        if (what == "theta") return tauberian::bounds::theta_sharpness(v);
        if (what == "u") return tauberian::bounds::one_sided_chain(v);
        if (what == "delta") {
            auto psi = [&](double d) { return tauberian::pwl::oscillation_modulus(tau, d); };
            return tauberian::bounds::osc_bound_objective(psi, 1.0, true, v);
        }
        return tauberian::bounds::full_convolution(tau, K, v, 1e-8);
    };
    std::printf("param,value\n");
    for (int i = 0; i < steps; ++i) {
        const double v = steps == 1 ? from : from + (to - from) * i / (steps - 1.0);
        std::printf("%s,%s\n", num(v).c_str(), num(eval(v)).c_str());
    }
    return 0;
}

int cmd_lp(int N, double s, double I, int n, bool dump) {
    namespace eo = tauberian::extremal_opt;
    if (!eo::check_condition(s, I)) {
        const auto [lo, hi] = eo::condition_window(s);
        nlohmann::json err = {{"error", "budget outside the admissible window"},
                              {"window", {lo, hi}}};
        std::fprintf(stderr, "%s\n", err.dump().c_str());
        return 2;
    }
    const auto lp = eo::make_lipschitz_lp(N, s, I, n);
    const auto sol = eo::solve_lipschitz_lp(lp);
    const auto zz = eo::min_over_zigzag(N, s, I);
    const char* status = sol.status == eo::LPSolution::Status::optimal     ? "optimal"
                         : sol.status == eo::LPSolution::Status::infeasible ? "infeasible"
                                                                            : "unbounded";
    nlohmann::json out = {
        {"N", N},
        {"s", s},
        {"I", I},
        {"n", n},
        {"lp", {{"objective", sol.objective}, {"status", status}, {"max_residual", sol.max_residual}}},
        {"zigzag",
         {{"objective", zz.objective}, {"c", zz.c}, {"peak", zz.peak}, {"fallback", zz.fallback}}},
        {"gap", sol.objective - zz.objective},
    };
    if (dump) {
        out["instance"] = {{"grid", lp.grid},
                           {"objective_weights", lp.objective_weights},
                           {"constraint_weights", lp.constraint_weights},
                           {"lipschitz_step", lp.lipschitz_step},
                           {"boundary_value", lp.boundary_value},
                           {"budget", lp.budget},
                           {"sense", lp.budget_le ? "le" : "ge"}};
        out["lp"]["values"] = sol.values;
    }
    std::printf("%s\n", out.dump(2).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification lab for sharp Tauberian constants"};
    app.require_subcommand(1);

    std::vector<std::string> tol_flags;
    std::string format = "table";
    RunConfig cfg;
    app.add_option("--tol", tol_flags, "tolerance override NAME=VALUE (repeatable)");
    app.add_option("--grid", cfg.grid, "grid size for discretized checks (odd)");
    app.add_option("--format", format, "output format: csv|json|table");
    app.add_option("--seed", cfg.seed, "seed for randomized property checks");

    auto* verify = app.add_subcommand("verify", "run every acceptance criterion");
    auto* constants = app.add_subcommand("constants", "print the named constants");

    auto* sweep = app.add_subcommand("sweep", "CSV sweep of a bound parameter");
    std::string what;
    double from = 0.0, to = 1.0;
    int steps = 0;
    sweep->add_option("--what", what, "theta|u|delta|h")->required();
    sweep->add_option("--from", from, "range start")->required();
    sweep->add_option("--to", to, "range end")->required();
    sweep->add_option("--steps", steps, "number of rows")->required();

    auto* lp = app.add_subcommand("lp", "zig-zag comparison LP");
    int N = 2, n = 201;
    double s = 0.0, I = 0.0;
    bool dump = false;
    lp->add_option("--N", N, "kernel translate index (>= 1)")->required();
    lp->add_option("--s", s, "boundary value")->required();
    lp->add_option("--I", I, "budget")->required();
    lp->add_option("--n", n, "grid size (odd, >= 51)");
    lp->add_flag("--dump", dump, "include the LP instance and solution vector");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    for (const auto& kv : tol_flags) {
        if (auto err = tauberian::cli::parse_tol_flag(cfg, kv)) {
            std::cerr << "config error: " << *err << "\n";
            return 2;
        }
    }
    if (auto fmt = tauberian::cli::parse_format(format)) {
        cfg.format = *fmt;
    } else {
        std::cerr << "config error: unknown format '" << format << "'\n";
        return 2;
    }

    try {
        if (verify->parsed() || constants->parsed()) {
            if (auto err = tauberian::acceptance::validate_config(cfg)) {
                std::cerr << "config error: " << *err << "\n";
                return 2;
            }
        }
        if (verify->parsed()) return cmd_verify(cfg);
        if (constants->parsed()) return cmd_constants(cfg);
        if (sweep->parsed()) {
            if (what != "theta" && what != "u" && what != "delta" && what != "h") {
                std::cerr << "config error: unknown sweep '" << what << "'\n";
                return 2;
            }
            return cmd_sweep(what, from, to, steps);
        }
        if (lp->parsed()) {
            if (N < 1 || n < 51 || n % 2 == 0) {
                std::cerr << "config error: require N >= 1 and odd n >= 51\n";
                return 2;
            }
            return cmd_lp(N, s, I, n, dump);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

// ypde: Young integration and path-dependent differential equation toolkit.
//
// Subcommands: gen, verify, solve, converge, constants.
// Exit codes: 0 success / all certificates pass, 1 certificate failure,
// 2 usage error, 3 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ypde/drivers.hpp"
#include "ypde/fields.hpp"
#include "ypde/holder.hpp"
#include "ypde/solvers.hpp"
#include "ypde/young.hpp"

using namespace ypde;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCertFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::string resolve_out(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    const char* dir = std::getenv("YPDE_OUT_DIR");
    if (!dir || !*dir) return path;
    return std::string(dir) + "/" + path;
}

void write_manifest(const std::string& out_base,
                    const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ofstream m(resolve_out(out_base) + ".manifest", std::ios::binary);
    m << "format=ypde-manifest-v1\n";
    for (const auto& [k, v] : entries) m << k << "=" << v << "\n";
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CertRow {
    int instance;
    double lhs, rhs;
    bool pass;
};

int emit_rows(const std::vector<CertRow>& rows, const std::string& out, bool markdown) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out.empty()) {
        file.open(resolve_out(out), std::ios::binary);
        os = &file;
    }
    bool all_pass = true;
    if (markdown) {
        *os << "| instance | lhs | rhs | margin | pass |\n|---|---|---|---|---|\n";
        for (const auto& r : rows) {
            *os << "| " << r.instance << " | " << fmt(r.lhs) << " | " << fmt(r.rhs) << " | "
                << fmt(r.rhs - r.lhs) << " | " << (r.pass ? "yes" : "NO") << " |\n";
            all_pass = all_pass && r.pass;
        }
    } else {
        *os << "instance,lhs,rhs,margin,pass\n";
        for (const auto& r : rows) {
            *os << r.instance << ',' << fmt(r.lhs) << ',' << fmt(r.rhs) << ','
                << fmt(r.rhs - r.lhs) << ',' << (r.pass ? 1 : 0) << "\n";
            all_pass = all_pass && r.pass;
        }
    }
    return all_pass ? kExitOk : kExitCertFail;
}

DiscretePath random_cert_path(uint64_t seed, uint64_t index) {
    // Alternate fBm samples and Weierstrass paths for certificate batches.
    if (index % 3 != 2) {
        DriverSpec spec;
        spec.kind = DriverKind::fbm;
        spec.hurst = (index % 3 == 0) ? 0.75 : 0.9;
        spec.grid = Grid(0.0, 1.0, 257);
        spec.seed = seed;
        auto chol = fbm_cholesky_factor(spec);
        return fbm_sample_from_factor(spec, chol, index);
    }
    DriverSpec spec;
    spec.kind = DriverKind::weierstrass;
    spec.w_a = 0.5;
    spec.w_b = (index % 2 == 0) ? 3 : 7;
    spec.grid = Grid(0.0, 1.0, 257);
    return generate(spec);
}

IntegrandPath sin_of(const DiscretePath& x) {
    IntegrandPath w(x.grid(), 1, 1);
    for (int i = 0; i < x.n_points(); ++i) w.value(i) = Mat::scalar(std::sin(x.at(i)));
    return w;
}

int cmd_verify(const std::string& suite, int n, uint64_t seed, const std::string& functional,
               const std::string& out, bool markdown) {
    std::vector<CertRow> rows;
    CounterRng rng(seed, 0xCE47u);

    if (suite == "young-loeve") {
        DriverSpec spec;
        spec.kind = DriverKind::fbm;
        spec.grid = Grid(0.0, 1.0, 1025);
        spec.seed = seed;
        spec.hurst = 0.75;
        auto chol075 = fbm_cholesky_factor(spec);
        spec.hurst = 0.9;
        auto chol090 = fbm_cholesky_factor(spec);
        for (int i = 0; i < n; ++i) {
            spec.hurst = (i % 2 == 0) ? 0.75 : 0.9;
            const double alpha = spec.hurst - 0.05;
            DiscretePath x = fbm_sample_from_factor(spec, (i % 2 == 0) ? chol075 : chol090, i);
            IntegrandPath w;
            if (i % 4 < 2) {
                w = sin_of(x);
            } else {
                DriverSpec ks;
                ks.kind = DriverKind::linear;
                ks.grid = x.grid();
                PathFunctional fg = make_young_functional(generate(ks), 1.0, alpha);
                w = field_along_path(fg, x, 0, x.n_points() - 1);
            }
            const int last = x.n_points() - 1;
            int s = static_cast<int>(rng.next_below(last));
            int t = s + 1 + static_cast<int>(rng.next_below(last - s));
            auto c = young_loeve_certificate(w, x, alpha, alpha, s, t);
            rows.push_back({i, c.lhs, c.rhs, c.pass});
        }
    } else if (suite == "lift") {
        for (int i = 0; i < n; ++i) {
            DiscretePath y = random_cert_path(seed, i);
            const double alpha = 0.2 + 0.6 * rng.next_uniform();
            const int last = y.n_points() - 1;
            int a = static_cast<int>(rng.next_below(last));
            int b = a + 1 + static_cast<int>(rng.next_below(last - a));
            auto c = lift_norm_check(y, alpha, a, b);
            rows.push_back({i, c.lhs, c.rhs, c.pass});
        }
    } else if (suite == "glue") {
        for (int i = 0; i < n; ++i) {
            DiscretePath y = random_cert_path(seed, i);
            const double alpha = 0.2 + 0.6 * rng.next_uniform();
            const int last = y.n_points() - 1;
            if (i % 2 == 0) {
                int split = 1 + static_cast<int>(rng.next_below(last - 1));
                auto c = glue_norm_bound(y, alpha, split);
                rows.push_back({i, c.lhs, c.rhs, c.pass});
            } else {
                const int windows[] = {2, 4, 8, 16};
                int tau_idx = last / windows[rng.next_below(4)];
                auto c = multi_glue_norm_bound(y, alpha, tau_idx);
                rows.push_back({i, c.lhs, c.rhs, c.pass});
            }
        }
    } else if (suite == "interp") {
        for (int i = 0; i < n; ++i) {
            DiscretePath y = random_cert_path(seed, i);
            const double alpha = 0.2 + 0.6 * rng.next_uniform();
            const double theta = 0.1 + 0.8 * rng.next_uniform();
            auto c = interpolation_bound(y, alpha, theta);
            rows.push_back({i, c.lhs, std::min(c.rhs_osc, c.rhs_sup), c.pass});
        }
    } else if (suite == "comp") {
        for (int i = 0; i < n; ++i) {
            DiscretePath y = random_cert_path(seed, i);
            const double alpha = 0.55 + 0.2 * rng.next_uniform();
            DriverSpec ks;
            ks.kind = DriverKind::linear;
            ks.grid = y.grid();
            DiscretePath g = generate(ks);
            PathFunctional fg = make_young_functional(g, 1.0, alpha);
            const int last = y.n_points() - 1;
            int i0 = static_cast<int>(rng.next_below(last));
            int i1 = i0 + 1 + static_cast<int>(rng.next_below(last - i0));
            auto c = composition_bound_certificate(fg, y, alpha, 1.0, i0, i1,
                                                   fg.analytic_c_time);
            rows.push_back({i, c.lhs, c.rhs, c.pass});
        }
    } else if (suite == "probe") {
        if (functional.empty()) {
            std::cerr << "verify probe: --functional is required\n";
            return kExitUsage;
        }
        PathFunctional f = make_functional(functional);
        for (int i = 0; i < n; ++i) {
            DiscretePath y = random_cert_path(seed, i);
            const int last = y.n_points() - 1;
            int t = static_cast<int>(rng.next_below(last));
            ProbeReport pr;
            if (f.delta_time > 0.0) {
                const int didx =
                    static_cast<int>(std::lround(f.delta_time / y.grid().step()));
                pr = delta_anticipation_probe(f, didx, t, y, 16, seed + i);
            } else {
                pr = anticipation_probe(f, t, y, 16, seed + i);
            }
            rows.push_back({i, pr.max_relative_deviation, 1e-12, pr.pass});
        }
    } else {
        std::cerr << "verify: unknown suite '" << suite << "'\n";
        return kExitUsage;
    }

    int rc = emit_rows(rows, out, markdown);
    if (!out.empty())
        write_manifest(out, {{"command", "verify"},
                             {"suite", suite},
                             {"n", std::to_string(n)},
                             {"seed", std::to_string(seed)},
                             {"functional", functional}});
    return rc;
}

IntegrandPath make_cli_integrand(const std::string& kind, const DiscretePath& x) {
    IntegrandPath w(x.grid(), 1, 1);
    if (kind == "time") {
        for (int i = 0; i < x.n_points(); ++i) w.value(i) = Mat::scalar(x.grid().time(i));
    } else if (kind == "driver") {
        for (int i = 0; i < x.n_points(); ++i) w.value(i) = Mat::scalar(x.at(i));
    } else if (kind == "sin-driver") {
        return sin_of(x);
    } else if (kind.rfind("constant:", 0) == 0) {
        const double c = std::stod(kind.substr(9));
        for (int i = 0; i < x.n_points(); ++i) w.value(i) = Mat::scalar(c);
    } else if (kind.rfind("functional:", 0) == 0) {
        PathFunctional f = make_functional(kind.substr(11));
        return field_along_path(f, x, 0, x.n_points() - 1);
    } else {
        throw CLI::ValidationError("--integrand", "unknown integrand '" + kind + "'");
    }
    return w;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Young integration and path-dependent differential equations"};
    app.require_subcommand(1);

    // --- gen ---------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a driving path to CSV");
    std::string gen_spec, gen_out;
    gen->add_option("spec", gen_spec, "driver spec, e.g. fbm:H=0.75,seed=1,n=1025")->required();
    gen->add_option("out", gen_out, "output CSV file")->required();

    // --- verify ------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run randomized certificate suites");
    std::string suite, verify_functional, verify_out;
    int verify_n = 100;
    uint64_t verify_seed = 0;
    bool markdown = false;
    verify->add_option("suite", suite, "young-loeve | lift | glue | interp | comp | probe")
        ->required();
    verify->add_option("--n", verify_n, "number of randomized instances");
    verify->add_option("--seed", verify_seed, "master seed");
    verify->add_option("--functional", verify_functional, "functional name (probe suite)");
    verify->add_option("--out", verify_out, "CSV output file (default stdout)");
    verify->add_flag("--markdown", markdown, "render a markdown table instead of CSV");

    // --- solve -------------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "solve Y = y0 + int F(u,Y) dX");
    std::string method, solve_functional, solve_driver, solve_out = "solution";
    double y0 = 0.0, tol = 1e-10, solve_alpha = 0.0, solve_alpha_prime = 0.0, solve_beta = 1.0;
    double solve_delta = 0.0;
    int max_iter = 200;
    bool paper_windows = false, skip_probe = false;
    solve->add_option("method", method, "delta | picard")->required();
    solve->add_option("--functional", solve_functional, "functional registry name")->required();
    solve->add_option("--driver", solve_driver, "driver spec string or path CSV file")
        ->required();
    solve->add_option("--y0", y0, "initial condition (scalar)");
    solve->add_option("--tol", tol, "picard window tolerance");
    solve->add_option("--max-iter", max_iter, "picard max iterations per window");
    solve->add_option("--alpha", solve_alpha, "driver Holder exponent (default from driver)");
    solve->add_option("--alpha-prime", solve_alpha_prime, "solution-space exponent");
    solve->add_option("--beta", solve_beta, "field space-modulus exponent");
    solve->add_option("--delta", solve_delta, "non-anticipation gap (delta method)");
    solve->add_flag("--paper-windows", paper_windows, "use the planned tau exactly");
    solve->add_flag("--skip-probe", skip_probe, "skip the delta-non-anticipation probe");
    solve->add_option("--out", solve_out, "output prefix (CSV + .meta sidecar)");

    // --- converge ----------------------------------------------------------
    auto* converge = app.add_subcommand("converge", "dyadic-refinement convergence study");
    std::string conv_driver, conv_integrand = "time", conv_out;
    int level_min = 6, level_max = 12;
    double conv_alpha = 1.0, conv_gamma = 1.0;
    bool conv_markdown = false;
    converge->add_option("--driver", conv_driver, "driver spec (n must be 2^level_max + 1)")
        ->required();
    converge->add_option("--integrand", conv_integrand,
                         "time | driver | sin-driver | constant:<c> | functional:<name>");
    converge->add_option("--level-min", level_min, "coarsest dyadic level");
    converge->add_option("--level-max", level_max, "finest dyadic level");
    converge->add_option("--alpha", conv_alpha, "declared driver exponent (reporting only)");
    converge->add_option("--gamma", conv_gamma, "declared integrand exponent (reporting only)");
    converge->add_option("--out", conv_out, "CSV output file (default stdout)");
    converge->add_flag("--markdown", conv_markdown, "render markdown");

    // --- constants ---------------------------------------------------------
    auto* constants = app.add_subcommand("constants", "estimate (alpha,beta)-Holder constants");
    std::string const_functional, const_sampler = "fbm:H=0.75,n=257";
    double const_alpha = 0.7, const_beta = 1.0;
    int const_samples = 64;
    uint64_t const_seed = 0;
    constants->add_option("--functional", const_functional)->required();
    constants->add_option("--alpha", const_alpha);
    constants->add_option("--beta", const_beta);
    constants->add_option("--sampler", const_sampler, "driver spec used as path sampler");
    constants->add_option("--n-samples", const_samples);
    constants->add_option("--seed", const_seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) {
            DriverSpec spec = parse_driver_spec(gen_spec);
            DiscretePath path = generate(spec);
            save_path_csv(path, resolve_out(gen_out));
            write_manifest(gen_out, {{"command", "gen"},
                                     {"spec", format_driver_spec(spec)},
                                     {"out", gen_out}});
            std::cout << "wrote " << path.n_points() << " rows to " << gen_out << "\n";
            return kExitOk;
        }

        if (verify->parsed())
            return cmd_verify(suite, verify_n, verify_seed, verify_functional, verify_out,
                              markdown);

        if (solve->parsed()) {
            DiscretePath x;
            double default_alpha = 1.0;
            std::string driver_desc = solve_driver;
            if (solve_driver.size() > 4 &&
                solve_driver.substr(solve_driver.size() - 4) == ".csv") {
                x = load_path_csv(solve_driver);
            } else {
                DriverSpec spec = parse_driver_spec(solve_driver);
                if (spec.kind == DriverKind::fbm) {
                    if (spec.hurst <= 0.5) {
                        std::cerr << "solve: refusing rough regime, requires H > 1/2, got H="
                                  << spec.hurst << "\n";
                        return kExitUsage;
                    }
                    default_alpha = spec.hurst - 0.05;
                }
                if (spec.kind == DriverKind::weierstrass)
                    default_alpha = spec.weierstrass_exponent();
                x = generate(spec);
                driver_desc = format_driver_spec(spec);
            }
            const double alpha = solve_alpha > 0.0 ? solve_alpha : default_alpha;
            const double alpha_prime =
                solve_alpha_prime > 0.0 ? solve_alpha_prime : 0.9 * alpha;
            if (!(alpha + alpha_prime * solve_beta > 1.0)) {
                std::cerr << "solve: exponent violation: alpha + alpha'*beta = " << alpha
                          << " + " << alpha_prime << "*" << solve_beta << " = "
                          << alpha + alpha_prime * solve_beta << " <= 1\n";
                return kExitUsage;
            }

            PathFunctional f = make_functional(solve_functional);
            SolveReport report;
            if (method == "delta") {
                double delta = solve_delta > 0.0 ? solve_delta : f.delta_time;
                if (!(delta > 0.0)) {
                    std::cerr << "solve delta: functional has no gap; pass --delta\n";
                    return kExitUsage;
                }
                const int didx = static_cast<int>(std::lround(delta / x.grid().step()));
                if (didx < 1 || (x.n_points() - 1) % didx != 0) {
                    std::cerr << "solve delta: delta must be a whole divisor of the grid\n";
                    return kExitUsage;
                }
                if (!skip_probe) {
                    ProbeReport pr = delta_anticipation_probe(
                        f, didx, (x.n_points() - 1) / 2, x, 8, 1234);
                    if (!pr.pass)
                        std::cerr << "warning: delta-non-anticipation probe failed (max rel "
                                     "deviation "
                                  << pr.max_relative_deviation << ")\n";
                }
                report = delta_delay_solve(f, didx, x, Vec{y0}, false, alpha);
            } else if (method == "picard") {
                PicardOptions opts;
                opts.tol = tol;
                opts.max_iter = max_iter;
                opts.paper_windows = paper_windows;
                opts.residual_alpha = alpha;
                std::optional<WindowPlan> plan;
                if (f.has_analytic_constants || paper_windows) {
                    const double xnorm = holder_norm(x, alpha).norm;
                    const double c_f =
                        std::max({mat_norm(f(0, x)), f.analytic_c_time, f.analytic_c_space});
                    try {
                        plan = plan_window(xnorm, c_f, alpha, alpha_prime, solve_beta,
                                           x.grid().length(), std::abs(y0));
                        plan->constants_source =
                            f.has_analytic_constants ? "analytic" : "default";
                    } catch (const std::exception& e) {
                        if (paper_windows) {
                            std::cerr << "solve: cannot build the window plan: " << e.what()
                                      << "\n";
                            return kExitUsage;
                        }
                        std::cerr << "note: window plan unavailable (" << e.what()
                                  << "); falling back to adaptive windows\n";
                    }
                }
                report = picard_window_solve(f, x, Vec{y0}, plan, opts);
            } else {
                std::cerr << "solve: method must be delta or picard\n";
                return kExitUsage;
            }

            save_path_csv(report.solution, resolve_out(solve_out) + ".csv");
            {
                std::ofstream meta(resolve_out(solve_out) + ".meta", std::ios::binary);
                meta << "residual_sup=" << fmt(report.residual_sup) << "\n";
                meta << "residual_holder=" << fmt(report.residual_holder) << "\n";
                meta << "windows=" << report.windows.size() << "\n";
                size_t total_iters = 0;
                for (const auto& w : report.windows) total_iters += w.iterations;
                meta << "iterations=" << total_iters << "\n";
                meta << "converged=" << (report.converged ? 1 : 0) << "\n";
                meta << "decay_ratio=" << fmt(report.decay_ratio) << "\n";
                if (report.plan) {
                    meta << "plan_K=" << fmt(report.plan->K) << "\n";
                    meta << "plan_epsilon=" << fmt(report.plan->epsilon) << "\n";
                    meta << "plan_tau=" << fmt(report.plan->tau) << "\n";
                    meta << "plan_R=" << fmt(report.plan->R) << "\n";
                }
            }
            write_manifest(solve_out, {{"command", "solve"},
                                       {"method", method},
                                       {"functional", solve_functional},
                                       {"driver", driver_desc},
                                       {"y0", fmt(y0)},
                                       {"tol", fmt(tol)},
                                       {"alpha", fmt(alpha)},
                                       {"alpha_prime", fmt(alpha_prime)},
                                       {"beta", fmt(solve_beta)},
                                       {"paper_windows", paper_windows ? "1" : "0"}});
            std::cout << "residual_sup=" << fmt(report.residual_sup)
                      << " residual_holder=" << fmt(report.residual_holder)
                      << " Y_end=" << fmt(report.solution.at(report.solution.n_points() - 1))
                      << "\n";
            return kExitOk;
        }

        if (converge->parsed()) {
            DriverSpec spec = parse_driver_spec(conv_driver);
            if (spec.grid.n_points != (1 << level_max) + 1) {
                std::cerr << "converge: driver n must be 2^level_max + 1 = "
                          << ((1 << level_max) + 1) << "\n";
                return kExitUsage;
            }
            if (level_max - level_min < 2) {
                std::cerr << "converge: need at least 3 levels\n";
                return kExitUsage;
            }
            DiscretePath x = generate(spec);
            IntegrandPath w = make_cli_integrand(conv_integrand, x);
            ConvergenceTable table = convergence_study(w, x, level_min, level_max);

            std::ostream* os = &std::cout;
            std::ofstream file;
            if (!conv_out.empty()) {
                file.open(resolve_out(conv_out), std::ios::binary);
                os = &file;
            }
            if (conv_markdown) {
                *os << "| level | n_points | value | successive_diff | local_rate |\n"
                    << "|---|---|---|---|---|\n";
                for (const auto& r : table.rows)
                    *os << "| " << r.level << " | " << r.n_points << " | " << fmt(r.value[0])
                        << " | " << fmt(r.successive_diff) << " | " << fmt(r.local_rate)
                        << " |\n";
                *os << "\nfitted rate: " << fmt(table.fitted_rate)
                    << (table.all_diffs_zero ? " (diffs all zero: exact)" : "") << "\n";
            } else {
                *os << "level,n_points,value,successive_diff,local_rate\n";
                for (const auto& r : table.rows)
                    *os << r.level << ',' << r.n_points << ',' << fmt(r.value[0]) << ','
                        << fmt(r.successive_diff) << ',' << fmt(r.local_rate) << "\n";
                *os << "# fitted_rate=" << fmt(table.fitted_rate)
                    << (table.all_diffs_zero ? " exact" : "") << "\n";
            }
            if (!conv_out.empty())
                write_manifest(conv_out, {{"command", "converge"},
                                          {"driver", format_driver_spec(spec)},
                                          {"integrand", conv_integrand},
                                          {"level_min", std::to_string(level_min)},
                                          {"level_max", std::to_string(level_max)},
                                          {"alpha", fmt(conv_alpha)},
                                          {"gamma", fmt(conv_gamma)}});
            return kExitOk;
        }

        if (constants->parsed()) {
            PathFunctional f = make_functional(const_functional);
            DriverSpec sampler = parse_driver_spec(const_sampler);
            FieldConstants fc =
                estimate_constants(f, const_alpha, const_beta, sampler, const_samples,
                                   const_seed);
            std::cout << "c_time=" << fmt(fc.c_time) << " c_space=" << fmt(fc.c_space)
                      << " alpha=" << fmt(fc.alpha) << " beta=" << fmt(fc.beta)
                      << " n_samples=" << fc.n_samples
                      << " degenerate=" << (fc.degenerate ? 1 : 0) << "\n";
            if (f.has_analytic_constants)
                std::cout << "analytic_c_time=" << fmt(f.analytic_c_time)
                          << " analytic_c_space=" << fmt(f.analytic_c_space) << "\n";
            return kExitOk;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SolveError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}

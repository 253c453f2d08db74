// Acceptance gate: one line per criterion, exit code = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ypde/drivers.hpp"
#include "ypde/fields.hpp"
#include "ypde/holder.hpp"
#include "ypde/rng.hpp"
#include "ypde/solvers.hpp"
#include "ypde/young.hpp"

using namespace ypde;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
    std::printf("%s criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const auto start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

IntegrandPath sin_of(const DiscretePath& x) {
    IntegrandPath w(x.grid(), 1, 1);
    for (int i = 0; i < x.n_points(); ++i) w.value(i) = Mat::scalar(std::sin(x.at(i)));
    return w;
}

DiscretePath scalar_path(Grid g, double (*f)(double)) {
    DiscretePath p(g, 1);
    for (int i = 0; i < g.n_points; ++i) p.set_value(i, {f(g.time(i))});
    return p;
}

DiscretePath random_path_257(uint64_t seed, uint64_t index) {
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

// 1. Young-Loeve certificate suite: 200 randomized instances, 100% pass, < 60 s.
void criterion_1() {
    const double t_start = now_seconds();
    DriverSpec spec;
    spec.kind = DriverKind::fbm;
    spec.grid = Grid(0.0, 1.0, 1025);
    spec.seed = 20260823;
    spec.hurst = 0.75;
    auto chol075 = fbm_cholesky_factor(spec);
    spec.hurst = 0.9;
    auto chol090 = fbm_cholesky_factor(spec);

    CounterRng rng(1, 0);
    int passed = 0;
    const int n_instances = 200;
    for (int i = 0; i < n_instances; ++i) {
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
            w = field_along_path(fg, x, 0, 1024);
        }
        int s = static_cast<int>(rng.next_below(1024));
        int t = s + 1 + static_cast<int>(rng.next_below(1024 - s));
        if (young_loeve_certificate(w, x, alpha, alpha, s, t).pass) ++passed;
    }
    const double elapsed = now_seconds() - t_start;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%d/%d instances, %.1f s", passed, n_instances,
                  elapsed);
    report(1, passed == n_instances && elapsed < 60.0, "Young-Loeve certificate suite",
           detail);
}

// 2. Convergence rates: smooth within 1 +- 0.1; rough (Weierstrass a=0.5 b=7,
// declared alpha = gamma = 0.55) successive diffs non-increasing beyond level
// 6, i.e. fitted rate clipped at >= 0. Runtime < 2 min.
void criterion_2() {
    const double t_start = now_seconds();

    Grid g(0.0, 1.0, (1 << 12) + 1);
    auto x_smooth = scalar_path(g, [](double t) { return t; });
    IntegrandPath w_smooth(g, 1, 1);
    for (int i = 0; i < g.n_points; ++i) w_smooth.value(i) = Mat::scalar(g.time(i));
    auto smooth = convergence_study(w_smooth, x_smooth, 6, 12);
    const bool smooth_ok = std::abs(smooth.fitted_rate - 1.0) <= 0.1;

    DriverSpec ws;
    ws.kind = DriverKind::weierstrass;
    ws.w_a = 0.5;
    ws.w_b = 7;
    ws.grid = g;
    auto x_rough = generate(ws);
    IntegrandPath w_rough(g, 1, 1);
    for (int i = 0; i < g.n_points; ++i) w_rough.value(i) = Mat::scalar(x_rough.at(i));
    auto rough = convergence_study(w_rough, x_rough, 6, 12);
    bool diffs_non_increasing = true;
    for (size_t i = 0; i + 2 < rough.rows.size(); ++i)
        if (rough.rows[i + 1].successive_diff > rough.rows[i].successive_diff)
            diffs_non_increasing = false;
    const bool rough_ok = rough.fitted_rate >= 0.0 && diffs_non_increasing;

    const double elapsed = now_seconds() - t_start;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "smooth rate %.3f, rough rate %.3f (diffs %s), %.1f s",
                  smooth.fitted_rate, rough.fitted_rate,
                  diffs_non_increasing ? "non-increasing" : "increasing", elapsed);
    report(2, smooth_ok && rough_ok && elapsed < 120.0, "convergence rates", detail);
}

// 3. Exponential oracle via windowed Picard.
void criterion_3() {
    DriverSpec spec;
    spec.kind = DriverKind::linear;
    spec.grid = Grid(0.0, 1.0, (1 << 12) + 1);
    PicardOptions opts;
    opts.tol = 1e-10;
    auto r = picard_window_solve(make_functional("identity"), generate(spec), {1.0},
                                 std::nullopt, opts);
    const double e = std::exp(1.0);
    const double rel = std::abs(r.solution.at(r.solution.n_points() - 1) - e) / e;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "|Y_1 - e|/e = %.3g, decay ratio %.3f", rel,
                  r.decay_ratio);
    report(3, rel < 1e-3 && r.decay_ratio < 1.0, "exponential oracle (picard)", detail);
}

// 4. Delay oracle via method of steps.
void criterion_4() {
    DriverSpec spec;
    spec.kind = DriverKind::linear;
    spec.grid = Grid(0.0, 0.5, (1 << 12) + 1);
    auto r = delta_delay_solve(make_functional("delayed-terminal:0.25"), 2048,
                               generate(spec), {1.0});
    const double err = std::abs(r.solution.at(4096) - 1.53125);
    char detail[64];
    std::snprintf(detail, sizeof(detail), "|Y_0.5 - 1.53125| = %.3g", err);
    report(4, err < 1e-4, "delay oracle (delta)", detail);
}

// 5. Cross-solver agreement on delta-non-anticipating functionals.
void criterion_5() {
    const char* names[3] = {"delayed-terminal:0.25", "delayed-terminal:0.125",
                            "delayed-max:0.125"};
    const int deltas[3] = {256, 128, 128};
    bool all_ok = true;
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        DriverSpec spec;
        spec.kind = DriverKind::fbm;
        spec.hurst = 0.75;
        spec.seed = static_cast<uint64_t>(i + 1);
        spec.grid = Grid(0.0, 1.0, 1025);
        auto x = generate(spec);
        auto f = make_functional(names[i]);
        auto rd = delta_delay_solve(f, deltas[i], x, {1.0});
        PicardOptions opts;
        opts.tol = 1e-12;
        auto rp = picard_window_solve(f, x, {1.0}, std::nullopt, opts);
        double diff = 0.0, sup = 0.0;
        for (int j = 0; j < 1025; ++j) {
            diff = std::max(diff, std::abs(rd.solution.at(j) - rp.solution.at(j)));
            sup = std::max(sup, std::abs(rd.solution.at(j)));
        }
        const double tol = 1e-6 * (1.0 + sup);
        worst = std::max(worst, diff / tol);
        if (diff >= tol) all_ok = false;
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "worst sup-diff at %.3g of tolerance", worst);
    report(5, all_ok, "cross-solver agreement (3 functionals, seeds 1-3)", detail);
}

// 6. Bitwise stabilization of the method-of-steps iterates, 50 random cases.
void criterion_6() {
    CounterRng rng(6, 0);
    int ok = 0;
    for (int c = 0; c < 50; ++c) {
        auto x = random_path_257(300 + c, c);
        const int delta_choices[3] = {32, 64, 128};
        const int didx = delta_choices[rng.next_below(3)];
        auto f = make_functional(c % 2 == 0 ? "delayed-terminal:0.125" : "delayed-max:0.125");
        // delta in time units follows didx on the 257-point unit grid.
        auto fd = make_functional(
            std::string(c % 2 == 0 ? "delayed-terminal:" : "delayed-max:") +
            std::to_string(didx / 256.0));
        auto r = delta_delay_solve(fd, didx, x, {1.0 + 0.05 * c}, true);
        (void)f;
        bool bitwise = true;
        for (size_t n = 1; n < r.iterates.size(); ++n)
            for (int j = 0; j <= static_cast<int>(n - 1) * didx; ++j)
                if (r.iterates[n].at(j) != r.iterates[n - 1].at(j)) bitwise = false;
        if (bitwise) ++ok;
    }
    char detail[64];
    std::snprintf(detail, sizeof(detail), "%d/50 cases bitwise", ok);
    report(6, ok == 50, "method-of-steps stabilization", detail);
}

// 7. Inequality suites: lift, gluing (both lemmas), interpolation, composition.
void criterion_7() {
    CounterRng rng(7, 0);
    int lift_ok = 0, glue_ok = 0, interp_ok = 0, comp_ok = 0;
    const int n_inst = 100;

    for (int i = 0; i < n_inst; ++i) {
        auto y = random_path_257(i, i);
        const double alpha = 0.2 + 0.6 * rng.next_uniform();

        int a = static_cast<int>(rng.next_below(256));
        int b = a + 1 + static_cast<int>(rng.next_below(256 - a));
        if (lift_norm_check(y, alpha, a, b).pass) ++lift_ok;

        if (i % 2 == 0) {
            int split = 1 + static_cast<int>(rng.next_below(255));
            if (glue_norm_bound(y, alpha, split).pass) ++glue_ok;
        } else {
            const int windows[4] = {2, 4, 8, 16};
            if (multi_glue_norm_bound(y, alpha, 256 / windows[rng.next_below(4)]).pass)
                ++glue_ok;
        }

        const double theta = 0.1 + 0.8 * rng.next_uniform();
        if (interpolation_bound(y, alpha, theta).pass) ++interp_ok;

        const double ca = 0.55 + 0.2 * rng.next_uniform();
        DriverSpec ks;
        ks.kind = DriverKind::linear;
        ks.grid = y.grid();
        PathFunctional fg = make_young_functional(generate(ks), 1.0, ca);
        int i0 = static_cast<int>(rng.next_below(256));
        int i1 = i0 + 1 + static_cast<int>(rng.next_below(256 - i0));
        if (composition_bound_certificate(fg, y, ca, 1.0, i0, i1, fg.analytic_c_time).pass)
            ++comp_ok;
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "lift %d, glue %d, interp %d, comp %d of %d each",
                  lift_ok, glue_ok, interp_ok, comp_ok, n_inst);
    report(7,
           lift_ok == n_inst && glue_ok == n_inst && interp_ok == n_inst && comp_ok == n_inst,
           "inequality certificate suites", detail);
}

// 8. fBm generator: covariance probes within the 5-sigma band; H = 1/2 is
// Brownian motion with covariance min(s,t).
void criterion_8() {
    bool analytic_ok = true;
    CounterRng rng(8, 0);
    for (int k = 0; k < 50; ++k) {
        const double s = rng.next_uniform(), t = rng.next_uniform();
        if (std::abs(fbm_covariance(s, t, 0.5) - std::min(s, t)) > 1e-14) analytic_ok = false;
    }

    bool bands_ok = true;
    double worst = 0.0;
    for (double hurst : {0.5, 0.75}) {
        DriverSpec spec;
        spec.kind = DriverKind::fbm;
        spec.hurst = hurst;
        spec.seed = 8;
        spec.grid = Grid(0.0, 1.0, 257);
        auto rep = covariance_check(
            spec, 2000, {{0.25, 0.25}, {0.25, 0.75}, {0.5, 0.5}, {0.5, 1.0}, {1.0, 1.0}});
        if (!rep.all_within_band) bands_ok = false;
        for (const auto& p : rep.probes)
            worst = std::max(worst, std::abs(p.empirical - p.analytic) / p.band);
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "worst probe at %.2f of the 5-sigma band, H=1/2 %s",
                  worst, analytic_ok ? "= min(s,t)" : "mismatch");
    report(8, analytic_ok && bands_ok, "fBm covariance validation", detail);
}

// 9. Anticipation probes. The spec's intent read as: structurally
// non-anticipating functionals pass, the anticipating one fails, the delayed
// functional passes its delta-probe while the 0-gap functional (Y_t) fails it.
void criterion_9() {
    auto y = random_path_257(9, 0);
    const bool dupire = anticipation_probe(make_functional("dupire-max"), 128, y, 32, 9).pass;
    const bool young =
        anticipation_probe(make_functional("young-kernel:constant:c=1"), 128, y, 32, 9).pass;
    const bool anti =
        !anticipation_probe(make_functional("anticipating-terminal"), 128, y, 32, 9).pass;
    const bool delayed =
        delta_anticipation_probe(make_functional("delayed-terminal:0.125"), 32, 128, y, 32, 9)
            .pass;
    const bool zero_gap_fails =
        !delta_anticipation_probe(make_functional("identity"), 32, 128, y, 32, 9).pass;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "dupire-max %d, young-kernel %d, anticipating fails %d, delayed %d, "
                  "0-gap fails %d",
                  dupire, young, anti, delayed, zero_gap_fails);
    report(9, dupire && young && anti && delayed && zero_gap_fails, "anticipation probes",
           detail);
}

// 10. Window bookkeeping: tau formula to 1e-15 relative, R equality gap
// within 1e-9 R on 20 random draws.
void criterion_10() {
    CounterRng rng(10, 0);
    int ok = 0;
    for (int k = 0; k < 20; ++k) {
        const double beta = 0.75 + 0.2 * rng.next_uniform();
        const double lo_ap = 1.0 / (1.0 + beta) + 0.02;
        const double alpha_prime = lo_ap + (0.7 - lo_ap) * rng.next_uniform();
        const double alpha = alpha_prime + 0.05 + (0.95 - alpha_prime - 0.05) *
                                                      rng.next_uniform();
        const double x_norm = 0.1 + 10.0 * rng.next_uniform();
        const double c_f = 0.1 + 5.0 * rng.next_uniform();
        const double total_time = 0.5 + 1.5 * rng.next_uniform();
        const double y0 = 2.0 * rng.next_uniform();

        auto plan = plan_window(x_norm, c_f, alpha, alpha_prime, beta, total_time, y0);
        const double tau_expected =
            std::pow(plan.epsilon / plan.K, 1.0 / (alpha - alpha_prime));
        const bool tau_ok =
            std::abs(plan.tau - tau_expected) <= 1e-15 * std::abs(tau_expected);

        const double glue =
            std::max(1.0, std::pow(total_time, 1.0 - alpha_prime) *
                              std::pow(plan.tau, alpha_prime - 1.0));
        const double rhs =
            plan.epsilon * (1.0 + 5.0 * std::pow(glue, beta) * std::pow(plan.R, beta));
        const bool r_ok = plan.r_at_lower_bound ? cert_leq(rhs, plan.R)
                                                : std::abs(plan.R - rhs) <= 1e-9 * plan.R;
        if (tau_ok && r_ok) ++ok;
    }
    char detail[48];
    std::snprintf(detail, sizeof(detail), "%d/20 draws", ok);
    report(10, ok == 20, "window bookkeeping (tau and R)", detail);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures;
}

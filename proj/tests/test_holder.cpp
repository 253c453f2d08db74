#include <cmath>
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "ypde/drivers.hpp"
#include "ypde/holder.hpp"
#include "ypde/rng.hpp"

using namespace ypde;

namespace {

DiscretePath scalar_path(Grid g, double (*f)(double)) {
    DiscretePath p(g, 1);
    for (int i = 0; i < g.n_points; ++i) p.set_value(i, {f(g.time(i))});
    return p;
}

DiscretePath linear_path(int n = 101) {
    return scalar_path(Grid(0.0, 1.0, n), [](double t) { return t; });
}

DiscretePath constant_path(double c, int n = 65) {
    DiscretePath p(Grid(0.0, 1.0, n), 1);
    for (int i = 0; i < n; ++i) p.set_value(i, {c});
    return p;
}

DiscretePath fbm_path(double hurst, uint64_t seed, int n = 129) {
    DriverSpec spec;
    spec.kind = DriverKind::fbm;
    spec.hurst = hurst;
    spec.seed = seed;
    spec.grid = Grid(0.0, 1.0, n);
    return generate(spec);
}

// Independent naive oracle for the interval Holder norm.
double naive_holder(const DiscretePath& p, double alpha, int i0, int i1) {
    double best = 0.0;
    for (int i = i0; i <= i1; ++i)
        for (int j = i0; j <= i1; ++j) {
            if (i == j) continue;
            const double dt = std::abs(p.grid().time(j) - p.grid().time(i));
            best = std::max(best, p.increment_norm(i, j) / std::pow(dt, alpha));
        }
    return best;
}

}  // namespace

TEST_CASE("holder_norm: linear path has norm 1 at alpha = 1") {
    auto cert = holder_norm(linear_path(), 1.0);
    CHECK(cert.norm == doctest::Approx(1.0).epsilon(1e-12));

    // On a grid with exactly representable times all pairs tie at ratio 1;
    // the tie-break keeps the lexicographically first pair.
    auto exact = linear_path(5);  // step 0.25
    auto tied = holder_norm(exact, 1.0);
    CHECK(tied.norm == 1.0);
    CHECK(tied.argmax_i == 0);
    CHECK(tied.argmax_j == 1);
}

TEST_CASE("holder_norm: constant path has norm 0 for any alpha") {
    for (double a : {0.3, 0.5, 1.0}) CHECK(holder_norm(constant_path(2.5), a).norm == 0.0);
}

TEST_CASE("holder_norm: sqrt path at alpha = 0.5 attains norm at the origin") {
    auto p = scalar_path(Grid(0.0, 1.0, 1025), [](double t) { return std::sqrt(t); });
    auto cert = holder_norm(p, 0.5);
    CHECK(cert.norm == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cert.argmax_i == 0);
    CHECK(cert.norm == doctest::Approx(naive_holder(p, 0.5, 0, 1024)).epsilon(1e-15));
}

TEST_CASE("holder_norm: matches naive oracle on an fBm sample") {
    auto p = fbm_path(0.75, 7);
    for (double a : {0.3, 0.6, 0.9}) {
        auto cert = holder_norm(p, a, 10, 100);
        CHECK(cert.norm == doctest::Approx(naive_holder(p, a, 10, 100)).epsilon(1e-15));
    }
}

TEST_CASE("holder_norm: interval monotonicity and exponent transport") {
    auto p = fbm_path(0.6, 3);
    CounterRng rng(11, 0);
    for (int k = 0; k < 20; ++k) {
        int c = static_cast<int>(rng.next_below(100));
        int d = c + 2 + static_cast<int>(rng.next_below(128 - c - 1));
        int a = c + static_cast<int>(rng.next_below(d - c - 1));
        int b = a + 1 + static_cast<int>(rng.next_below(d - a));
        const double big = holder_norm(p, 0.55, c, d).norm;
        const double small = holder_norm(p, 0.55, a, b).norm;
        CHECK(cert_leq(small, big));

        // alpha' < alpha: |Y|_{a'} <= |Y|_a (t_d - t_c)^{a - a'}.
        const double na = holder_norm(p, 0.7, c, d).norm;
        const double nap = holder_norm(p, 0.5, c, d).norm;
        const double len = p.grid().time(d) - p.grid().time(c);
        CHECK(cert_leq(nap, na * std::pow(len, 0.2)));
    }
}

TEST_CASE("holder_norm: triangle inequality") {
    auto y = fbm_path(0.75, 1);
    auto z = fbm_path(0.75, 2);
    auto s = y + z;
    for (double a : {0.4, 0.7}) {
        CHECK(cert_leq(holder_norm(s, a).norm,
                       holder_norm(y, a).norm + holder_norm(z, a).norm));
    }
}

TEST_CASE("holder_norm: argument validation") {
    auto p = linear_path(11);
    CHECK_THROWS_AS(holder_norm(p, 0.0), std::domain_error);
    CHECK_THROWS_AS(holder_norm(p, 1.5), std::domain_error);
    CHECK_THROWS_AS(holder_norm(p, -0.2), std::domain_error);
    CHECK_THROWS_AS(holder_norm(p, 0.5, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(holder_norm(p, 0.5, -1, 5), std::invalid_argument);
    CHECK_THROWS_AS(holder_norm(p, 0.5, 0, 11), std::invalid_argument);
}

TEST_CASE("sup_norm and oscillation") {
    CHECK(sup_norm(linear_path()) == doctest::Approx(1.0));
    CHECK(sup_norm(constant_path(-3.0)) == doctest::Approx(3.0));

    auto p = scalar_path(Grid(0.0, 1.0, 1025), [](double t) { return std::sin(2 * M_PI * t); });
    double direct = 0.0;
    for (int i = 0; i < 1025; ++i) direct = std::max(direct, std::abs(p.at(i)));
    CHECK(sup_norm(p) == doctest::Approx(direct).epsilon(1e-15));

    CHECK(oscillation(linear_path(), 0, 100) == doctest::Approx(1.0));
    CHECK(oscillation(constant_path(9.0), 0, 64) == 0.0);
}

TEST_CASE("lift: freeze semantics") {
    auto p = fbm_path(0.75, 5, 101);
    SUBCASE("freeze at last index reproduces the path") {
        auto m = lift(p, 100).materialize();
        CHECK(m.raw() == p.raw());
    }
    SUBCASE("freeze at 0 gives the constant path at Y_0") {
        auto m = lift(p, 0).materialize();
        for (int i = 0; i < 101; ++i) CHECK(m.at(i) == p.at(0));
    }
    SUBCASE("evaluation past the freeze point clamps") {
        auto l = lift(p, 50);
        CHECK(l.value(75)[0] == p.at(50));
        CHECK(l.value(25)[0] == p.at(25));
    }
    CHECK_THROWS_AS(lift(p, 101), std::out_of_range);
    CHECK_THROWS_AS(lift(p, -1), std::out_of_range);
}

TEST_CASE("lift_norm_check holds on trivial and sampled paths") {
    auto lin = linear_path();
    auto r = lift_norm_check(lin, 1.0, 10, 90);
    CHECK(r.pass);
    CHECK(cert_leq(r.lhs, 1.0));

    auto c = lift_norm_check(constant_path(4.0), 0.5, 0, 64);
    CHECK(c.pass);
    CHECK(c.lhs == 0.0);

    auto f = lift_norm_check(fbm_path(0.75, 42), 0.6, 20, 110);
    CHECK(f.pass);
}

TEST_CASE("glue_norm_bound") {
    auto r = glue_norm_bound(linear_path(), 1.0, 50);
    CHECK(r.lhs == doctest::Approx(1.0));
    CHECK(r.rhs == doctest::Approx(4.0));
    CHECK(r.pass);

    auto c = glue_norm_bound(constant_path(1.0), 0.5, 32);
    CHECK(c.lhs == 0.0);
    CHECK(c.pass);

    DriverSpec w;
    w.kind = DriverKind::weierstrass;
    w.w_a = 0.5;
    w.w_b = 3;
    w.grid = Grid(0.0, 1.0, 257);
    auto wp = generate(w);
    auto g = glue_norm_bound(wp, 0.6, 128);
    CHECK(g.pass);

    CHECK_THROWS_AS(glue_norm_bound(linear_path(), 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(glue_norm_bound(linear_path(), 1.0, 100), std::invalid_argument);
}

TEST_CASE("multi_glue_norm_bound") {
    auto lin = linear_path();  // 101 points, 100 steps
    auto r = multi_glue_norm_bound(lin, 1.0, 25);  // tau = 0.25
    CHECK(r.lhs == doctest::Approx(1.0));
    CHECK(r.rhs == doctest::Approx(4.0));
    CHECK(r.pass);

    auto c = multi_glue_norm_bound(constant_path(1.0), 0.5, 16);
    CHECK(c.lhs == 0.0);
    CHECK(c.pass);

    auto f = fbm_path(0.75, 9, 257);
    auto m = multi_glue_norm_bound(f, 0.6, 32);  // 8 windows
    CHECK(m.pass);

    CHECK_THROWS_AS(multi_glue_norm_bound(lin, 1.0, 33), std::invalid_argument);
    CHECK_THROWS_AS(multi_glue_norm_bound(lin, 1.0, 0), std::invalid_argument);
}

TEST_CASE("interpolation_bound") {
    auto c = interpolation_bound(constant_path(2.0), 0.8, 0.5);
    CHECK(c.lhs == 0.0);
    CHECK(c.pass);

    auto lin = interpolation_bound(linear_path(), 1.0, 0.5);
    CHECK(lin.pass);
    CHECK(cert_leq(lin.lhs, lin.rhs_osc));

    auto f = interpolation_bound(fbm_path(0.75, 6), 0.7, 0.8);
    CHECK(f.pass);

    CHECK_THROWS_AS(interpolation_bound(linear_path(), 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(interpolation_bound(linear_path(), 1.0, 1.0), std::domain_error);
}

TEST_CASE("holder_metric is a metric-style distance") {
    auto y = fbm_path(0.75, 1);
    auto z = fbm_path(0.75, 2);
    CHECK(holder_metric(y, y, 0.6, 0, 128) == 0.0);
    const double d1 = holder_metric(y, z, 0.6, 0, 128);
    const double d2 = holder_metric(z, y, 0.6, 0, 128);
    CHECK(d1 == doctest::Approx(d2).epsilon(1e-15));
    CHECK(d1 > 0.0);
}

TEST_CASE("CSV round trip is bitwise") {
    auto p = fbm_path(0.9, 13, 65);
    const std::string file = "roundtrip_test.csv";
    save_path_csv(p, file);
    auto q = load_path_csv(file);
    CHECK(q.grid() == p.grid());
    CHECK(q.raw() == p.raw());
    std::remove(file.c_str());
}

TEST_CASE("CSV loader rejects malformed input") {
    const std::string file = "malformed_test.csv";
    {
        std::ofstream out(file, std::ios::binary);
        out << "t,v1\n0,1\n0.1,2\n0.35,3\n";  // non-uniform spacing
    }
    CHECK_THROWS(load_path_csv(file));
    {
        std::ofstream out(file, std::ios::binary);
        out << "x,v1\n0,1\n1,2\n";  // bad header
    }
    CHECK_THROWS(load_path_csv(file));
    std::remove(file.c_str());
    CHECK_THROWS(load_path_csv("does_not_exist_test.csv"));
}

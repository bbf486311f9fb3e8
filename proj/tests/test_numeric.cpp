#include "doctest.h"

#include "torsym/errors.hpp"
#include "torsym/numeric.hpp"

using namespace torsym;

namespace {

IntegerMatrix example_flow_matrix(std::size_t n) {
    IntegerMatrix b = IntegerMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) b(i, n - 1) = 1;
    b(n - 1, n - 2) = 2;
    return b;
}

FrequencyVector example_flow_vector(std::size_t n) {
    auto f = NumberField::create(QPoly::from_int_coeffs({-2, 0, 1}));
    std::vector<FieldElement> comps(n - 1, f->one());
    comps.push_back(f->generator());
    return FrequencyVector(comps);
}

constexpr double kLog1Sqrt2 = 0.8813735870195430;

} // namespace

TEST_CASE("flow advance") {
    auto y = flow_advance({0.0, 0.0}, {1.0, std::sqrt(2.0)}, 1.0);
    CHECK(y[0] == doctest::Approx(0.0));
    CHECK(y[1] == doctest::Approx(0.41421356237).epsilon(1e-9));
    auto z = flow_advance({0.3, 0.7}, {1.0, 2.0}, 0.0);
    CHECK(z[0] == 0.3);
    CHECK(z[1] == 0.7);
    auto w = flow_advance({0.5, 0.5}, {2.0, 0.0}, 0.25);
    CHECK(w[0] == doctest::Approx(0.0));
    CHECK(w[1] == doctest::Approx(0.5));
    for (double c : flow_advance({0.9, 0.99}, {-3.7, 11.4}, 1.7)) {
        CHECK(c >= 0.0);
        CHECK(c < 1.0);
    }
}

TEST_CASE("halton points are reproducible and in range") {
    auto pts = halton_points(16, 3);
    REQUIRE(pts.size() == 16);
    CHECK(pts[0][0] == doctest::Approx(0.5));
    CHECK(pts[0][1] == doctest::Approx(1.0 / 3.0));
    CHECK(pts[0][2] == doctest::Approx(0.2));
    for (const auto& p : pts)
        for (double c : p) {
            CHECK(c >= 0.0);
            CHECK(c < 1.0);
        }
}

TEST_CASE("lyapunov along exact eigendirections") {
    LinearTorusMap cat(AffineMap(IntegerMatrix::from_rows({{2, 1}, {1, 1}})));
    double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    LyapunovEstimate est = lyapunov_along(cat, {0.37, 0.11}, {1.0, phi - 1.0}, 50);
    CHECK(est.running_mean == doctest::Approx(2 * std::log(phi)).epsilon(1e-9));

    LinearTorusMap id(AffineMap(IntegerMatrix::identity(2)));
    LyapunovEstimate zero = lyapunov_along(id, {0.2, 0.8}, {1.0, 1.0}, 10);
    CHECK(zero.running_mean == 0.0);

    LinearTorusMap ex(AffineMap(example_flow_matrix(3)));
    LyapunovEstimate e3 = lyapunov_along(ex, {0.1, 0.5, 0.9}, {1.0, 1.0, std::sqrt(2.0)}, 200);
    CHECK(e3.running_mean == doctest::Approx(kLog1Sqrt2).epsilon(1e-6));
}

TEST_CASE("lyapunov theorem verification, linear case") {
    FrequencyVector d = example_flow_vector(3);
    FieldElement mu = d[2] + Rat(1);
    MultiplierRecord rec = make_record(mu, example_flow_matrix(3));
    LyapunovReport rep = verify_lyapunov_theorem(rec, d, 10, 200);
    REQUIRE(rep.estimates.size() == 10);
    CHECK(rep.exact_target == doctest::Approx(kLog1Sqrt2).epsilon(1e-12));
    CHECK(rep.max_abs_deviation < 1e-6);
    // Base-point independence: all estimates within 10/m of each other.
    double lo = 1e300, hi = -1e300;
    for (const auto& s : rep.estimates) {
        lo = std::min(lo, s.estimate);
        hi = std::max(hi, s.estimate);
    }
    CHECK(hi - lo < 10.0 / 200.0);
}

TEST_CASE("lyapunov theorem verification through a trigonometric conjugacy") {
    FrequencyVector d = example_flow_vector(3);
    FieldElement mu = d[2] + Rat(1);
    MultiplierRecord rec = make_record(mu, example_flow_matrix(3));
    NonlinearTestMap conj(AffineMap(example_flow_matrix(3)), 0.05,
                          NonlinearTestMap::default_family(3));
    LyapunovReport rep = verify_lyapunov_theorem(rec, d, 10, 400, &conj);
    CHECK(rep.max_abs_deviation < 1e-3);

    // Identity record: target 0, exact agreement.
    MultiplierRecord idrec = make_record(FieldElement(Rat(1)), IntegerMatrix::identity(2));
    auto f = NumberField::create(QPoly::from_int_coeffs({-2, 0, 1}));
    FrequencyVector d2({f->one(), f->generator()});
    LyapunovReport zero = verify_lyapunov_theorem(idrec, d2, 3, 50);
    CHECK(zero.max_abs_deviation < 1e-12);
}

TEST_CASE("nonlinear test map internals") {
    NonlinearTestMap m(AffineMap(IntegerMatrix::from_rows({{2, 1}, {1, 1}})), 0.05,
                       NonlinearTestMap::default_family(2));
    std::vector<double> x{0.37, 0.82};
    auto back = m.h(m.h_inverse(x));
    CHECK(back[0] == doctest::Approx(x[0]).epsilon(1e-12));
    CHECK(back[1] == doctest::Approx(x[1]).epsilon(1e-12));
    // Jacobian consistency with finite differences.
    auto j = m.jacobian(x);
    double step = 1e-7;
    auto y0 = m.apply(x);
    for (std::size_t col = 0; col < 2; ++col) {
        auto xp = x;
        xp[col] += step;
        auto y1 = m.apply(xp);
        for (std::size_t row = 0; row < 2; ++row) {
            double fd = (y1[row] - y0[row]) / step;
            // unwrap the torus difference
            if (fd > 1.0 / step / 2) fd -= 1.0 / step;
            if (fd < -1.0 / step / 2) fd += 1.0 / step;
            CHECK(j[row * 2 + col] == doctest::Approx(fd).epsilon(5e-5));
        }
    }
    CHECK_THROWS_AS(NonlinearTestMap(AffineMap(IntegerMatrix::identity(2)), 0.9,
                                     std::vector<TrigTerm>{TrigTerm{1.0, 2, 0, 0}}),
                    SemanticError);
}

TEST_CASE("numeric scan recovers the exact records") {
    // d = (1, sqrt2) at 50 digits.
    std::vector<Rat> d{Rat(1),
                       parse_rational("1.41421356237309504880168872420969807856967187537694")};
    auto candidates = numeric_symmetry_scan(d, 3, parse_rational("0.00000000000000000001"));
    bool found_silver = false;
    for (const auto& c : candidates) {
        if (c.matrix == IntegerMatrix::from_rows({{1, 1}, {2, 1}})) {
            found_silver = true;
            CHECK(c.mu == doctest::Approx(2.41421356237).epsilon(1e-9));
        }
        CHECK(abs(c.matrix.det()) == 1);
    }
    CHECK(found_silver);

    // Cross-validation: every exact record with entries within the bound
    // appears in the scan (no false negatives).
    auto f = NumberField::create(QPoly::from_int_coeffs({-2, 0, 1}));
    FrequencyVector dv({f->one(), f->generator()});
    for (const auto& rec : search_multipliers(dv, 3)) {
        if (rec.matrix.max_abs_entry() > 3) continue;
        bool present = false;
        for (const auto& c : candidates) present = present || c.matrix == rec.matrix;
        CHECK(present);
    }
}

TEST_CASE("numeric scan on a rational flow finds nontrivial fixers") {
    std::vector<Rat> d{Rat(1), Rat(2)};
    auto candidates = numeric_symmetry_scan(d, 2, parse_rational("0.000001"));
    bool nontrivial = false;
    for (const auto& c : candidates) {
        CHECK(rat_abs(c.max_residual) <= parse_rational("0.000001"));
        if (c.matrix != IntegerMatrix::identity(2) && c.matrix != -IntegerMatrix::identity(2) &&
            c.mu_exact == 1)
            nontrivial = true;
    }
    CHECK(nontrivial);
}

TEST_CASE("numeric scan on a short transcendental vector") {
    std::vector<Rat> d{
        Rat(1), parse_rational("3.14159265358979323846264338327950288419716939937510"),
        parse_rational("9.86960440108935861883449099987615113531369940724079")};
    Rat tol = Rat(1, int_pow(Int(10), 30));
    auto candidates = numeric_symmetry_scan(d, 2, tol);
    // Only +-identity: mu in {1, -1}.
    REQUIRE(candidates.size() == 2);
    for (const auto& c : candidates) {
        CHECK((c.mu_exact == 1 || c.mu_exact == -1));
        bool pm_identity = c.matrix == IntegerMatrix::identity(3) ||
                           c.matrix == -IntegerMatrix::identity(3);
        CHECK(pm_identity);
    }
}

#include "doctest.h"

#include "torsym/errors.hpp"
#include "torsym/toral.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <random>

using namespace torsym;

namespace {

IntegerMatrix example_flow_matrix(std::size_t n) {
    IntegerMatrix b = IntegerMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) b(i, n - 1) = 1;
    b(n - 1, n - 2) = 2;
    return b;
}

std::vector<Rat> pt(std::initializer_list<Rat> xs) { return std::vector<Rat>(xs); }

} // namespace

TEST_CASE("hyperbolicity classification on the fixtures") {
    HyperbolicityReport cat = classify_hyperbolicity(IntegerMatrix::from_rows({{2, 1}, {1, 1}}));
    CHECK(cat.stable_dim == 1);
    CHECK(cat.unstable_dim == 1);
    CHECK(cat.center_dim == 0);
    CHECK(cat.is_anosov());

    HyperbolicityReport ex4 = classify_hyperbolicity(example_flow_matrix(4));
    CHECK(ex4.stable_dim == 1);
    CHECK(ex4.unstable_dim == 1);
    CHECK(ex4.center_dim == 2);
    CHECK(ex4.classification == HyperbolicityReport::Kind::partially_hyperbolic);

    HyperbolicityReport id = classify_hyperbolicity(IntegerMatrix::identity(3));
    CHECK(id.center_dim == 3);
    CHECK(id.classification == HyperbolicityReport::Kind::no_expansion);

    // Rotation by 90 degrees: eigenvalues +-i.
    HyperbolicityReport rot = classify_hyperbolicity(IntegerMatrix::from_rows({{0, -1}, {1, 0}}));
    CHECK(rot.center_dim == 2);
    CHECK(rot.classification == HyperbolicityReport::Kind::no_expansion);

    // Companion of x^3 - 2x^2 + x - 1: complex stable pair, one real
    // unstable direction, no center.
    IntegerMatrix comp = IntegerMatrix::from_rows({{0, 0, 1}, {1, 0, -1}, {0, 1, 2}});
    HyperbolicityReport c = classify_hyperbolicity(comp);
    CHECK(c.stable_dim == 2);
    CHECK(c.unstable_dim == 1);
    CHECK(c.center_dim == 0);
    CHECK(c.is_anosov());

    CHECK_THROWS_AS(classify_hyperbolicity(IntegerMatrix::from_rows({{2, 0}, {0, 1}})),
                    SemanticError);
}

TEST_CASE("classification agrees with a floating eigensolver on random matrices") {
    std::mt19937_64 rng(2024);
    int done = 0;
    while (done < 500) {
        std::size_t n = 2 + static_cast<std::size_t>(rng() % 5); // 2..6
        IntegerMatrix m = random_gl(n, rng, 3 + static_cast<int>(rng() % 10));
        Eigen::MatrixXd a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(static_cast<long>(i), static_cast<long>(j)) = m(i, j).get_d();
        Eigen::EigenSolver<Eigen::MatrixXd> es(a);
        int stable = 0, unstable = 0, center = 0;
        bool clear = true;
        for (long i = 0; i < static_cast<long>(n); ++i) {
            double mod = std::abs(es.eigenvalues()(i));
            double dist = std::abs(mod - 1.0);
            // Defective unit eigenvalues drift by eps^(1/multiplicity) in a
            // floating solver, so only spectra resolved far beyond the 1e-9
            // tolerance are usable as an oracle.
            if (dist > 1e-12 && dist < 1e-3) {
                clear = false;
                break;
            }
            if (dist < 1e-9)
                ++center;
            else if (mod < 1.0)
                ++stable;
            else
                ++unstable;
        }
        if (!clear) continue;
        HyperbolicityReport rep = classify_hyperbolicity(m);
        CHECK(rep.stable_dim == stable);
        CHECK(rep.unstable_dim == unstable);
        CHECK(rep.center_dim == center);
        ++done;
    }
}

TEST_CASE("affine map algebra") {
    IntegerMatrix cat = IntegerMatrix::from_rows({{2, 1}, {1, 1}});
    AffineMap r(cat, pt({Rat(1, 2), Rat(1, 3)}));
    AffineMap s = r.compose(r.inverse());
    CHECK(s.is_translation());
    CHECK(s.is_linear());
    CHECK(s == AffineMap(IntegerMatrix::identity(2)));
    CHECK(r.pow(2) == r.compose(r));
    CHECK(r.pow(-1) == r.inverse());
    auto y = r.apply(pt({Rat(1, 2), Rat(1, 2)}));
    CHECK(y == pt({Rat(0), Rat(1, 3)}));
    AffineMap t(IntegerMatrix::identity(2), pt({Rat(1, 4), Rat(0)}));
    CHECK(t.commutes_with(t));
    CHECK_FALSE(r.commutes_with(t));
}

TEST_CASE("fixed points of the fixtures") {
    IntegerMatrix cat = IntegerMatrix::from_rows({{2, 1}, {1, 1}});
    FixedPointSet f = fixed_points(AffineMap(cat));
    REQUIRE(f.finite);
    REQUIRE(f.points.size() == 1);
    CHECK(f.points[0] == pt({Rat(0), Rat(0)}));

    // Example matrix with det(B - I) = 0: the whole diagonal is fixed.
    FixedPointSet inf = fixed_points(AffineMap(example_flow_matrix(3)));
    CHECK_FALSE(inf.finite);

    // x -> x + (1/2, 0) has no fixed points.
    FixedPointSet none = fixed_points(AffineMap(IntegerMatrix::identity(2), pt({Rat(1, 2), Rat(0)})));
    CHECK(none.finite);
    CHECK(none.points.empty());
}

TEST_CASE("fixed point count equals |det(B - I)| and brute force agrees") {
    std::mt19937_64 rng(5150);
    int done = 0;
    while (done < 40) {
        std::size_t n = 2 + static_cast<std::size_t>(rng() % 2);
        IntegerMatrix m = random_gl(n, rng, 3 + static_cast<int>(rng() % 8));
        IntegerMatrix bmi = m;
        for (std::size_t i = 0; i < n; ++i) bmi(i, i) -= 1;
        Int det = abs(bmi.det());
        if (det == 0 || det > 30) continue;
        AffineMap r(m);
        FixedPointSet fp = fixed_points(r);
        REQUIRE(fp.finite);
        CHECK(Int(static_cast<long>(fp.points.size())) == det);
        // Every point is genuinely fixed.
        for (const auto& p : fp.points) CHECK(r.apply(p) == p);
        // Brute force over the q-grid, q = |det(B - I)|.
        long q = det.get_si();
        std::vector<std::vector<Rat>> brute;
        std::vector<long> idx(n, 0);
        for (;;) {
            std::vector<Rat> x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = make_rat(idx[i], q);
            if (r.apply(x) == x) brute.push_back(x);
            std::size_t k = 0;
            while (k < n && ++idx[k] == q) {
                idx[k] = 0;
                ++k;
            }
            if (k == n) break;
        }
        std::sort(brute.begin(), brute.end());
        CHECK(brute == fp.points);
        ++done;
    }
}

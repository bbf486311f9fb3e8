#include "doctest.h"

#include "torsym/poly.hpp"

using namespace torsym;

TEST_CASE("polynomial arithmetic and division") {
    QPoly a = QPoly::from_int_coeffs({-1, -1, 1}); // x^2 - x - 1
    QPoly b = QPoly::from_int_coeffs({-1, 1});     // x - 1
    auto [q, r] = a.divmod(b);
    CHECK(q == QPoly::from_int_coeffs({0, 1}));
    CHECK(r == QPoly::from_int_coeffs({-1}));
    CHECK(a == q * b + r);
    CHECK((a * b).degree() == 3);
    CHECK(a.derivative() == QPoly::from_int_coeffs({-1, 2}));
}

TEST_CASE("gcd and squarefree decomposition") {
    QPoly f = QPoly::from_int_coeffs({-1, 1});
    QPoly g = QPoly::from_int_coeffs({1, 1});
    QPoly p = f * f * g; // (x-1)^2 (x+1)
    QPoly d = poly_gcd(p, p.derivative());
    CHECK(d == f);
    auto sq = squarefree_decomposition(p);
    REQUIRE(sq.size() == 2);
    CHECK(sq[0].first == g);
    CHECK(sq[0].second == 1);
    CHECK(sq[1].first == f);
    CHECK(sq[1].second == 2);
    CHECK(squarefree_part(p) == f * g);
}

TEST_CASE("sturm root counting") {
    QPoly p = QPoly::from_int_coeffs({-2, 0, 1}); // x^2 - 2
    CHECK(count_real_roots(p) == 2);
    CHECK(count_real_roots_open(p, Rat(0), Rat(2)) == 1);
    CHECK(count_real_roots_open(p, Rat(-2), Rat(2)) == 2);
    QPoly c = QPoly::from_int_coeffs({1, 0, 1}); // x^2 + 1
    CHECK(count_real_roots(c) == 0);
    // Multiple roots counted once.
    QPoly sq = p * p;
    CHECK(count_real_roots(sq) == 2);
}

TEST_CASE("real root isolation certificates") {
    QPoly p = QPoly::from_int_coeffs({-2, 0, 1});
    auto roots = isolate_real_roots(p);
    REQUIRE(roots.size() == 2);
    for (const auto& iv : roots) {
        // Sturm certification: exactly one root per interval.
        CHECK(count_real_roots_open(p, iv.lo, iv.hi) == 1);
    }
    CHECK(roots[0].hi <= roots[1].lo);

    QPoly none = QPoly::from_int_coeffs({1, 0, 1});
    CHECK(isolate_real_roots(none).empty());

    QPoly cubic = QPoly::from_int_coeffs({-1, -3, 0, 1}); // x^3 - 3x - 1
    auto r3 = isolate_real_roots(cubic);
    REQUIRE(r3.size() == 3);
    double expected[3] = {-1.5320888862, -0.3472963553, 1.8793852416};
    for (int i = 0; i < 3; ++i) {
        Interval iv = refine_root_interval(cubic, r3[static_cast<std::size_t>(i)], Rat(1, 1000000000));
        double mid = to_double(iv.mid());
        CHECK(std::abs(mid - expected[i]) < 1e-8);
    }
}

TEST_CASE("interval evaluation nests under refinement") {
    QPoly p = QPoly::from_int_coeffs({-2, 0, 1});
    Interval iv(Rat(1), Rat(2));
    Interval coarse = eval_interval(p, iv);
    Interval finer_domain = bisect_root_interval(p, iv);
    Interval fine = eval_interval(p, finer_domain);
    CHECK(coarse.lo <= fine.lo);
    CHECK(fine.hi <= coarse.hi);
}

TEST_CASE("argument transforms") {
    QPoly p = QPoly::from_int_coeffs({1, 2, 3});
    QPoly rev = p.reversed();
    CHECK(rev == QPoly::from_int_coeffs({3, 2, 1}));
    QPoly shifted = p.shift_arg(Rat(1)); // p(x+1) = 3x^2 + 8x + 6
    CHECK(shifted == QPoly::from_int_coeffs({6, 8, 3}));
    QPoly scaled = p.scale_arg(Rat(2)); // p(2x) = 12x^2 + 4x + 1
    CHECK(scaled == QPoly::from_int_coeffs({1, 4, 12}));
}

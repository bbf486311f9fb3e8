#include "doctest.h"

#include "torsym/circle.hpp"
#include "torsym/number_field.hpp"

using namespace torsym;

TEST_CASE("cauchy index basics") {
    // Ind(1/x) = +1, Ind(-1/x) = -1.
    CHECK(cauchy_index(QPoly::from_int_coeffs({0, 1}), QPoly::from_int_coeffs({1})) == 1);
    CHECK(cauchy_index(QPoly::from_int_coeffs({0, 1}), QPoly::from_int_coeffs({-1})) == -1);
    // Ind(x / (x^2 - 2)): jumps +1 at both poles.
    CHECK(cauchy_index(QPoly::from_int_coeffs({-2, 0, 1}), QPoly::from_int_coeffs({0, 1})) == 2);
    // No real poles.
    CHECK(cauchy_index(QPoly::from_int_coeffs({1, 0, 1}), QPoly::from_int_coeffs({0, 1})) == 0);
}

TEST_CASE("reciprocal transform") {
    // x^2 - 3x + 1 = x * (t - 3) with t = x + 1/x.
    QPoly h = QPoly::from_int_coeffs({1, -3, 1});
    CHECK(reciprocal_transform(h) == QPoly::from_int_coeffs({-3, 1}));
    // x^4 + 1: t^2 - 2.
    QPoly h2 = QPoly::from_int_coeffs({1, 0, 0, 0, 1});
    CHECK(reciprocal_transform(h2) == QPoly::from_int_coeffs({-2, 0, 1}));
    // Non-palindromic input is rejected.
    CHECK_THROWS(reciprocal_transform(QPoly::from_int_coeffs({2, 1, 1})));
}

TEST_CASE("unit circle root counts") {
    // Cat-map polynomial: both roots real, off the circle.
    CHECK(unit_circle_root_count(QPoly::from_int_coeffs({1, -3, 1})) == 0);
    // Sixth roots of unity: both on the circle.
    CHECK(unit_circle_root_count(QPoly::from_int_coeffs({1, -1, 1})) == 2);
    // (x-1)^2 (x+1): three unit roots with multiplicity.
    QPoly p = QPoly::from_int_coeffs({-1, 1}) * QPoly::from_int_coeffs({-1, 1}) *
              QPoly::from_int_coeffs({1, 1});
    CHECK(unit_circle_root_count(p) == 3);
    // x^4 + 1: all four 8th roots of unity.
    CHECK(unit_circle_root_count(QPoly::from_int_coeffs({1, 0, 0, 0, 1})) == 4);
    // (x - 1)(x^2 - 2x - 1): only the root 1 on the circle.
    QPoly f = QPoly::from_int_coeffs({-1, 1}) * QPoly::from_int_coeffs({-1, -2, 1});
    CHECK(unit_circle_root_count(f) == 1);
    // Roots at 0 are off the circle.
    CHECK(unit_circle_root_count(QPoly::from_int_coeffs({0, 0, 1, -1, 1})) == 2);
}

TEST_CASE("unit circle counts over a number field") {
    // f(mu x) for f = charpoly of the cat map and mu = phi^2 picks out
    // the eigenvalue circle |x| = phi^2: exactly one root there.
    auto fld = NumberField::create(QPoly::from_int_coeffs({-1, -1, 1}));
    FieldElement phi2 = fld->generator() * fld->generator();
    QPoly f = QPoly::from_int_coeffs({1, -3, 1});
    std::vector<FieldElement> coeffs;
    FieldElement pw = fld->one();
    for (int k = 0; k <= f.degree(); ++k) {
        coeffs.push_back(pw * f[static_cast<std::size_t>(k)]);
        pw = pw * phi2;
    }
    CHECK(unit_circle_root_count(Poly<FieldElement>(coeffs)) == 1);
}

TEST_CASE("reciprocal split") {
    // Cat-map polynomial: reciprocal pair off the circle.
    ReciprocalSplit s = split_reciprocal_part(QPoly::from_int_coeffs({1, -3, 1}));
    CHECK(s.unimodular_pairs == 0);
    CHECK(s.inside == 1);
    CHECK(s.outside == 1);
    CHECK(s.remainder.degree() == 0);
    // Generic polynomial without reciprocal structure.
    ReciprocalSplit g = split_reciprocal_part(QPoly::from_int_coeffs({-1, 1, -2, 1}));
    CHECK(g.inside == 0);
    CHECK(g.remainder.degree() == 3);
}

TEST_CASE("open disk counts") {
    // x^2 - 3x + 1: phi^-2 inside, phi^2 outside.
    CHECK(open_disk_count(QPoly::from_int_coeffs({1, -3, 1})) == 1);
    // (x-2)(x-3): nothing inside.
    CHECK(open_disk_count(QPoly::from_int_coeffs({6, -5, 1})) == 0);
    // (2x-1)(3x-1): both inside.
    CHECK(open_disk_count(QPoly::from_int_coeffs({1, -5, 6})) == 2);
    // x^3 - 2x^2 + x - 1: complex pair inside, real root outside.
    CHECK(open_disk_count(QPoly::from_int_coeffs({-1, 1, -2, 1})) == 2);
    // Degree 1.
    CHECK(open_disk_count(QPoly::from_int_coeffs({5, 1})) == 0);
    CHECK(open_disk_count(QPoly::from_int_coeffs({-1, 2})) == 1);
}

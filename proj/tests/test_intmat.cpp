#include "doctest.h"

#include "torsym/integer_matrix.hpp"

#include <random>

using namespace torsym;

namespace {

IntegerMatrix example_flow_matrix(std::size_t n) {
    // Identity with last column of ones, except a 2 in the last row's
    // next-to-last entry.
    IntegerMatrix b = IntegerMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) b(i, n - 1) = 1;
    b(n - 1, n - 2) = 2;
    return b;
}

} // namespace

TEST_CASE("characteristic polynomials") {
    CHECK(IntegerMatrix::from_rows({{0, 1}, {1, 1}}).characteristic_polynomial() ==
          QPoly::from_int_coeffs({-1, -1, 1}));
    CHECK(IntegerMatrix::identity(3).characteristic_polynomial() ==
          QPoly::from_int_coeffs({-1, 3, -3, 1})); // (x-1)^3
    QPoly f = example_flow_matrix(3).characteristic_polynomial();
    CHECK(f == QPoly::from_int_coeffs({-1, 1}) * QPoly::from_int_coeffs({-1, -2, 1}));
}

TEST_CASE("determinants and inverses") {
    IntegerMatrix cat = IntegerMatrix::from_rows({{2, 1}, {1, 1}});
    CHECK(cat.det() == 1);
    CHECK(cat.is_unimodular());
    IntegerMatrix inv = cat.inverse_unimodular();
    CHECK((cat * inv).is_identity());
    CHECK(cat.pow(3) == cat * cat * cat);
    CHECK(cat.pow(-2) == inv * inv);

    IntegerMatrix sing = IntegerMatrix::from_rows({{1, 2}, {2, 4}});
    CHECK(sing.det() == 0);
    CHECK_THROWS(sing.inverse_unimodular());

    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        IntegerMatrix m = random_gl(4, rng, 16);
        // det via Bareiss agrees with the charpoly constant term (n = 4).
        Rat c0 = m.characteristic_polynomial()[0];
        CHECK(Rat(m.det()) == c0);
        CHECK(m.is_unimodular());
    }
}

TEST_CASE("smith normal form identities") {
    auto check_identities = [](const IntegerMatrix& m) {
        SmithForm s = smith_normal_form(m);
        CHECK(s.u * m * s.v == s.d);
        CHECK(abs(s.u.det()) == 1);
        CHECK(abs(s.v.det()) == 1);
        std::size_t n = m.dim();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) CHECK(sign(s.d(i, j)) == 0);
        for (std::size_t i = 0; i < n; ++i) CHECK(sign(s.d(i, i)) >= 0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (sign(s.d(i, i)) != 0) {
                Int r = s.d(i + 1, i + 1) % s.d(i, i);
                CHECK(sign(r) == 0);
            } else {
                CHECK(sign(s.d(i + 1, i + 1)) == 0);
            }
        }
        return s;
    };

    SmithForm a = check_identities(IntegerMatrix::from_rows({{1, 1}, {1, 0}}));
    CHECK(a.d == IntegerMatrix::identity(2));

    SmithForm z = check_identities(IntegerMatrix(2));
    CHECK(z.d == IntegerMatrix(2));

    SmithForm dd = check_identities(IntegerMatrix::from_rows({{2, 0}, {0, 4}}));
    CHECK(dd.d == IntegerMatrix::from_rows({{2, 0}, {0, 4}}));

    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> entry(-9, 9);
    for (int t = 0; t < 200; ++t) {
        std::size_t n = 2 + static_cast<std::size_t>(t % 4);
        IntegerMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
        check_identities(m);
    }
}

TEST_CASE("random unimodular generation is reproducible") {
    std::mt19937_64 a(123), b(123);
    IntegerMatrix m1 = random_gl(5, a, 20);
    IntegerMatrix m2 = random_gl(5, b, 20);
    CHECK(m1 == m2);
    CHECK(m1.is_unimodular());
}

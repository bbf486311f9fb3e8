#include "doctest.h"

#include "torsym/errors.hpp"
#include "torsym/symmetry.hpp"

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

FrequencyVector golden_flow() {
    auto f = NumberField::create(QPoly::from_int_coeffs({-1, -1, 1}));
    return FrequencyVector({f->one(), f->generator()});
}

} // namespace

TEST_CASE("multiplier extraction") {
    FrequencyVector d = golden_flow();
    AffineMap r(IntegerMatrix::from_rows({{0, 1}, {1, 1}}));
    auto mu = multiplier_of(r, d);
    REQUIRE(mu);
    CHECK(*mu == d[1]); // phi

    // Translations drop out.
    AffineMap rt(IntegerMatrix::from_rows({{0, 1}, {1, 1}}),
                 {Rat(1, 3), Rat(2, 7)});
    auto mu2 = multiplier_of(rt, d);
    REQUIRE(mu2);
    CHECK(*mu2 == *mu);

    for (std::size_t n : {std::size_t(3), std::size_t(4), std::size_t(6)}) {
        FrequencyVector dn = example_flow_vector(n);
        auto m = multiplier_of(AffineMap(example_flow_matrix(n)), dn);
        REQUIRE(m);
        CHECK(*m == dn[n - 1] + Rat(1)); // 1 + sqrt2
        CHECK(minimal_polynomial(*m) == QPoly::from_int_coeffs({-1, -2, 1}));
    }

    // The cat map does not scale (1, sqrt2).
    auto f2 = NumberField::create(QPoly::from_int_coeffs({-2, 0, 1}));
    FrequencyVector ds({f2->one(), f2->generator()});
    CHECK_FALSE(multiplier_of(AffineMap(IntegerMatrix::from_rows({{2, 1}, {1, 1}})), ds));
}

TEST_CASE("symmetry reconstruction from a multiplier") {
    auto f = NumberField::create(QPoly::from_int_coeffs({-2, 0, 0, 1})); // x^3 = 2
    FieldElement a = f->generator();
    FrequencyVector d({f->one(), a, a * a});
    FieldElement mu = f->one() + a + a * a;
    SymmetryBuildResult r = symmetry_from_multiplier(mu, d);
    REQUIRE(r.ok());
    CHECK(*r.matrix == IntegerMatrix::from_rows({{1, 1, 1}, {2, 1, 1}, {2, 2, 1}}));
    CHECK(r.matrix->det() == 1);

    FrequencyVector g = golden_flow();
    SymmetryBuildResult rg = symmetry_from_multiplier(g[1], g);
    REQUIRE(rg.ok());
    CHECK(*rg.matrix == IntegerMatrix::from_rows({{0, 1}, {1, 1}}));

    // sqrt2/2 is not in the module Z + Z sqrt2.
    auto f2 = NumberField::create(QPoly::from_int_coeffs({-2, 0, 1}));
    FrequencyVector ds({f2->one(), f2->generator()});
    SymmetryBuildResult bad = symmetry_from_multiplier(f2->generator() * Rat(1, 2), ds);
    CHECK(bad.status == SymmetryBuildResult::Status::not_in_module);
}

TEST_CASE("round trip multiplier <-> matrix") {
    FrequencyVector d = golden_flow();
    IntegerMatrix b = IntegerMatrix::from_rows({{0, 1}, {1, 1}});
    auto mu = multiplier_of(AffineMap(b), d);
    REQUIRE(mu);
    auto back = symmetry_from_multiplier(*mu, d);
    REQUIRE(back.ok());
    CHECK(*back.matrix == b);
}

TEST_CASE("bounded multiplier search on the golden flow") {
    FrequencyVector d = golden_flow();
    auto records = search_multipliers(d, 3);
    REQUIRE_FALSE(records.empty());

    const FieldPtr& f = d.field();
    FieldElement phi = f->generator();

    auto find = [&](const FieldElement& mu) -> const MultiplierRecord* {
        for (const auto& r : records)
            if (r.mu == mu) return &r;
        return nullptr;
    };

    const MultiplierRecord* r1 = find(f->one());
    REQUIRE(r1);
    CHECK(r1->matrix.is_identity());
    const MultiplierRecord* rm1 = find(-f->one());
    REQUIRE(rm1);
    CHECK(rm1->matrix == -IntegerMatrix::identity(2));
    const MultiplierRecord* rphi = find(phi);
    REQUIRE(rphi);
    CHECK(rphi->matrix == IntegerMatrix::from_rows({{0, 1}, {1, 1}}));
    CHECK(find(phi * phi));
    CHECK(find(phi.pow(-2)));

    // Every record is +-phi^k and satisfies the exact laws.
    for (const auto& rec : records) {
        CHECK(abs(rec.matrix.det()) == 1);
        CHECK(rat_abs(norm(rec.mu)) == 1);
        CHECK(is_algebraic_integer(rec.mu));
        // (B - mu I) d = 0.
        for (std::size_t i = 0; i < 2; ++i) {
            FieldElement got = f->zero();
            for (std::size_t j = 0; j < 2; ++j) got = got + d[j] * Rat(rec.matrix(i, j));
            CHECK(got == rec.mu * d[i]);
        }
        FieldElement q = rec.mu.abs();
        bool is_power = false;
        for (long k = -5; k <= 5; ++k)
            if (q == phi.pow(k)) is_power = true;
        CHECK(is_power);
    }

    // Homomorphism law on all pairs.
    for (const auto& ra : records)
        for (const auto& rb : records) {
            auto prod = multiplier_of(AffineMap(ra.matrix * rb.matrix), d);
            REQUIRE(prod);
            CHECK(*prod == ra.mu * rb.mu);
        }

    // Sorted by |log mu|: the identity-size multipliers come first.
    CHECK(records.front().min_poly.degree() == 1);
}

TEST_CASE("search on non-Koch flows yields only the trivial records") {
    FrequencyVector rational({FieldElement(Rat(1)), FieldElement(Rat(2))});
    auto records = search_multipliers(rational, 5);
    REQUIRE(records.size() == 2);
    for (const auto& r : records) CHECK(r.min_poly.degree() == 1);
}

TEST_CASE("quadratic fundamental units") {
    FieldElement u2 = quadratic_fundamental_unit(2);
    CHECK(minimal_polynomial(u2) == QPoly::from_int_coeffs({-1, -2, 1})); // 1+sqrt2
    FieldElement u5 = quadratic_fundamental_unit(5);
    CHECK(minimal_polynomial(u5) == QPoly::from_int_coeffs({-1, -1, 1})); // golden ratio
    FieldElement u3 = quadratic_fundamental_unit(3);
    CHECK(minimal_polynomial(u3) == QPoly::from_int_coeffs({1, -4, 1})); // 2+sqrt3
    FieldElement u13 = quadratic_fundamental_unit(13);
    CHECK(minimal_polynomial(u13) == QPoly::from_int_coeffs({-1, -3, 1})); // (3+sqrt13)/2
    for (long d : {2L, 3L, 5L, 13L}) {
        FieldElement u = quadratic_fundamental_unit(d);
        CHECK(is_unit(u));
        CHECK(u > FieldElement(Rat(1)));
    }
    CHECK_THROWS_AS(quadratic_fundamental_unit(4), SemanticError);
    CHECK_THROWS_AS(quadratic_fundamental_unit(12), SemanticError);
}

TEST_CASE("characterization report") {
    auto r1 = check_characterization(golden_flow());
    CHECK(r1.irrational);
    CHECK(r1.fixing_nullspace_trivial);

    auto f = NumberField::create(QPoly::from_int_coeffs({-2, 0, 1}));
    auto r2 = check_characterization(FrequencyVector({f->one(), f->one(), f->generator()}));
    CHECK_FALSE(r2.irrational);
    CHECK(r2.witness.kind == KernelWitness::Kind::matrix);
}

TEST_CASE("degree bound validation") {
    auto f = NumberField::create(QPoly::from_int_coeffs({-2, 0, 1}));
    FieldElement mu = f->generator() + Rat(1);
    CHECK(validate_degree_bound(mu, 3));
    CHECK(validate_degree_bound(mu, 2));

    auto c = NumberField::create(QPoly::from_int_coeffs({-2, 0, 0, 1}));
    FieldElement mc = c->one() + c->generator() + c->generator() * c->generator();
    CHECK(validate_degree_bound(mc, 3));
    CHECK_FALSE(validate_degree_bound(mc, 2)); // degree 3 exceeds n = 2

    CHECK_THROWS_AS(validate_degree_bound(f->one(), 3), SemanticError);
    CHECK_THROWS_AS(validate_degree_bound(-f->one(), 3), SemanticError);
}

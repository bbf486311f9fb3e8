#include "doctest.h"

#include "torsym/errors.hpp"
#include "torsym/flow.hpp"

#include <random>

using namespace torsym;

namespace {

FrequencyVector one_sqrt2() {
    auto f = NumberField::create(QPoly::from_int_coeffs({-2, 0, 1}));
    return FrequencyVector({f->one(), f->generator()});
}

FrequencyVector one_one_sqrt2() {
    auto f = NumberField::create(QPoly::from_int_coeffs({-2, 0, 1}));
    return FrequencyVector({f->one(), f->one(), f->generator()});
}

} // namespace

TEST_CASE("irrationality") {
    CHECK(is_irrational(one_sqrt2()).irrational);
    auto dep = is_irrational(one_one_sqrt2());
    CHECK_FALSE(dep.irrational);
    CHECK(dep.witness_relation == std::vector<Int>{Int(1), Int(-1), Int(0)});
}

TEST_CASE("koch classification of a cubic power basis") {
    auto f = NumberField::create(QPoly::from_int_coeffs({-2, 0, 0, 1})); // x^3 - 2
    FieldElement a = f->generator();
    FrequencyVector d({f->one(), a, a * a});
    KochClassification kc = koch_classify(d);
    CHECK(kc.koch);
    CHECK(kc.generated_degree == 3);
    REQUIRE(kc.koch_field);
    CHECK(kc.koch_field->defining_poly() == QPoly::from_int_coeffs({-2, 0, 0, 1}));
    REQUIRE(kc.scale);
    CHECK(kc.scale->is_one());
    // Certificate: the coordinates form an invertible matrix.
    CHECK(kc.koch_coords.size() == 3);
}

TEST_CASE("koch rejections") {
    // (1, sqrt2, sqrt3) inside Q(sqrt2 + sqrt3): degree 4 != 3.
    auto f = NumberField::create(QPoly::from_int_coeffs({1, 0, -10, 0, 1}));
    FieldElement g = f->generator();
    FieldElement g3 = g * g * g;
    FieldElement sqrt2 = (g3 - g * Rat(9)) * Rat(1, 2);
    FieldElement sqrt3 = (g * Rat(11) - g3) * Rat(1, 2);
    CHECK((sqrt2 * sqrt2).rational_value() == Rat(2));
    CHECK((sqrt3 * sqrt3).rational_value() == Rat(3));
    FrequencyVector d({f->one(), sqrt2, sqrt3});
    KochClassification kc = koch_classify(d);
    CHECK_FALSE(kc.koch);
    CHECK(kc.reason == KochClassification::Reason::field_degree_mismatch);
    CHECK(kc.generated_degree == 4);

    KochClassification dep = koch_classify(one_one_sqrt2());
    CHECK_FALSE(dep.koch);
    CHECK(dep.reason == KochClassification::Reason::components_dependent);

    auto q2 = NumberField::create(QPoly::from_int_coeffs({-2, 0, 1}));
    FrequencyVector withzero({q2->one(), q2->zero(), q2->generator()});
    KochClassification z = koch_classify(withzero);
    CHECK_FALSE(z.koch);
    CHECK(z.reason == KochClassification::Reason::zero_component_pattern);
}

TEST_CASE("koch classification is scale invariant") {
    auto f = NumberField::create(QPoly::from_int_coeffs({-1, -1, 1}));
    FrequencyVector d({f->one(), f->generator()});
    KochClassification base = koch_classify(d);
    REQUIRE(base.koch);
    for (const Rat& c : {Rat(3), Rat(-2, 7), Rat(5, 3)}) {
        KochClassification sc = koch_classify(d.scaled_by(FieldElement(c)));
        CHECK(sc.koch == base.koch);
        REQUIRE(sc.koch_field);
        CHECK(sc.koch_field->defining_poly() == base.koch_field->defining_poly());
    }
}

TEST_CASE("kernel witness for the worked example") {
    KernelWitness w = kernel_witness(one_one_sqrt2());
    REQUIRE(w.kind == KernelWitness::Kind::matrix);
    CHECK(*w.matrix == IntegerMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {1, -1, 1}}));
    CHECK(w.matrix->det() == 1);

    CHECK(kernel_witness(one_sqrt2()).kind == KernelWitness::Kind::none);

    FrequencyVector rational({FieldElement(Rat(2)), FieldElement(Rat(4))});
    CHECK(kernel_witness(rational).kind == KernelWitness::Kind::l_equals_n);
}

TEST_CASE("planted relations always produce witnesses") {
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<long> coeff(-4, 4);
    std::uniform_int_distribution<long> rel(1, 3);
    auto quad = NumberField::create(QPoly::from_int_coeffs({-2, 0, 1}));
    auto cubic = NumberField::create(QPoly::from_int_coeffs({-1, -3, 0, 1}));
    for (int t = 0; t < 60; ++t) {
        FieldPtr f = (t % 2 == 0) ? quad : cubic;
        std::size_t n = 3 + static_cast<std::size_t>(t % 3);
        std::size_t l = 2 + static_cast<std::size_t>(t) % (n - 1);
        std::vector<FieldElement> comps;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Rat> c(static_cast<std::size_t>(f->degree()));
            for (auto& x : c) x = Rat(coeff(rng));
            comps.push_back(f->element(c));
        }
        // Plant a relation on the first l coordinates.
        std::vector<long> k(l);
        for (auto& x : k) x = rel(rng) * (coeff(rng) >= 0 ? 1 : -1);
        FieldElement acc = f->zero();
        for (std::size_t i = 0; i + 1 < l; ++i) acc = acc + comps[i] * Rat(k[i]);
        comps[l - 1] = -(acc / FieldElement(Rat(k[l - 1])));
        bool all_zero = true;
        for (const auto& c : comps)
            if (!c.is_zero()) all_zero = false;
        if (all_zero) continue;
        FrequencyVector d(comps);
        KernelWitness w = kernel_witness(d);
        if (w.kind != KernelWitness::Kind::matrix) continue; // full-support fallback
        const IntegerMatrix& b = *w.matrix;
        CHECK(b != IntegerMatrix::identity(n));
        CHECK(abs(b.det()) == 1);
        // B d = d exactly.
        for (std::size_t i = 0; i < n; ++i) {
            FieldElement got = f->zero();
            for (std::size_t j = 0; j < n; ++j) got = got + d[j] * Rat(b(i, j));
            CHECK(got == d[i]);
        }
    }
}

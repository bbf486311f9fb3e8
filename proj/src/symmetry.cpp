#include "torsym/symmetry.hpp"

#include "torsym/errors.hpp"
#include "torsym/parallel.hpp"

#include <algorithm>

namespace torsym {

std::string SymmetryBuildResult::status_name() const {
    switch (status) {
        case Status::ok: return "ok";
        case Status::not_in_module: return "not_in_module";
        case Status::not_a_unit: return "not_a_unit";
    }
    return "?";
}

std::optional<FieldElement> multiplier_of(const AffineMap& r, const FrequencyVector& d) {
    if (r.dim() != d.dim()) throw SemanticError("map and flow dimensions differ");
    std::size_t n = d.dim();
    const IntegerMatrix& b = r.linear();
    std::vector<FieldElement> w(n, d.field()->zero());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (sign(b(i, j)) == 0) continue;
            w[i] = w[i] + d[j] * Rat(b(i, j));
        }
    std::size_t j0 = 0;
    while (d[j0].is_zero()) ++j0;
    FieldElement mu = w[j0] / d[j0];
    for (std::size_t i = 0; i < n; ++i)
        if (w[i] != mu * d[i]) return std::nullopt;
    if (mu.is_zero())
        throw SemanticError("zero multiplier from an automorphism: corrupted input");
    return mu;
}

SymmetryBuildResult symmetry_from_multiplier(const FieldElement& mu, const FrequencyVector& d) {
    std::size_t n = d.dim();
    auto coords = d.coordinate_vectors();
    if (!integer_relation_basis(coords).empty())
        throw SemanticError("symmetry_from_multiplier needs Q-independent components");
    std::size_t m = coords.front().size();
    QMat basis(m, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) basis(i, j) = coords[j][i];

    FieldElement mu_local = d.field()->zero() + mu;

    SymmetryBuildResult out;
    IntegerMatrix b(n);
    for (std::size_t i = 0; i < n; ++i) {
        FieldElement target = mu_local * d[i];
        auto sol = solve(basis, target.coords());
        if (!sol) {
            out.status = SymmetryBuildResult::Status::not_in_module;
            return out;
        }
        for (std::size_t j = 0; j < n; ++j) {
            const Rat& v = (*sol)[j];
            if (!is_integer(v)) {
                out.status = SymmetryBuildResult::Status::not_in_module;
                out.offending_entry = v;
                return out;
            }
            b(i, j) = v.get_num();
        }
    }
    Int det = b.det();
    if (det != 1 && det != -1) {
        out.status = SymmetryBuildResult::Status::not_a_unit;
        out.determinant = det;
        return out;
    }
    out.matrix = std::move(b);
    return out;
}

MultiplierRecord make_record(const FieldElement& mu, IntegerMatrix b) {
    MultiplierRecord rec;
    rec.mu = mu;
    rec.matrix = std::move(b);
    rec.min_poly = minimal_polynomial(mu);
    rec.degree = rec.min_poly.degree();
    rec.abs_log = log_abs(mu);
    rec.abs_log_str = log_abs_decimal(mu, 30);
    return rec;
}

std::vector<MultiplierRecord> search_multipliers(const FrequencyVector& d, long coeff_bound,
                                                 unsigned threads) {
    if (coeff_bound < 1) throw SemanticError("coefficient bound must be >= 1");
    std::size_t n = d.dim();

    std::vector<MultiplierRecord> records;
    auto push_trivial = [&](long s) {
        IntegerMatrix b = IntegerMatrix::identity(n);
        if (s < 0) b = -b;
        records.push_back(make_record(d.field()->from_rat(Rat(s)), std::move(b)));
    };

    KochClassification kc = koch_classify(d);
    if (!kc.koch) {
        push_trivial(1);
        push_trivial(-1);
        return records;
    }

    const FieldElement gamma = *kc.primitive_element; // ambient presentation
    int deg = kc.koch_field->degree();
    std::vector<FieldElement> gamma_pow;
    {
        FieldElement acc = d.field()->one();
        for (int k = 0; k < deg; ++k) {
            gamma_pow.push_back(acc);
            acc = acc * gamma;
        }
    }

    // Candidate lattice [-K, K]^deg over the Koch power basis.
    std::size_t stride = static_cast<std::size_t>(2 * coeff_bound + 1);
    std::size_t total = 1;
    for (int k = 0; k < deg; ++k) total *= stride;

    auto worker = [&](std::size_t lo, std::size_t hi) {
        std::vector<MultiplierRecord> found;
        for (std::size_t t = lo; t < hi; ++t) {
            std::size_t rest = t;
            FieldElement mu = d.field()->zero();
            bool all_zero = true;
            for (int k = 0; k < deg; ++k) {
                long c = static_cast<long>(rest % stride) - coeff_bound;
                rest /= stride;
                if (c != 0) {
                    mu = mu + gamma_pow[static_cast<std::size_t>(k)] * Rat(c);
                    all_zero = false;
                }
            }
            if (all_zero || mu.is_zero()) continue;
            if (!is_algebraic_integer(mu)) continue;
            if (rat_abs(norm(mu)) != 1) continue;
            auto built = symmetry_from_multiplier(mu, d);
            if (!built.ok()) continue;
            found.push_back(make_record(mu, std::move(*built.matrix)));
        }
        return found;
    };
    records = parallel_collect<MultiplierRecord>(total, threads, worker);

    std::sort(records.begin(), records.end(), [](const MultiplierRecord& a, const MultiplierRecord& b) {
        FieldElement aa = a.mu.abs(), bb = b.mu.abs();
        FieldElement ma = aa;
        {
            FieldElement inv = aa.inverse();
            if (inv > ma) ma = inv;
        }
        FieldElement mb = bb;
        {
            FieldElement inv = bb.inverse();
            if (inv > mb) mb = inv;
        }
        if (ma < mb) return true;
        if (mb < ma) return false;
        return a.mu.coords() < b.mu.coords();
    });
    return records;
}

FieldElement quadratic_fundamental_unit(long d_value) {
    if (d_value <= 1) throw SemanticError("discriminant parameter must be > 1");
    for (long f = 2; f * f <= d_value; ++f)
        if (d_value % (f * f) == 0) throw SemanticError("parameter must be squarefree");

    FieldPtr field = NumberField::create(QPoly::from_int_coeffs({-d_value, 0, 1})); // x^2 - D, root sqrt(D)
    Int s;
    mpz_sqrt(s.get_mpz_t(), Int(d_value).get_mpz_t());
    long isqrt = s.get_si();

    // Reduced quadratic irrational theta = (P + sqrt(D)) / Q.
    long p0, q0;
    if (d_value % 4 == 1) {
        p0 = (isqrt % 2 != 0) ? isqrt : isqrt - 1;
        q0 = 2;
    } else {
        p0 = isqrt;
        q0 = 1;
    }

    // Continued fraction of theta; purely periodic since theta is reduced.
    std::vector<Int> as;
    long p = p0, q = q0;
    for (;;) {
        long a = (p + isqrt) / q; // floor((P + sqrt(D)) / Q) for Q > 0
        as.emplace_back(a);
        long pn = a * q - p;
        long qn = static_cast<long>((d_value - pn * pn) / q);
        p = pn;
        q = qn;
        if (p == p0 && q == q0) break;
    }

    // Convergents p_k / q_k over one full period.
    Int pm1(1), pm2(0), qm1(0), qm2(1);
    for (const Int& a : as) {
        Int pn = a * pm1 + pm2;
        Int qn = a * qm1 + qm2;
        pm2 = pm1;
        pm1 = pn;
        qm2 = qm1;
        qm1 = qn;
    }
    // Unit = q_{l-1} * theta + q_{l-2}; theta = (p0 + sqrt(D)) / q0.
    FieldElement theta = (field->generator() + Rat(p0)) * Rat(1, q0);
    FieldElement unit = theta * Rat(qm1) + FieldElement(Rat(qm2));
    if (!is_unit(unit)) throw std::logic_error("continued fraction did not produce a unit");
    return unit;
}

CharacterizationReport check_characterization(const FrequencyVector& d) {
    CharacterizationReport rep;
    IrrationalityResult irr = is_irrational(d);
    rep.irrational = irr.irrational;
    if (irr.irrational) {
        rep.fixing_nullspace_trivial = true;
        return rep;
    }
    rep.relation = irr.witness_relation;
    rep.witness = kernel_witness(d);
    return rep;
}

bool validate_degree_bound(const FieldElement& mu, int n) {
    QPoly mp = minimal_polynomial(mu);
    if (mp == QPoly::from_int_coeffs({-1, 1}) || mp == QPoly::from_int_coeffs({1, 1}))
        throw SemanticError("validate_degree_bound requires |mu| != 1");
    if (!is_algebraic_integer(mu)) return false;
    return 2 <= mp.degree() && mp.degree() <= n;
}

} // namespace torsym

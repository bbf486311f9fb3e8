#include "torsym/action.hpp"

#include "torsym/circle.hpp"
#include "torsym/errors.hpp"
#include "torsym/factorization.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <mpfr.h>

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace torsym {

namespace {

std::string word_str(const std::vector<long>& e) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) os << ",";
        os << e[i];
    }
    os << "]";
    return os.str();
}

// All exponent vectors in [-K, K]^d \ {0}, ordered by max-norm then lex.
std::vector<std::vector<long>> exponent_words(std::size_t d, int bound) {
    std::vector<std::vector<long>> words;
    std::vector<long> e(d, -bound);
    for (;;) {
        bool zero = std::all_of(e.begin(), e.end(), [](long x) { return x == 0; });
        if (!zero) words.push_back(e);
        std::size_t k = 0;
        while (k < d && ++e[k] > bound) {
            e[k] = -bound;
            ++k;
        }
        if (k == d) break;
    }
    std::sort(words.begin(), words.end(), [](const auto& a, const auto& b) {
        long ma = 0, mb = 0;
        for (long x : a) ma = std::max(ma, std::labs(x));
        for (long x : b) mb = std::max(mb, std::labs(x));
        if (ma != mb) return ma < mb;
        return a < b;
    });
    return words;
}

// Exponent words with the plain generators promoted to the front.
std::vector<std::vector<long>> generator_first_words(std::size_t d, int bound) {
    std::vector<std::vector<long>> order;
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<long> e(d, 0);
        e[i] = 1;
        order.push_back(std::move(e));
    }
    for (auto& e : exponent_words(d, bound)) {
        if (std::find(order.begin(), order.end(), e) == order.end()) order.push_back(std::move(e));
    }
    return order;
}

// Word evaluation with cached generator powers.
class WordEvaluator {
  public:
    WordEvaluator(const std::vector<AffineMap>& gens, int bound) {
        for (const AffineMap& g : gens) {
            std::map<long, AffineMap> table;
            table.emplace(0, AffineMap(IntegerMatrix::identity(g.dim())));
            AffineMap fwd = g, bwd = g.inverse();
            AffineMap accf = fwd, accb = bwd;
            for (int k = 1; k <= bound; ++k) {
                table.emplace(k, accf);
                table.emplace(-k, accb);
                if (k < bound) {
                    accf = accf.compose(fwd);
                    accb = accb.compose(bwd);
                }
            }
            powers_.push_back(std::move(table));
        }
    }

    AffineMap eval(const std::vector<long>& e) const {
        AffineMap acc = powers_[0].at(e[0]);
        for (std::size_t i = 1; i < e.size(); ++i) acc = acc.compose(powers_[i].at(e[i]));
        return acc;
    }

  private:
    std::vector<std::map<long, AffineMap>> powers_;
};

// Coefficients of f(s * x) as a polynomial over the element's field.
Poly<FieldElement> scale_poly_by(const QPoly& f, const FieldElement& s) {
    std::vector<FieldElement> c;
    c.reserve(static_cast<std::size_t>(f.degree()) + 1);
    FieldElement pw(Rat(1));
    if (s.field()) pw = s.field()->one();
    for (int k = 0; k <= f.degree(); ++k) {
        c.push_back(pw * f[static_cast<std::size_t>(k)]);
        pw = pw * s;
    }
    return Poly<FieldElement>(std::move(c));
}

// Rank of the log-modulus matrix of commuting generators via a generic
// combination's eigenbasis; -1 when no numerically sound basis is found.
int log_modulus_numeric_rank(const std::vector<AffineMap>& gens) {
    std::size_t d = gens.size(), n = gens.front().dim();
    std::mt19937_64 rng(0x5eedbeef);
    std::uniform_real_distribution<double> weight(0.25, 1.75);
    std::vector<Eigen::MatrixXd> bs;
    for (const AffineMap& g : gens) {
        Eigen::MatrixXd b(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                b(static_cast<long>(i), static_cast<long>(j)) = g.linear()(i, j).get_d();
        bs.push_back(std::move(b));
    }
    for (int attempt = 0; attempt < 12; ++attempt) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        for (const auto& b : bs) m += weight(rng) * b;
        Eigen::EigenSolver<Eigen::MatrixXd> es(m);
        if (es.info() != Eigen::Success) continue;
        Eigen::VectorXcd ev = es.eigenvalues();
        double scale = ev.cwiseAbs().maxCoeff();
        double gap = 1e300;
        for (long i = 0; i < ev.size(); ++i)
            for (long j = i + 1; j < ev.size(); ++j) gap = std::min(gap, std::abs(ev(i) - ev(j)));
        if (gap < 1e-6 * std::max(1.0, scale)) continue;
        Eigen::MatrixXcd v = es.eigenvectors();
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(v);
        Eigen::MatrixXd logs(d, n);
        bool ok = true;
        for (std::size_t i = 0; i < d && ok; ++i) {
            Eigen::MatrixXcd diag = lu.solve(bs[i].cast<std::complex<double>>() * v);
            for (std::size_t j = 0; j < n; ++j) {
                std::complex<double> lam = diag(static_cast<long>(j), static_cast<long>(j));
                // Off-diagonal residue signals a defective basis.
                double off = 0;
                for (std::size_t k = 0; k < n; ++k)
                    if (k != j) off = std::max(off, std::abs(diag(static_cast<long>(k), static_cast<long>(j))));
                if (off > 1e-7 * std::max(1.0, std::abs(lam))) {
                    ok = false;
                    break;
                }
                logs(static_cast<long>(i), static_cast<long>(j)) = std::log(std::abs(lam));
            }
        }
        if (!ok) continue;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(logs);
        double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
        int rank = 0;
        for (long k = 0; k < svd.singularValues().size(); ++k)
            if (svd.singularValues()(k) > 1e-9 * std::max(1.0, smax)) ++rank;
        return rank;
    }
    return -1;
}

} // namespace

std::optional<std::pair<std::size_t, std::size_t>> ZdActionSpec::noncommuting_pair() const {
    for (std::size_t i = 0; i < generators.size(); ++i)
        for (std::size_t j = i + 1; j < generators.size(); ++j)
            if (!generators[i].commutes_with(generators[j])) return std::make_pair(i, j);
    return std::nullopt;
}

std::string RankCertificate::kind_name() const {
    switch (kind) {
        case Kind::certified_free_abelian: return "certified_free_abelian";
        case Kind::numeric_rank: return "numeric_rank";
        case Kind::inconclusive: return "inconclusive";
    }
    return "?";
}

ActionReport verify_action(const ZdActionSpec& spec, int word_bound, unsigned threads) {
    (void)threads;
    if (spec.generators.empty()) throw SemanticError("action needs at least one generator");
    for (const AffineMap& g : spec.generators)
        if (g.dim() != spec.dim()) throw SemanticError("generators act on different tori");
    if (auto bad = spec.noncommuting_pair())
        throw ActionStructureError("generators " + std::to_string(bad->first) + " and " +
                                   std::to_string(bad->second) + " do not commute");

    ActionReport rep;
    rep.commuting = true;
    rep.word_bound = word_bound;

    WordEvaluator eval(spec.generators, word_bound);
    AffineMap id(IntegerMatrix::identity(spec.dim()));
    std::optional<std::vector<long>> relation;
    for (const auto& e : generator_first_words(spec.rank(), word_bound)) {
        AffineMap w = eval.eval(e);
        if (!rep.anosov_element && classify_hyperbolicity(w.linear()).is_anosov())
            rep.anosov_element = GeneratorWord{e, w};
        if (!rep.irreducible_element && is_irreducible(w.linear().characteristic_polynomial()))
            rep.irreducible_element = GeneratorWord{e, w};
        if (!relation && w == id) relation = e;
    }

    rep.rank_certificate.word_bound = word_bound;
    int numeric = log_modulus_numeric_rank(spec.generators);
    rep.rank_certificate.numeric_rank = std::max(numeric, 0);
    if (relation) {
        rep.rank_certificate.kind = RankCertificate::Kind::numeric_rank;
        rep.rank_certificate.relation_word = relation;
    } else if (numeric == static_cast<int>(spec.rank())) {
        rep.rank_certificate.kind = RankCertificate::Kind::certified_free_abelian;
    } else {
        rep.rank_certificate.kind = RankCertificate::Kind::inconclusive;
    }
    rep.higher_rank = rep.rank_certificate.kind == RankCertificate::Kind::certified_free_abelian &&
                      spec.rank() >= 2;
    return rep;
}

LinearizationResult common_fixed_point(const ZdActionSpec& spec, int word_bound) {
    if (spec.generators.empty()) throw SemanticError("action needs at least one generator");
    if (auto bad = spec.noncommuting_pair())
        throw ActionStructureError("generators " + std::to_string(bad->first) + " and " +
                                   std::to_string(bad->second) + " do not commute");

    WordEvaluator eval(spec.generators, word_bound);
    std::optional<GeneratorWord> anosov;
    for (const auto& e : generator_first_words(spec.rank(), word_bound)) {
        AffineMap w = eval.eval(e);
        if (classify_hyperbolicity(w.linear()).is_anosov()) {
            anosov = GeneratorWord{e, w};
            break;
        }
    }
    if (!anosov) throw SemanticError("no Anosov element found within the word bound");

    FixedPointSet fps = fixed_points(anosov->map);
    if (!fps.finite || fps.points.empty())
        throw SemanticError("Anosov element has no finite nonempty fixed set");

    auto locate = [&](const std::vector<Rat>& p) -> std::size_t {
        auto it = std::lower_bound(fps.points.begin(), fps.points.end(), p);
        if (it == fps.points.end() || *it != p)
            throw ActionStructureError("generator does not permute the fixed set");
        return static_cast<std::size_t>(it - fps.points.begin());
    };

    // Each generator permutes the fixed set of the Anosov element.
    for (const AffineMap& g : spec.generators)
        for (const auto& p : fps.points) locate(g.apply(p));

    std::vector<Rat> base = fps.points.front();
    std::vector<Rat> neg;
    for (const Rat& c : base) neg.push_back(-c);
    AffineMap t_neg(IntegerMatrix::identity(spec.dim()), mod1(neg));
    AffineMap t_pos(IntegerMatrix::identity(spec.dim()), base);
    LinearizationResult out{*anosov, fps.points, base, {}, t_neg, {}};

    for (const AffineMap& g : spec.generators) {
        long r = 1;
        std::vector<Rat> p = g.apply(out.base_point);
        while (p != out.base_point) {
            p = g.apply(p);
            ++r;
            if (r > static_cast<long>(fps.points.size()))
                throw ActionStructureError("orbit of the base point left the fixed set");
        }
        out.exponents.push_back(r);
        AffineMap conj = out.conjugator.compose(g.pow(r)).compose(t_pos);
        if (!conj.is_linear())
            throw std::logic_error("conjugated power kept a translation part");
        out.algebraic_generators.push_back(conj.linear());
    }
    return out;
}

namespace {

struct AlgebraicReal {
    QPoly poly; // squarefree; exactly one root in iv; endpoints are not roots
    Interval iv;

    void refine() { iv = bisect_root_interval(poly, iv); }
};

bool algebraic_equal(AlgebraicReal a, AlgebraicReal b) {
    QPoly g = poly_gcd(a.poly, b.poly);
    bool may_share = g.degree() >= 1;
    for (;;) {
        if (a.iv.hi < b.iv.lo || b.iv.hi < a.iv.lo) return false;
        if (may_share) {
            Rat lo = std::min(a.iv.lo, b.iv.lo), hi = std::max(a.iv.hi, b.iv.hi);
            if (count_real_roots_open(a.poly, lo, hi) == 1 &&
                count_real_roots_open(b.poly, lo, hi) == 1 && count_real_roots_open(g, lo, hi) >= 1)
                return true;
        }
        a.refine();
        b.refine();
    }
}

// log of a positive algebraic number (halved when the number is a squared
// modulus), at high precision.
std::pair<double, std::string> log_rendering(AlgebraicReal x, bool halve, int digits) {
    while (sign(x.iv.lo) <= 0) x.refine();
    Rat eps = x.iv.lo;
    for (int i = 0; i < digits + 8; ++i) eps /= 10;
    x.iv = refine_root_interval(x.poly, x.iv, eps);
    mpfr_t v, r;
    mpfr_init2(v, 256);
    mpfr_init2(r, 256);
    mpfr_set_q(v, x.iv.mid().get_mpq_t(), MPFR_RNDN);
    mpfr_log(r, v, MPFR_RNDN);
    if (halve) mpfr_div_ui(r, r, 2, MPFR_RNDN);
    double d = mpfr_get_d(r, MPFR_RNDN);
    char buf[160];
    mpfr_snprintf(buf, sizeof(buf), "%.*Rg", digits, r);
    mpfr_clear(v);
    mpfr_clear(r);
    return {d, std::string(buf)};
}

// P(y) = Res_x(q(x), x^m q(y/x)): roots are all pairwise products of the
// roots of q. Computed by evaluation-interpolation.
QPoly pair_product_resultant(const QPoly& q) {
    int m = q.degree();
    int deg = m * m;
    std::vector<Rat> xs, ys;
    for (long t = 0; static_cast<int>(xs.size()) < deg + 1; ++t) {
        Rat y(t);
        std::vector<Rat> h(static_cast<std::size_t>(m) + 1, Rat(0));
        for (int k = 0; k <= m; ++k)
            h[static_cast<std::size_t>(m - k)] =
                q[static_cast<std::size_t>(k)] * rat_pow(y, static_cast<unsigned long>(k));
        xs.push_back(y);
        ys.push_back(resultant(q, QPoly(std::move(h))));
    }
    // Lagrange interpolation (exact).
    QPoly acc = QPoly::zero();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        QPoly term(std::vector<Rat>{ys[i]});
        if (ys[i] == 0) continue;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (i == j) continue;
            term = term * QPoly(std::vector<Rat>{-xs[j], Rat(1)});
            term = term * (Rat(1) / (xs[i] - xs[j]));
        }
        acc = acc + term;
    }
    return acc;
}

} // namespace

std::vector<SpectrumEntry> oseledets_spectrum(const IntegerMatrix& b) {
    if (!b.is_unimodular()) throw SemanticError("spectrum requires a GL(n,Z) matrix");
    std::size_t n = b.dim();
    QPoly f = b.characteristic_polynomial();
    auto factors = factor_over_q(f);

    std::vector<SpectrumEntry> out;
    int accounted = 0;

    int unit = unit_circle_root_count(f);
    if (unit > 0) {
        out.push_back({0.0, "0", unit});
        accounted += unit;
    }

    // Radii realized by real eigenvalues: count everything on those
    // circles by an exact unit-circle query over the root's field.
    std::vector<FieldElement> radii;
    auto add_radius = [&](const FieldElement& rep) {
        for (const auto& r : radii)
            if (same_real(r, rep)) return;
        radii.push_back(rep);
    };
    for (const auto& [q, mult] : factors) {
        if (q.degree() == 1) {
            Rat root = -q[0];
            if (rat_abs(root) != 1) add_radius(FieldElement(rat_abs(root)));
            continue;
        }
        for (const Interval& iv : isolate_real_roots(q)) {
            FieldPtr fld = NumberField::create(q, iv);
            add_radius(fld->generator().abs());
        }
    }
    for (const FieldElement& rho : radii) {
        int count = unit_circle_root_count(scale_poly_by(f, rho));
        out.push_back({log_abs(rho), log_abs_decimal(rho, 30), count});
        accounted += count;
    }

    // Complex conjugate pairs away from all real-eigenvalue circles.
    if (accounted < static_cast<int>(n)) {
        std::vector<std::pair<AlgebraicReal, int>> classes; // squared modulus -> count
        for (const auto& [q, mult] : factors) {
            int m = q.degree();
            if (m < 2) continue;
            // Double-precision root estimates from the companion matrix.
            Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(m, m);
            for (int i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
            for (int i = 0; i < m; ++i)
                comp(i, m - 1) = -to_double(q[static_cast<std::size_t>(i)]);
            Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
            std::vector<double> mods2;
            for (int i = 0; i < m; ++i) {
                std::complex<double> lam = es.eigenvalues()(i);
                if (lam.imag() <= 1e-9) continue; // one representative per pair
                mods2.push_back(std::norm(lam));
            }
            if (mods2.empty()) continue;
            // Pairs already counted on the unit circle or a real circle.
            std::vector<double> skip{1.0};
            for (const FieldElement& rho : radii) {
                double r = rho.to_double();
                skip.push_back(r * r);
            }
            QPoly pp = squarefree_part(pair_product_resultant(q));
            std::vector<Interval> slots = isolate_real_roots(pp);
            for (std::size_t s = 0; s < slots.size(); ++s) {
                Rat eps = std::max(slots[s].width(), Rat(1));
                for (int t = 0; t < 18; ++t) eps /= 10;
                slots[s] = refine_root_interval(pp, slots[s], eps);
            }
            for (double m2 : mods2) {
                bool covered = false;
                for (double s : skip) covered = covered || std::abs(m2 - s) < 1e-9 * std::max(1.0, s);
                if (covered) continue;
                int found = -1;
                for (std::size_t s = 0; s < slots.size(); ++s) {
                    double lo = to_double(slots[s].lo), hi = to_double(slots[s].hi);
                    if (m2 > lo - 2e-9 && m2 < hi + 2e-9) {
                        if (found >= 0) throw NumericError("ambiguous modulus grouping");
                        found = static_cast<int>(s);
                    }
                }
                if (found < 0) throw NumericError("complex modulus did not match the resultant");
                AlgebraicReal key{pp, slots[static_cast<std::size_t>(found)]};
                bool merged = false;
                for (auto& [k, c] : classes) {
                    if (algebraic_equal(k, key)) {
                        c += 2 * mult;
                        merged = true;
                        break;
                    }
                }
                if (!merged) classes.emplace_back(key, 2 * mult);
            }
        }
        for (const auto& [k, c] : classes) {
            auto [lg, str] = log_rendering(k, true, 30);
            out.push_back({lg, str, c});
            accounted += c;
        }
    }

    if (accounted != static_cast<int>(n))
        throw NumericError("spectrum multiplicities failed the conservation check");
    std::sort(out.begin(), out.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
        return a.log_modulus > b.log_modulus;
    });
    return out;
}

bool multiplicity_one_check(const IntegerMatrix& b, const FieldElement& mu) {
    QPoly f = b.characteristic_polynomial();
    if (mu.is_zero() || !eval_at(f, mu).is_zero())
        throw SemanticError("multiplier is not an eigenvalue of the matrix");
    return unit_circle_root_count(scale_poly_by(f, mu)) == 1;
}

EigenvectorFlow eigenvector_field(const IntegerMatrix& b, std::optional<Interval> root_hint) {
    QPoly f = b.characteristic_polynomial();
    if (!is_irreducible(f))
        throw SemanticError("eigenvector_field requires an irreducible characteristic polynomial");
    FieldPtr field = NumberField::create(f, std::move(root_hint));
    FieldElement lambda = field->generator();
    std::size_t n = b.dim();
    Mat<FieldElement> m(n, n, field->zero());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = field->from_rat(Rat(b(i, j)));
            if (i == j) m(i, j) = m(i, j) - lambda;
        }
    auto basis = nullspace(m);
    if (basis.size() != 1) throw std::logic_error("eigenspace dimension is not one");
    std::vector<FieldElement> v = basis.front();
    std::size_t j0 = 0;
    while (v[j0].is_zero()) ++j0;
    FieldElement inv = v[j0].inverse();
    for (auto& x : v) x = x * inv;

    // B v = lambda v, exactly.
    for (std::size_t i = 0; i < n; ++i) {
        FieldElement got = field->zero();
        for (std::size_t j = 0; j < n; ++j) got = got + v[j] * Rat(b(i, j));
        if (got != lambda * v[i]) throw std::logic_error("eigenvector verification failed");
    }
    // The components form a Q-basis of the field (Koch certificate).
    QMat coords(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) coords(i, j) = v[i].coords()[j];
    if (coeff_is_zero(determinant(coords)))
        throw std::logic_error("eigenvector components are not a Q-basis");

    return {field, FrequencyVector(std::move(v))};
}

const FlowClassificationReport::Clause* FlowClassificationReport::failed_clause() const {
    for (const auto& c : clauses)
        if (!c.pass) return &c;
    return nullptr;
}

FlowClassificationReport classify_invariant_flow(const ZdActionSpec& spec, const FrequencyVector& d,
                                                 int word_bound, unsigned threads) {
    (void)threads;
    FlowClassificationReport rep;
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        rep.clauses.push_back({name, pass, detail});
        return pass;
    };

    if (spec.generators.empty()) {
        add("commuting", false, "no generators");
        return rep;
    }
    auto bad = spec.noncommuting_pair();
    if (!add("commuting", !bad,
             bad ? "generators " + std::to_string(bad->first) + "," + std::to_string(bad->second)
                 : "all pairs commute"))
        return rep;

    bool all_mult = true;
    std::string detail = "every generator scales the flow";
    for (std::size_t i = 0; i < spec.generators.size(); ++i) {
        auto mu = multiplier_of(spec.generators[i], d);
        if (!mu) {
            all_mult = false;
            detail = "generator " + std::to_string(i) + " does not scale the flow";
            break;
        }
    }
    if (!add("generators_have_multipliers", all_mult, detail)) return rep;

    WordEvaluator eval(spec.generators, word_bound);
    auto words = generator_first_words(spec.rank(), word_bound);

    std::optional<GeneratorWord> anosov;
    for (const auto& e : words) {
        AffineMap w = eval.eval(e);
        if (classify_hyperbolicity(w.linear()).is_anosov()) {
            anosov = GeneratorWord{e, w};
            break;
        }
    }
    rep.anosov_element = anosov;
    if (!add("anosov_element", anosov.has_value(),
             anosov ? "word " + word_str(anosov->exponents) : "no Anosov word within bound"))
        return rep;

    auto mu_a = multiplier_of(anosov->map, d);
    rep.anosov_record = make_record(*mu_a, anosov->map.linear());
    bool m1 = multiplicity_one_check(anosov->map.linear(), *mu_a);
    if (!add("multiplicity_one", m1,
             m1 ? "log|mu| has multiplicity one" : "another eigenvalue shares |mu|"))
        return rep;

    std::optional<GeneratorWord> irred;
    for (const auto& e : words) {
        AffineMap w = eval.eval(e);
        if (is_irreducible(w.linear().characteristic_polynomial())) {
            irred = GeneratorWord{e, w};
            break;
        }
    }
    rep.irreducible_element = irred;
    if (!add("irreducible_element", irred.has_value(),
             irred ? "word " + word_str(irred->exponents) : "no irreducible word within bound"))
        return rep;

    // The designated eigenvector of the irreducible element must carry the
    // flow direction.
    auto mu_b = multiplier_of(irred->map, d);
    QPoly charp = irred->map.linear().characteristic_polynomial();
    auto slots = isolate_real_roots(charp);
    std::optional<Interval> hint;
    {
        Rat eps(1, 1024);
        for (;;) {
            Interval iv = mu_b->enclosure(eps);
            int inside = -1, touching = 0;
            for (std::size_t s = 0; s < slots.size(); ++s) {
                if (iv.disjoint(slots[s])) continue;
                ++touching;
                if (slots[s].lo < iv.lo && iv.hi < slots[s].hi) inside = static_cast<int>(s);
            }
            if (touching == 1 && inside >= 0) {
                hint = slots[static_cast<std::size_t>(inside)];
                break;
            }
            eps /= 16;
        }
    }
    EigenvectorFlow ev = eigenvector_field(irred->map.linear(), hint);
    bool parallel = true;
    {
        const auto& v = ev.flow;
        std::size_t j0 = d.dim();
        for (std::size_t i = 0; i < d.dim(); ++i) {
            bool dz = d[i].is_zero(), vz = v[i].is_zero();
            if (dz != vz) parallel = false;
            if (!dz && !vz && j0 == d.dim()) j0 = i;
        }
        if (parallel && j0 < d.dim()) {
            FieldElement dinv = d[j0].inverse(), vinv = v[j0].inverse();
            for (std::size_t i = 0; i < d.dim() && parallel; ++i) {
                if (d[i].is_zero()) continue;
                parallel = same_real(d[i] * dinv, v[i] * vinv);
            }
        }
    }
    if (!add("eigenvector_parallel", parallel,
             parallel ? "flow direction matches the designated eigenvector"
                      : "flow not parallel to the eigenvector"))
        return rep;

    // The final verdict reports the flow's own presentation (primitive
    // element search over the components, no preference).
    KochClassification kc = koch_classify(d);
    rep.koch = kc;
    add("koch", kc.koch,
        kc.koch ? "degree " + std::to_string(kc.koch_field->degree()) + " field " +
                      kc.koch_field->defining_poly().str()
                : "reason: " + kc.reason_name());
    rep.all_pass = kc.koch;
    return rep;
}

} // namespace torsym

#include "torsym/number_field.hpp"

#include "torsym/factorization.hpp"

#include <mpfr.h>

#include <algorithm>
#include <sstream>

namespace torsym {

namespace {

QPoly coords_to_poly(const std::vector<Rat>& c) {
    return QPoly(c);
}

std::vector<Rat> poly_to_coords(const QPoly& p, int degree) {
    std::vector<Rat> c(static_cast<std::size_t>(degree), Rat(0));
    for (int i = 0; i <= p.degree(); ++i) c[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)];
    return c;
}

// Refine iv (an isolating interval of the squarefree f) until it is
// contained in the open target or disjoint from it. The target's endpoints
// must not be roots of f.
bool refines_into(const QPoly& f, Interval iv, const Interval& target) {
    for (;;) {
        if (target.lo < iv.lo && iv.hi < target.hi) return true;
        if (iv.hi < target.lo || target.hi < iv.lo) return false;
        iv = bisect_root_interval(f, iv);
    }
}

} // namespace

std::shared_ptr<const NumberField> NumberField::create(QPoly f, std::optional<Interval> root_hint) {
    if (f.is_zero() || f.degree() < 1)
        throw std::invalid_argument("defining polynomial must have degree >= 1");
    if (!f.is_monic()) throw std::invalid_argument("defining polynomial must be monic");
    if (f.degree() > 1 && !is_irreducible(f))
        throw std::invalid_argument("defining polynomial must be irreducible over Q");
    auto roots = isolate_real_roots(f);
    if (roots.empty()) throw std::invalid_argument("defining polynomial has no real root");
    Interval designated;
    bool default_root = !root_hint.has_value();
    if (root_hint) {
        if (sign(f.eval_at_rat(root_hint->lo)) == 0 || sign(f.eval_at_rat(root_hint->hi)) == 0)
            throw std::invalid_argument("root_hint endpoint is itself a root");
        int inside = 0;
        for (const auto& iv : roots) {
            if (refines_into(f, iv, *root_hint)) {
                ++inside;
                designated = refine_root_interval(f, iv, root_hint->width());
            }
        }
        if (inside != 1)
            throw std::invalid_argument("root_hint must isolate exactly one real root");
    } else {
        designated = roots.back(); // largest real root
    }
    return std::shared_ptr<const NumberField>(
        new NumberField(std::move(f), std::move(designated), default_root));
}

std::shared_ptr<const NumberField> NumberField::rationals() {
    static const std::shared_ptr<const NumberField> q(
        new NumberField(QPoly::from_int_coeffs({0, 1}), Interval(Rat(-1), Rat(1)), true));
    return q;
}

Interval NumberField::root_interval() const {
    std::lock_guard<std::mutex> lock(mu_);
    return root_;
}

Interval NumberField::refine_root(const Rat& eps) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (degree() == 1) {
        // Exact rational root.
        Rat r = -poly_[0];
        root_ = Interval(r, r);
        return root_;
    }
    while (root_.width() > eps) root_ = bisect_root_interval(poly_, root_);
    return root_;
}

FieldElement NumberField::zero() const { return from_rat(Rat(0)); }
FieldElement NumberField::one() const { return from_rat(Rat(1)); }

FieldElement NumberField::from_rat(const Rat& r) const {
    std::vector<Rat> c(static_cast<std::size_t>(degree()), Rat(0));
    c[0] = r;
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement NumberField::generator() const {
    if (degree() == 1) return from_rat(-poly_[0]);
    std::vector<Rat> c(static_cast<std::size_t>(degree()), Rat(0));
    c[1] = Rat(1);
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement NumberField::element(std::vector<Rat> coords) const {
    if (coords.size() != static_cast<std::size_t>(degree()))
        throw std::invalid_argument("coordinate vector length must equal field degree");
    return FieldElement(shared_from_this(), std::move(coords));
}

FieldElement NumberField::from_poly(const QPoly& g) const {
    QPoly r = g % poly_;
    return FieldElement(shared_from_this(), poly_to_coords(r, degree()));
}

std::string NumberField::str() const {
    std::ostringstream os;
    os << "Q[x]/(" << poly_.str() << ")";
    return os.str();
}

// --- FieldElement --------------------------------------------------------

FieldElement::FieldElement(FieldPtr field, std::vector<Rat> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
    if (!field_) throw std::invalid_argument("null field");
    if (coords_.size() != static_cast<std::size_t>(field_->degree()))
        throw std::invalid_argument("coordinate vector length must equal field degree");
}

bool FieldElement::is_rational() const {
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (torsym::sign(coords_[i]) != 0) return false;
    return true;
}

Rat FieldElement::rational_value() const {
    if (field_ && field_->degree() > 1) {
        if (!is_rational()) throw std::logic_error("element is not rational");
        return coords_[0];
    }
    if (field_ && field_->degree() == 1) {
        // value = c0 + c1*r is impossible here (degree-1 coords have length 1)
        return coords_[0];
    }
    return coords_[0];
}

bool FieldElement::is_zero() const {
    for (const Rat& c : coords_)
        if (torsym::sign(c) != 0) return false;
    return true;
}

bool FieldElement::is_one() const { return (*this - FieldElement(Rat(1))).is_zero(); }

FieldElement FieldElement::promoted(const FieldPtr& f) const {
    if (field_ == f) return *this;
    if (!field_) {
        if (!f) return *this;
        return f->from_rat(coords_[0]);
    }
    throw std::logic_error("promoted: element already has a field");
}

// Brings a and b into a common field. Elements of structurally identical
// fields (same polynomial, same designated root) are merged onto one field
// object; genuinely different fields are an error.
void FieldElement::align(FieldElement& a, FieldElement& b) {
    if (a.field_ == b.field_) return;
    if (!a.field_) {
        a = a.promoted(b.field_);
        return;
    }
    if (!b.field_) {
        b = b.promoted(a.field_);
        return;
    }
    if (a.field_->defining_poly() == b.field_->defining_poly()) {
        // Same presentation; check the designated roots agree.
        Interval ia = a.field_->root_interval();
        Interval ib = b.field_->root_interval();
        const QPoly& f = a.field_->defining_poly();
        // Roots are interior points of both intervals, so refinement of one
        // interval either lands inside the other or separates from it.
        Interval probe = ia;
        for (;;) {
            if (ib.lo < probe.lo && probe.hi < ib.hi) {
                b = FieldElement(a.field_, b.coords_);
                return;
            }
            if (probe.hi < ib.lo || ib.hi < probe.lo) break;
            if (f.degree() == 1) {
                b = FieldElement(a.field_, b.coords_);
                return;
            }
            probe = bisect_root_interval(f, probe);
        }
    }
    throw std::invalid_argument("arithmetic between elements of different fields");
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    for (Rat& c : r.coords_) c = -c;
    return r;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    FieldElement a = *this, b = o;
    align(a, b);
    for (std::size_t i = 0; i < a.coords_.size(); ++i) a.coords_[i] += b.coords_[i];
    return a;
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
    FieldElement a = *this, b = o;
    align(a, b);
    if (!a.field_) return FieldElement(a.coords_[0] * b.coords_[0]);
    QPoly prod = coords_to_poly(a.coords_) * coords_to_poly(b.coords_);
    return a.field_->from_poly(prod);
}

FieldElement FieldElement::operator*(const Rat& s) const {
    FieldElement r = *this;
    for (Rat& c : r.coords_) c *= s;
    return r;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero field element");
    if (!field_) return FieldElement(Rat(1) / coords_[0]);
    if (field_->degree() == 1) {
        FieldElement r = *this;
        r.coords_[0] = Rat(1) / r.coords_[0];
        return r;
    }
    // Extended Euclid: t*g == gcd(f, g) mod f, with gcd a nonzero constant.
    QPoly r0 = field_->defining_poly(), r1 = coords_to_poly(coords_);
    QPoly t0 = QPoly::zero(), t1 = QPoly::one();
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divmod(r1);
        QPoly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.degree() != 0) throw std::logic_error("defining polynomial not irreducible");
    return field_->from_poly(t0 * (Rat(1) / r0.constant_term()));
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

FieldElement FieldElement::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement base = *this;
    FieldElement acc(Rat(1));
    if (field_) acc = field_->one();
    unsigned long u = static_cast<unsigned long>(e);
    while (u) {
        if (u & 1) acc = acc * base;
        base = base * base;
        u >>= 1;
    }
    return acc;
}

int FieldElement::sign() const {
    if (is_zero()) return 0;
    if (!field_ || field_->degree() == 1 || is_rational()) return torsym::sign(rational_value());
    QPoly g = coords_to_poly(coords_);
    Rat eps = field_->root_interval().width();
    for (;;) {
        Interval iv = eval_interval(g, field_->root_interval());
        if (auto s = iv.determined_sign()) return *s;
        eps /= 2;
        field_->refine_root(eps);
    }
}

Interval FieldElement::enclosure(const Rat& eps) const {
    if (!field_ || is_rational()) {
        Rat v = rational_value();
        return {v, v};
    }
    QPoly g = coords_to_poly(coords_);
    Rat w = field_->root_interval().width();
    for (;;) {
        Interval iv = eval_interval(g, field_->root_interval());
        if (iv.width() <= eps) return iv;
        w /= 2;
        field_->refine_root(w);
    }
}

double FieldElement::to_double() const {
    Interval iv = enclosure(Rat(1, Int("1180591620717411303424"))); // 2^-70
    return torsym::to_double(iv.mid());
}

std::string FieldElement::decimal(int significant_digits) const {
    if (is_zero()) return "0";
    // Enclose tightly relative to the magnitude, then render via MPFR.
    Interval rough = enclosure(Rat(1, 1048576));
    Rat mag = std::max(rat_abs(rough.lo), rat_abs(rough.hi));
    Rat eps = mag;
    for (int i = 0; i < significant_digits + 4; ++i) eps /= 10;
    Interval iv = enclosure(eps);
    mpfr_t x;
    mpfr_init2(x, 256);
    mpfr_set_q(x, iv.mid().get_mpq_t(), MPFR_RNDN);
    char buf[128];
    mpfr_snprintf(buf, sizeof(buf), "%.*Rg", significant_digits, x);
    mpfr_clear(x);
    return buf;
}

QMat FieldElement::multiplication_matrix() const {
    if (!field_) {
        QMat m(1, 1);
        m(0, 0) = coords_[0];
        return m;
    }
    std::size_t n = static_cast<std::size_t>(field_->degree());
    QMat m(n, n);
    FieldElement col = *this;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) m(i, j) = col.coords_[i];
        if (j + 1 < n) col = col * field_->generator();
    }
    return m;
}

std::string FieldElement::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) os << ", ";
        os << format_rational(coords_[i]);
    }
    os << "]";
    return os.str();
}

// --- free operations ------------------------------------------------------

std::vector<Interval> real_roots(const QPoly& p) {
    if (p.is_zero() || p.degree() < 1) {
        if (p.is_zero()) throw std::invalid_argument("real_roots of zero polynomial");
        return {};
    }
    return isolate_real_roots(p);
}

QPoly minimal_polynomial(const FieldElement& e) {
    if (!e.field() || e.is_rational()) {
        return QPoly(std::vector<Rat>{-e.rational_value(), Rat(1)});
    }
    int n = e.field()->degree();
    // Power coordinates p_k = coords(e^k).
    std::vector<std::vector<Rat>> powers;
    FieldElement acc = e.field()->one();
    for (int k = 0; k <= n; ++k) {
        powers.push_back(acc.coords());
        acc = acc * e;
    }
    for (int k = 1; k <= n; ++k) {
        QMat m(static_cast<std::size_t>(n), static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < n; ++i)
                m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        std::vector<Rat> rhs = powers[static_cast<std::size_t>(k)];
        if (auto sol = solve(m, rhs)) {
            std::vector<Rat> c(static_cast<std::size_t>(k) + 1, Rat(0));
            for (int j = 0; j < k; ++j) c[static_cast<std::size_t>(j)] = -(*sol)[static_cast<std::size_t>(j)];
            c[static_cast<std::size_t>(k)] = Rat(1);
            return QPoly(std::move(c));
        }
    }
    throw std::logic_error("minimal polynomial search failed");
}

bool is_algebraic_integer(const FieldElement& e) {
    QPoly mp = minimal_polynomial(e);
    for (const Rat& c : mp.coeffs())
        if (!is_integer(c)) return false;
    return true;
}

Rat norm(const FieldElement& e) {
    return determinant(e.multiplication_matrix());
}

bool is_unit(const FieldElement& e) {
    if (e.is_zero()) return false;
    return is_algebraic_integer(e) && rat_abs(norm(e)) == 1;
}

bool same_real(const FieldElement& a, const FieldElement& b) {
    if (a.field() == b.field()) return a == b;
    QPoly ma = minimal_polynomial(a);
    if (ma != minimal_polynomial(b)) return false;
    if (ma.degree() == 1) return true; // both equal the same rational
    auto slots = isolate_real_roots(ma);
    auto locate = [&](const FieldElement& e) -> int {
        Rat eps = Rat(1);
        for (;;) {
            Interval iv = e.enclosure(eps);
            int inside = -1, touching = 0;
            for (std::size_t i = 0; i < slots.size(); ++i) {
                if (iv.disjoint(slots[i])) continue;
                ++touching;
                if (slots[i].lo < iv.lo && iv.hi < slots[i].hi) inside = static_cast<int>(i);
            }
            if (touching == 1 && inside >= 0) return inside;
            eps /= 16;
        }
    };
    return locate(a) == locate(b);
}

FieldElement eval_at(const QPoly& p, const FieldElement& e) {
    FieldElement acc(Rat(0));
    if (e.field()) acc = e.field()->zero();
    for (int i = p.degree(); i >= 0; --i) acc = acc * e + FieldElement(p[static_cast<std::size_t>(i)]);
    return acc;
}

namespace {

// Tight enclosure of |e| relative to its own magnitude.
Interval tight_abs_enclosure(const FieldElement& e, int extra_decimal_digits) {
    Interval rough = e.enclosure(Rat(1, 1048576)).abs();
    Rat mag = rough.hi;
    if (sign(mag) == 0) throw std::domain_error("log of zero element");
    Rat eps = mag;
    for (int i = 0; i < extra_decimal_digits; ++i) eps /= 10;
    return e.enclosure(eps).abs();
}

} // namespace

double log_abs(const FieldElement& e) {
    if (e.is_one()) return 0.0;
    if ((-e).is_one()) return 0.0;
    Interval iv = tight_abs_enclosure(e, 25);
    mpfr_t x, r;
    mpfr_init2(x, 256);
    mpfr_init2(r, 256);
    mpfr_set_q(x, iv.mid().get_mpq_t(), MPFR_RNDN);
    mpfr_log(r, x, MPFR_RNDN);
    double out = mpfr_get_d(r, MPFR_RNDN);
    mpfr_clear(x);
    mpfr_clear(r);
    return out;
}

std::string log_abs_decimal(const FieldElement& e, int significant_digits) {
    if (e.is_one() || (-e).is_one()) return "0";
    Interval iv = tight_abs_enclosure(e, significant_digits + 8);
    mpfr_t x, r;
    mpfr_init2(x, 256);
    mpfr_init2(r, 256);
    mpfr_set_q(x, iv.mid().get_mpq_t(), MPFR_RNDN);
    mpfr_log(r, x, MPFR_RNDN);
    char buf[160];
    mpfr_snprintf(buf, sizeof(buf), "%.*Rg", significant_digits, r);
    mpfr_clear(x);
    mpfr_clear(r);
    return buf;
}

} // namespace torsym

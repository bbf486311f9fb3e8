#include "torsym/flow.hpp"

#include "torsym/errors.hpp"
#include "torsym/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace torsym {

FrequencyVector::FrequencyVector(std::vector<FieldElement> components) : comps_(std::move(components)) {
    if (comps_.empty()) throw SemanticError("frequency vector must be nonempty");
    for (const auto& c : comps_) {
        if (c.field()) {
            if (field_ && field_ != c.field() &&
                field_->defining_poly() != c.field()->defining_poly())
                throw SemanticError("frequency components lie in different fields");
            if (!field_) field_ = c.field();
        }
    }
    if (!field_) field_ = NumberField::rationals();
    bool nonzero = false;
    for (auto& c : comps_) {
        c = field_->zero() + c; // promote to the common field
        nonzero = nonzero || !c.is_zero();
    }
    if (!nonzero) throw SemanticError("frequency vector must be nonzero");
}

std::vector<std::vector<Rat>> FrequencyVector::coordinate_vectors() const {
    std::vector<std::vector<Rat>> out;
    out.reserve(comps_.size());
    for (const auto& c : comps_) out.push_back(c.coords());
    return out;
}

FrequencyVector FrequencyVector::scaled_by(const FieldElement& c) const {
    std::vector<FieldElement> v;
    v.reserve(comps_.size());
    for (const auto& x : comps_) v.push_back(x * c);
    return FrequencyVector(std::move(v));
}

std::vector<double> FrequencyVector::to_doubles() const {
    std::vector<double> v;
    v.reserve(comps_.size());
    for (const auto& x : comps_) v.push_back(x.to_double());
    return v;
}

std::string FrequencyVector::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        if (i) os << ", ";
        os << comps_[i].decimal(10);
    }
    os << ")";
    return os.str();
}

IrrationalityResult is_irrational(const FrequencyVector& d) {
    auto basis = integer_relation_basis(d.coordinate_vectors());
    IrrationalityResult res;
    res.irrational = basis.empty();
    if (!basis.empty()) res.witness_relation = basis.front();
    return res;
}

std::string KochClassification::reason_name() const {
    switch (reason) {
        case Reason::none: return "none";
        case Reason::components_dependent: return "components_dependent";
        case Reason::field_degree_mismatch: return "field_degree_mismatch";
        case Reason::zero_component_pattern: return "zero_component_pattern";
    }
    return "?";
}

namespace {

// Dimension of the Q-algebra generated by the given elements (all in one
// field). A finite-dimensional subalgebra of a field is a subfield, so
// this is the degree of the generated field.
int generated_field_degree(const std::vector<FieldElement>& gens, const FieldPtr& field) {
    std::size_t n = static_cast<std::size_t>(field->degree());
    // Row space accumulates coordinates of the known algebra elements.
    QMat rows(0, 0);
    std::vector<FieldElement> basis;
    std::vector<std::vector<Rat>> reduced; // RREF rows
    auto member = [&](const std::vector<Rat>& v) {
        std::vector<Rat> w = v;
        for (const auto& r : reduced) {
            std::size_t lead = 0;
            while (lead < n && sign(r[lead]) == 0) ++lead;
            if (lead < n && sign(w[lead]) != 0) {
                Rat f = w[lead] / r[lead];
                for (std::size_t j = 0; j < n; ++j) w[j] -= f * r[j];
            }
        }
        for (const Rat& x : w)
            if (sign(x) != 0) return false;
        return true;
    };
    auto insert = [&](const FieldElement& e) {
        std::vector<Rat> w = e.coords();
        for (const auto& r : reduced) {
            std::size_t lead = 0;
            while (lead < n && sign(r[lead]) == 0) ++lead;
            if (lead < n && sign(w[lead]) != 0) {
                Rat f = w[lead] / r[lead];
                for (std::size_t j = 0; j < n; ++j) w[j] -= f * r[j];
            }
        }
        bool zero = true;
        for (const Rat& x : w)
            if (sign(x) != 0) {
                zero = false;
                break;
            }
        if (zero) return false;
        reduced.push_back(w);
        std::sort(reduced.begin(), reduced.end(), [&](const auto& a, const auto& b) {
            std::size_t la = 0, lb = 0;
            while (la < n && sign(a[la]) == 0) ++la;
            while (lb < n && sign(b[lb]) == 0) ++lb;
            return la < lb;
        });
        basis.push_back(e);
        return true;
    };
    insert(field->one());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<FieldElement> snapshot = basis;
        for (const auto& b : snapshot)
            for (const auto& g : gens) {
                FieldElement prod = b * g;
                if (!member(prod.coords())) grew = insert(prod) || grew;
            }
    }
    return static_cast<int>(basis.size());
}

// Isolating interval for the element's value among the real roots of its
// minimal polynomial.
Interval isolating_interval_for(const FieldElement& e, const QPoly& minpoly) {
    auto slots = isolate_real_roots(minpoly);
    Rat eps(1);
    for (;;) {
        Interval iv = e.enclosure(eps);
        for (const auto& s : slots) {
            if (s.lo < iv.lo && iv.hi < s.hi) return s;
        }
        eps /= 16;
    }
}

} // namespace

KochClassification koch_classify(const FrequencyVector& d, const FieldPtr& preferred_presentation) {
    KochClassification out;
    std::size_t n = d.dim();
    for (const auto& c : d.components()) {
        if (c.is_zero()) {
            out.reason = KochClassification::Reason::zero_component_pattern;
            return out;
        }
    }
    FieldElement scale = d[0].inverse();
    std::vector<FieldElement> scaled;
    scaled.reserve(n);
    for (const auto& c : d.components()) scaled.push_back(c * scale);
    out.scaled = scaled;

    std::vector<std::vector<Rat>> coords;
    for (const auto& e : scaled) coords.push_back(e.coords());
    if (!integer_relation_basis(coords).empty()) {
        out.reason = KochClassification::Reason::components_dependent;
        return out;
    }

    out.generated_degree = generated_field_degree(scaled, d.field());
    if (out.generated_degree != static_cast<int>(n)) {
        out.reason = KochClassification::Reason::field_degree_mismatch;
        return out;
    }

    // Primitive element search: single components first, then small
    // integer combinations ordered by max-norm then lexicographically.
    std::vector<std::vector<long>> candidates;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<long> c(n, 0);
        c[i] = 1;
        candidates.push_back(c);
    }
    for (long bound = 1; bound <= 5; ++bound) {
        std::vector<long> c(n, -bound);
        for (;;) {
            long mx = 0;
            for (long x : c) mx = std::max(mx, std::labs(x));
            if (mx == bound) candidates.push_back(c);
            std::size_t k = 0;
            while (k < n && ++c[k] > bound) {
                c[k] = -bound;
                ++k;
            }
            if (k == n) break;
        }
    }

    std::optional<std::pair<FieldElement, QPoly>> chosen;
    std::optional<std::pair<FieldElement, QPoly>> first_maximal;
    for (const auto& c : candidates) {
        FieldElement gamma = d.field()->zero();
        for (std::size_t i = 0; i < n; ++i)
            if (c[i] != 0) gamma = gamma + scaled[i] * Rat(c[i]);
        if (gamma.is_zero()) continue;
        QPoly mp = minimal_polynomial(gamma);
        if (mp.degree() != static_cast<int>(n)) continue;
        if (!first_maximal) first_maximal = {gamma, mp};
        if (preferred_presentation && mp == preferred_presentation->defining_poly()) {
            chosen = {gamma, mp};
            break;
        }
        if (!preferred_presentation) {
            chosen = first_maximal;
            break;
        }
    }
    if (!chosen) chosen = first_maximal;
    if (!chosen)
        throw SemanticError("no primitive element found within the coefficient bound");

    const auto& [gamma, mp] = *chosen;
    if (preferred_presentation && mp == preferred_presentation->defining_poly() &&
        same_real(gamma, preferred_presentation->generator())) {
        out.koch_field = preferred_presentation;
    } else {
        out.koch_field = NumberField::create(mp, isolating_interval_for(gamma, mp));
    }

    // Coordinates of the scaled components over the gamma power basis: the
    // certificate that they form a Q-basis of the field.
    std::size_t m = static_cast<std::size_t>(d.field()->degree());
    QMat pw(m, n);
    FieldElement acc = d.field()->one();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < m; ++i) pw(i, k) = acc.coords()[i];
        acc = acc * gamma;
    }
    QMat basis_matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto sol = solve(pw, scaled[i].coords());
        if (!sol) throw std::logic_error("scaled component not in generated field");
        out.koch_coords.push_back(*sol);
        for (std::size_t j = 0; j < n; ++j) basis_matrix(i, j) = (*sol)[j];
    }
    if (coeff_is_zero(determinant(basis_matrix)))
        throw std::logic_error("Q-basis certificate failed");

    out.koch = true;
    out.scale = scale;
    out.primitive_element = gamma;
    return out;
}

KernelWitness kernel_witness(const FrequencyVector& d) {
    std::size_t n = d.dim();
    auto coords = d.coordinate_vectors();
    if (integer_relation_basis(coords).empty()) return {}; // irrational: only I fixes d

    // Smallest dependent subset, by size then lexicographic order; the
    // first hit is automatically minimal.
    std::vector<std::size_t> support;
    std::vector<Int> relation;
    for (std::size_t l = 1; l <= n && support.empty(); ++l) {
        std::vector<std::size_t> idx(l);
        for (std::size_t i = 0; i < l; ++i) idx[i] = i;
        for (;;) {
            std::vector<std::vector<Rat>> sub;
            for (auto i : idx) sub.push_back(coords[i]);
            auto rel = integer_relation_basis(sub);
            if (!rel.empty()) {
                support = idx;
                relation = rel.front();
                break;
            }
            // next combination
            long k = static_cast<long>(l) - 1;
            while (k >= 0 && idx[static_cast<std::size_t>(k)] == n - l + static_cast<std::size_t>(k)) --k;
            if (k < 0) break;
            ++idx[static_cast<std::size_t>(k)];
            for (std::size_t j = static_cast<std::size_t>(k) + 1; j < l; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    if (support.empty()) throw std::logic_error("dependent vector without dependent subset");

    KernelWitness out;
    out.relation.assign(n, Int(0));
    for (std::size_t i = 0; i < support.size(); ++i) out.relation[support[i]] = relation[i];

    if (support.size() == n) {
        out.kind = KernelWitness::Kind::l_equals_n;
        return out;
    }

    // Identity plus the relation written into the row of the last
    // coordinate outside the support.
    std::size_t target = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (std::find(support.begin(), support.end(), i) == support.end()) target = i;
    IntegerMatrix b = IntegerMatrix::identity(n);
    for (std::size_t i = 0; i < support.size(); ++i) b(target, support[i]) = relation[i];

    // B d = d exactly, and B is unipotent.
    FieldElement acc = d.field()->zero();
    for (std::size_t i = 0; i < support.size(); ++i) acc = acc + d[support[i]] * Rat(relation[i]);
    if (!acc.is_zero()) throw std::logic_error("kernel witness relation failed");
    out.kind = KernelWitness::Kind::matrix;
    out.matrix = std::move(b);
    return out;
}

} // namespace torsym

#include "torsym/linalg.hpp"

#include <stdexcept>

namespace torsym {

std::vector<Int> primitive_integer_vector(const std::vector<Rat>& v) {
    Int den(1);
    for (const Rat& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Int> w;
    w.reserve(v.size());
    Int content(0);
    for (const Rat& x : v) {
        Rat scaled = x * Rat(den);
        w.push_back(scaled.get_num());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), w.back().get_mpz_t());
    }
    if (sign(content) == 0) throw std::invalid_argument("primitive vector of zero vector");
    int lead = 0;
    for (const Int& x : w) {
        if (sign(x) != 0) {
            lead = sign(x);
            break;
        }
    }
    if (lead < 0) content = -content;
    for (Int& x : w) x /= content;
    return w;
}

std::vector<std::vector<Int>> integer_relation_basis(const std::vector<std::vector<Rat>>& vectors) {
    if (vectors.empty()) return {};
    std::size_t m = vectors.front().size();
    for (const auto& v : vectors)
        if (v.size() != m) throw std::invalid_argument("relation basis: ragged input");
    QMat a(m, vectors.size());
    for (std::size_t j = 0; j < vectors.size(); ++j)
        for (std::size_t i = 0; i < m; ++i) a(i, j) = vectors[j][i];
    std::vector<std::vector<Int>> out;
    for (const auto& v : nullspace(a)) out.push_back(primitive_integer_vector(v));
    return out;
}

Rat resultant(const QPoly& p, const QPoly& q) {
    int m = p.degree(), n = q.degree();
    if (m < 0 || n < 0) return Rat(0);
    if (m == 0) return rat_pow(p.leading(), static_cast<unsigned long>(n));
    if (n == 0) return rat_pow(q.leading(), static_cast<unsigned long>(m));
    std::size_t size = static_cast<std::size_t>(m + n);
    QMat s(size, size);
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) s(static_cast<std::size_t>(r), static_cast<std::size_t>(r + j)) = p[static_cast<std::size_t>(m - j)];
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) s(static_cast<std::size_t>(n + r), static_cast<std::size_t>(r + j)) = q[static_cast<std::size_t>(n - j)];
    return determinant(std::move(s));
}

} // namespace torsym

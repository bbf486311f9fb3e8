#pragma once

// Irreducibility over Q for integer-scalable polynomials: squarefree
// reduction, degree-pattern sieving modulo several primes, and a Zassenhaus
// lift-and-recombine fallback that is complete for the small degrees this
// library works with.

#include "torsym/poly.hpp"
#include "torsym/rational.hpp"

#include <vector>

namespace torsym {

// Primitive integer polynomial: clears denominators, removes content,
// makes the leading coefficient positive.
std::vector<Int> primitive_integer_poly(const QPoly& p);

// Possible degrees of monic factors mod p (distinct-degree factorization
// pattern), as a multiset of irreducible-factor degrees. p must not divide
// the leading coefficient and f must be squarefree mod p.
std::vector<int> factor_degrees_mod_p(const std::vector<Int>& f, unsigned long p);

bool is_irreducible(const QPoly& p);

// Monic irreducible factors over Q with multiplicities (the leading
// rational constant is dropped). Sorted by degree, then coefficients.
std::vector<std::pair<QPoly, int>> factor_over_q(const QPoly& p);

} // namespace torsym

#ifndef APTK_EXACTLIN_POLY_HPP
#define APTK_EXACTLIN_POLY_HPP

#include "exactlin/intmatrix.hpp"

#include <vector>
#include <string>

namespace aptk {

// Integer polynomials as ascending coefficient vectors; [] is the zero
// polynomial, trailing zeros trimmed.
using ZPoly = std::vector<Int>;

int degree(const ZPoly& p);             // -1 for zero
ZPoly trim(ZPoly p);
ZPoly zp_add(const ZPoly& a, const ZPoly& b);
ZPoly zp_sub(const ZPoly& a, const ZPoly& b);
ZPoly zp_mul(const ZPoly& a, const ZPoly& b);
ZPoly zp_neg(ZPoly a);
Int zp_eval(const ZPoly& p, const Int& x);
Rat zp_eval_q(const ZPoly& p, const Rat& x);
ZPoly zp_derivative(const ZPoly& p);
Int zp_content(const ZPoly& p);
ZPoly zp_primitive(const ZPoly& p);
// Exact division, throws if not divisible.
ZPoly zp_divexact(const ZPoly& a, const ZPoly& b);
// Pseudo-remainder based gcd (primitive PRS), result primitive with
// positive leading coefficient.
ZPoly zp_gcd(const ZPoly& a, const ZPoly& b);
// q, r with a = q*b + r over Q, b monic required.
void zp_divmod_monic(const ZPoly& a, const ZPoly& b, ZPoly& q, ZPoly& r);
std::string zp_str(const ZPoly& p, const std::string& var = "x");

// Number of distinct real roots in (lo, hi] via Sturm chains.
int sturm_count(const ZPoly& p, const Rat& lo, const Rat& hi);

// Squarefree decomposition: list of (factor, multiplicity) with factors
// pairwise coprime, primitive, positive leading coefficient.
std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& p);

struct FactorResult {
    std::vector<std::pair<ZPoly, int>> factors;  // irreducible over Z
    bool complete = true;      // false if some factor may be reducible
    std::string diagnostic;    // set when incomplete
};

// Full factorization over Z (squarefree + integer roots + Zassenhaus-style
// lifting). effort_cap bounds the recombination search; factors that resist
// within the cap are returned unfactored with complete = false.
FactorResult factor_poly(const ZPoly& p, long effort_cap = 200000);

} // namespace aptk

#endif

#ifndef APTK_EXACTLIN_NUMBERFIELD_HPP
#define APTK_EXACTLIN_NUMBERFIELD_HPP

#include "exactlin/poly.hpp"

#include <memory>

namespace aptk {

// A real number field Q(alpha): monic integer minimal polynomial plus an
// isolating rational interval selecting one real root. Comparisons refine
// the interval by bisection; refinement state is cached on the spec.
class FieldSpec {
public:
    // minimal_polynomial ascending, monic, irreducible; interval (lo, hi)
    // must isolate exactly one real root (checked with a Sturm chain).
    FieldSpec(ZPoly minimal_polynomial, Rat lo, Rat hi);

    static std::shared_ptr<const FieldSpec> rationals();  // minpoly x, root 0

    int degree() const { return deg_; }
    const ZPoly& minpoly() const { return minpoly_; }
    Rat lo() const { return lo_; }
    Rat hi() const { return hi_; }

    // Sign of P(alpha) for P of degree < deg given by rational coefficients.
    int sign(const std::vector<Rat>& coeffs) const;

    bool same(const FieldSpec& o) const {
        return minpoly_ == o.minpoly_ && lo_ == o.lo_ && hi_ == o.hi_;
    }

private:
    void refine() const;  // one bisection step on the cached interval

    ZPoly minpoly_;
    int deg_;
    Rat lo_, hi_;
    mutable Rat cur_lo_, cur_hi_;  // cached refinement, monotone
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

// Element of Q(alpha) as a rational coefficient vector over the power basis.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(FieldPtr field, std::vector<Rat> coeffs);
    static FieldElement from_rat(const FieldPtr& field, const Rat& r);
    static FieldElement zero(const FieldPtr& field) { return from_rat(field, 0); }
    static FieldElement one(const FieldPtr& field) { return from_rat(field, 1); }
    static FieldElement generator(const FieldPtr& field);  // alpha

    const FieldPtr& field() const { return field_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement inverse() const;
    FieldElement operator/(const FieldElement& o) const;

    bool is_zero() const;
    bool is_rational() const;
    Rat rational() const;  // requires is_rational()

    bool operator==(const FieldElement& o) const { return c_ == o.c_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    int sign() const;   // sign under the selected real embedding
    bool operator<(const FieldElement& o) const { return (*this - o).sign() < 0; }
    bool operator>(const FieldElement& o) const { return (*this - o).sign() > 0; }
    bool operator<=(const FieldElement& o) const { return (*this - o).sign() <= 0; }
    bool operator>=(const FieldElement& o) const { return (*this - o).sign() >= 0; }

    // total order on coefficient vectors; cheap, used for canonical keys only
    int key_compare(const FieldElement& o) const;

    std::string str() const;

private:
    FieldPtr field_;
    std::vector<Rat> c_;
};

} // namespace aptk

#endif

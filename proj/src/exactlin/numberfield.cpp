#include "exactlin/numberfield.hpp"

#include <sstream>

namespace aptk {

FieldSpec::FieldSpec(ZPoly mp, Rat lo, Rat hi)
    : minpoly_(trim(std::move(mp))), lo_(lo), hi_(hi) {
    deg_ = aptk::degree(minpoly_);
    if (deg_ < 1) throw std::invalid_argument("minimal polynomial must be nonconstant");
    if (minpoly_[deg_] != 1) throw std::invalid_argument("minimal polynomial must be monic");
    if (!(lo_ < hi_)) throw std::invalid_argument("empty isolating interval");
    if (deg_ > 1) {
        FactorResult fr = factor_poly(minpoly_);
        if (!fr.complete || fr.factors.size() != 1 || fr.factors[0].second != 1)
            throw std::invalid_argument("minimal polynomial is not irreducible");
    }
    if (sturm_count(minpoly_, lo_, hi_) != 1)
        throw std::invalid_argument("isolating interval does not select exactly one real root");
    // endpoints must not be roots
    if (zp_eval_q(minpoly_, lo_) == 0 || zp_eval_q(minpoly_, hi_) == 0)
        throw std::invalid_argument("isolating interval endpoint is a root");
    cur_lo_ = lo_;
    cur_hi_ = hi_;
}

FieldPtr FieldSpec::rationals() {
    static FieldPtr q = std::make_shared<FieldSpec>(ZPoly{Int(0), Int(1)}, Rat(-1), Rat(1));
    return q;
}

void FieldSpec::refine() const {
    Rat mid = (cur_lo_ + cur_hi_) / 2;
    Rat v = zp_eval_q(minpoly_, mid);
    if (v == 0) {
        // root is rational; pin a tiny interval around it
        Rat w = (cur_hi_ - cur_lo_) / 4;
        cur_lo_ = mid - w;
        cur_hi_ = mid + w;
        return;
    }
    if (sgn(v) == sgn(zp_eval_q(minpoly_, cur_lo_))) cur_lo_ = mid;
    else cur_hi_ = mid;
}

int FieldSpec::sign(const std::vector<Rat>& coeffs) const {
    bool all_zero = true;
    for (const auto& c : coeffs)
        if (c != 0) { all_zero = false; break; }
    if (all_zero) return 0;
    if (deg_ == 1) {
        // alpha = -minpoly[0] is rational
        Rat alpha = -Rat(minpoly_[0]);
        Rat v = 0;
        for (int i = int(coeffs.size()) - 1; i >= 0; --i) v = v * alpha + coeffs[i];
        return sgn(v);
    }
    // interval arithmetic with refinement; P(alpha) != 0 since coeff vector
    // is the canonical representative
    for (int iter = 0; iter < 10000; ++iter) {
        Rat lo = 0, hi = 0;
        // Horner on the interval [cur_lo_, cur_hi_]
        for (int i = int(coeffs.size()) - 1; i >= 0; --i) {
            Rat c1 = lo * cur_lo_, c2 = lo * cur_hi_, c3 = hi * cur_lo_, c4 = hi * cur_hi_;
            Rat nlo = std::min(std::min(c1, c2), std::min(c3, c4));
            Rat nhi = std::max(std::max(c1, c2), std::max(c3, c4));
            lo = nlo + coeffs[i];
            hi = nhi + coeffs[i];
        }
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        refine();
    }
    throw std::runtime_error("sign determination did not converge");
}

FieldElement::FieldElement(FieldPtr field, std::vector<Rat> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
    if (int(c_.size()) != field_->degree())
        throw std::invalid_argument("coefficient vector length != field degree");
}

FieldElement FieldElement::from_rat(const FieldPtr& field, const Rat& r) {
    std::vector<Rat> c(field->degree());
    c[0] = r;
    return FieldElement(field, std::move(c));
}

FieldElement FieldElement::generator(const FieldPtr& field) {
    std::vector<Rat> c(field->degree());
    if (field->degree() == 1) c[0] = -Rat(field->minpoly()[0]);
    else c[1] = 1;
    return FieldElement(field, std::move(c));
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    std::vector<Rat> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] + o.c_[i];
    return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    std::vector<Rat> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] - o.c_[i];
    return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator-() const {
    std::vector<Rat> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    int d = field_->degree();
    std::vector<Rat> prod(2 * d - 1);
    for (int i = 0; i < d; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < d; ++j) prod[i + j] += c_[i] * o.c_[j];
    }
    // reduce modulo the monic minimal polynomial
    const ZPoly& m = field_->minpoly();
    for (int i = 2 * d - 2; i >= d; --i) {
        if (prod[i] == 0) continue;
        Rat c = prod[i];
        prod[i] = 0;
        for (int j = 0; j < d; ++j) prod[i - d + j] -= c * Rat(m[j]);
    }
    prod.resize(d);
    return FieldElement(field_, std::move(prod));
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw std::invalid_argument("inverse of zero");
    int d = field_->degree();
    if (d == 1) {
        std::vector<Rat> c{Rat(1) / c_[0]};
        return FieldElement(field_, std::move(c));
    }
    // extended euclid in Q[x] against the minimal polynomial
    using QP = std::vector<Rat>;
    auto qtrim = [](QP p) { while (!p.empty() && p.back() == 0) p.pop_back(); return p; };
    QP a(field_->minpoly().size());
    for (size_t i = 0; i < a.size(); ++i) a[i] = Rat(field_->minpoly()[i]);
    QP b = qtrim(QP(c_.begin(), c_.end()));
    QP s0{}, s1{Rat(1)};  // coefficients of b in the running combination
    QP r0 = a, r1 = b;
    while (!r1.empty()) {
        // divide r0 by r1
        QP q;
        QP r = r0;
        if (r.size() >= r1.size()) q.assign(r.size() - r1.size() + 1, Rat(0));
        while (r.size() >= r1.size() && !r.empty()) {
            Rat c = r.back() / r1.back();
            size_t off = r.size() - r1.size();
            q[off] = c;
            for (size_t j = 0; j < r1.size(); ++j) r[off + j] -= c * r1[j];
            r = qtrim(std::move(r));
        }
        // s_{k+1} = s_{k-1} - q s_k
        QP qs;
        if (!q.empty() && !s1.empty()) {
            qs.assign(q.size() + s1.size() - 1, Rat(0));
            for (size_t i = 0; i < q.size(); ++i)
                for (size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
        }
        QP ns = s0;
        ns.resize(std::max(ns.size(), qs.size()), Rat(0));
        for (size_t i = 0; i < qs.size(); ++i) ns[i] -= qs[i];
        ns = qtrim(std::move(ns));
        r0 = r1; r1 = r;
        s0 = s1; s1 = ns;
    }
    // r0 = gcd = constant (minpoly irreducible), 1/elt = s0 / r0
    if (r0.size() != 1) throw std::runtime_error("field inverse: gcd not constant");
    std::vector<Rat> c(d);
    for (size_t i = 0; i < s0.size() && i < size_t(d); ++i) c[i] = s0[i] / r0[0];
    return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

bool FieldElement::is_zero() const {
    for (const auto& c : c_)
        if (c != 0) return false;
    return true;
}

bool FieldElement::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat FieldElement::rational() const {
    if (!is_rational()) throw std::invalid_argument("not rational");
    if (field_->degree() == 1 && field_->minpoly()[0] != 0) {
        // alpha itself is rational but nonzero; fold it in
        return c_[0];
    }
    return c_[0];
}

int FieldElement::sign() const { return field_->sign(c_); }

int FieldElement::key_compare(const FieldElement& o) const {
    for (size_t i = 0; i < c_.size(); ++i) {
        int c = cmp(c_[i], o.c_[i]);
        if (c) return c;
    }
    return 0;
}

std::string FieldElement::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i].get_str();
    os << ")";
    return os.str();
}

} // namespace aptk

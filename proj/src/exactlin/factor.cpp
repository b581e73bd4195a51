#include "exactlin/poly.hpp"

#include <algorithm>
#include <random>

namespace aptk {

namespace {

// ---- arithmetic mod a machine prime ------------------------------------

using PPoly = std::vector<long>;  // ascending, coefficients in [0, p)

long mod_inv(long a, long p) {
    long t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        long q = r / nr;
        t -= q * nt; std::swap(t, nt);
        r -= q * nr; std::swap(r, nr);
    }
    return ((t % p) + p) % p;
}

PPoly ptrim(PPoly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

PPoly pmul(const PPoly& a, const PPoly& b, long p) {
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    return ptrim(std::move(r));
}

void pdivmod(const PPoly& a, const PPoly& b, long p, PPoly& q, PPoly& r) {
    r = ptrim(a);
    q.clear();
    if (b.empty()) throw std::invalid_argument("pdiv by zero");
    long inv = mod_inv(b.back(), p);
    if (r.size() >= b.size()) q.assign(r.size() - b.size() + 1, 0);
    while (r.size() >= b.size()) {
        long c = (r.back() * inv) % p;
        size_t off = r.size() - b.size();
        q[off] = c;
        for (size_t j = 0; j < b.size(); ++j)
            r[off + j] = ((r[off + j] - c * b[j]) % p + p) % p;
        r = ptrim(std::move(r));
    }
}

PPoly pmod(const PPoly& a, const PPoly& b, long p) {
    PPoly q, r;
    pdivmod(a, b, p, q, r);
    return r;
}

PPoly pgcd(PPoly a, PPoly b, long p) {
    a = ptrim(a); b = ptrim(b);
    while (!b.empty()) {
        PPoly r = pmod(a, b, p);
        a = b; b = r;
    }
    if (!a.empty()) {
        long inv = mod_inv(a.back(), p);
        for (auto& c : a) c = (c * inv) % p;
    }
    return a;
}

PPoly ppowmod(PPoly base, Int e, const PPoly& f, long p) {
    PPoly r{1};
    base = pmod(base, f, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = pmod(pmul(r, base, p), f, p);
        e >>= 1;
        if (e > 0) base = pmod(pmul(base, base, p), f, p);
    }
    return r;
}

PPoly pderiv(const PPoly& a, long p) {
    if (a.size() <= 1) return {};
    PPoly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = (long(i) % p) * a[i] % p;
    return ptrim(std::move(r));
}

// distinct-degree then equal-degree (Cantor–Zassenhaus); f monic squarefree mod p
void factor_mod_p(const PPoly& f, long p, std::vector<PPoly>& out, std::mt19937_64& rng) {
    int n = int(f.size()) - 1;
    if (n <= 0) return;
    if (n == 1) { out.push_back(f); return; }
    // distinct degree
    std::vector<std::pair<PPoly, int>> dd;
    PPoly h{0, 1};  // x
    PPoly rest = f;
    for (int d = 1; 2 * d <= int(rest.size()) - 1; ++d) {
        h = ppowmod(h, Int(p), rest, p);
        PPoly hx = h;
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = ((hx[1] - 1) % p + p) % p;  // h - x
        PPoly g = pgcd(rest, ptrim(hx), p);
        if (!g.empty() && g.size() > 1) {
            dd.push_back({g, d});
            PPoly q, r;
            pdivmod(rest, g, p, q, r);
            rest = q;
            h = pmod(h, rest, p);
        }
    }
    if (rest.size() > 1) dd.push_back({rest, int(rest.size()) - 1});
    // equal degree split
    for (auto& [g, d] : dd) {
        std::vector<PPoly> work{g};
        while (!work.empty()) {
            PPoly cur = work.back();
            work.pop_back();
            int dc = int(cur.size()) - 1;
            if (dc == d) { out.push_back(cur); continue; }
            // random split
            while (true) {
                PPoly a(dc);
                for (auto& c : a) c = long(rng() % (unsigned long)p);
                a = ptrim(std::move(a));
                if (a.size() <= 1) continue;
                Int e;
                mpz_ui_pow_ui(e.get_mpz_t(), (unsigned long)p, (unsigned long)d);
                e = (e - 1) / 2;
                PPoly b = ppowmod(a, e, cur, p);
                if (b.empty()) continue;
                b[0] = ((b[0] - 1) % p + p) % p;  // b - 1
                PPoly g2 = pgcd(cur, ptrim(b), p);
                if (g2.size() > 1 && g2.size() < cur.size()) {
                    PPoly q, r;
                    pdivmod(cur, g2, p, q, r);
                    work.push_back(g2);
                    work.push_back(q);
                    break;
                }
            }
        }
    }
}

// extended gcd mod p: s*a + t*b = 1 (a, b coprime mod p)
void pxgcd(const PPoly& a, const PPoly& b, long p, PPoly& s, PPoly& t) {
    PPoly r0 = ptrim(a), r1 = ptrim(b);
    PPoly s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        PPoly q, r;
        pdivmod(r0, r1, p, q, r);
        r0 = r1; r1 = r;
        PPoly qs = pmul(q, s1, p), qt = pmul(q, t1, p);
        PPoly ns = s0, nt = t0;
        // ns = s0 - q*s1
        ns.resize(std::max(ns.size(), qs.size()), 0);
        for (size_t i = 0; i < qs.size(); ++i) ns[i] = ((ns[i] - qs[i]) % p + p) % p;
        nt.resize(std::max(nt.size(), qt.size()), 0);
        for (size_t i = 0; i < qt.size(); ++i) nt[i] = ((nt[i] - qt[i]) % p + p) % p;
        s0 = s1; s1 = ptrim(ns);
        t0 = t1; t1 = ptrim(nt);
    }
    // r0 = gcd (constant); normalize to 1
    long inv = mod_inv(r0.empty() ? 1 : r0[0], p);
    for (auto& c : s0) c = c * inv % p;
    for (auto& c : t0) c = c * inv % p;
    s = s0; t = t0;
}

// ---- arithmetic mod big modulus m ---------------------------------------

using MPoly = ZPoly;  // coefficients normalized into [0, m)

MPoly mnorm(MPoly a, const Int& m) {
    for (auto& c : a) { c %= m; if (c < 0) c += m; }
    return trim(std::move(a));
}

MPoly mmul(const MPoly& a, const MPoly& b, const Int& m) { return mnorm(zp_mul(a, b), m); }
MPoly madd(const MPoly& a, const MPoly& b, const Int& m) { return mnorm(zp_add(a, b), m); }
MPoly msub(const MPoly& a, const MPoly& b, const Int& m) { return mnorm(zp_sub(a, b), m); }

// division by b with invertible leading coefficient mod m
void mdivmod(const MPoly& a, const MPoly& b, const Int& m, MPoly& q, MPoly& r) {
    r = mnorm(a, m);
    q.clear();
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), b.back().get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::invalid_argument("mdivmod: lc not invertible");
    if (r.size() >= b.size()) q.assign(r.size() - b.size() + 1, Int(0));
    while (r.size() >= b.size() && !r.empty()) {
        Int c = r.back() * inv % m;
        size_t off = r.size() - b.size();
        q[off] = c;
        for (size_t j = 0; j < b.size(); ++j) {
            r[off + j] = (r[off + j] - c * b[j]) % m;
            if (r[off + j] < 0) r[off + j] += m;
        }
        r = trim(std::move(r));
    }
}

struct LiftPair { MPoly g, h, s, t; };

// one quadratic Hensel step: modulus m -> m^2 (or cap)
void hensel_step(const ZPoly& f, LiftPair& P, const Int& m) {
    Int m2 = m * m;
    MPoly e = msub(mnorm(f, m2), mmul(P.g, P.h, m2), m2);
    MPoly q, r;
    mdivmod(mmul(P.s, e, m2), P.h, m2, q, r);
    MPoly gn = madd(P.g, madd(mmul(P.t, e, m2), mmul(q, P.g, m2), m2), m2);
    MPoly hn = madd(P.h, r, m2);
    // lift Bezout: b = s g' + t h' - 1
    MPoly b = msub(madd(mmul(P.s, gn, m2), mmul(P.t, hn, m2), m2), MPoly{Int(1)}, m2);
    MPoly c, d;
    mdivmod(mmul(P.s, b, m2), hn, m2, c, d);
    MPoly sn = msub(P.s, d, m2);
    MPoly tn = msub(P.t, madd(mmul(P.t, b, m2), mmul(c, gn, m2), m2), m2);
    P = {gn, hn, sn, tn};
}

ZPoly symmetric_lift(const MPoly& a, const Int& m) {
    ZPoly r = a;
    Int half = m / 2;
    for (auto& c : r)
        if (c > half) c -= m;
    return trim(std::move(r));
}

bool try_divide(const ZPoly& f, const ZPoly& g, ZPoly& quot) {
    if (degree(g) < 1 || degree(f) < degree(g)) return false;
    try {
        quot = zp_divexact(f, g);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

// factor a primitive squarefree polynomial (degree >= 1)
void factor_squarefree(ZPoly f, std::vector<ZPoly>& out, long effort_cap,
                       bool& complete, std::string& diag) {
    f = zp_primitive(trim(f));
    if (f.back() < 0) f = zp_neg(f);
    int n = degree(f);
    if (n <= 1) { if (n == 1) out.push_back(f); return; }

    // choose an odd prime keeping f squarefree, fewest modular factors
    static const long primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    std::mt19937_64 rng(0x5eed1234abcdULL);
    long best_p = 0;
    std::vector<PPoly> best_fac;
    for (long p : primes) {
        if (f[n] % p == 0) continue;
        PPoly fp(n + 1);
        for (int i = 0; i <= n; ++i) {
            Int c = f[i] % p;
            if (c < 0) c += p;
            fp[i] = c.get_si();
        }
        fp = ptrim(std::move(fp));
        if (int(fp.size()) - 1 != n) continue;
        PPoly g = pgcd(fp, pderiv(fp, p), p);
        if (g.size() > 1) continue;  // not squarefree mod p
        // monic
        long inv = mod_inv(fp.back(), p);
        for (auto& c : fp) c = c * inv % p;
        std::vector<PPoly> fac;
        factor_mod_p(fp, p, fac, rng);
        if (best_p == 0 || fac.size() < best_fac.size()) {
            best_p = p;
            best_fac = fac;
            if (fac.size() <= 2) break;
        }
    }
    if (best_p == 0) {
        complete = false;
        diag = "no usable small prime for " + zp_str(f);
        out.push_back(f);
        return;
    }
    if (best_fac.size() == 1) { out.push_back(f); return; }

    // lift the modular factors to p^K > 2 * lc * mignotte
    Int norm2 = 0;
    for (const auto& c : f) norm2 += c * c;
    Int sq = sqrt(norm2) + 1;
    Int mign = (Int(1) << (n + 1)) * sq * abs(f[n]);
    Int p = best_p;
    Int pk = p;
    int lifts = 0;
    while (pk <= 2 * mign) { pk = pk * pk; ++lifts; }

    // peel-lift each modular factor against the cofactor
    long lc = 0;
    {
        Int c = f[n] % best_p;
        if (c < 0) c += best_p;
        lc = c.get_si();
    }
    std::vector<MPoly> lifted;
    ZPoly fcur = f;
    std::vector<PPoly> rem = best_fac;
    while (rem.size() > 1) {
        PPoly g1 = rem.back();
        rem.pop_back();
        PPoly hh{lc};
        for (const auto& gi : rem) hh = pmul(hh, gi, best_p);
        PPoly s, t;
        pxgcd(g1, hh, best_p, s, t);
        LiftPair P;
        P.g.assign(g1.begin(), g1.end());
        P.h.assign(hh.begin(), hh.end());
        P.s.assign(s.begin(), s.end());
        P.t.assign(t.begin(), t.end());
        Int m = best_p;
        for (int i = 0; i < lifts; ++i) {
            hensel_step(fcur, P, m);
            m = m * m;
        }
        lifted.push_back(P.g);
        // continue peeling inside h
        fcur = symmetric_lift(P.h, m);
        fcur = trim(std::move(fcur));
        lc = 1;  // h is the part carrying lc; its modular cofactors stay monic
        {
            Int c = fcur[degree(fcur)] % best_p;
            if (c < 0) c += best_p;
            lc = c.get_si();
        }
    }
    {
        // last cofactor: make monic mod pk for uniform recombination
        MPoly last = mnorm(fcur, pk);
        Int inv;
        if (mpz_invert(inv.get_mpz_t(), last.back().get_mpz_t(), pk.get_mpz_t())) {
            for (auto& c : last) { c = c * inv % pk; }
        }
        lifted.push_back(mnorm(last, pk));
    }

    // recombination over subsets, increasing cardinality
    std::vector<int> alive(lifted.size());
    for (size_t i = 0; i < alive.size(); ++i) alive[i] = int(i);
    ZPoly remainder = f;
    long trials = 0;
    const Int& lcf = f[n];
    for (size_t card = 1; card <= alive.size() && alive.size() > 0; ++card) {
        if (2 * card > alive.size() + 1 && card != alive.size()) break;
        std::vector<int> idx(card);
        // iterate subsets of the alive list of given cardinality
        std::vector<int> comb(card);
        for (size_t i = 0; i < card; ++i) comb[i] = int(i);
        bool more = alive.size() >= card;
        while (more) {
            if (++trials > effort_cap) {
                complete = false;
                diag = "recombination effort cap reached for " + zp_str(remainder);
                out.push_back(zp_primitive(remainder));
                return;
            }
            MPoly prod{lcf % pk};
            if (prod[0] < 0) prod[0] += pk;
            for (size_t i = 0; i < card; ++i) prod = mmul(prod, lifted[alive[comb[i]]], pk);
            ZPoly cand = zp_primitive(symmetric_lift(prod, pk));
            if (!cand.empty() && cand.back() < 0) cand = zp_neg(cand);
            ZPoly quot;
            if (!cand.empty() && try_divide(remainder, cand, quot)) {
                out.push_back(cand);
                remainder = zp_primitive(quot);
                if (!remainder.empty() && remainder.back() < 0) remainder = zp_neg(remainder);
                // remove used factors
                std::vector<int> na;
                for (size_t i = 0, k = 0; i < alive.size(); ++i) {
                    if (k < card && int(i) == comb[k]) { ++k; continue; }
                    na.push_back(alive[i]);
                }
                alive = na;
                if (degree(remainder) == 0) return;
                // restart this cardinality
                if (alive.size() < card) { more = false; break; }
                for (size_t i = 0; i < card; ++i) comb[i] = int(i);
                continue;
            }
            // next combination
            int i = int(card) - 1;
            while (i >= 0 && comb[i] == int(alive.size()) - int(card) + i) --i;
            if (i < 0) { more = false; break; }
            ++comb[i];
            for (size_t j = i + 1; j < card; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    if (degree(remainder) > 0) out.push_back(remainder);
}

} // namespace

FactorResult factor_poly(const ZPoly& p0, long effort_cap) {
    FactorResult res;
    ZPoly p = trim(p0);
    if (degree(p) <= 0) return res;
    auto sf = squarefree_decomposition(p);
    for (auto& [f, mult] : sf) {
        std::vector<ZPoly> irr;
        factor_squarefree(f, irr, effort_cap, res.complete, res.diagnostic);
        std::sort(irr.begin(), irr.end(), [](const ZPoly& a, const ZPoly& b) {
            if (degree(a) != degree(b)) return degree(a) < degree(b);
            for (int i = degree(a); i >= 0; --i)
                if (a[i] != b[i]) return a[i] < b[i];
            return false;
        });
        for (auto& f2 : irr) {
            bool merged = false;
            for (auto& [g, m] : res.factors)
                if (g == f2) { m += mult; merged = true; break; }
            if (!merged) res.factors.push_back({f2, mult});
        }
    }
    return res;
}

} // namespace aptk

#include "exactlin/poly.hpp"

#include <sstream>

namespace aptk {

int degree(const ZPoly& p) {
    for (int i = int(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

ZPoly trim(ZPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    return trim(std::move(r));
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] -= b[i];
    }
    return trim(std::move(r));
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return trim(std::move(r));
}

ZPoly zp_neg(ZPoly a) {
    for (auto& x : a) x = -x;
    return a;
}

Int zp_eval(const ZPoly& p, const Int& x) {
    Int r = 0;
    for (int i = int(p.size()) - 1; i >= 0; --i) r = r * x + p[i];
    return r;
}

Rat zp_eval_q(const ZPoly& p, const Rat& x) {
    Rat r = 0;
    for (int i = int(p.size()) - 1; i >= 0; --i) r = r * x + Rat(p[i]);
    return r;
}

ZPoly zp_derivative(const ZPoly& p) {
    if (p.size() <= 1) return {};
    ZPoly r(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) r[i - 1] = Int(long(i)) * p[i];
    return trim(std::move(r));
}

Int zp_content(const ZPoly& p) {
    Int g = 0;
    for (const auto& c : p) {
        Int t;
        mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        g = t;
    }
    return g;
}

ZPoly zp_primitive(const ZPoly& p) {
    Int g = zp_content(p);
    if (g == 0) return {};
    ZPoly r = p;
    for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return trim(std::move(r));
}

ZPoly zp_divexact(const ZPoly& a0, const ZPoly& b0) {
    ZPoly a = trim(a0), b = trim(b0);
    if (b.empty()) throw std::invalid_argument("divide by zero poly");
    if (a.empty()) return {};
    int da = degree(a), db = degree(b);
    if (da < db) throw std::invalid_argument("not divisible (degree)");
    ZPoly q(da - db + 1);
    for (int i = da - db; i >= 0; --i) {
        Int top = a[i + db];
        if (top == 0) { q[i] = 0; continue; }
        if (top % b[db] != 0) throw std::invalid_argument("not divisible");
        q[i] = top / b[db];
        for (int j = 0; j <= db; ++j) a[i + j] -= q[i] * b[j];
    }
    for (const auto& c : a)
        if (c != 0) throw std::invalid_argument("not divisible (rem)");
    return trim(std::move(q));
}

ZPoly zp_gcd(const ZPoly& a0, const ZPoly& b0) {
    ZPoly a = zp_primitive(trim(a0)), b = zp_primitive(trim(b0));
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (degree(a) < degree(b)) std::swap(a, b);
    while (!b.empty()) {
        // r = prem(a, b): lc(b)^(da-db+1) a  mod  b
        int da = degree(a), db = degree(b);
        ZPoly r = a;
        Int lb = b[db];
        for (int i = da; i >= db; --i) {
            int dr = degree(r);
            if (dr < db) break;
            if (dr != i) continue;
            Int lr = r[dr];
            // r = lb * r - lr * x^(dr-db) * b
            for (auto& c : r) c *= lb;
            for (int j = 0; j <= db; ++j) r[dr - db + j] -= lr * b[j];
            r = trim(std::move(r));
        }
        a = b;
        b = zp_primitive(r);
    }
    if (!a.empty() && a.back() < 0) a = zp_neg(a);
    return zp_primitive(a);
}

void zp_divmod_monic(const ZPoly& a0, const ZPoly& b, ZPoly& q, ZPoly& r) {
    int db = degree(b);
    if (db < 0 || b[db] != 1) throw std::invalid_argument("divisor not monic");
    r = trim(a0);
    q = ZPoly();
    int da = degree(r);
    if (da < db) return;
    q.assign(da - db + 1, Int(0));
    while ((da = degree(r)) >= db) {
        Int c = r[da];
        q[da - db] = c;
        for (int j = 0; j <= db; ++j) r[da - db + j] -= c * b[j];
        r = trim(std::move(r));
    }
}

std::string zp_str(const ZPoly& p, const std::string& var) {
    if (degree(p) < 0) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(p); i >= 0; --i) {
        if (p[i] == 0) continue;
        Int c = p[i];
        if (first) {
            if (c < 0) { os << "-"; c = -c; }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        if (i == 0 || c != 1) os << c.get_str();
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

int sturm_count(const ZPoly& p0, const Rat& lo, const Rat& hi) {
    // rational-arithmetic Sturm chain; degrees here are small
    using QPoly = std::vector<Rat>;
    auto qtrim = [](QPoly p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
        return p;
    };
    auto qrem = [&](QPoly a, const QPoly& b) {
        while (a.size() >= b.size() && !a.empty()) {
            Rat c = a.back() / b.back();
            size_t off = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j) a[off + j] -= c * b[j];
            a = qtrim(std::move(a));
        }
        return a;
    };
    ZPoly p = zp_primitive(trim(p0));
    if (degree(p) <= 0) return 0;
    QPoly f0(p.size()), f1;
    for (size_t i = 0; i < p.size(); ++i) f0[i] = Rat(p[i]);
    ZPoly d = zp_derivative(p);
    f1.resize(d.size());
    for (size_t i = 0; i < d.size(); ++i) f1[i] = Rat(d[i]);
    std::vector<QPoly> chain{f0, f1};
    while (chain.back().size() > 1) {
        QPoly r = qrem(chain[chain.size() - 2], chain.back());
        for (auto& c : r) c = -c;
        if (r.empty()) break;
        chain.push_back(r);
    }
    auto qeval = [](const QPoly& f, const Rat& x) {
        Rat r = 0;
        for (int i = int(f.size()) - 1; i >= 0; --i) r = r * x + f[i];
        return r;
    };
    auto variations = [&](const Rat& x) {
        int v = 0, last = 0;
        for (const auto& f : chain) {
            int s = sgn(qeval(f, x));
            if (s == 0) continue;
            if (last != 0 && s != last) ++v;
            last = s;
        }
        return v;
    };
    return variations(lo) - variations(hi);
}

std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& p0) {
    std::vector<std::pair<ZPoly, int>> out;
    ZPoly p = zp_primitive(trim(p0));
    if (degree(p) <= 0) return out;
    if (p.back() < 0) p = zp_neg(p);
    // Yun's algorithm
    ZPoly d = zp_derivative(p);
    ZPoly a = zp_gcd(p, d);
    ZPoly b = zp_divexact(p, a);
    ZPoly c = zp_divexact(d, a);
    int mult = 1;
    while (degree(b) > 0) {
        ZPoly t = zp_sub(c, zp_derivative(b));
        ZPoly g = zp_gcd(b, t);
        if (degree(g) > 0) out.push_back({g, mult});
        b = zp_divexact(b, g);
        c = zp_divexact(t, g);
        ++mult;
    }
    return out;
}

} // namespace aptk

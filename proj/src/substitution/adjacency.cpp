#include "substitution/rule.hpp"

#include <deque>
#include <map>
#include <sstream>

namespace aptk {

namespace {

Contact normalize_contact(int a, const Vec2& ta, int b, const Vec2& tb, bool edge) {
    Contact c;
    Vec2 rel = tb - ta;
    if (a < b || (a == b && rel.key_compare(-rel) >= 0)) {
        c.a = a;
        c.b = b;
        c.t = rel;
    } else {
        c.a = b;
        c.b = a;
        c.t = -rel;
    }
    c.edge = edge;
    return c;
}

std::string contact_key(const Contact& c) {
    std::ostringstream os;
    os << c.a << "|" << c.b << "|" << c.t.str();
    return os.str();
}

} // namespace

std::vector<Contact> adjacency_closure(const SubstitutionRule& rule,
                                       const AdjacencyOptions& opt) {
    if (rule.dimension != 2)
        throw std::invalid_argument("adjacency_closure needs a 2D rule");
    std::map<std::string, Contact> found;
    std::deque<Contact> work;
    auto add = [&](const Contact& c) {
        auto key = contact_key(c);
        auto it = found.find(key);
        if (it == found.end()) {
            found.emplace(key, c);
            work.push_back(c);
        } else if (c.edge && !it->second.edge) {
            it->second.edge = true;  // upgrade a vertex record to an edge record
            work.push_back(c);
        }
    };
    // center/radius prefilter: centers are first vertices, r2[i] bounds the
    // squared distance from the center to any vertex
    std::vector<FieldElement> r2;
    for (const auto& t : rule.tiles) {
        FieldElement m = FieldElement::zero(rule.field);
        for (const auto& v : t.poly.v) {
            FieldElement d2 = dot(v - t.poly.v[0], v - t.poly.v[0]);
            if ((d2 - m).sign() > 0) m = d2;
        }
        r2.push_back(m);
    }
    FieldElement two = FieldElement::from_rat(rule.field, 2);
    auto scan_pair = [&](int pa, const Vec2& ta, int pb, const Vec2& tb) {
        if (pa == pb && ta == tb) return;
        Vec2 d = (rule.tiles[pb].poly.v[0] + tb) - (rule.tiles[pa].poly.v[0] + ta);
        // (ra + rb)^2 <= 2 ra^2 + 2 rb^2, so this rejection is safe
        if ((dot(d, d) - two * (r2[pa] + r2[pb])).sign() > 0) return;
        PlacedTile A{pa, ta}, B{pb, tb};
        SharedBoundary sb = shared_boundary(rule, A, B);
        if (!sb.any()) return;
        add(normalize_contact(pa, ta, pb, tb, !sb.segments.empty()));
    };
    // seeds: contacts inside each single supertile
    for (int i = 0; i < rule.prototile_count(); ++i) {
        const auto& ch = rule.children[i];
        for (size_t x = 0; x < ch.size(); ++x)
            for (size_t y = x + 1; y < ch.size(); ++y)
                scan_pair(ch[x].proto, ch[x].t, ch[y].proto, ch[y].t);
    }
    // closure under substitution of contact pairs
    size_t processed = 0;
    const size_t cap = 500000;
    while (!work.empty()) {
        if (++processed > cap)
            throw RuleError("adjacency closure did not terminate (cap exceeded)");
        Contact c = work.front();
        work.pop_front();
        Vec2 za = Vec2::zero(rule.field);
        Vec2 zb = rule.expansion.apply(c.t);
        const auto& cha = rule.children[c.a];
        const auto& chb = rule.children[c.b];
        for (const auto& x : cha)
            for (const auto& y : chb)
                scan_pair(x.proto, za + x.t, y.proto, zb + y.t);
    }
    std::vector<Contact> out;
    for (auto& [k, c] : found) out.push_back(c);
    return out;
}

std::set<std::vector<int>> legal_windows(const SubstitutionRule& rule, int k) {
    if (rule.dimension != 1)
        throw std::invalid_argument("legal_windows needs a 1D rule");
    int n = rule.prototile_count();
    // legal pairs by closure
    std::set<std::pair<int, int>> pairs;
    auto word_pow = [&](int letter, int m) {
        std::vector<int> w{letter};
        for (int s = 0; s < m; ++s) {
            std::vector<int> nw;
            for (int c : w)
                for (int d : rule.words[c]) nw.push_back(d);
            w = nw;
        }
        return w;
    };
    {
        int m = 0;
        while (true) {
            bool long_enough = false;
            for (int a = 0; a < n; ++a)
                if (int(word_pow(a, m).size()) >= 2) long_enough = true;
            if (long_enough || m > 32) break;
            ++m;
        }
        for (int a = 0; a < n; ++a) {
            auto w = word_pow(a, m);
            for (size_t i = 0; i + 1 < w.size(); ++i) pairs.insert({w[i], w[i + 1]});
        }
        if (pairs.empty()) throw RuleError("substitution never grows words");
    }
    bool grown = true;
    int rounds = 0;
    while (grown) {
        if (++rounds > 1024) throw RuleError("legal pair closure did not terminate");
        grown = false;
        auto snapshot = pairs;
        for (const auto& [u, v] : snapshot) {
            std::vector<int> w;
            for (int d : rule.words[u]) w.push_back(d);
            for (int d : rule.words[v]) w.push_back(d);
            for (size_t i = 0; i + 1 < w.size(); ++i)
                if (pairs.insert({w[i], w[i + 1]}).second) grown = true;
        }
    }
    if (k == 2) {
        std::set<std::vector<int>> out;
        for (const auto& [u, v] : pairs) out.insert({u, v});
        return out;
    }
    // every legal k-window sits inside the image of a legal pair once each
    // image is at least k long
    int m = 0;
    while (true) {
        bool ok = true;
        for (int a = 0; a < n; ++a)
            if (int(word_pow(a, m).size()) < k) ok = false;
        if (ok) break;
        if (++m > 64) throw RuleError("substitution grows too slowly for the window size");
    }
    std::set<std::vector<int>> out;
    for (const auto& [u, v] : pairs) {
        std::vector<int> w = word_pow(u, m);
        auto wv = word_pow(v, m);
        w.insert(w.end(), wv.begin(), wv.end());
        for (size_t i = 0; i + k <= w.size(); ++i)
            out.insert(std::vector<int>(w.begin() + i, w.begin() + i + k));
    }
    return out;
}

} // namespace aptk

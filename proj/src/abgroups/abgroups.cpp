#include "abgroups/abgroups.hpp"

#include <algorithm>
#include <sstream>

namespace aptk {

static void check_preserves_lattice(const IntMatrix& m, const IntMatrix& rel,
                                    const char* what) {
    if (rel.cols() == 0) return;
    IntMatrix h = hnf_columns(rel);
    if (!lattice_contains(h, m * rel))
        throw std::invalid_argument(std::string(what) + " does not preserve the relation lattice");
}

StationarySystem::StationarySystem(PresentedGroup g, IntMatrix e)
    : group(std::move(g)), endo(std::move(e)) {
    if (endo.rows() != group.generators || endo.cols() != group.generators)
        throw std::invalid_argument("endo must be n x n on the generators");
    if (group.relations.rows() != group.generators)
        throw std::invalid_argument("relation matrix must have n rows");
    check_preserves_lattice(endo, group.relations, "endo");
}

SystemMap::SystemMap(StationarySystem s, StationarySystem t, IntMatrix m)
    : source(std::move(s)), target(std::move(t)), matrix(std::move(m)) {
    if (matrix.rows() != target.group.generators || matrix.cols() != source.group.generators)
        throw std::invalid_argument("map shape mismatch");
    if (!(matrix * source.endo == target.endo * matrix))
        throw std::invalid_argument("map does not intertwine the endomorphisms");
    if (source.group.relations.cols() > 0) {
        IntMatrix image = matrix * source.group.relations;
        if (target.group.relations.cols() == 0) {
            if (!image.is_zero())
                throw std::invalid_argument("map does not send relations to relations");
        } else {
            if (!lattice_contains(hnf_columns(target.group.relations), image))
                throw std::invalid_argument("map does not send relations to relations");
        }
    }
}

long LimitGroup::rank() const {
    long r = free_rank;
    for (const auto& [m, k] : inverted) r += k;
    return r;
}

void LimitGroup::normalize() {
    std::vector<std::pair<Int, int>> merged;
    std::sort(inverted.begin(), inverted.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    for (auto& [m, k] : inverted) {
        if (k == 0) continue;
        if (!merged.empty() && merged.back().first == m) merged.back().second += k;
        else merged.push_back({m, k});
    }
    inverted = std::move(merged);
    // torsion to invariant factor form
    std::vector<Int> t;
    for (const auto& d : torsion)
        if (d > 1) t.push_back(d);
    if (t.size() > 1) {
        IntMatrix diag(int(t.size()), int(t.size()));
        for (size_t i = 0; i < t.size(); ++i) diag.at(int(i), int(i)) = t[i];
        SnfResult s = snf(diag);
        t.clear();
        for (int i = 0; i < int(torsion.size()) && i < s.d.rows(); ++i)
            if (s.d.at(i, i) > 1) t.push_back(s.d.at(i, i));
    }
    torsion = std::move(t);
}

std::string LimitGroup::str() const {
    if (status == Status::rank_bounds_only) {
        std::ostringstream os;
        os << "Z^{>=" << free_rank_lower << "} + Q^{<=" << divisible_rank_upper << "}";
        return os.str();
    }
    if (status == Status::unresolved_presentation) return "<unresolved presentation>";
    std::ostringstream os;
    bool first = true;
    auto sep = [&]() {
        if (!first) os << " + ";
        first = false;
    };
    for (const auto& [m, k] : inverted) {
        sep();
        os << "Z[1/" << m.get_str() << "]";
        if (k > 1) os << "^" << k;
    }
    if (free_rank > 0) {
        sep();
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank;
    }
    // torsion grouped by equal factor
    for (size_t i = 0; i < torsion.size();) {
        size_t j = i;
        while (j < torsion.size() && torsion[j] == torsion[i]) ++j;
        sep();
        os << "Z_" << torsion[i].get_str();
        if (j - i > 1) os << "^" << (j - i);
        i = j;
    }
    if (first) os << "0";
    return os.str();
}

static Int radical(Int m) {
    Int r = 1;
    Int n = abs(m);
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            r *= p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) r *= n;
    return r;
}

bool LimitGroup::iso_equal(const LimitGroup& o) const {
    if (status != o.status) return false;
    if (status == Status::rank_bounds_only)
        return free_rank_lower == o.free_rank_lower &&
               divisible_rank_upper == o.divisible_rank_upper;
    if (status == Status::unresolved_presentation) return true;
    if (free_rank != o.free_rank || torsion != o.torsion) return false;
    // Z[1/m] depends only on the radical of m
    auto norm = [](const std::vector<std::pair<Int, int>>& v) {
        std::vector<Int> r;
        for (const auto& [m, k] : v)
            for (int i = 0; i < k; ++i) r.push_back(radical(m));
        std::sort(r.begin(), r.end());
        return r;
    };
    return norm(inverted) == norm(o.inverted);
}

LimitGroup direct_sum(const LimitGroup& a, const LimitGroup& b) {
    LimitGroup r;
    if (a.status != LimitGroup::Status::classified) return a;
    if (b.status != LimitGroup::Status::classified) return b;
    r.free_rank = a.free_rank + b.free_rank;
    r.inverted = a.inverted;
    r.inverted.insert(r.inverted.end(), b.inverted.begin(), b.inverted.end());
    r.torsion = a.torsion;
    r.torsion.insert(r.torsion.end(), b.torsion.begin(), b.torsion.end());
    r.splitting_verified = a.splitting_verified && b.splitting_verified;
    r.normalize();
    return r;
}

StationarySystem remove_eventual_kernel(const StationarySystem& s) {
    if (s.group.relations.cols() != 0)
        throw std::invalid_argument("remove_eventual_kernel expects a free system");
    int n = s.group.generators;
    if (n == 0) return s;
    IntMatrix p = s.endo.pow(unsigned(n));
    IntMatrix basis = saturate_columns(p);
    if (basis.cols() == n) return StationarySystem::on_free(s.endo);
    if (basis.cols() == 0)
        return StationarySystem::on_free(IntMatrix(0, 0));
    auto x = solve_integer(basis, s.endo * basis);
    if (!x) throw std::runtime_error("image lattice not invariant");
    return StationarySystem::on_free(*x);
}

StationarySystem limit_kernel(const SystemMap& f) {
    const IntMatrix& F = f.matrix;
    const IntMatrix& Lt = f.target.group.relations;
    int ns = f.source.group.generators;
    IntMatrix K;  // columns span {x : F x in Lt}
    if (Lt.cols() == 0) {
        K = kernel_basis(F);
    } else {
        IntMatrix block = F.hstack(Lt);
        // negate the Lt part so kernel encodes F x = Lt y
        for (int i = 0; i < block.rows(); ++i)
            for (int j = F.cols(); j < block.cols(); ++j)
                block.at(i, j) = -block.at(i, j);
        IntMatrix kb = kernel_basis(block);
        IntMatrix xs(ns, kb.cols());
        for (int i = 0; i < ns; ++i)
            for (int j = 0; j < kb.cols(); ++j) xs.at(i, j) = kb.at(i, j);
        K = hnf_columns(xs);
    }
    if (K.cols() == 0)
        return StationarySystem(PresentedGroup::free_group(0), IntMatrix(0, 0));
    // relations of the source restricted to K (source relations lie in K)
    IntMatrix rels(K.cols(), 0);
    if (f.source.group.relations.cols() > 0) {
        auto r = solve_integer(K, f.source.group.relations);
        if (!r) throw std::runtime_error("source relations not inside the kernel lattice");
        rels = *r;
    }
    auto e = solve_integer(K, f.source.endo * K);
    if (!e) throw std::runtime_error("kernel lattice not endo-invariant");
    return StationarySystem(PresentedGroup{K.cols(), rels}, *e);
}

StationarySystem limit_cokernel(const SystemMap& f) {
    IntMatrix rels = f.target.group.relations.hstack(f.matrix);
    return StationarySystem(PresentedGroup{f.target.group.generators, rels}, f.target.endo);
}

} // namespace aptk

// Hong-type quotient fusion algebras: the primed affine Weyl group
// W ⋉ (k+h) Q with wall alpha_0' = delta - theta_s, the fold map F_k', the
// quotient G_k of a Verlinde algebra obtained by truncating and folding left
// multiplication matrices, and the 2/3-rule conjecture checker.

#pragma once

#include "kacfusion/twisted.hpp"

namespace kacfusion {

// F_k' on a single finite character: fold lambda + rho into the open alcove of
// W ⋉ (k+h) Q, whose binding wall is <v, theta_s^vee> = k + h. Returns the
// primed character label (weight - rho) or a wall.
inline SignedWeight f_k_prime(const AffineAlgebraData& data, long long k, const FiniteWeight& lam) {
    if (!data.is_untwisted())
        throw UntwistedType("f_k_prime: defined on untwisted types with two root lengths");
    if (!data.theta_short)
        throw SingleRootLength("f_k_prime: W' = W for " + to_string(data.atype));
    if (!lam.is_dominant() || !lam.is_integral()) throw NotDominant("f_k_prime");
    const FiniteWeight rho = rho_weight(data.rank);
    SignedWeight folded = fold_affine(data, k + data.h, FoldLattice::RootLattice, lam + rho);
    if (folded.on_wall) return folded;
    folded.weight = folded.weight - rho;
    return folded;
}

struct QuotientAlgebra {
    FusionAlgebra source;  // V_{k+h-h_dual} of the untwisted algebra
    WeightBasis basis;     // primed level-k dominant weights
    long long level = 0;   // k
    std::map<std::pair<int, int>, std::map<int, long long>> tensor; // c_{lm}^n
    // source basis index -> (quotient index, sign); (-1, 0) when killed
    std::vector<std::pair<int, int>> projection;

    long long c(int i, int j, int k_) const {
        auto it = tensor.find(std::minmax(i, j));
        if (it == tensor.end()) return 0;
        auto f = it->second.find(k_);
        return f == it->second.end() ? 0 : f->second;
    }
    IntMat left_matrix(int i) const {
        int n = basis.size();
        IntMat m(n, IntVec(n, 0));
        for (int mu = 0; mu < n; ++mu) {
            auto it = tensor.find(std::minmax(i, mu));
            if (it == tensor.end()) continue;
            for (const auto& [nu, val] : it->second) m[nu][mu] = val;
        }
        return m;
    }
};

// G_k(V_{k+h-h_dual}(g)) for untwisted g with two root lengths: push every
// product of the source algebra through F_k'. For A_{2l}^(2) data the Hong
// algebra R_k coincides with V_k and the projection is the identity.
inline QuotientAlgebra hong_quotient(const AffineAlgebraData& data, long long k,
                                     VerlindeOptions opt = {}) {
    if (k < 1) throw LevelNonPositive("hong_quotient");
    QuotientAlgebra q;
    q.level = k;

    if (data.is_a2even_type()) {
        q.source = twisted_verlinde(data, k, opt);
        q.basis = q.source.basis;
        q.tensor = q.source.tensor;
        for (int i = 0; i < q.basis.size(); ++i) q.projection.emplace_back(i, 1);
        return q;
    }

    if (!data.is_untwisted())
        throw UntwistedType("hong_quotient: pass the untwisted transpose (or A_{2l}^(2)) type");
    if (!data.theta_short)
        throw SingleRootLength("hong_quotient: simply-laced types have trivial quotient");

    q.source = verlinde_algebra(data, k + data.h - data.h_dual, opt);
    q.basis = enum_weights(data, k, WeightVariant::PrimedPk);

    for (int s = 0; s < q.source.basis.size(); ++s) {
        SignedWeight f = f_k_prime(data, k, q.source.basis.finite(s));
        if (f.on_wall) q.projection.emplace_back(-1, 0);
        else q.projection.emplace_back(q.basis.require_index(f.weight), f.sign);
    }

    // quotient basis weights sit inside the source window
    std::vector<int> src_index(q.basis.size());
    for (int i = 0; i < q.basis.size(); ++i)
        src_index[i] = q.source.basis.require_index(q.basis.finite(i));

    for (int a = 0; a < q.basis.size(); ++a)
        for (int b = a; b < q.basis.size(); ++b) {
            std::map<int, long long> row;
            for (const auto& [nu, val] : q.source.row(src_index[a], src_index[b])) {
                auto [img, sign] = q.projection[nu];
                if (img >= 0) row[img] += sign * val;
            }
            for (auto it = row.begin(); it != row.end();)
                it = it->second == 0 ? row.erase(it) : std::next(it);
            if (!row.empty()) q.tensor[{a, b}] = std::move(row);
        }
    return q;
}

// homomorphism check: G(x) G(y) = G(x y) on every basis pair, computed through
// the projection of the full source tensor
inline bool check_quotient_homomorphism(const QuotientAlgebra& q) {
    const int n = q.basis.size();
    const int ns = q.source.basis.size();
    // G maps source basis elements to signed quotient elements; products of
    // quotient basis elements are already the pushed-down products, so verify
    // instead that pushing source products commutes with projecting factors.
    for (int s = 0; s < ns; ++s)
        for (int t = s; t < ns; ++t) {
            // push chi_s chi_t
            std::map<int, long long> pushed;
            for (const auto& [nu, val] : q.source.row(s, t)) {
                auto [img, sign] = q.projection[nu];
                if (img >= 0) pushed[img] += sign * val;
            }
            // G(chi_s) G(chi_t)
            std::map<int, long long> prod;
            auto [is, sgs] = q.projection[s];
            auto [it_, sgt] = q.projection[t];
            if (is >= 0 && it_ >= 0) {
                auto key = std::minmax(is, it_);
                auto found = q.tensor.find(key);
                if (found != q.tensor.end())
                    for (const auto& [nu, val] : found->second) prod[nu] += sgs * sgt * val;
            }
            for (auto& m : {&pushed, &prod})
                for (auto iter = m->begin(); iter != m->end();)
                    iter = iter->second == 0 ? m->erase(iter) : std::next(iter);
            if (pushed != prod) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// 2/3 rule (even level): if at least two of the three classes lie in Q, the
// structure constant is nonnegative

struct TwoThirdsReport {
    bool applicable = true; // even level only
    bool holds = true;
    std::vector<std::array<int, 3>> violations;          // >=2 classes in Q but negative
    std::vector<std::array<int, 3>> negative_constants;  // all negatives, for the record
};

inline TwoThirdsReport two_thirds_check(const QuotientAlgebra& q) {
    TwoThirdsReport rep;
    if (q.level % 2 != 0) {
        rep.applicable = false;
        return rep;
    }
    const auto& data = *q.basis.data;
    GradingGroup g = grading_group(data);
    const int n = q.basis.size();
    std::vector<bool> in_q(n);
    for (int i = 0; i < n; ++i) in_q[i] = g.is_trivial_class(g.class_of(q.basis.finite(i)));
    for (const auto& [key, row] : q.tensor) {
        auto [a, b] = key;
        for (const auto& [c, val] : row) {
            if (val >= 0) continue;
            rep.negative_constants.push_back({a, b, c});
            int count = (in_q[a] ? 1 : 0) + (in_q[b] ? 1 : 0) + (in_q[c] ? 1 : 0);
            if (count >= 2) {
                rep.holds = false;
                rep.violations.push_back({a, b, c});
            }
        }
    }
    return rep;
}

} // namespace kacfusion

// Level-k dominant weight sets (P_k^+, P^{k+}, and the primed variant) and the
// finite grading group A = P/Q of the underlying simple algebra.

#pragma once

#include "kacfusion/cartan.hpp"
#include "kacfusion/weyl.hpp"

#include <algorithm>
#include <vector>

namespace kacfusion {

enum class WeightVariant {
    Pk,       // theta-characteristic reading: labels on the lattice M*, level window
    Pupper_k, // integral dominant weights of level k (P^{k+})
    PrimedPk  // integral dominant weights of primed level k: <λ, theta_s^vee> <= k
};

struct WeightBasis {
    const AffineAlgebraData* data = nullptr;
    long long level = 0;
    WeightVariant variant = WeightVariant::Pupper_k;
    std::vector<LevelWeight> weights; // graded-lexicographic order

    int size() const { return static_cast<int>(weights.size()); }
    const FiniteWeight& finite(int i) const { return weights[i].finite; }

    int index_of(const FiniteWeight& w) const {
        for (int i = 0; i < size(); ++i)
            if (weights[i].finite == w) return i;
        return -1;
    }
    int require_index(const FiniteWeight& w) const {
        int i = index_of(w);
        if (i < 0) throw WeightNotInBasis("weight missing from basis");
        return i;
    }
    // index 0 is the vacuum k*Lambda_0: the zero finite weight sorts first
    int identity_index() const { return 0; }
};

namespace detail {

// Enumerate lambda = sum c_i * step_i with c_i >= 0 integers and
// sum c_i * cost_i <= budget.
inline void enum_cone(const std::vector<FiniteWeight>& steps, const IntVec& costs, long long budget,
                      int at, FiniteWeight cur, std::vector<LevelWeight>& out, long long level) {
    if (at == static_cast<int>(steps.size())) {
        out.push_back(LevelWeight{cur, level});
        return;
    }
    FiniteWeight w = cur;
    for (long long c = 0; c * costs[at] <= budget; ++c) {
        enum_cone(steps, costs, budget - c * costs[at], at + 1, w, out, level);
        w = w + steps[at];
        if (costs[at] == 0) throw Error("enum_weights: zero cost step");
    }
}

} // namespace detail

inline WeightBasis enum_weights(const AffineAlgebraData& data, long long k, WeightVariant variant) {
    if (k < 1) throw LevelNonPositive("enum_weights: level must be >= 1");
    WeightBasis basis;
    basis.data = &data;
    basis.level = k;
    basis.variant = variant;

    std::vector<FiniteWeight> steps;
    IntVec costs;
    for (int i = 1; i <= data.rank; ++i) {
        FiniteWeight f = fundamental_weight(data.rank, i);
        if (variant == WeightVariant::Pk && data.m_lattice == MLatticeKind::RootLattice) {
            // M = Q, so the characteristic lattice M* has basis (a_i/a_i^vee) Lambda_i;
            // when r = a_0 it coincides with the integral weight lattice below
            Rat scale(data.labels[i], data.dual_labels[i]);
            f = scale * f;
            costs.push_back(data.labels[i]); // a_i^vee * (a_i / a_i^vee)
        } else if (variant == WeightVariant::Pk || variant == WeightVariant::Pupper_k) {
            costs.push_back(data.dual_labels[i]);
        } else {
            if (!data.theta_short)
                throw SingleRootLength("PrimedPk needs two root lengths (" + to_string(data.atype) + ")");
            Rat c = data.theta_short_covee_pairing(f);
            if (!rat_is_integer(c)) throw Error("enum_weights: non-integer primed cost");
            costs.push_back(c.numerator());
        }
        steps.push_back(f);
    }
    detail::enum_cone(steps, costs, k, 0, FiniteWeight::zero(data.rank), basis.weights, k);
    std::sort(basis.weights.begin(), basis.weights.end());
    basis.weights.erase(std::unique(basis.weights.begin(), basis.weights.end()), basis.weights.end());
    return basis;
}

// ---------------------------------------------------------------------------
// grading group A = P/Q

struct GradingGroup {
    IntVec factors;     // invariant factors > 1
    IntMat transform;   // rows of U used to map labels to residues
    long long order = 1;

    IntVec class_of(const FiniteWeight& w) const {
        if (!w.is_integral()) throw NonIntegralWeight("class_of: weight has non-integer labels");
        IntVec out(factors.size());
        for (size_t r = 0; r < factors.size(); ++r) {
            long long s = 0;
            for (size_t j = 0; j < transform[r].size(); ++j)
                s += transform[r][j] * w.labels[j].numerator();
            s %= factors[r];
            if (s < 0) s += factors[r];
            out[r] = s;
        }
        return out;
    }
    bool is_trivial_class(const IntVec& c) const {
        return std::all_of(c.begin(), c.end(), [](long long x) { return x == 0; });
    }
    // residue tuple as a single index for Z_2 style uses
    long long fold_z(const IntVec& c) const {
        long long idx = 0;
        for (size_t r = 0; r < c.size(); ++r) idx = idx * factors[r] + c[r];
        return idx;
    }
};

// Invariant factors of coker(finite Cartan matrix): columns of the Cartan
// matrix are the simple roots in label coordinates.
inline GradingGroup grading_group(const AffineAlgebraData& data) {
    SmithForm snf = smith_normal_form(data.finite_cartan);
    GradingGroup g;
    for (int i = 0; i < static_cast<int>(snf.diag.size()); ++i) {
        long long d = std::llabs(snf.diag[i]);
        if (d > 1) {
            g.factors.push_back(d);
            g.transform.push_back(snf.left[i]);
            g.order *= d;
        }
    }
    return g;
}

// P^{2n}_+ = P^{2n+1}_+ for A_{2l}^(2)
inline bool lemma43_check(int l, long long n) {
    if (l < 1 || n < 1) throw OutOfRange("lemma43_check: l, n >= 1");
    const auto& data = affine_data(AffineType{'A', 2 * l, 2});
    auto even = enum_weights(data, 2 * n, WeightVariant::Pupper_k);
    auto odd = enum_weights(data, 2 * n + 1, WeightVariant::Pupper_k);
    if (even.size() != odd.size()) return false;
    for (int i = 0; i < even.size(); ++i)
        if (!(even.finite(i) == odd.finite(i))) return false;
    return true;
}

} // namespace kacfusion

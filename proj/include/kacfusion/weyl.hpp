// Finite Weyl action on Dynkin labels, signed dominance reduction, folding
// into the fundamental alcove of W ⋉ m·L for L = nu(Q_vee) or L = Q (and
// integer multiples), and the explicit w_I reduction for the type-C geometry
// of A_{2l}^(2).

#pragma once

#include "kacfusion/cartan.hpp"

#include <functional>
#include <vector>

namespace kacfusion {

struct SignedWeight {
    FiniteWeight weight;
    int sign = 1;          // epsilon of the applied Weyl element
    bool on_wall = false;  // true: nontrivial stabilizer, consumers read this as 0

    static SignedWeight wall() { return SignedWeight{FiniteWeight{}, 1, true}; }
};

struct AlcoveWord {
    std::vector<int> indices; // entries i of the letters w_i = s_{i-1}...s_0
    int sign() const {
        long long s = 0;
        for (int i : indices) s += i;
        return s % 2 == 0 ? 1 : -1;
    }
};

// s_i(λ) = λ - <λ, alpha_i^vee> alpha_i, as a row operation on labels;
// labels(alpha_i) is column i of the finite Cartan matrix.
inline FiniteWeight reflect(const AffineAlgebraData& data, int i, const FiniteWeight& w) {
    if (i < 1 || i > data.rank) throw OutOfRange("reflect: simple root index");
    FiniteWeight out = w;
    Rat c = w.labels[i - 1];
    if (c == Rat(0)) return out;
    for (int j = 0; j < data.rank; ++j)
        out.labels[j] -= c * Rat(data.finite_cartan[j][i - 1]);
    return out;
}

// Dominant representative of the W-orbit with the sign of the reducing element.
// Strategy: reflect at the most negative label, ties at the smallest index.
// Any zero label encountered (including in the input) flags a wall.
inline SignedWeight to_dominant(const AffineAlgebraData& data, FiniteWeight w) {
    int sign = 1;
    bool wall = false;
    for (;;) {
        int arg = -1;
        Rat best(0);
        for (int i = 0; i < data.rank; ++i) {
            if (w.labels[i] == Rat(0)) wall = true;
            if (w.labels[i] < best) { best = w.labels[i]; arg = i; }
        }
        if (arg < 0) {
            SignedWeight out{w, sign, wall};
            return out;
        }
        w = reflect(data, arg + 1, w);
        sign = -sign;
    }
}

enum class FoldLattice { CoRootImage, RootLattice };

// Fold v into the open fundamental alcove of W ⋉ (m*scale)·L.
//
// For L = nu(Q_vee) the binding wall is (v, theta) = m*scale; for L = Q it is
// <v, theta_s^vee> = m*scale. Alternates dominance reduction with the single
// affine reflection through the binding wall; either move is an element of the
// group, so the accumulated sign is epsilon of the folding element. Returns a
// wall result when the orbit meets the boundary (zero label or pairing in
// (m*scale)·Z).
inline SignedWeight fold_affine(const AffineAlgebraData& data, long long m, FoldLattice lattice,
                                FiniteWeight v, long long scale = 1) {
    if (m < 1 || scale < 1) throw OutOfRange("fold_affine: m and scale must be positive");
    if (lattice == FoldLattice::RootLattice && !data.theta_short)
        throw InvalidLattice("fold_affine: Q-lattice fold needs two root lengths (" +
                             to_string(data.atype) + ")");

    const Rat bound(m * scale);
    // direction of the affine reflection step, in label coordinates
    FiniteWeight step_dir = lattice == FoldLattice::CoRootImage
                                ? (Rat(2) / data.norm2(data.theta)) * data.theta
                                : *data.theta_short;
    auto pairing = [&](const FiniteWeight& u) {
        return lattice == FoldLattice::CoRootImage ? data.inner(u, data.theta)
                                                   : data.theta_short_covee_pairing(u);
    };

    int sign = 1;
    for (int guard = 0; guard < 10000; ++guard) {
        SignedWeight dom = to_dominant(data, v);
        if (dom.on_wall) return SignedWeight::wall();
        v = dom.weight;
        sign *= dom.sign;
        Rat p = pairing(v);
        if (rat_is_integer(p / bound)) return SignedWeight::wall();
        if (p < bound) return SignedWeight{v, sign, false};
        // reflect through the hyperplane {pairing = bound}
        v = v - ((p - bound) * step_dir);
        sign = -sign;
    }
    throw Error("fold_affine: did not converge");
}

// The recursive alcove reduction of the type-C geometry: brings a regular
// dominant v with (v, theta) < 2(k + h_dual) into the alcove (v, theta) <
// k + h_dual using the letters w_i = s_{i-1}...s_0, and records the word.
//
// data must be of type A_{2l}^(2), where theta = 2*Lambda_1 and s_0 acts on
// the finite part as v -> v + (m - (v,theta)) * Lambda_1.
inline std::pair<SignedWeight, AlcoveWord> alcove_reduce_wI(const AffineAlgebraData& data,
                                                            long long k, FiniteWeight v) {
    if (!data.is_a2even_type())
        throw InvalidLattice("alcove_reduce_wI: requires A_{2l}^(2) data");
    if (k < 1) throw LevelNonPositive("alcove_reduce_wI: level must be positive");
    const long long m = k + data.h_dual;
    if (!v.is_strictly_dominant()) throw NotRegular("alcove_reduce_wI: input not strictly dominant");
    Rat p0 = data.inner(v, data.theta);
    if (p0 >= Rat(2 * m)) throw OutOfRange("alcove_reduce_wI: (v,theta) >= 2(k+h_dual)");

    AlcoveWord word;
    int sign = 1;
    for (;;) {
        Rat p = data.inner(v, data.theta); // = 2 b_1, b_1 the theta^vee-coordinate
        if (p < Rat(m)) return {SignedWeight{v, sign, false}, word};
        if (p == Rat(m)) throw NotRegular("alcove_reduce_wI: stabilized by the affine wall");
        // apply s_0 on the finite part: first label += m - 2 b_1
        FiniteWeight w = v;
        w.labels[0] += Rat(m) - p;
        int letters = 1;
        // then walk the single negative label right with s_1, s_2, ...
        for (int t = 0; t < data.rank;) {
            if (w.labels[t] == Rat(0)) throw NotRegular("alcove_reduce_wI: zero label during walk");
            if (w.labels[t] < Rat(0)) {
                w = reflect(data, t + 1, w);
                ++letters;
                ++t;
            } else {
                ++t;
            }
        }
        if (!w.is_strictly_dominant())
            throw Error("alcove_reduce_wI: walk failed to produce a dominant weight");
        word.indices.push_back(letters);
        if (letters % 2 != 0) sign = -sign;
        v = w;
        if (static_cast<long long>(word.indices.size()) > m)
            throw Error("alcove_reduce_wI: exceeded the k+h_dual word bound");
    }
}

} // namespace kacfusion

// Shared helpers for the test suites: weight literals, fixture loading, and
// the independent oracles (brute-force alcove search, randomized-order fold,
// character-multiset tensor multiplication) that the library paths are
// checked against. Everything here is test-only and stays independent of the
// implementation paths it checks.

#pragma once

#include "kacfusion/kacfusion.hpp"

#include <json.hpp>

#include <fstream>
#include <random>

namespace kacfusion::testing {

inline FiniteWeight fw(std::initializer_list<long long> labels) {
    RatVec r;
    for (long long x : labels) r.emplace_back(x);
    return FiniteWeight{r};
}

inline FiniteWeight fw_vec(const std::vector<long long>& labels) {
    RatVec r;
    for (long long x : labels) r.emplace_back(x);
    return FiniteWeight{r};
}

inline nlohmann::json load_fixture(const std::string& name) {
    std::ifstream in(std::string(KACFUSION_FIXTURE_DIR) + "/" + name);
    if (!in) throw Error("missing fixture " + name);
    nlohmann::json j;
    in >> j;
    return j;
}

// --- oracle 1: brute-force alcove representative ---------------------------
//
// Search w(v) + (m*scale) * (integer combination of lattice basis vectors)
// over the whole finite Weyl group and a coefficient box, for the unique
// representative in the closed alcove. Boundary-only hits mean a wall.
inline SignedWeight brute_fold(const AffineAlgebraData& data, long long m, FoldLattice lattice,
                               const FiniteWeight& v, long long scale = 1, long long radius = 0) {
    const Rat bound(m * scale);
    RatMat lat(data.rank, RatVec(data.rank));
    for (int j = 0; j < data.rank; ++j) {
        FiniteWeight alpha_j{RatVec(data.rank)};
        for (int i = 0; i < data.rank; ++i) alpha_j.labels[i] = Rat(data.finite_cartan[i][j]);
        for (int i = 0; i < data.rank; ++i)
            lat[i][j] = lattice == FoldLattice::RootLattice
                            ? alpha_j.labels[i]
                            : Rat(data.labels[j + 1], data.dual_labels[j + 1]) * alpha_j.labels[i];
    }
    auto pairing = [&](const FiniteWeight& u) {
        return lattice == FoldLattice::CoRootImage ? data.inner(u, data.theta)
                                                   : data.theta_short_covee_pairing(u);
    };
    if (radius == 0) {
        Rat span = pairing(v) / bound;
        radius = 3 + std::llabs(rat_floor(span));
    }
    const auto& w = weyl_group(data);
    bool boundary_seen = false;
    // walk the coefficient box
    std::vector<long long> coef(data.rank, -radius);
    for (;;) {
        for (size_t e = 0; e < w.size(); ++e) {
            // integer-matrix action needs integral v; scale through denominators
            RatVec img(data.rank, Rat(0));
            for (int i = 0; i < data.rank; ++i)
                for (int j = 0; j < data.rank; ++j)
                    img[i] += Rat(w.elements[e][i][j]) * v.labels[j];
            for (int i = 0; i < data.rank; ++i)
                for (int j = 0; j < data.rank; ++j)
                    img[i] += Rat(m * scale * coef[j]) * lat[i][j];
            FiniteWeight u{img};
            if (!u.is_dominant()) continue;
            Rat p = pairing(u);
            if (p > bound) continue;
            if (u.is_strictly_dominant() && p < bound)
                return SignedWeight{u, w.signs[e], false};
            boundary_seen = true;
        }
        int at = 0;
        while (at < data.rank && coef[at] == radius) coef[at++] = -radius;
        if (at == data.rank) break;
        ++coef[at];
    }
    if (!boundary_seen) throw Error("brute_fold: radius too small");
    return SignedWeight::wall();
}

// --- oracle 2: fold with a randomized reduction order ----------------------
inline SignedWeight randomized_fold(const AffineAlgebraData& data, long long m, FoldLattice lattice,
                                    FiniteWeight v, std::mt19937& rng, long long scale = 1) {
    const Rat bound(m * scale);
    FiniteWeight step_dir = lattice == FoldLattice::CoRootImage
                                ? (Rat(2) / data.norm2(data.theta)) * data.theta
                                : *data.theta_short;
    auto pairing = [&](const FiniteWeight& u) {
        return lattice == FoldLattice::CoRootImage ? data.inner(u, data.theta)
                                                   : data.theta_short_covee_pairing(u);
    };
    int sign = 1;
    for (int guard = 0; guard < 20000; ++guard) {
        std::vector<int> negs;
        bool wall = false;
        for (int i = 0; i < data.rank; ++i) {
            if (v.labels[i] == Rat(0)) wall = true;
            if (v.labels[i] < Rat(0)) negs.push_back(i + 1);
        }
        if (wall) return SignedWeight::wall();
        Rat p = pairing(v);
        bool out_of_range = v.is_dominant() && p >= bound;
        if (!negs.empty()) {
            // sometimes do an affine step first even with negative labels present
            if (out_of_range && rng() % 3 == 0) {
                if (rat_is_integer(p / bound)) return SignedWeight::wall();
                v = v - ((p - bound) * step_dir);
                sign = -sign;
                continue;
            }
            int pick = negs[rng() % negs.size()];
            v = reflect(data, pick, v);
            sign = -sign;
            continue;
        }
        if (rat_is_integer(p / bound)) return SignedWeight::wall();
        if (p < bound) return SignedWeight{v, sign, false};
        v = v - ((p - bound) * step_dir);
        sign = -sign;
    }
    throw Error("randomized_fold: did not converge");
}

// --- oracle 3: tensor decomposition by character-multiset multiplication ---
inline Decomposition brute_tensor(const AffineAlgebraData& data, const FiniteWeight& lam,
                                  const FiniteWeight& mu) {
    std::map<RatVec, long long> product;
    auto wl = full_weights(data, weight_system(data, lam));
    auto wm = full_weights(data, weight_system(data, mu));
    for (const auto& [a, ma] : wl)
        for (const auto& [b, mb] : wm) product[(a + b).labels] += ma * mb;

    RatMat fin(data.rank, RatVec(data.rank));
    for (int i = 0; i < data.rank; ++i)
        for (int j = 0; j < data.rank; ++j) fin[i][j] = Rat(data.finite_cartan[i][j]);
    RatMat invfin = rat_inverse(fin);
    auto height = [&](const RatVec& labels) {
        RatVec coords = mat_vec(invfin, labels);
        Rat s(0);
        for (const auto& c : coords) s += c;
        return s;
    };

    Decomposition out;
    for (;;) {
        bool found = false;
        FiniteWeight top;
        Rat top_h(0);
        long long top_m = 0;
        for (const auto& [labels, m] : product) {
            if (m == 0) continue;
            FiniteWeight w{labels};
            if (!w.is_dominant()) continue;
            Rat h = height(labels);
            if (!found || h > top_h) {
                found = true;
                top = w;
                top_h = h;
                top_m = m;
            }
        }
        if (!found) break;
        if (top_m < 0) throw Error("brute_tensor: negative peel multiplicity");
        out[top] = top_m;
        for (const auto& [w, m] : full_weights(data, weight_system(data, top)))
            product[w.labels] -= top_m * m;
    }
    for (const auto& [labels, m] : product)
        if (m != 0) throw Error("brute_tensor: residue after peeling");
    return out;
}

} // namespace kacfusion::testing

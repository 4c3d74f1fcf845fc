// Static data of affine Kac-Moody types X_N^(r): Cartan matrices, marks and
// comarks, Coxeter numbers, the normalized invariant form on the weight
// lattice of the underlying simple algebra, the translation lattice M of the
// affine Weyl group, and the transpose construction.
//
// Conventions (fixed once, used everywhere):
//   * cartan(i,j) = <alpha_j, alpha_i^vee>, rows/columns 0..rank.
//   * Finite weights are stored as Dynkin label vectors: labels[i-1] =
//     <lambda, alpha_i^vee> for i = 1..rank. This makes simple reflections
//     integer row operations and keeps all arithmetic rational.
//   * The invariant form is the one determined by (alpha_i, alpha_j) =
//     (a_i^vee / a_i) * cartan(i,j); for untwisted types this normalizes
//     (theta, theta) = 2, for A_{2l}^(2) it gives (theta, theta) = 4.
//   * delta and Lambda_0 are never materialized: every weight is the pair
//     (finite part, level), i.e. a class mod C*delta.

#pragma once

#include "kacfusion/errors.hpp"
#include "kacfusion/linalg.hpp"
#include "kacfusion/rational.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace kacfusion {

// ---------------------------------------------------------------------------
// weights

struct FiniteWeight {
    RatVec labels;

    FiniteWeight() = default;
    explicit FiniteWeight(RatVec l) : labels(std::move(l)) {}
    static FiniteWeight zero(int rank) { return FiniteWeight(RatVec(rank, Rat(0))); }

    int rank() const { return static_cast<int>(labels.size()); }
    bool is_integral() const {
        return std::all_of(labels.begin(), labels.end(), [](const Rat& x) { return rat_is_integer(x); });
    }
    bool is_dominant() const {
        return std::all_of(labels.begin(), labels.end(), [](const Rat& x) { return x >= Rat(0); });
    }
    bool is_strictly_dominant() const {
        return std::all_of(labels.begin(), labels.end(), [](const Rat& x) { return x > Rat(0); });
    }
    Rat label_sum() const {
        Rat s(0);
        for (const auto& x : labels) s += x;
        return s;
    }

    friend bool operator==(const FiniteWeight& a, const FiniteWeight& b) { return a.labels == b.labels; }
    friend bool operator!=(const FiniteWeight& a, const FiniteWeight& b) { return !(a == b); }
    // graded-lexicographic: label sum first, then lexicographic
    friend bool operator<(const FiniteWeight& a, const FiniteWeight& b) {
        Rat sa = a.label_sum(), sb = b.label_sum();
        if (sa != sb) return sa < sb;
        return a.labels < b.labels;
    }
};

inline FiniteWeight operator+(const FiniteWeight& a, const FiniteWeight& b) {
    RatVec l(a.labels);
    for (size_t i = 0; i < l.size(); ++i) l[i] += b.labels[i];
    return FiniteWeight(std::move(l));
}

inline FiniteWeight operator-(const FiniteWeight& a, const FiniteWeight& b) {
    RatVec l(a.labels);
    for (size_t i = 0; i < l.size(); ++i) l[i] -= b.labels[i];
    return FiniteWeight(std::move(l));
}

inline FiniteWeight operator*(const Rat& c, const FiniteWeight& a) {
    RatVec l(a.labels);
    for (auto& x : l) x *= c;
    return FiniteWeight(std::move(l));
}

inline FiniteWeight rho_weight(int rank) { return FiniteWeight(RatVec(rank, Rat(1))); }

inline FiniteWeight fundamental_weight(int rank, int i) {
    RatVec l(rank, Rat(0));
    l[i - 1] = Rat(1);
    return FiniteWeight(std::move(l));
}

struct LevelWeight {
    FiniteWeight finite;
    long long level = 0;

    friend bool operator==(const LevelWeight& a, const LevelWeight& b) {
        return a.level == b.level && a.finite == b.finite;
    }
    friend bool operator<(const LevelWeight& a, const LevelWeight& b) {
        if (a.level != b.level) return a.level < b.level;
        return a.finite < b.finite;
    }
};

// ---------------------------------------------------------------------------
// affine types

struct AffineType {
    char family = 'A'; // 'A'..'G'
    int n = 1;         // the N of X_N^(r)
    int r = 1;         // twist order

    friend bool operator==(const AffineType& a, const AffineType& b) {
        return a.family == b.family && a.n == b.n && a.r == b.r;
    }
    friend bool operator<(const AffineType& a, const AffineType& b) {
        if (a.family != b.family) return a.family < b.family;
        if (a.n != b.n) return a.n < b.n;
        return a.r < b.r;
    }
};

inline std::string to_string(const AffineType& t) {
    return std::string(1, t.family) + std::to_string(t.n) + "~" + std::to_string(t.r);
}

// CLI syntax: "A2~1", "A5~2", "D4~3" meaning X_N^(r).
inline AffineType parse_type(const std::string& s) {
    if (s.size() < 2) throw UnknownType("cannot parse '" + s + "'");
    AffineType t;
    t.family = static_cast<char>(std::toupper(s[0]));
    auto tilde = s.find('~');
    try {
        if (tilde == std::string::npos) {
            t.n = std::stoi(s.substr(1));
            t.r = 1;
        } else {
            t.n = std::stoi(s.substr(1, tilde - 1));
            t.r = std::stoi(s.substr(tilde + 1));
        }
    } catch (const std::exception&) {
        throw UnknownType("cannot parse '" + s + "'");
    }
    if (t.family < 'A' || t.family > 'G') throw UnknownType("bad family in '" + s + "'");
    return t;
}

enum class MLatticeKind {
    CoRootImage, // M = nu(Q_vee) of the underlying simple algebra (r = a_0)
    RootLattice  // M = Q of the underlying simple algebra (r > a_0)
};

// ---------------------------------------------------------------------------
// affine data

struct AffineAlgebraData {
    AffineType atype;
    int rank = 0;           // ℓ = rank of the underlying simple algebra
    IntMat cartan;          // (ℓ+1)x(ℓ+1)
    IntMat finite_cartan;   // ℓxℓ (rows/cols 1..ℓ of cartan)
    IntVec labels;          // a_0..a_ℓ
    IntVec dual_labels;     // a_0^vee..a_ℓ^vee
    long long h = 0;        // Coxeter number
    long long h_dual = 0;   // dual Coxeter number
    FiniteWeight theta;                 // highest root of the finite part, Dynkin labels
    std::optional<FiniteWeight> theta_short; // highest short root, when two+ lengths
    RatVec theta_short_covector;        // pairing <., theta_s^vee> as a label-space covector
    RatMat gram;            // (Lambda_i, Lambda_j), ℓxℓ
    RatMat root_norms;      // diag entries (alpha_i, alpha_i) kept as a column for convenience
    MLatticeKind m_lattice = MLatticeKind::CoRootImage;
    RatMat m_basis;         // basis of M, columns, in label coordinates

    bool is_untwisted() const { return atype.r == 1; }
    bool is_a2even_type() const { return atype.family == 'A' && atype.r == 2 && atype.n % 2 == 0; }

    IntVec finite_labels() const { return IntVec(labels.begin() + 1, labels.end()); }
    IntVec finite_dual_labels() const { return IntVec(dual_labels.begin() + 1, dual_labels.end()); }

    Rat inner(const FiniteWeight& a, const FiniteWeight& b) const {
        return bilinear(gram, a.labels, b.labels);
    }
    Rat norm2(const FiniteWeight& a) const { return inner(a, a); }

    // <lambda, theta^vee> = 2 (lambda, theta) / (theta, theta)
    Rat theta_covee_pairing(const FiniteWeight& v) const {
        return Rat(2) * inner(v, theta) / norm2(theta);
    }
    // <lambda, theta_s^vee>; the highest coroot pairing used by primed alcoves
    Rat theta_short_covee_pairing(const FiniteWeight& v) const {
        if (!theta_short) throw SingleRootLength(to_string(atype) + " has a single root length");
        return dot(theta_short_covector, v.labels);
    }
    // level pairing sum_i a_i^vee * labels_i = k - <lambda, a_0^vee alpha_0^vee> budget
    Rat level_pairing(const FiniteWeight& v) const {
        Rat s(0);
        for (int i = 0; i < rank; ++i) s += Rat(dual_labels[i + 1]) * v.labels[i];
        return s;
    }
};

namespace detail {

// Finite Cartan matrices in the Kac convention cartan(i,j) = <alpha_j, alpha_i^vee>,
// Kac/Bourbaki node numbering, plus marks of theta and comarks of theta^vee.
struct FiniteFamily {
    IntMat cartan;
    IntVec marks;    // theta = sum marks_i alpha_i
    IntVec comarks;  // theta^vee = sum comarks_i alpha_i^vee
};

inline FiniteFamily finite_family(char family, int l) {
    auto chain = [&](int n) {
        IntMat c(n, IntVec(n, 0));
        for (int i = 0; i < n; ++i) {
            c[i][i] = 2;
            if (i + 1 < n) { c[i][i + 1] = -1; c[i + 1][i] = -1; }
        }
        return c;
    };
    FiniteFamily f;
    switch (family) {
    case 'A': {
        if (l < 1) throw UnknownType("A_n needs n >= 1");
        f.cartan = chain(l);
        f.marks.assign(l, 1);
        f.comarks.assign(l, 1);
        return f;
    }
    case 'B': {
        if (l < 2) throw UnknownType("B_n needs n >= 2");
        f.cartan = chain(l);
        f.cartan[l - 1][l - 2] = -2; // alpha_l short
        f.marks.assign(l, 2);
        f.marks[0] = 1;
        f.comarks = f.marks;
        f.comarks[l - 1] = 1;
        return f;
    }
    case 'C': {
        if (l < 1) throw UnknownType("C_n needs n >= 1");
        f.cartan = chain(l);
        if (l >= 2) f.cartan[l - 2][l - 1] = -2; // alpha_l long
        f.marks.assign(l, 2);
        f.marks[l - 1] = 1;
        if (l == 1) f.marks[0] = 1;
        f.comarks.assign(l, 1);
        return f;
    }
    case 'D': {
        if (l < 3) throw UnknownType("D_n needs n >= 3");
        f.cartan = chain(l);
        // fork: alpha_l attaches to alpha_{l-2}
        f.cartan[l - 1][l - 2] = 0;
        f.cartan[l - 2][l - 1] = 0;
        f.cartan[l - 1][l - 3] = -1;
        f.cartan[l - 3][l - 1] = -1;
        f.marks.assign(l, 2);
        f.marks[0] = f.marks[l - 2] = f.marks[l - 1] = 1;
        f.comarks = f.marks;
        return f;
    }
    case 'E': {
        if (l < 6 || l > 8) throw UnknownType("E_n needs n in {6,7,8}");
        // Bourbaki numbering: chain 1-3-4-5-...-l, node 2 attached to node 4
        f.cartan = IntMat(l, IntVec(l, 0));
        for (int i = 0; i < l; ++i) f.cartan[i][i] = 2;
        auto bond = [&](int i, int j) { f.cartan[i - 1][j - 1] = -1; f.cartan[j - 1][i - 1] = -1; };
        bond(1, 3); bond(3, 4); bond(2, 4); bond(4, 5); bond(5, 6);
        if (l >= 7) bond(6, 7);
        if (l >= 8) bond(7, 8);
        if (l == 6) f.marks = {1, 2, 2, 3, 2, 1};
        if (l == 7) f.marks = {2, 2, 3, 4, 3, 2, 1};
        if (l == 8) f.marks = {2, 3, 4, 6, 5, 4, 3, 2};
        f.comarks = f.marks;
        return f;
    }
    case 'F': {
        if (l != 4) throw UnknownType("F_n needs n = 4");
        f.cartan = chain(4);
        f.cartan[2][1] = -2; // alpha_3, alpha_4 short
        f.marks = {2, 3, 4, 2};
        f.comarks = {2, 3, 2, 1};
        return f;
    }
    case 'G': {
        if (l != 2) throw UnknownType("G_n needs n = 2");
        f.cartan = {{2, -1}, {-3, 2}}; // alpha_1 long, alpha_2 short
        f.marks = {2, 3};
        f.comarks = {2, 1};
        return f;
    }
    default:
        throw UnknownType("unknown family");
    }
}

} // namespace detail

// Transpose type per the Aff 1/2/3 tables; self-transpose for simply-laced
// untwisted types and for A_{2l}^(2) (node-reversal isomorphism).
inline AffineType transpose_type(const AffineType& t) {
    if (t.r == 1) {
        switch (t.family) {
        case 'B': return AffineType{'A', 2 * t.n - 1, 2};
        case 'C': return AffineType{'D', t.n + 1, 2};
        case 'F': return AffineType{'E', 6, 2};
        case 'G': return AffineType{'D', 4, 3};
        default: return t;
        }
    }
    if (t.r == 2) {
        if (t.family == 'A' && t.n >= 2 && t.n % 2 == 0) return t;
        if (t.family == 'A' && t.n >= 3) return AffineType{'B', (t.n + 1) / 2, 1};
        if (t.family == 'D' && t.n >= 3) return AffineType{'C', t.n - 1, 1};
        if (t.family == 'E' && t.n == 6) return AffineType{'F', 4, 1};
    }
    if (t.r == 3 && t.family == 'D' && t.n == 4) return AffineType{'G', 2, 1};
    throw UnknownType(to_string(t));
}

const AffineAlgebraData& affine_data(const AffineType& t);

// Positive roots of a finite Cartan matrix, as root-coordinate vectors.
// cartan(i,j) = <alpha_j, alpha_i^vee>, so <beta, alpha_i^vee> = (cartan . beta)_i.
inline std::vector<IntVec> positive_roots_of(const IntMat& fin) {
    int l = static_cast<int>(fin.size());
    std::vector<IntVec> roots;
    std::map<IntVec, bool> seen;
    for (int i = 0; i < l; ++i) {
        IntVec e(l, 0);
        e[i] = 1;
        roots.push_back(e);
        seen[e] = true;
    }
    for (size_t at = 0; at < roots.size(); ++at) {
        IntVec beta = roots[at];
        for (int i = 0; i < l; ++i) {
            long long pair = 0;
            for (int j = 0; j < l; ++j) pair += fin[i][j] * beta[j];
            long long p = 0; // depth of the alpha_i-string below beta
            IntVec down = beta;
            while (true) {
                down[i] -= 1;
                if (seen.count(down)) ++p;
                else break;
            }
            if (p - pair > 0) {
                IntVec up = beta;
                up[i] += 1;
                if (!seen.count(up)) {
                    seen[up] = true;
                    roots.push_back(up);
                }
            }
        }
    }
    return roots;
}

namespace detail {

inline void finish_data(AffineAlgebraData& d) {
    int l = d.rank;
    d.finite_cartan = IntMat(l, IntVec(l));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) d.finite_cartan[i][j] = d.cartan[i + 1][j + 1];
    d.h = 0;
    d.h_dual = 0;
    for (int i = 0; i <= l; ++i) { d.h += d.labels[i]; d.h_dual += d.dual_labels[i]; }

    // theta labels: <theta, alpha_i^vee> = -a_0 * cartan(i, 0)
    RatVec th(l);
    for (int i = 1; i <= l; ++i) th[i - 1] = Rat(-d.labels[0] * d.cartan[i][0]);
    d.theta = FiniteWeight(th);

    // invariant form on simple roots, then transported to fundamental weights:
    // (Lambda_i, Lambda_j) = (a_j^vee / a_j) * (finite_cartan^{-1})_{ji}
    RatMat fin(l, RatVec(l));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) fin[i][j] = Rat(d.finite_cartan[i][j]);
    RatMat inv = rat_inverse(fin);
    d.gram = RatMat(l, RatVec(l));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            d.gram[i][j] = Rat(d.dual_labels[j + 1], d.labels[j + 1]) * inv[j][i];

    d.root_norms = RatMat(l, RatVec(1));
    for (int i = 0; i < l; ++i)
        d.root_norms[i][0] = Rat(2 * d.dual_labels[i + 1], d.labels[i + 1]);

    // M: nu(Q_vee) when r = a_0, the root lattice Q when r > a_0
    d.m_lattice = (d.atype.r == d.labels[0]) ? MLatticeKind::CoRootImage : MLatticeKind::RootLattice;
    d.m_basis = RatMat(l, RatVec(l));
    for (int j = 0; j < l; ++j) {
        Rat scale = d.m_lattice == MLatticeKind::CoRootImage
                        ? Rat(d.labels[j + 1], d.dual_labels[j + 1])
                        : Rat(1);
        for (int i = 0; i < l; ++i) d.m_basis[i][j] = scale * Rat(d.finite_cartan[i][j]);
    }

    // highest short root: dominant representative of the minimal length class
    auto roots = positive_roots_of(d.finite_cartan);
    auto root_norm = [&](const IntVec& beta) {
        Rat s(0);
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j)
                s += Rat(beta[i]) * Rat(beta[j]) * Rat(d.dual_labels[i + 1], d.labels[i + 1]) *
                     Rat(d.finite_cartan[i][j]);
        return s;
    };
    Rat min_norm = root_norm(roots[0]), max_norm = min_norm;
    for (const auto& beta : roots) {
        Rat nn = root_norm(beta);
        min_norm = std::min(min_norm, nn);
        max_norm = std::max(max_norm, nn);
    }
    if (min_norm != max_norm) {
        for (const auto& beta : roots) {
            if (root_norm(beta) != min_norm) continue;
            RatVec lab(l, Rat(0));
            for (int i = 0; i < l; ++i)
                for (int j = 0; j < l; ++j) lab[i] += Rat(d.finite_cartan[i][j] * beta[j]);
            FiniteWeight w{lab};
            if (w.is_dominant()) d.theta_short = w;
        }
        if (!d.theta_short) throw Error("affine_data: no dominant short root found");
        Rat ts_norm = d.norm2(*d.theta_short);
        RatVec cov = mat_vec(d.gram, d.theta_short->labels);
        d.theta_short_covector = RatVec(l);
        for (int i = 0; i < l; ++i) d.theta_short_covector[i] = Rat(2) * cov[i] / ts_norm;
    }

    // transcription cross-checks
    for (int i = 0; i <= l; ++i) {
        long long row = 0, col = 0;
        for (int j = 0; j <= l; ++j) {
            row += d.cartan[i][j] * d.labels[j];
            col += d.dual_labels[j] * d.cartan[j][i];
        }
        if (row != 0 || col != 0) throw Error("affine_data: label relations fail for " + to_string(d.atype));
    }
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            if (d.gram[i][j] != d.gram[j][i]) throw Error("affine_data: gram not symmetric");
    // positive definiteness via leading principal minors
    for (int k = 1; k <= l; ++k) {
        RatMat lead(k, RatVec(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) lead[i][j] = d.gram[i][j];
        if (rat_det(lead) <= Rat(0)) throw Error("affine_data: gram not positive definite");
    }
    if (d.norm2(d.theta) != Rat(2 * d.labels[0] * d.dual_labels[0]))
        throw Error("affine_data: theta normalization fails");
}

inline AffineAlgebraData build_untwisted(char family, int l, AffineType t) {
    FiniteFamily f = finite_family(family, l);
    AffineAlgebraData d;
    d.atype = t;
    d.rank = l;
    d.cartan = IntMat(l + 1, IntVec(l + 1, 0));
    d.cartan[0][0] = 2;
    for (int i = 1; i <= l; ++i)
        for (int j = 1; j <= l; ++j) d.cartan[i][j] = f.cartan[i - 1][j - 1];
    for (int j = 1; j <= l; ++j) {
        long long a0j = 0; // -<alpha_j, theta^vee>
        for (int i = 1; i <= l; ++i) a0j -= f.comarks[i - 1] * f.cartan[i - 1][j - 1];
        long long aj0 = 0; // -<theta, alpha_j^vee>
        for (int i = 1; i <= l; ++i) aj0 -= f.cartan[j - 1][i - 1] * f.marks[i - 1];
        d.cartan[0][j] = a0j;
        d.cartan[j][0] = aj0;
    }
    d.labels.assign(l + 1, 0);
    d.dual_labels.assign(l + 1, 0);
    d.labels[0] = d.dual_labels[0] = 1;
    for (int i = 1; i <= l; ++i) {
        d.labels[i] = f.marks[i - 1];
        d.dual_labels[i] = f.comarks[i - 1];
    }
    finish_data(d);
    return d;
}

inline AffineAlgebraData build_a2even(int l, AffineType t) {
    FiniteFamily f = l == 1 ? finite_family('A', 1) : finite_family('C', l);
    AffineAlgebraData d;
    d.atype = t;
    d.rank = l;
    d.cartan = IntMat(l + 1, IntVec(l + 1, 0));
    d.cartan[0][0] = 2;
    for (int i = 1; i <= l; ++i)
        for (int j = 1; j <= l; ++j) d.cartan[i][j] = f.cartan[i - 1][j - 1];
    d.cartan[0][1] = (l == 1) ? -4 : -2;
    d.cartan[1][0] = -1;
    d.labels.assign(l + 1, 2);
    d.labels[l] = 1;
    if (l == 1) { d.labels = {2, 1}; }
    d.dual_labels.assign(l + 1, 2);
    d.dual_labels[0] = 1;
    finish_data(d);
    return d;
}

inline AffineAlgebraData build_transposed(const AffineAlgebraData& src, AffineType t) {
    AffineAlgebraData d;
    d.atype = t;
    d.rank = src.rank;
    int n = src.rank + 1;
    d.cartan = IntMat(n, IntVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d.cartan[i][j] = src.cartan[j][i];
    d.labels = src.dual_labels;
    d.dual_labels = src.labels;
    finish_data(d);
    return d;
}

inline AffineAlgebraData build_data(const AffineType& t) {
    if (t.r < 1 || t.r > 3) throw UnknownType(to_string(t));
    if (t.r == 1) {
        // C_1 coincides with A_1; kept addressable for level-shift statements.
        if (t.family == 'C' && t.n == 1) return build_untwisted('C', 1, t);
        return build_untwisted(t.family, t.n, t);
    }
    if (t.r == 2 && t.family == 'A' && t.n >= 2 && t.n % 2 == 0)
        return build_a2even(t.n / 2, t);
    // remaining twisted diagrams are transposes of untwisted ones
    AffineType ut = transpose_type(t);
    if (ut.r != 1) throw UnknownType(to_string(t));
    return build_transposed(affine_data(ut), t);
}

} // namespace detail

inline const AffineAlgebraData& affine_data(const AffineType& t) {
    static std::map<AffineType, std::unique_ptr<AffineAlgebraData>> cache;
    static std::recursive_mutex mtx; // transposed types are built from their untwisted partner
    std::lock_guard<std::recursive_mutex> lock(mtx);
    auto it = cache.find(t);
    if (it == cache.end()) {
        auto data = std::make_unique<AffineAlgebraData>(detail::build_data(t));
        it = cache.emplace(t, std::move(data)).first;
    }
    return *it->second;
}

inline const AffineAlgebraData& affine_data(const std::string& s) { return affine_data(parse_type(s)); }

inline const AffineAlgebraData& transpose(const AffineAlgebraData& d) {
    return affine_data(transpose_type(d.atype));
}

// The (Lambda_i, Lambda_j) matrix; (u, v) = u_labels . gram . v_labels.
inline RatMat weight_gram(const AffineAlgebraData& d) { return d.gram; }

} // namespace kacfusion

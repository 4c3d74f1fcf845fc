// Small exact linear algebra kit: rational matrices (Gaussian elimination,
// inverse, determinant), Smith normal form over Z, Hermite normal form for
// lattice arithmetic, and the dense complex matrix type used for S/T/u-actions.

#pragma once

#include "kacfusion/errors.hpp"
#include "kacfusion/rational.hpp"

#include <Eigen/Dense>

#include <cstdlib>
#include <vector>

namespace kacfusion {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;
using IntVec = std::vector<long long>;
using IntMat = std::vector<IntVec>;

using Cplx = std::complex<double>;
using Cmat = Eigen::MatrixXcd;

inline RatMat rat_identity(int n) {
    RatMat m(n, RatVec(n, Rat(0)));
    for (int i = 0; i < n; ++i) m[i][i] = Rat(1);
    return m;
}

inline RatVec mat_vec(const RatMat& m, const RatVec& v) {
    RatVec out(m.size(), Rat(0));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

inline RatMat mat_mul(const RatMat& a, const RatMat& b) {
    size_t n = a.size(), m = b[0].size(), k = b.size();
    RatMat c(n, RatVec(m, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == Rat(0)) continue;
            for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

inline Rat dot(const RatVec& a, const RatVec& b) {
    Rat s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// v^T G w
inline Rat bilinear(const RatMat& g, const RatVec& v, const RatVec& w) {
    return dot(v, mat_vec(g, w));
}

inline RatMat rat_inverse(const RatMat& in) {
    int n = static_cast<int>(in.size());
    RatMat a = in, inv = rat_identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != Rat(0)) { piv = r; break; }
        if (piv < 0) throw Error("rat_inverse: singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rat d = a[col][col];
        for (int j = 0; j < n; ++j) { a[col][j] /= d; inv[col][j] /= d; }
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == Rat(0)) continue;
            Rat f = a[r][col];
            for (int j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

inline Rat rat_det(RatMat a) {
    int n = static_cast<int>(a.size());
    Rat det(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != Rat(0)) { piv = r; break; }
        if (piv < 0) return Rat(0);
        if (piv != col) { std::swap(a[piv], a[col]); det = -det; }
        det *= a[col][col];
        for (int r = col + 1; r < n; ++r) {
            if (a[r][col] == Rat(0)) continue;
            Rat f = a[r][col] / a[col][col];
            for (int j = col; j < n; ++j) a[r][j] -= f * a[col][j];
        }
    }
    return det;
}

// Smith normal form: U*A*V = D with U,V unimodular, d_1 | d_2 | ... >= 0.
// Returns diag(D) and the left transform U (needed for residue class maps).
struct SmithForm {
    IntVec diag;
    IntMat left; // U
};

inline SmithForm smith_normal_form(IntMat a) {
    int n = static_cast<int>(a.size());
    int m = n ? static_cast<int>(a[0].size()) : 0;
    IntMat u(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) u[i][i] = 1;

    auto swap_rows = [&](int i, int j) { std::swap(a[i], a[j]); std::swap(u[i], u[j]); };
    auto add_row = [&](int dst, int src, long long f) {
        for (int k = 0; k < m; ++k) a[dst][k] += f * a[src][k];
        for (int k = 0; k < n; ++k) u[dst][k] += f * u[src][k];
    };
    auto swap_cols = [&](int i, int j) {
        for (int r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
    };
    auto add_col = [&](int dst, int src, long long f) {
        for (int r = 0; r < n; ++r) a[r][dst] += f * a[r][src];
    };

    int t = 0;
    while (t < n && t < m) {
        // find a nonzero pivot in the remaining block
        int pi = -1, pj = -1;
        for (int i = t; i < n && pi < 0; ++i)
            for (int j = t; j < m; ++j)
                if (a[i][j] != 0) { pi = i; pj = j; break; }
        if (pi < 0) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        bool again = true;
        while (again) {
            again = false;
            for (int i = t + 1; i < n; ++i)
                if (a[i][t] != 0) {
                    long long q = a[i][t] / a[t][t];
                    add_row(i, t, -q);
                    if (a[i][t] != 0) { swap_rows(i, t); again = true; }
                }
            for (int j = t + 1; j < m; ++j)
                if (a[t][j] != 0) {
                    long long q = a[t][j] / a[t][t];
                    add_col(j, t, -q);
                    if (a[t][j] != 0) { swap_cols(j, t); again = true; }
                }
        }
        // enforce divisibility d_t | a[i][j] for the rest
        for (int i = t + 1; i < n; ++i)
            for (int j = t + 1; j < m; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    add_row(t, i, 1);
                    again = true;
                    // redo elimination for this block
                    i = n; break;
                }
        if (again) continue;
        if (a[t][t] < 0) {
            for (int k = 0; k < m; ++k) a[t][k] = -a[t][k];
            for (int k = 0; k < n; ++k) u[t][k] = -u[t][k];
        }
        ++t;
    }
    IntVec d(std::min(n, m), 0);
    for (int i = 0; i < static_cast<int>(d.size()); ++i) d[i] = a[i][i];
    return SmithForm{d, u};
}

// Column-style Hermite normal form of an integer matrix (lattice generated by
// columns). Returns a matrix whose nonzero columns are a basis of the lattice.
inline IntMat hnf_columns(IntMat a) {
    int n = static_cast<int>(a.size());
    if (n == 0) return a;
    int m = static_cast<int>(a[0].size());
    int row = 0, col = 0;
    while (row < n && col < m) {
        int piv = -1;
        for (int j = col; j < m; ++j)
            if (a[row][j] != 0) { piv = j; break; }
        if (piv < 0) { ++row; continue; }
        for (int r = 0; r < n; ++r) std::swap(a[r][piv], a[r][col]);
        bool reduced = false;
        while (!reduced) {
            reduced = true;
            for (int j = col + 1; j < m; ++j) {
                if (a[row][j] == 0) continue;
                long long q = a[row][j] / a[row][col];
                for (int r = 0; r < n; ++r) a[r][j] -= q * a[r][col];
                if (a[row][j] != 0) {
                    for (int r = 0; r < n; ++r) std::swap(a[r][j], a[r][col]);
                    reduced = false;
                }
            }
        }
        if (a[row][col] < 0)
            for (int r = 0; r < n; ++r) a[r][col] = -a[r][col];
        ++row;
        ++col;
    }
    // drop zero columns
    IntMat out(n);
    for (int j = 0; j < m; ++j) {
        bool nz = false;
        for (int r = 0; r < n; ++r) nz = nz || a[r][j] != 0;
        if (nz)
            for (int r = 0; r < n; ++r) out[r].push_back(a[r][j]);
    }
    return out;
}

// --- rational lattices -----------------------------------------------------
//
// A full-rank lattice in weight-label coordinates, given by basis vectors
// stored as COLUMNS of a rational matrix.

struct Lattice {
    RatMat basis; // ℓ×ℓ, columns are basis vectors
};

inline Lattice lattice_scale(const Lattice& l, const Rat& c) {
    Lattice out = l;
    for (auto& row : out.basis)
        for (auto& x : row) x *= c;
    return out;
}

// Reduce a set of rational generator columns to a lattice basis via HNF.
inline RatMat lattice_basis_from_generators(const RatMat& gens) {
    long long den = 1;
    for (const auto& row : gens)
        for (const auto& x : row) den = std::lcm(den, x.denominator());
    int n = static_cast<int>(gens.size());
    int m = n ? static_cast<int>(gens[0].size()) : 0;
    IntMat ig(n, IntVec(m));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            Rat v = gens[i][j] * Rat(den);
            ig[i][j] = v.numerator();
        }
    IntMat h = hnf_columns(ig);
    RatMat out(n, RatVec(h.empty() ? 0 : h[0].size()));
    for (int i = 0; i < n; ++i)
        for (size_t j = 0; j < h[i].size(); ++j) out[i][j] = Rat(h[i][j], den);
    return out;
}

// Sum of two lattices (concatenate generators, reduce).
inline Lattice lattice_sum(const Lattice& a, const Lattice& b) {
    int n = static_cast<int>(a.basis.size());
    RatMat gens(n);
    for (int i = 0; i < n; ++i) {
        gens[i] = a.basis[i];
        gens[i].insert(gens[i].end(), b.basis[i].begin(), b.basis[i].end());
    }
    return Lattice{lattice_basis_from_generators(gens)};
}

// Dual lattice with respect to a symmetric form G: {v : (v, b_j) in Z}.
// If B holds the basis columns, the dual basis solves D^T G B = I.
inline Lattice lattice_dual(const Lattice& l, const RatMat& gram) {
    RatMat gb = mat_mul(gram, l.basis);
    RatMat inv = rat_inverse(gb); // inv = (G B)^{-1}, dual basis = inv^T columns
    int n = static_cast<int>(inv.size());
    RatMat d(n, RatVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d[i][j] = inv[j][i];
    return Lattice{d};
}

// Intersection via duality: L1 ∩ L2 = dual(dual L1 + dual L2).
inline Lattice lattice_intersect(const Lattice& a, const Lattice& b, const RatMat& gram) {
    return lattice_dual(lattice_sum(lattice_dual(a, gram), lattice_dual(b, gram)), gram);
}

// Membership test: is v an integer combination of the basis columns?
inline bool lattice_contains(const Lattice& l, const RatVec& v) {
    RatVec c = mat_vec(rat_inverse(l.basis), v);
    for (const auto& x : c)
        if (!rat_is_integer(x)) return false;
    return true;
}

// Index [L2 : L1] for L1 ⊆ L2, as the ratio of covolumes.
inline Rat lattice_index(const Lattice& sub, const Lattice& super) {
    Rat q = rat_det(sub.basis) / rat_det(super.basis);
    if (q < Rat(0)) q = -q;
    if (!rat_is_integer(q)) throw Error("lattice_index: not a sublattice");
    return q;
}

// --- complex helpers -------------------------------------------------------

inline Cplx unit_phase(const Rat& turns) {
    double t = 2.0 * M_PI * to_double(rat_frac(turns));
    return Cplx(std::cos(t), std::sin(t));
}

inline double max_abs(const Cmat& m) {
    double r = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r = std::max(r, std::abs(m(i, j)));
    return r;
}

// Least-squares scalar c minimizing ||b - c a||_F; used for identities the
// source text states only up to an unspecified nonzero constant.
inline Cplx fit_scalar(const Cmat& a, const Cmat& b) {
    Cplx num(0), den(0);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            num += std::conj(a(i, j)) * b(i, j);
            den += std::conj(a(i, j)) * a(i, j);
        }
    if (std::abs(den) < 1e-14) throw Error("fit_scalar: zero reference matrix");
    return num / den;
}

// Residual of M being a scalar multiple of the identity.
inline double projective_identity_residual(const Cmat& m) {
    Cplx scale(0);
    for (Eigen::Index i = 0; i < m.rows(); ++i) scale += m(i, i);
    scale /= static_cast<double>(m.rows());
    Cmat diff = m - scale * Cmat::Identity(m.rows(), m.cols());
    return max_abs(diff) / std::max(1.0, std::abs(scale));
}

} // namespace kacfusion

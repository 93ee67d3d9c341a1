#pragma once

#include <string>
#include <vector>

#include "tdlc/padic/matrix.hpp"

namespace tdlc {

// Full-rank Z_p-lattice in Q_p^n in canonical column echelon form: the basis
// matrix is upper triangular, diagonal entries are exact powers p^{e_i}, and
// the entry (i, j) for i < j is the canonical residue mod p^{e_i} (a rational
// with p-power denominator). Canonical bases are unique per subgroup, so
// equality is plain syntactic equality.
class Lattice {
public:
    Lattice() : p_(0), n_(0), prec_(0) {}

    long prime() const { return p_; }
    int dim() const { return n_; }
    int precision() const { return prec_; }
    const std::vector<long>& diag_exponents() const { return exp_; }
    const std::vector<std::vector<Rational>>& basis() const { return basis_; }

    long det_valuation() const {
        long s = 0;
        for (long e : exp_) s += e;
        return s;
    }

    friend bool operator==(const Lattice& a, const Lattice& b) {
        return a.p_ == b.p_ && a.n_ == b.n_ && a.exp_ == b.exp_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Lattice& a, const Lattice& b) { return !(a == b); }

    // Canonicalize a generating set (columns of `gens`, full rank required).
    static Lattice canonicalize(const Mat& gens, int prec) {
        const long p = gens.prime();
        const int n = gens.rows();
        Mat M = gens;
        long treated_zero_floor = Scalar::kExactZero;
        std::vector<int> order;  // column index chosen as pivot for row i, bottom-up
        std::vector<bool> used(M.cols(), false);

        for (int i = n - 1; i >= 0; --i) {
            std::vector<std::pair<int, Scalar>> cands;
            for (int j = 0; j < M.cols(); ++j)
                if (!used[j]) cands.push_back({j, M.at(i, j)});
            auto pj = detail::pick_pivot(cands);
            if (!pj) {
                bool inexact = false;
                for (auto& [idx, s] : cands)
                    if (s.is_zero() && !s.is_exact_zero()) inexact = true;
                if (inexact)
                    throw PrecisionExhausted("lattice rank deficient at current precision (row " +
                                             std::to_string(i) + ")");
                throw InputError("lattice generators do not span full rank (row " +
                                 std::to_string(i) + ")");
            }
            used[*pj] = true;
            order.push_back(*pj);
            Scalar piv = M.at(i, *pj);
            for (int j = 0; j < M.cols(); ++j) {
                if (used[j] && j != *pj) continue;
                if (j == *pj) continue;
                Scalar f = M.at(i, j);
                if (f.is_zero()) {
                    treated_zero_floor = std::min(treated_zero_floor, f.zero_floor());
                    continue;
                }
                Scalar ratio = f / piv;  // integral: pivot has minimal valuation
                for (int i2 = 0; i2 <= i; ++i2)
                    M.at(i2, j) = M.at(i2, j) - ratio * M.at(i2, *pj);
                M.at(i, j) = Scalar::zero(p);
            }
        }
        // dropped columns must be zero; collect their cancellation floors
        for (int j = 0; j < M.cols(); ++j) {
            if (used[j]) continue;
            for (int i = 0; i < n; ++i) {
                const Scalar& s = M.at(i, j);
                if (!s.is_zero())
                    throw ContractViolation("lattice echelon left residue in dropped column");
                treated_zero_floor = std::min(treated_zero_floor, s.zero_floor());
            }
        }
        // assemble upper-triangular scalar matrix: pivot of row i at column i
        Mat B(p, n, n);
        for (int i = 0; i < n; ++i) {
            int src = order[n - 1 - i];
            for (int i2 = 0; i2 < n; ++i2) B.at(i2, i) = M.at(i2, src);
        }
        // normalize pivots to exact p^e by unit scaling of each column
        Lattice L;
        L.p_ = p;
        L.n_ = n;
        L.prec_ = prec;
        L.exp_.resize(n);
        for (int j = 0; j < n; ++j) {
            Scalar piv = B.at(j, j);
            long e = piv.val();
            L.exp_[j] = e;
            Scalar unit_inv = (piv / Scalar::p_power(p, e, piv.precision())).inverse();
            for (int i = 0; i <= j; ++i) B.at(i, j) = B.at(i, j) * unit_inv;
            B.at(j, j) = Scalar::p_power(p, e, piv.precision());
        }
        // reduce above-diagonal entries: (i, j) mod p^{e_i}, i descending per column
        L.basis_.assign(n, std::vector<Rational>(n, Rational(0)));
        for (int j = 0; j < n; ++j) {
            for (int i = j - 1; i >= 0; --i) {
                Scalar entry = B.at(i, j);
                Rational r = entry.residue_mod(L.exp_[i]);
                Scalar rs = Scalar::from_rational(p, r, prec);
                Scalar c = (entry - rs) / Scalar::p_power(p, L.exp_[i], prec);
                if (!c.is_zero()) {
                    if (c.val() < 0)
                        throw ContractViolation("non-integral reduction multiplier in canonical form");
                    for (int i2 = 0; i2 < i; ++i2)
                        B.at(i2, j) = B.at(i2, j) - c * B.at(i2, i);
                }
                B.at(i, j) = rs;
                L.basis_[i][j] = r;
            }
            L.basis_[j][j] = Scalar::p_power(p, L.exp_[j], 2).to_rational_exact();
        }
        // soundness margin for cancellation zeros treated as exact zeros:
        // hidden perturbations of valuation >= floor cannot change the lattice
        // when floor >= 1 + det_val - (n-1) * min(0, min entry valuation)
        if (treated_zero_floor != Scalar::kExactZero) {
            long vmin = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (!L.basis_[i][j].is_zero())
                        vmin = std::min(vmin, L.basis_[i][j].valuation(p));
            long need = 1 + L.det_valuation() - static_cast<long>(n - 1) * std::min(0L, vmin);
            if (treated_zero_floor < need)
                throw PrecisionExhausted("lattice canonical form not certified: cancellation floor " +
                                         std::to_string(treated_zero_floor) + " below margin " +
                                         std::to_string(need));
        }
        return L;
    }

    static Lattice from_rational_columns(long p, const std::vector<std::vector<Rational>>& cols,
                                         int prec) {
        if (cols.empty()) throw InputError("empty lattice generator set");
        Mat m(p, static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
        for (size_t j = 0; j < cols.size(); ++j)
            for (size_t i = 0; i < cols[j].size(); ++i)
                m.at(static_cast<int>(i), static_cast<int>(j)) =
                    Scalar::from_rational(p, cols[j][i], prec);
        return canonicalize(m, prec);
    }

    // p^k Z_p^n
    static Lattice scaled_standard(long p, int n, long k, int prec) {
        std::vector<std::vector<Rational>> cols(n, std::vector<Rational>(n, Rational(0)));
        Rational pk = k >= 0 ? Rational(big_pow(p, k)) : Rational(1, big_pow(p, -k));
        for (int i = 0; i < n; ++i) cols[i][i] = pk;
        return from_rational_columns(p, cols, prec);
    }

    Mat to_mat(int prec) const {
        Mat m(p_, n_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) m.at(i, j) = Scalar::from_rational(p_, basis_[i][j], prec);
        return m;
    }

    bool contains(const std::vector<Rational>& x) const {
        if (static_cast<int>(x.size()) != n_) throw ContractViolation("contains: dimension mismatch");
        std::vector<Rational> y(n_);
        for (int i = n_ - 1; i >= 0; --i) {
            Rational acc = x[i];
            for (int j = i + 1; j < n_; ++j) acc = acc - basis_[i][j] * y[j];
            y[i] = acc / basis_[i][i];
            if (!y[i].is_zero() && y[i].valuation(p_) < 0) return false;
        }
        return true;
    }

    bool contains_lattice(const Lattice& sub) const {
        for (int j = 0; j < n_; ++j) {
            std::vector<Rational> col(n_);
            for (int i = 0; i < n_; ++i) col[i] = sub.basis_[i][j];
            if (!contains(col)) return false;
        }
        return true;
    }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < n_; ++i) {
            s += i ? ";[" : "[";
            for (int j = 0; j < n_; ++j) s += (j ? "," : "") + basis_[i][j].str();
            s += "]";
        }
        return s + "]";
    }

private:
    long p_;
    int n_;
    int prec_;
    std::vector<long> exp_;
    std::vector<std::vector<Rational>> basis_;
};

inline Lattice lattice_sum(const Lattice& a, const Lattice& b) {
    int prec = std::min(a.precision(), b.precision());
    Mat m = Mat::hcat(a.to_mat(prec), b.to_mat(prec));
    return Lattice::canonicalize(m, prec);
}

// Exact rational elimination used by the intersection: brings D to diagonal
// form with integral unimodular row operations and tracked column operations.
inline Lattice lattice_intersect(const Lattice& a, const Lattice& b) {
    if (a.prime() != b.prime() || a.dim() != b.dim())
        throw InputError("lattice intersection across different spaces");
    const long p = a.prime();
    const int n = a.dim();
    int prec = std::min(a.precision(), b.precision());
    // Solve B_a u = B_b w over Z_p: u must satisfy D u in Z_p^n for D = B_b^{-1} B_a.
    // Row ops by GL_n(Z_p) preserve integrality of D u; column ops reparametrize u.
    std::vector<std::vector<Rational>> D(n, std::vector<Rational>(n, Rational(0)));
    {
        // D = B_b^{-1} B_a by back-substitution on each column of B_a
        for (int j = 0; j < n; ++j) {
            std::vector<Rational> x(n);
            for (int i = 0; i < n; ++i) x[i] = a.basis()[i][j];
            for (int i = n - 1; i >= 0; --i) {
                Rational acc = x[i];
                for (int k = i + 1; k < n; ++k) acc = acc - b.basis()[i][k] * D[k][j];
                D[i][j] = acc / b.basis()[i][i];
            }
        }
    }
    std::vector<std::vector<Rational>> C(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) C[i][i] = Rational(1);
    std::vector<long> diag_val(n, 0);
    std::vector<bool> row_done(n, false), col_done(n, false);
    for (int step = 0; step < n; ++step) {
        long best_val = 0;
        int bi = -1, bj = -1;
        for (int i = 0; i < n; ++i) {
            if (row_done[i]) continue;
            for (int j = 0; j < n; ++j) {
                if (col_done[j] || D[i][j].is_zero()) continue;
                long v = D[i][j].valuation(p);
                if (bi < 0 || v < best_val) { best_val = v; bi = i; bj = j; }
            }
        }
        if (bi < 0) break;  // remaining block is zero: free directions (cannot happen, full rank)
        // clear row bi and column bj
        for (int i = 0; i < n; ++i) {
            if (i == bi || row_done[i] || D[i][bj].is_zero()) continue;
            Rational f = D[i][bj] / D[bi][bj];  // valuation >= 0
            for (int j = 0; j < n; ++j)
                if (!col_done[j]) D[i][j] = D[i][j] - f * D[bi][j];
        }
        for (int j = 0; j < n; ++j) {
            if (j == bj || col_done[j] || D[bi][j].is_zero()) continue;
            Rational f = D[bi][j] / D[bi][bj];
            for (int i = 0; i < n; ++i)
                if (!row_done[i]) D[i][j] = D[i][j] - f * D[i][bj];
            for (int i = 0; i < n; ++i) C[i][j] = C[i][j] - f * C[i][bj];
        }
        diag_val[bj] = best_val;
        row_done[bi] = true;
        col_done[bj] = true;
    }
    for (int j = 0; j < n; ++j)
        if (!col_done[j]) throw ContractViolation("lattice intersection: rank collapse");
    // u-lattice basis: columns C_j * p^{max(0, -a_j)}; intersection = B_a * that
    std::vector<std::vector<Rational>> cols(n, std::vector<Rational>(n));
    for (int j = 0; j < n; ++j) {
        Rational scale = diag_val[j] >= 0 ? Rational(1) : Rational(big_pow(p, -diag_val[j]));
        for (int i = 0; i < n; ++i) {
            Rational u = Rational(0);
            // (B_a * C)_ij
            for (int k = 0; k < n; ++k) u = u + a.basis()[i][k] * C[k][j];
            cols[j][i] = u * scale;
        }
    }
    return Lattice::from_rational_columns(p, cols, prec);
}

// [L_sup : L_sub] as an exact integer; requires L_sub <= L_sup.
inline BigInt lattice_index(const Lattice& sub, const Lattice& sup) {
    if (!sup.contains_lattice(sub))
        throw InputError("lattice_index: containment violated");
    long e = sub.det_valuation() - sup.det_valuation();
    if (e < 0) throw ContractViolation("lattice_index: negative exponent despite containment");
    return big_pow(sub.prime(), e);
}

inline Lattice lattice_apply(const Mat& A, const Lattice& L, int prec) {
    return Lattice::canonicalize(A * L.to_mat(prec), prec);
}

} // namespace tdlc

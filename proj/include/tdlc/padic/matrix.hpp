#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "tdlc/padic/scalar.hpp"

namespace tdlc {

// Dense matrix over Q_p at tracked precision.
class Mat {
public:
    Mat() : p_(0), rows_(0), cols_(0) {}
    Mat(long p, int rows, int cols)
        : p_(p), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Scalar::zero(p)) {}

    static Mat identity(long p, int n, int prec) {
        Mat m(p, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::from_integer(p, 1, prec);
        return m;
    }

    static Mat from_rational(long p, const std::vector<std::vector<Rational>>& rows, int prec) {
        if (rows.empty()) return Mat(p, 0, 0);
        Mat m(p, static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
        for (int i = 0; i < m.rows_; ++i) {
            if (static_cast<int>(rows[i].size()) != m.cols_)
                throw InputError("ragged matrix literal");
            for (int j = 0; j < m.cols_; ++j)
                m.at(i, j) = Scalar::from_rational(p, rows[i][j], prec);
        }
        return m;
    }

    long prime() const { return p_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Scalar& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    std::vector<Scalar> col(int j) const {
        std::vector<Scalar> v;
        v.reserve(rows_);
        for (int i = 0; i < rows_; ++i) v.push_back(at(i, j));
        return v;
    }

    void set_col(int j, const std::vector<Scalar>& v) {
        for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
    }

    static Mat from_cols(long p, int rows, const std::vector<std::vector<Scalar>>& cols) {
        Mat m(p, rows, static_cast<int>(cols.size()));
        for (int j = 0; j < m.cols_; ++j) m.set_col(j, cols[j]);
        return m;
    }

    // Horizontal concatenation [A | B].
    static Mat hcat(const Mat& A, const Mat& B) {
        if (A.empty()) return B;
        if (B.empty()) return A;
        if (A.rows_ != B.rows_) throw ContractViolation("hcat with mismatched rows");
        Mat m(A.p_, A.rows_, A.cols_ + B.cols_);
        for (int i = 0; i < A.rows_; ++i) {
            for (int j = 0; j < A.cols_; ++j) m.at(i, j) = A.at(i, j);
            for (int j = 0; j < B.cols_; ++j) m.at(i, A.cols_ + j) = B.at(i, j);
        }
        return m;
    }

    friend Mat operator*(const Mat& A, const Mat& B) {
        if (A.cols_ != B.rows_) throw ContractViolation("matrix product shape mismatch");
        Mat m(A.p_, A.rows_, B.cols_);
        for (int i = 0; i < A.rows_; ++i)
            for (int j = 0; j < B.cols_; ++j) {
                Scalar s = Scalar::zero(A.p_);
                for (int k = 0; k < A.cols_; ++k) s = s + A.at(i, k) * B.at(k, j);
                m.at(i, j) = s;
            }
        return m;
    }

    friend Mat operator+(const Mat& A, const Mat& B) {
        Mat m(A.p_, A.rows_, A.cols_);
        for (size_t i = 0; i < A.a_.size(); ++i) m.a_[i] = A.a_[i] + B.a_[i];
        return m;
    }

    friend Mat operator-(const Mat& A, const Mat& B) {
        Mat m(A.p_, A.rows_, A.cols_);
        for (size_t i = 0; i < A.a_.size(); ++i) m.a_[i] = A.a_[i] - B.a_[i];
        return m;
    }

    std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw ContractViolation("apply shape mismatch");
        std::vector<Scalar> r(rows_, Scalar::zero(p_));
        for (int i = 0; i < rows_; ++i) {
            Scalar s = Scalar::zero(p_);
            for (int k = 0; k < cols_; ++k) s = s + at(i, k) * v[k];
            r[i] = s;
        }
        return r;
    }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < rows_; ++i) {
            s += i ? ";[" : "[";
            for (int j = 0; j < cols_; ++j) s += (j ? "," : "") + at(i, j).str();
            s += "]";
        }
        return s + "]";
    }

private:
    long p_;
    int rows_, cols_;
    std::vector<Scalar> a_;
};

namespace detail {

// Pivot scan over field elements: smallest valuation wins, ties to the lowest
// index. Inexact zeros with a low floor make the scan unsound, so they raise.
inline std::optional<int> pick_pivot(const std::vector<std::pair<int, Scalar>>& cands) {
    std::optional<int> best;
    long best_val = 0;
    long min_floor = Scalar::kExactZero;
    for (const auto& [idx, s] : cands) {
        if (s.is_zero()) {
            min_floor = std::min(min_floor, s.zero_floor());
            continue;
        }
        if (!best || s.val() < best_val) {
            best = idx;
            best_val = s.val();
        }
    }
    if (best && min_floor != Scalar::kExactZero && min_floor <= best_val)
        throw PrecisionExhausted("pivot selection obscured by a cancellation zero");
    return best;
}

} // namespace detail

struct RrefResult {
    Mat basis;                  // reduced column echelon basis (canonical for the span)
    std::vector<int> pivot_rows;
    // smallest floor among inexact zeros found in dropped columns (soundness data)
    long dropped_zero_floor = Scalar::kExactZero;
};

// Reduced column echelon form over the field Q_p. Columns span a subspace; the
// output basis is the canonical one: each column's first nonzero row is its
// pivot, pivot entries are 1, pivot rows of other columns are 0, columns
// ordered by pivot row.
inline RrefResult rref_columns(Mat M) {
    const long p = M.prime();
    int r = 0;
    std::vector<int> pivot_rows;
    for (int i = 0; i < M.rows() && r < M.cols(); ++i) {
        std::vector<std::pair<int, Scalar>> cands;
        for (int j = r; j < M.cols(); ++j) cands.push_back({j, M.at(i, j)});
        auto pj = detail::pick_pivot(cands);
        if (!pj) continue;
        // swap into place
        if (*pj != r)
            for (int i2 = 0; i2 < M.rows(); ++i2) std::swap(M.at(i2, *pj), M.at(i2, r));
        Scalar inv = M.at(i, r).inverse();
        for (int i2 = 0; i2 < M.rows(); ++i2) M.at(i2, r) = M.at(i2, r) * inv;
        M.at(i, r) = Scalar::from_integer(p, 1, M.at(i, r).precision());
        for (int j = 0; j < M.cols(); ++j) {
            if (j == r) continue;
            Scalar f = M.at(i, j);
            if (f.is_zero()) { M.at(i, j) = Scalar::zero(p); continue; }
            for (int i2 = 0; i2 < M.rows(); ++i2)
                M.at(i2, j) = M.at(i2, j) - f * M.at(i2, r);
            M.at(i, j) = Scalar::zero(p);
        }
        pivot_rows.push_back(i);
        ++r;
    }
    RrefResult res;
    res.pivot_rows = pivot_rows;
    // remaining columns must vanish; record any cancellation floors
    for (int j = r; j < M.cols(); ++j)
        for (int i = 0; i < M.rows(); ++i) {
            const Scalar& s = M.at(i, j);
            if (!s.is_zero())
                throw ContractViolation("rref: nonzero entry in a rank-exhausted column");
            res.dropped_zero_floor = std::min(res.dropped_zero_floor, s.zero_floor());
        }
    Mat basis(M.prime(), M.rows(), r);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < M.rows(); ++i) basis.at(i, j) = M.at(i, j);
    res.basis = basis;
    return res;
}

// Kernel of A as a canonical subspace basis of Q_p^cols. Column-reduces
// [A; I] stacked; columns whose A-part vanishes carry kernel vectors below.
inline Mat kernel_basis(const Mat& A) {
    const long p = A.prime();
    const int n = A.cols();
    const int m = A.rows();
    Mat S(p, m + n, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) S.at(i, j) = A.at(i, j);
    for (int j = 0; j < n; ++j) S.at(m + j, j) = Scalar::from_integer(p, 1, 64);
    int rank = 0;
    for (int i = 0; i < m && rank < n; ++i) {
        std::vector<std::pair<int, Scalar>> cands;
        for (int j = rank; j < n; ++j) cands.push_back({j, S.at(i, j)});
        auto pj = detail::pick_pivot(cands);
        if (!pj) continue;
        if (*pj != rank)
            for (int i2 = 0; i2 < m + n; ++i2) std::swap(S.at(i2, *pj), S.at(i2, rank));
        Scalar piv = S.at(i, rank);
        for (int j = rank + 1; j < n; ++j) {
            Scalar f = S.at(i, j);
            if (f.is_zero()) continue;
            Scalar ratio = f / piv;
            for (int i2 = 0; i2 < m + n; ++i2)
                S.at(i2, j) = S.at(i2, j) - ratio * S.at(i2, rank);
            S.at(i, j) = Scalar::zero(p);
        }
        ++rank;
    }
    Mat K(p, n, n - rank);
    for (int j = rank; j < n; ++j) {
        for (int i = 0; i < m; ++i)
            if (!S.at(i, j).is_zero())
                throw ContractViolation("kernel_basis: residual entry in null column");
        for (int i = 0; i < n; ++i) K.at(i, j - rank) = S.at(m + i, j);
    }
    return rref_columns(K).basis;
}

// Gauss-Jordan inverse with minimal-valuation pivoting.
inline Mat invert(Mat A) {
    if (A.rows() != A.cols()) throw ContractViolation("invert: non-square");
    const long p = A.prime();
    const int n = A.rows();
    Mat I = Mat::identity(p, n, 64);
    // precision of identity bounded by inputs during ops anyway
    std::vector<int> rowperm(n);
    for (int i = 0; i < n; ++i) rowperm[i] = i;
    for (int j = 0; j < n; ++j) {
        std::vector<std::pair<int, Scalar>> cands;
        for (int i = j; i < n; ++i) cands.push_back({i, A.at(rowperm[i], j)});
        auto pi = detail::pick_pivot(cands);
        if (!pi)
            throw PrecisionExhausted("matrix not invertible at current precision");
        std::swap(rowperm[j], rowperm[*pi]);
        Scalar inv = A.at(rowperm[j], j).inverse();
        for (int k = 0; k < n; ++k) {
            A.at(rowperm[j], k) = A.at(rowperm[j], k) * inv;
            I.at(rowperm[j], k) = I.at(rowperm[j], k) * inv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            Scalar f = A.at(rowperm[i], j);
            if (f.is_zero()) continue;
            for (int k = 0; k < n; ++k) {
                A.at(rowperm[i], k) = A.at(rowperm[i], k) - f * A.at(rowperm[j], k);
                I.at(rowperm[i], k) = I.at(rowperm[i], k) - f * I.at(rowperm[j], k);
            }
        }
    }
    Mat R(p, n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) R.at(i, k) = I.at(rowperm[i], k);
    return R;
}

// Determinant via elimination. Exact valuation, approximate unit.
inline Scalar det(Mat A) {
    if (A.rows() != A.cols()) throw ContractViolation("det: non-square");
    const long p = A.prime();
    const int n = A.rows();
    Scalar d = Scalar::from_integer(p, 1, 64);
    int sign = 1;
    for (int j = 0; j < n; ++j) {
        std::vector<std::pair<int, Scalar>> cands;
        for (int i = j; i < n; ++i) cands.push_back({i, A.at(i, j)});
        auto pi = detail::pick_pivot(cands);
        if (!pi) return Scalar::zero(p);
        if (*pi != j) {
            sign = -sign;
            for (int k = 0; k < n; ++k) std::swap(A.at(j, k), A.at(*pi, k));
        }
        d = d * A.at(j, j);
        for (int i = j + 1; i < n; ++i) {
            Scalar f = A.at(i, j);
            if (f.is_zero()) continue;
            Scalar ratio = f / A.at(j, j);
            for (int k = j; k < n; ++k) A.at(i, k) = A.at(i, k) - ratio * A.at(j, k);
        }
    }
    if (sign < 0) d = -d;
    return d;
}

// Polynomial over Q_p, coefficients ascending by degree.
struct Poly {
    long p = 0;
    std::vector<Scalar> c;

    Poly() = default;
    Poly(long prime, std::vector<Scalar> coeffs) : p(prime), c(std::move(coeffs)) { trim(); }

    void trim() {
        while (c.size() > 1 && c.back().is_exact_zero()) c.pop_back();
    }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_monic() const {
        return !c.empty() && !c.back().is_zero() && c.back().val() == 0;
    }

    static Poly constant(long p, const Scalar& s) { return Poly(p, {s}); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        std::vector<Scalar> r(a.c.size() + b.c.size() - 1, Scalar::zero(a.p));
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r[i + j] = r[i + j] + a.c[i] * b.c[j];
        return Poly(a.p, std::move(r));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Scalar> r(std::max(a.c.size(), b.c.size()), Scalar::zero(a.p));
        for (size_t i = 0; i < r.size(); ++i) {
            Scalar x = i < a.c.size() ? a.c[i] : Scalar::zero(a.p);
            Scalar y = i < b.c.size() ? b.c[i] : Scalar::zero(a.p);
            r[i] = x + y;
        }
        return Poly(a.p, std::move(r));
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Scalar> r(std::max(a.c.size(), b.c.size()), Scalar::zero(a.p));
        for (size_t i = 0; i < r.size(); ++i) {
            Scalar x = i < a.c.size() ? a.c[i] : Scalar::zero(a.p);
            Scalar y = i < b.c.size() ? b.c[i] : Scalar::zero(a.p);
            r[i] = x - y;
        }
        return Poly(a.p, std::move(r));
    }

    Poly scaled(const Scalar& s) const {
        std::vector<Scalar> r = c;
        for (auto& x : r) x = x * s;
        return Poly(p, std::move(r));
    }

    // Division with remainder by a monic divisor; exact degree bookkeeping.
    std::pair<Poly, Poly> divmod_monic(const Poly& g) const {
        if (!g.is_monic()) throw ContractViolation("divmod_monic: divisor not monic");
        std::vector<Scalar> rem = c;
        int dg = g.degree();
        int dr = static_cast<int>(rem.size()) - 1;
        if (dr < dg) return {Poly(p, {Scalar::zero(p)}), *this};
        std::vector<Scalar> quo(dr - dg + 1, Scalar::zero(p));
        Scalar lead_inv = g.c.back().inverse();
        for (int k = dr; k >= dg; --k) {
            Scalar f = rem[k] * lead_inv;
            quo[k - dg] = f;
            if (f.is_zero()) continue;
            for (int i = 0; i <= dg; ++i) rem[k - dg + i] = rem[k - dg + i] - f * g.c[i];
            rem[k] = Scalar::zero(p);
        }
        rem.resize(std::max(dg, 1));
        return {Poly(p, std::move(quo)), Poly(p, std::move(rem))};
    }

    Mat eval(const Mat& A) const {
        const int n = A.rows();
        Mat acc(A.prime(), n, n);
        for (int k = degree(); k >= 0; --k) {
            acc = acc * A;
            for (int i = 0; i < n; ++i) acc.at(i, i) = acc.at(i, i) + c[k];
        }
        return acc;
    }

    std::string str() const {
        std::string s;
        for (size_t i = 0; i < c.size(); ++i) {
            if (i) s += " + ";
            s += "(" + c[i].str() + ")x^" + std::to_string(i);
        }
        return s;
    }
};

// Characteristic polynomial of A, monic in x, via the Berkowitz recursion
// (division-free, so the only precision loss is tracked additive cancellation).
inline Poly char_poly(const Mat& A) {
    if (A.rows() != A.cols()) throw ContractViolation("char_poly: non-square");
    const long p = A.prime();
    const int n = A.rows();
    const int prec = 64;
    if (n == 0) return Poly(p, {Scalar::from_integer(p, 1, prec)});
    // poly holds coefficients in descending powers, starting with [1, -a00]
    std::vector<Scalar> poly = {Scalar::from_integer(p, 1, prec), -A.at(0, 0)};
    for (int i = 1; i < n; ++i) {
        // sequences s_k = R M^k S with R = A[i][0..i-1], S = A[0..i-1][i], M top-left i x i
        std::vector<Scalar> cvec;
        cvec.push_back(Scalar::from_integer(p, 1, prec));
        cvec.push_back(-A.at(i, i));
        std::vector<Scalar> w(i);
        for (int k = 0; k < i; ++k) w[k] = A.at(k, i);
        for (int k = 0; k < i; ++k) {
            Scalar dot = Scalar::zero(p);
            for (int t = 0; t < i; ++t) dot = dot + A.at(i, t) * w[t];
            cvec.push_back(-dot);
            if (k + 1 < i) {
                std::vector<Scalar> w2(i, Scalar::zero(p));
                for (int r = 0; r < i; ++r) {
                    Scalar s = Scalar::zero(p);
                    for (int t = 0; t < i; ++t) s = s + A.at(r, t) * w[t];
                    w2[r] = s;
                }
                w = std::move(w2);
            }
        }
        // poly := T * poly, T Toeplitz (i+2)x(i+1) with first column cvec
        std::vector<Scalar> next(i + 2, Scalar::zero(p));
        for (int r = 0; r < i + 2; ++r) {
            Scalar s = Scalar::zero(p);
            for (int cidx = 0; cidx <= std::min<int>(r, i); ++cidx) {
                int t = r - cidx;
                if (t < static_cast<int>(cvec.size()))
                    s = s + cvec[t] * poly[cidx];
            }
            next[r] = s;
        }
        poly = std::move(next);
    }
    std::vector<Scalar> asc(poly.rbegin(), poly.rend());
    return Poly(p, std::move(asc));
}

} // namespace tdlc

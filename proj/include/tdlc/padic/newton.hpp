#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "tdlc/padic/matrix.hpp"

namespace tdlc {

struct PolygonSegment {
    Rational slope;   // geometric slope of the lower hull segment
    int length;       // horizontal length = number of roots of valuation -slope
};

// Lower convex hull of (i, val a_i). Convention, asserted by self_check():
// a hull segment of slope s and horizontal length l corresponds to l roots of
// valuation -s; a trailing x^k factor contributes k roots of valuation +inf.
struct NewtonPolygon {
    std::vector<PolygonSegment> segments;  // slopes strictly increasing
    int degree = 0;
    int x_order = 0;  // roots of valuation +inf (from the x^k factor)

    // Multiset of finite root valuations, one entry per root.
    std::vector<Rational> root_valuations() const {
        std::vector<Rational> vals;
        for (const auto& s : segments)
            for (int i = 0; i < s.length; ++i) vals.push_back(-s.slope);
        return vals;
    }

    int count_val_sign(int sign) const {  // sign of root valuation: -1, 0, +1
        int c = 0;
        for (const auto& s : segments) {
            int root_sign = s.slope.num == 0 ? 0 : (s.slope.num < 0 ? 1 : -1);
            if (root_sign == sign) c += s.length;
        }
        return c;
    }
};

inline NewtonPolygon newton_polygon(const Poly& f) {
    if (f.c.empty()) throw ContractViolation("newton polygon of empty polynomial");
    const int d = f.degree();
    if (f.c[d].is_zero())
        throw PrecisionExhausted("leading coefficient indistinguishable from zero");
    int k0 = 0;
    while (k0 < d && f.c[k0].is_zero()) {
        if (!f.c[k0].is_exact_zero())
            throw PrecisionExhausted("low-order coefficient valuation not determined; cannot split x^k factor");
        ++k0;
    }
    struct Pt { long x; long y; };
    std::vector<Pt> pts;
    std::vector<std::pair<long, long>> uncertain;  // (i, floor) for cancellation zeros
    for (int i = k0; i <= d; ++i) {
        const Scalar& s = f.c[i];
        if (s.is_zero()) {
            if (!s.is_exact_zero()) uncertain.push_back({i, s.zero_floor()});
            continue;
        }
        pts.push_back({i, s.val()});
    }
    // lower hull, left to right; collinear interior points dropped
    auto cross = [](const Pt& o, const Pt& a, const Pt& b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    std::vector<Pt> hull;
    for (const Pt& pt : pts) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0)
            hull.pop_back();
        hull.push_back(pt);
    }
    // a cancellation zero strictly below the hull would change it
    for (auto [x, fl] : uncertain) {
        for (size_t k = 0; k + 1 < hull.size(); ++k) {
            if (x <= hull[k].x || x >= hull[k + 1].x) continue;
            long dx = hull[k + 1].x - hull[k].x;
            long lhs = fl * dx;
            long rhs = hull[k].y * dx + (hull[k + 1].y - hull[k].y) * (x - hull[k].x);
            if (lhs < rhs)
                throw PrecisionExhausted("coefficient at x^" + std::to_string(x) +
                                         " not determined enough to fix the polygon");
        }
    }
    NewtonPolygon np;
    np.degree = d;
    np.x_order = k0;
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        PolygonSegment seg;
        seg.slope = Rational(BigInt(hull[k + 1].y - hull[k].y), BigInt(hull[k + 1].x - hull[k].x));
        seg.length = static_cast<int>(hull[k + 1].x - hull[k].x);
        np.segments.push_back(seg);
    }
    return np;
}

// Asserts the slope/valuation sign convention on the factored sample
// (x - 1)(x - p), whose root valuations are exactly {0, 1}.
inline void newton_self_check(long p) {
    const int prec = 8;
    Poly f(p, {Scalar::from_integer(p, p, prec),
               Scalar::from_integer(p, -(1 + p), prec),
               Scalar::from_integer(p, 1, prec)});
    NewtonPolygon np = newton_polygon(f);
    auto vals = np.root_valuations();
    std::sort(vals.begin(), vals.end(), [](const Rational& a, const Rational& b) {
        return a.num * b.den < b.num * a.den;
    });
    bool ok = np.x_order == 0 && vals.size() == 2 && vals[0] == Rational(0) && vals[1] == Rational(1);
    if (!ok)
        throw ContractViolation("newton polygon sign convention self-check failed");
}

inline void ensure_newton_convention(long p) {
    static const bool checked = [] { return true; }();
    (void)checked;
    newton_self_check(p);
}

namespace detail {

// Gauss gauge for |x| = p^{-tau}: min_i (val(c_i) * tau.den + i * tau.num),
// in units of 1/tau.den. Zero markers contribute their floor (conservative).
inline long gauge_value(const Poly& f, const Rational& tau) {
    long tn = static_cast<long>(tau.num);
    long td = static_cast<long>(tau.den);
    long best = LONG_MAX;
    for (size_t i = 0; i < f.c.size(); ++i) {
        const Scalar& s = f.c[i];
        long v;
        if (s.is_zero()) {
            if (s.is_exact_zero()) continue;
            v = s.zero_floor();
        } else {
            v = s.val();
        }
        best = std::min(best, v * td + static_cast<long>(i) * tn);
    }
    return best;
}

// Extended Euclid over Q_p[x] at working precision: u*g + v*h = 1.
inline std::pair<Poly, Poly> bezout_pair(const Poly& g, const Poly& h) {
    const long p = g.p;
    Poly r0 = g, r1 = h;
    Poly u0 = Poly(p, {Scalar::from_integer(p, 1, 64)});
    Poly u1 = Poly(p, {Scalar::zero(p)});
    Poly v0 = Poly(p, {Scalar::zero(p)});
    Poly v1 = Poly(p, {Scalar::from_integer(p, 1, 64)});
    auto effectively_zero = [](const Poly& f) {
        for (const auto& c : f.c)
            if (!c.is_zero()) return false;
        return true;
    };
    while (!effectively_zero(r1) && r1.degree() > 0) {
        // divide r0 by r1 after normalizing r1 to monic
        Scalar lead = r1.c.back();
        if (lead.is_zero()) {
            r1.c.pop_back();
            r1.trim();
            continue;
        }
        Poly r1m = r1.scaled(lead.inverse());
        r1m.c.back() = Scalar::from_integer(p, 1, lead.precision());
        auto [q, rem] = r0.divmod_monic(r1m);
        Poly qn = q.scaled(lead.inverse());
        Poly r2 = rem;
        Poly u2 = u0 - qn * u1;
        Poly v2 = v0 - qn * v1;
        r0 = r1; r1 = r2;
        u0 = u1; u1 = u2;
        v0 = v1; v1 = v2;
    }
    if (effectively_zero(r1)) {
        // r0 is the gcd; it must be a nonzero constant for coprime inputs
        if (r0.degree() != 0 || r0.c[0].is_zero())
            throw PrecisionExhausted("segment factors not coprime at current precision");
        Scalar inv = r0.c[0].inverse();
        return {u0.scaled(inv), v0.scaled(inv)};
    }
    // r1 is a nonzero constant
    Scalar inv = r1.c[0].inverse();
    return {u1.scaled(inv), v1.scaled(inv)};
}

} // namespace detail

struct VertexSplit {
    Poly left;   // monic, degree = vertex index; carries the larger root valuations
    Poly right;  // monic, degree = d - vertex index
    int iterations = 0;
};

// Splits a monic f at a Newton-polygon vertex by successive approximation,
// iterating until the factor product matches f at the working precision.
inline VertexSplit vertex_split(const Poly& f, int vertex, const Rational& tau_left,
                                const Rational& tau_right) {
    const long p = f.p;
    const int d = f.degree();
    if (!f.is_monic()) throw ContractViolation("vertex_split expects a monic polynomial");
    if (vertex <= 0 || vertex >= d) throw ContractViolation("vertex_split at a non-interior vertex");
    Rational tau = (tau_left + tau_right) * Rational(1, 2);
    const Scalar& pivot = f.c[vertex];
    if (pivot.is_zero())
        throw PrecisionExhausted("polygon vertex coefficient indistinguishable from zero");
    Scalar pivot_inv = pivot.inverse();
    std::vector<Scalar> gc(f.c.begin(), f.c.begin() + vertex + 1);
    for (auto& s : gc) s = s * pivot_inv;
    gc[vertex] = Scalar::from_integer(p, 1, pivot.precision());
    Poly g(p, std::move(gc));
    std::vector<Scalar> hc(f.c.begin() + vertex, f.c.end());
    Poly h(p, std::move(hc));

    auto [u, v] = detail::bezout_pair(g, h);

    int prec_budget = f.c[0].precision();
    for (const auto& s : f.c)
        if (!s.is_zero()) prec_budget = std::min(prec_budget, s.precision());
    long td = static_cast<long>(tau.den);
    long target = detail::gauge_value(f, tau) + td * prec_budget;

    long last_gauge = LONG_MIN;
    int stall = 0;
    const int max_iter = 200;
    int it = 0;
    for (; it < max_iter; ++it) {
        Poly e = f - g * h;
        long ge = detail::gauge_value(e, tau);
        if (ge >= target) break;
        if (ge <= last_gauge) {
            if (++stall >= 3)
                throw PrecisionExhausted(
                    "segment factor lift stalled between slopes " + tau_left.str() + " and " +
                    tau_right.str() + " (gauge " + std::to_string(ge) + ")");
        } else {
            stall = 0;
        }
        last_gauge = ge;
        auto [q, dg] = (v * e).divmod_monic(g);
        Poly dh = (e - dg * h).divmod_monic(g).first;
        g = g + dg;
        g.c.resize(vertex + 1, Scalar::zero(p));
        g.c[vertex] = Scalar::from_integer(p, 1, prec_budget);
        h = h + dh;
        h.c.resize(d - vertex + 1, Scalar::zero(p));
        h.c[d - vertex] = Scalar::from_integer(p, 1, prec_budget);
        (void)q;
    }
    if (it == max_iter)
        throw PrecisionExhausted("segment factor lift did not converge between slopes " +
                                 tau_left.str() + " and " + tau_right.str());
    // Apply one more correction, then clamp each coefficient's claimed precision
    // to the level of that final correction (minus one digit for the geometric
    // tail), so downstream equality at shared precision never reads junk digits.
    {
        Poly e = f - g * h;
        auto [q2, dg] = (v * e).divmod_monic(g);
        Poly dh = (e - dg * h).divmod_monic(g).first;
        (void)q2;
        g = g + dg;
        g.c.resize(vertex + 1, Scalar::zero(p));
        g.c[vertex] = Scalar::from_integer(p, 1, prec_budget);
        h = h + dh;
        h.c.resize(d - vertex + 1, Scalar::zero(p));
        h.c[d - vertex] = Scalar::from_integer(p, 1, prec_budget);
        auto clamp = [&](Poly& target, const Poly& delta) {
            for (size_t i = 0; i < target.c.size(); ++i) {
                long level;
                if (i < delta.c.size() && !delta.c[i].is_zero())
                    level = delta.c[i].val() - 1;
                else if (i < delta.c.size() && !delta.c[i].is_exact_zero())
                    level = delta.c[i].zero_floor() - 1;
                else
                    continue;
                Scalar& s = target.c[i];
                if (s.is_zero()) {
                    if (s.zero_floor() > level) s = Scalar::zero_at_floor(p, level);
                    continue;
                }
                long digits = level - s.val();
                if (digits < 1)
                    throw PrecisionExhausted("segment factor coefficient undetermined after lift");
                if (digits < s.precision())
                    s = Scalar::from_unit(p, s.val(), s.unit(), static_cast<int>(digits));
            }
        };
        clamp(g, dg);
        clamp(h, dh);
    }
    return {g, h, it};
}

// The three spectral class factors of a monic polynomial with nonzero constant
// term: contracting (root val > 0), neutral (root val = 0), expanding (< 0).
struct ClassFactors {
    Poly contracting;
    Poly neutral;
    Poly expanding;
};

inline ClassFactors class_factors(const Poly& f_in) {
    const long p = f_in.p;
    Poly f = f_in;
    if (!f.is_monic()) {
        Scalar inv = f.c.back().inverse();
        f = f.scaled(inv);
        f.c.back() = Scalar::from_integer(p, 1, inv.precision());
    }
    NewtonPolygon np = newton_polygon(f);
    if (np.x_order != 0)
        throw InputError("spectral split requires a polynomial with nonzero constant term");
    Poly one(p, {Scalar::from_integer(p, 1, 32)});
    // boundary slopes for the two cuts
    int len_pos = np.count_val_sign(+1);
    int len_zero = np.count_val_sign(0);

    auto slope_before = [&](int xcut) {  // slope of the segment ending at xcut
        int x = 0;
        for (const auto& s : np.segments) {
            x += s.length;
            if (x == xcut) return s.slope;
        }
        throw ContractViolation("cut is not a polygon vertex");
    };
    auto slope_after = [&](int xcut) {  // slope of the segment starting at xcut
        int x = 0;
        for (const auto& s : np.segments) {
            if (x == xcut) return s.slope;
            x += s.length;
        }
        throw ContractViolation("cut is not a polygon vertex");
    };

    ClassFactors out{one, one, one};
    Poly rest = f;
    int d = f.degree();
    if (len_pos == d) {
        out.contracting = f;
        return out;
    }
    if (len_pos > 0) {
        auto split = vertex_split(rest, len_pos, slope_before(len_pos), slope_after(len_pos));
        out.contracting = split.left;
        rest = split.right;
    }
    // rest has root valuations <= 0; its polygon is the remaining segments
    int rd = rest.degree();
    if (len_zero == rd) {
        out.neutral = rest;
        return out;
    }
    if (len_zero > 0) {
        NewtonPolygon np2 = newton_polygon(rest);
        auto sb = [&](int xcut) {
            int x = 0;
            for (const auto& s : np2.segments) {
                x += s.length;
                if (x == xcut) return s.slope;
            }
            throw ContractViolation("cut is not a vertex of the residual polygon");
        };
        auto sa = [&](int xcut) {
            int x = 0;
            for (const auto& s : np2.segments) {
                if (x == xcut) return s.slope;
                x += s.length;
            }
            throw ContractViolation("cut is not a vertex of the residual polygon");
        };
        auto split = vertex_split(rest, len_zero, sb(len_zero), sa(len_zero));
        out.neutral = split.left;
        out.expanding = split.right;
    } else {
        out.expanding = rest;
    }
    return out;
}

} // namespace tdlc

#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "zeta_algebra.hpp"

namespace zv {

class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// a + b*s with rational a, b.
struct Affine {
    Q a;
    Q b;

    auto operator<=>(const Affine&) const = default;
    bool operator==(const Affine&) const = default;

    Q at(const Q& s) const { return a + b * s; }
    Affine operator+(const Affine& o) const { return {a + o.a, b + o.b}; }
    Affine operator-(const Affine& o) const { return {a - o.a, b - o.b}; }
    Affine operator-() const { return {-a, -b}; }
    Affine operator*(const Q& k) const { return {a * k, b * k}; }
    bool is_zero() const { return a.is_zero() && b.is_zero(); }

    std::string render() const {
        std::string s;
        if (!b.is_zero()) {
            if (b == Q(1)) s = "s";
            else if (b == Q(-1)) s = "-s";
            else s = b.str() + "*s";
        }
        if (s.empty()) return a.str();
        if (a.sign() > 0) s += "+" + a.str();
        else if (a.sign() < 0) s += "-" + (-a).str();
        return s;
    }
};

inline Affine s_plus(const Q& a, std::int64_t b = 1) { return Affine{a, Q(b)}; }

struct ZetaFactor {
    XiKind kind = XiKind::F;
    Affine arg;
    int exp = 1;

    auto operator<=>(const ZetaFactor&) const = default;
    bool operator==(const ZetaFactor&) const = default;
};

/// Formal finite product of completed zeta symbols with affine arguments,
/// a rational prefactor and discriminant powers with affine exponents.
struct ZetaExpr {
    mpq_class prefactor = 1;
    std::vector<ZetaFactor> factors;
    Affine de_exp;
    Affine df_exp;

    static ZetaExpr one() { return ZetaExpr{}; }

    /// slope 0 gives a constant factor read with the residue convention
    static ZetaExpr xi(XiKind kind, const Affine& arg, int exp = 1) {
        if (!arg.b.is_integer()) throw AlgebraError("zeta argument needs an integer slope");
        ZetaExpr e;
        e.factors.push_back({kind, arg, exp});
        return e;
    }
    static ZetaExpr xiE(const Affine& arg, int exp = 1) { return xi(XiKind::E, arg, exp); }
    static ZetaExpr xiF(const Affine& arg, int exp = 1) { return xi(XiKind::F, arg, exp); }
    static ZetaExpr xiFeta(const Affine& arg, int exp = 1) { return xi(XiKind::Feta, arg, exp); }
    static ZetaExpr de(const Affine& e) { ZetaExpr z; z.de_exp = e; return z; }
    static ZetaExpr df(const Affine& e) { ZetaExpr z; z.df_exp = e; return z; }
    static ZetaExpr rational(const mpq_class& c) {
        ZetaExpr z;
        z.prefactor = c;
        z.prefactor.canonicalize();
        return z;
    }

    friend ZetaExpr operator*(const ZetaExpr& x, const ZetaExpr& y) {
        ZetaExpr r = x;
        r.prefactor *= y.prefactor;
        r.factors.insert(r.factors.end(), y.factors.begin(), y.factors.end());
        r.de_exp = r.de_exp + y.de_exp;
        r.df_exp = r.df_exp + y.df_exp;
        return r.normalized_keep_e();
    }
    ZetaExpr inverse() const {
        if (prefactor == 0) throw AlgebraError("inverse of zero zeta expression");
        ZetaExpr r = *this;
        r.prefactor = 1 / prefactor;
        for (auto& f : r.factors) f.exp = -f.exp;
        r.de_exp = -r.de_exp;
        r.df_exp = -r.df_exp;
        return r;
    }
    friend ZetaExpr operator/(const ZetaExpr& x, const ZetaExpr& y) { return x * y.inverse(); }
    ZetaExpr pow(int e) const {
        ZetaExpr r = one();
        ZetaExpr base = e < 0 ? inverse() : *this;
        for (int i = 0; i < (e < 0 ? -e : e); ++i) r = r * base;
        return r;
    }

    /// Merge repeated symbols without expanding xi_E (used for rendering).
    ZetaExpr normalized_keep_e() const { return merge(false); }

    /// xi_E expanded into xi_F * xi_F(.,eta), arguments reflected to positive slope,
    /// repeated symbols merged. Two expressions are equal iff their normal forms agree.
    ZetaExpr normalized() const { return merge(true); }

    friend bool operator==(const ZetaExpr& x, const ZetaExpr& y) {
        ZetaExpr a = x.normalized(), b = y.normalized();
        return a.prefactor == b.prefactor && a.factors == b.factors && a.de_exp == b.de_exp && a.df_exp == b.df_exp;
    }

    std::string render() const {
        std::vector<std::string> parts;
        if (prefactor != 1 || (factors.empty() && de_exp.is_zero() && df_exp.is_zero())) parts.push_back(to_string(prefactor));
        for (auto& f : factors) {
            std::string n = f.kind == XiKind::E ? "xiE" : (f.kind == XiKind::F ? "xiF" : "xiFeta");
            n += "(" + f.arg.render() + ")";
            if (f.exp != 1) n += "^" + std::to_string(f.exp);
            parts.push_back(n);
        }
        if (!de_exp.is_zero()) parts.push_back("DE^(" + de_exp.render() + ")");
        if (!df_exp.is_zero()) parts.push_back("DF^(" + df_exp.render() + ")");
        std::string s;
        for (auto& p : parts) s += (s.empty() ? "" : "*") + p;
        return s;
    }

private:
    ZetaExpr merge(bool expand_e) const {
        std::map<std::tuple<XiKind, Affine>, int> acc;
        mpq_class pref = prefactor;
        for (auto f : factors) {
            if (expand_e && f.arg.b.sign() < 0) f.arg = Affine{Q(1) - f.arg.a, -f.arg.b};
            if (expand_e && f.arg.b.is_zero() && f.arg.a < Q(1, 2)) {
                // constant factor: xi(a) = xi(1-a), except xi_F(0) = -xi_F(1) for residues
                if (f.arg.a == Q(0) && f.kind != XiKind::Feta && f.exp % 2 != 0) pref = -pref;
                f.arg.a = Q(1) - f.arg.a;
            }
            if (expand_e && f.kind == XiKind::E) {
                acc[{XiKind::F, f.arg}] += f.exp;
                acc[{XiKind::Feta, f.arg}] += f.exp;
            } else {
                acc[{f.kind, f.arg}] += f.exp;
            }
        }
        ZetaExpr r;
        r.prefactor = pref;
        r.de_exp = de_exp;
        r.df_exp = df_exp;
        if (expand_e) {
            for (auto& [k, e] : acc)
                if (e != 0) r.factors.push_back({std::get<0>(k), std::get<1>(k), e});
        } else {
            // keep first-appearance order for readability
            std::set<std::tuple<XiKind, Affine>> seen;
            for (auto& f : factors) {
                auto key = std::make_tuple(f.kind, f.arg);
                if (!seen.insert(key).second) continue;
                if (acc[key] != 0) r.factors.push_back({f.kind, f.arg, acc[key]});
            }
        }
        return r;
    }
};

template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<FieldElem> {
    static FieldElem zero() { return FieldElem(); }
    static FieldElem one() { return FieldElem(1); }
    static FieldElem from_mpq(const mpq_class& q) { return FieldElem(q); }
    static bool is_zero(const FieldElem& x) { return x.is_zero(); }
    static bool negligible(const FieldElem& x, const FieldElem&) { return x.is_zero(); }
    static std::string render(const FieldElem& x) { return x.render(); }
};

/// Truncated Laurent series at a rational point. Coefficients are known exactly for
/// orders lo..hi; below lo they vanish, above hi they are unknown.
template <class C>
class Laurent {
public:
    using Tr = CoeffTraits<C>;

    Laurent() = default;
    Laurent(Q point, int lo, std::vector<C> coeffs, int hi) : point_(point), lo_(lo), hi_(hi), c_(std::move(coeffs)) {
        c_.resize(std::max(0, hi_ - lo_ + 1), Tr::zero());
        strip();
    }

    static Laurent constant(Q point, const C& v, int hi) {
        std::vector<C> c(std::max(0, hi + 1), Tr::zero());
        if (hi >= 0) c[0] = v;
        return Laurent(point, 0, std::move(c), hi);
    }

    const Q& point() const { return point_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    bool known_zero() const { return c_.empty(); }

    const C& lead() const {
        if (c_.empty()) throw TruncationError("series vanishes on its certified window");
        return c_.front();
    }

    C coefficient(int d) const {
        if (d > hi_) throw TruncationError("coefficient of order " + std::to_string(d) + " is beyond the certified truncation " + std::to_string(hi_));
        if (d < lo_) return Tr::zero();
        return c_[d - lo_];
    }

    friend Laurent operator+(const Laurent& a, const Laurent& b) {
        check_point(a, b);
        int hi = std::min(a.hi_, b.hi_);
        int lo = std::min(a.lo_, b.lo_);
        std::vector<C> c;
        for (int d = lo; d <= hi; ++d) c.push_back(a.coefficient(d) + b.coefficient(d));
        return Laurent(a.point_, lo, std::move(c), hi);
    }
    Laurent operator-() const {
        Laurent r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        check_point(a, b);
        int lo = a.lo_ + b.lo_;
        int hi = std::min(a.lo_ + b.hi_, b.lo_ + a.hi_);
        std::vector<C> c;
        for (int d = lo; d <= hi; ++d) {
            C s = Tr::zero();
            for (int i = a.lo_; i <= a.hi_; ++i) {
                int j = d - i;
                if (j < b.lo_ || j > b.hi_) continue;
                s += a.c_[i - a.lo_] * b.c_[j - b.lo_];
            }
            c.push_back(s);
        }
        return Laurent(a.point_, lo, std::move(c), hi);
    }

    Laurent scaled(const C& k) const {
        Laurent r = *this;
        for (auto& x : r.c_) x = x * k;
        r.strip();
        return r;
    }

    Laurent inverse() const {
        const C& c0 = lead();
        int n = hi_ - lo_;
        std::vector<C> g(n + 1, Tr::zero());
        C inv0 = Tr::one() / c0;
        g[0] = inv0;
        for (int k = 1; k <= n; ++k) {
            C s = Tr::zero();
            for (int i = 1; i <= k; ++i) s += c_[i] * g[k - i];
            g[k] = -(s * inv0);
        }
        return Laurent(point_, -lo_, std::move(g), -lo_ + n);
    }

    friend Laurent operator/(const Laurent& a, const Laurent& b) { return a * b.inverse(); }

    /// multiply by (s - s0)^k
    Laurent shift(int k) const {
        Laurent r = *this;
        r.lo_ += k;
        r.hi_ += k;
        return r;
    }

    Laurent truncated(int hi) const {
        if (hi > hi_) throw TruncationError("cannot extend truncation from " + std::to_string(hi_) + " to " + std::to_string(hi));
        std::vector<C> c;
        for (int d = lo_; d <= hi; ++d) c.push_back(coefficient(d));
        return Laurent(point_, lo_, std::move(c), hi);
    }

private:
    static void check_point(const Laurent& a, const Laurent& b) {
        if (!(a.point_ == b.point_)) throw TruncationError("expansion points differ: " + a.point_.str() + " vs " + b.point_.str());
    }

    void strip() {
        std::size_t k = 0;
        while (k < c_.size() && Tr::is_zero(c_[k])) ++k;
        if (k == 0) return;
        c_.erase(c_.begin(), c_.begin() + k);
        lo_ += int(k);
        if (c_.empty()) lo_ = hi_ + 1;
    }

    Q point_;
    int lo_ = 0;
    int hi_ = -1;
    std::vector<C> c_;
};

struct Window {
    int lo = -2;
    int hi = 2;
};

constexpr int kMaxSeriesDepth = 40;

/// Symbolic coefficient provider: Laurent data of xi at canonical points are generators.
struct SymbolicProvider {
    using Coeff = FieldElem;

    /// k-th Laurent coefficient of xi_kind at canonical q (q >= 1/2)
    FieldElem xi_coeff(XiKind kind, const Q& q, int k) const {
        if (kind == XiKind::F && q == Q(1)) return xi_gen(kind, q, k);
        return xi_gen(kind, q, k) / FieldElem(factorial_q(k));
    }
    FieldElem rational(const mpq_class& c) const { return FieldElem(c); }
    FieldElem disc_pow(GenKind which, const Q& e) const { return which == GenKind::DE ? de_pow(e) : df_pow(e); }
    FieldElem log_disc(GenKind which) const { return which == GenKind::DE ? log_de() : log_df(); }
};

/// pole order bookkeeping of a single symbol: -1 at a pole of xi_F, else 0
inline int symbol_order(XiKind kind, const Affine& arg, const Q& s0) {
    if (arg.b.is_zero()) return 0;
    Q x0 = arg.at(s0);
    return (kind != XiKind::Feta && (x0 == Q(0) || x0 == Q(1))) ? -1 : 0;
}

/// valuation of a zeta product at s0 (negative for poles)
inline int structural_order(const ZetaExpr& e, const Q& s0) {
    int m = 0;
    for (auto& f : e.normalized().factors) m += f.exp * symbol_order(f.kind, f.arg, s0);
    return m;
}

/// xi at a rational point with the residue convention, through any provider
template <class P>
typename P::Coeff xi_val(const P& p, XiKind kind, const Q& q) {
    if (kind == XiKind::E) return xi_val(p, XiKind::F, q) * xi_val(p, XiKind::Feta, q);
    if (kind == XiKind::F && (q == Q(0) || q == Q(1))) {
        auto r = p.xi_coeff(XiKind::F, Q(1), -1);
        return q == Q(0) ? -r : r;
    }
    return p.xi_coeff(kind, q < Q(1, 2) ? Q(1) - q : q, 0);
}

/// xi_F(q, eta^e) with the character power resolved by parity
template <class P>
typename P::Coeff xi_eta_val(const P& p, const Q& q, int e) {
    return xi_val(p, e % 2 == 0 ? XiKind::F : XiKind::Feta, q);
}

template <class P>
Laurent<typename P::Coeff> expand_symbol(const P& p, XiKind kind, const Affine& arg, const Q& s0, int hi) {
    using C = typename P::Coeff;
    if (kind == XiKind::E)
        return expand_symbol(p, XiKind::F, arg, s0, hi) *
               expand_symbol(p, XiKind::Feta, arg, s0, hi - symbol_order(XiKind::F, arg, s0));
    if (!arg.b.is_integer()) throw AlgebraError("zeta argument needs an integer slope");
    if (arg.b.is_zero()) return Laurent<C>::constant(s0, xi_val(p, kind, arg.a), hi);
    Q x0 = arg.at(s0);
    Q q = x0;
    std::int64_t b = arg.b.num();
    if (x0 < Q(1, 2)) {
        q = Q(1) - x0;
        b = -b;
    }
    int v = symbol_order(kind, arg, s0);
    if (hi - v > kMaxSeriesDepth) throw TruncationError("series depth " + std::to_string(hi - v) + " exceeds the supported maximum");
    std::vector<C> c;
    for (int d = v; d <= hi; ++d) {
        mpq_class bd = 1;
        if (d >= 0) for (int i = 0; i < d; ++i) bd *= b;
        else bd = mpq_class(1, 1) / b;
        c.push_back(p.xi_coeff(kind, q, d) * p.rational(bd));
    }
    return Laurent<C>(s0, v, std::move(c), hi);
}

template <class P>
Laurent<typename P::Coeff> expand_disc(const P& p, GenKind which, const Affine& alpha, const Q& s0, int hi) {
    using C = typename P::Coeff;
    std::vector<C> c;
    C base = p.disc_pow(which, alpha.at(s0));
    if (alpha.b.is_zero()) return Laurent<C>::constant(s0, base, hi);
    C lg = p.log_disc(which) * p.rational(alpha.b.to_mpq());
    C term = base;
    for (int k = 0; k <= hi; ++k) {
        c.push_back(term);
        term = term * lg * p.rational(mpq_class(1, k + 1));
    }
    return Laurent<C>(s0, 0, std::move(c), hi);
}

/// Laurent expansion of a zeta product at s0, certified at least up to w.hi.
template <class P>
Laurent<typename P::Coeff> expand_expr(const P& p, const ZetaExpr& expr, const Q& s0, Window w = {}) {
    using C = typename P::Coeff;
    if (w.lo > w.hi) throw TruncationError("empty window");
    ZetaExpr e = expr.normalized();
    int m = structural_order(e, s0);
    int rel = std::max(w.hi - m, 0);
    if (rel > kMaxSeriesDepth)
        throw TruncationError("window up to " + std::to_string(w.hi) + " needs relative depth " + std::to_string(rel) +
                              "; achievable window is (" + std::to_string(m) + "," + std::to_string(m + kMaxSeriesDepth) + ")");
    auto r = Laurent<C>::constant(s0, p.rational(e.prefactor), rel);
    for (auto& f : e.factors) {
        int v = symbol_order(f.kind, f.arg, s0);
        auto s = expand_symbol(p, f.kind, f.arg, s0, v + rel);
        if (f.exp < 0) s = s.inverse();
        for (int i = 0; i < std::abs(f.exp); ++i) r = r * s;
    }
    if (!e.de_exp.is_zero()) r = r * expand_disc(p, GenKind::DE, e.de_exp, s0, rel);
    if (!e.df_exp.is_zero()) r = r * expand_disc(p, GenKind::DF, e.df_exp, s0, rel);
    return r;
}

template <class P>
typename P::Coeff coeff_at(const P& p, const ZetaExpr& expr, const Q& s0, int d) {
    return expand_expr(p, expr, s0, Window{d, d}).coefficient(d);
}

}  // namespace zv

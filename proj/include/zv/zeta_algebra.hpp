#pragma once

#include <compare>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace zv {

enum class XiKind : std::uint8_t { F, Feta, E };

enum class GenKind : std::uint8_t { F, Feta, DE, DF, LogDE, LogDF };

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Formal generator: a Laurent datum of xi_F or xi_F(.,eta) at a canonical point,
/// or one of the discriminant symbols.
struct ZetaGen {
    GenKind kind = GenKind::F;
    Q arg;
    int order = 0;

    auto operator<=>(const ZetaGen&) const = default;
    bool operator==(const ZetaGen&) const = default;

    bool is_pole_site() const { return kind == GenKind::F && arg == Q(1); }

    std::string render() const {
        switch (kind) {
            case GenKind::DE: return "DE";
            case GenKind::DF: return "DF";
            case GenKind::LogDE: return "logDE";
            case GenKind::LogDF: return "logDF";
            default: break;
        }
        if (is_pole_site()) {
            if (order == -1) return "ResF";
            return "xiF[" + std::to_string(order) + "](1)";
        }
        std::string s = kind == GenKind::F ? "xiF" : "xiFeta";
        if (order == 1) s += "'";
        else if (order == 2) s += "''";
        else if (order >= 3) s += "'{" + std::to_string(order) + "}";
        return s + "(" + arg.str() + ")";
    }
};

struct Canonical {
    ZetaGen gen;
    int scale = 1;
};

/// Reflect (kind, q, k) to the representative q' = max(q, 1-q); the chain rule under
/// s -> 1-s contributes (-1)^k.
inline Canonical canonicalize(XiKind kind, Q q, int k) {
    if (kind == XiKind::E) throw AlgebraError("xi_E is composite and has no generator");
    GenKind gk = kind == XiKind::F ? GenKind::F : GenKind::Feta;
    bool pole = kind == XiKind::F && (q == Q(0) || q == Q(1));
    if (k < -1 || (k == -1 && !pole)) {
        if (kind == XiKind::Feta) throw AlgebraError("xi_F(s,eta) has no pole at " + q.str());
        throw AlgebraError("order " + std::to_string(k) + " not admissible at " + q.str());
    }
    const Q half(1, 2);
    Canonical c;
    c.gen.kind = gk;
    c.gen.order = k;
    if (q < half) {
        c.gen.arg = Q(1) - q;
        c.scale = (k % 2 == 0) ? 1 : -1;
    } else {
        c.gen.arg = q;
    }
    return c;
}

/// Product of generator powers; exponents may be negative and, for the discriminant
/// symbols, fractional.
struct Monomial {
    std::vector<std::pair<ZetaGen, Q>> f;

    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;

    bool empty() const { return f.empty(); }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r;
        r.f.reserve(a.f.size() + b.f.size());
        std::size_t i = 0, j = 0;
        while (i < a.f.size() || j < b.f.size()) {
            if (j == b.f.size() || (i < a.f.size() && a.f[i].first < b.f[j].first)) {
                r.f.push_back(a.f[i++]);
            } else if (i == a.f.size() || b.f[j].first < a.f[i].first) {
                r.f.push_back(b.f[j++]);
            } else {
                Q e = a.f[i].second + b.f[j].second;
                if (!e.is_zero()) r.f.emplace_back(a.f[i].first, e);
                ++i;
                ++j;
            }
        }
        return r;
    }

    Monomial inverse() const {
        Monomial r = *this;
        for (auto& p : r.f) p.second = -p.second;
        return r;
    }

    Monomial pow(const Q& e) const {
        Monomial r;
        if (e.is_zero()) return r;
        for (auto& p : f) r.f.emplace_back(p.first, p.second * e);
        return r;
    }

    std::string render() const {
        std::string s;
        for (auto& [g, e] : f) {
            if (!s.empty()) s += "*";
            s += g.render();
            if (e == Q(1)) continue;
            if (e.is_integer()) s += "^" + e.str();
            else s += "^(" + e.str() + ")";
        }
        return s;
    }
};

/// Sparse Laurent polynomial over Q in the generators.
class Poly {
public:
    using Terms = std::map<Monomial, mpq_class>;

    Poly() = default;
    explicit Poly(mpq_class c) {
        c.canonicalize();
        if (c != 0) t_[Monomial{}] = c;
    }
    Poly(const Monomial& m, mpq_class c) {
        c.canonicalize();
        if (c != 0) t_[m] = c;
    }

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }

    bool is_monomial() const { return t_.size() == 1; }

    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }
    mpq_class constant() const { return t_.empty() ? mpq_class(0) : t_.begin()->second; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r = a;
        for (auto& [m, c] : b.t_) r.add_term(m, c);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r = a;
        for (auto& [m, c] : b.t_) r.add_term(m, -c);
        return r;
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& [m, c] : r.t_) c = -c;
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (auto& [ma, ca] : a.t_)
            for (auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }

    void add_term(const Monomial& m, const mpq_class& c) {
        if (c == 0) return;
        auto it = t_.find(m);
        if (it == t_.end()) {
            t_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) t_.erase(it);
        }
    }

    Poly scaled(const mpq_class& c, const Monomial& m) const {
        Poly r;
        if (c == 0) return r;
        for (auto& [mm, cc] : t_) r.t_.emplace(mm * m, cc * c);
        return r;
    }

    std::string render() const {
        if (t_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto& [m, c] : t_) {
            mpq_class a = c;
            if (!first) {
                s += a < 0 ? " - " : " + ";
                if (a < 0) a = -a;
            }
            std::string cs = to_string(a);
            if (m.empty()) s += cs;
            else if (a == 1) s += m.render();
            else if (a == -1) s += "-" + m.render();
            else s += cs + "*" + m.render();
            first = false;
        }
        return s;
    }

private:
    Terms t_;
};

/// Exact rational function in the generators.
class FieldElem {
public:
    FieldElem() : den_(mpq_class(1)) {}
    FieldElem(int c) : num_(mpq_class(c)), den_(mpq_class(1)) {}  // NOLINT(implicit)
    FieldElem(const mpq_class& c) : num_(c), den_(mpq_class(1)) {}  // NOLINT(implicit)
    FieldElem(const Q& c) : num_(c.to_mpq()), den_(mpq_class(1)) {}  // NOLINT(implicit)
    FieldElem(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw AlgebraError("zero denominator");
        normalize();
    }

    static FieldElem gen(const ZetaGen& g, const Q& e = Q(1)) {
        Monomial m;
        if (!e.is_zero()) m.f.emplace_back(g, e);
        return FieldElem(Poly(m, mpq_class(1)), Poly(mpq_class(1)));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
    mpq_class rational() const { return num_.constant() / den_.constant(); }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
        if (a.den_ == b.den_) return FieldElem(a.num_ + b.num_, a.den_);
        return FieldElem(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }
    FieldElem operator-() const {
        FieldElem r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
        if (a.is_zero() || b.is_zero()) return FieldElem();
        return FieldElem(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) {
        if (b.is_zero()) throw AlgebraError("division by zero field element");
        return FieldElem(a.num_ * b.den_, a.den_ * b.num_);
    }
    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
    FieldElem& operator/=(const FieldElem& o) { return *this = *this / o; }

    /// equality by cross-multiplication
    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        if (a.den_ == b.den_) return a.num_ == b.num_;
        return a.num_ * b.den_ == b.num_ * a.den_;
    }

    FieldElem pow(int e) const {
        FieldElem base = e < 0 ? FieldElem(1) / *this : *this;
        FieldElem r(1);
        for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= base;
        return r;
    }

    std::set<ZetaGen> generators() const {
        std::set<ZetaGen> g;
        for (const Poly* p : {&num_, &den_})
            for (auto& [m, c] : p->terms())
                for (auto& [gg, e] : m.f) g.insert(gg);
        return g;
    }

    std::string render() const {
        if (den_.is_constant() && den_.constant() == 1) return num_.render();
        auto wrap = [](const Poly& p) { return p.size() > 1 ? "(" + p.render() + ")" : p.render(); };
        return wrap(num_) + "/" + wrap(den_);
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = Poly(mpq_class(1));
            return;
        }
        if (den_.is_monomial()) {
            auto& [m, c] = *den_.terms().begin();
            num_ = num_.scaled(mpq_class(1) / c, m.inverse());
            den_ = Poly(mpq_class(1));
            return;
        }
        mpq_class lead = den_.terms().begin()->second;
        if (lead != 1) {
            num_ = num_.scaled(mpq_class(1) / lead, Monomial{});
            den_ = den_.scaled(mpq_class(1) / lead, Monomial{});
        }
    }

    Poly num_;
    Poly den_;
};

/// k-th Laurent datum of xi at an arbitrary rational point, canonicalized.
/// Odd derivatives at the centre 1/2 vanish identically.
inline FieldElem xi_gen(XiKind kind, const Q& q, int k) {
    Canonical c = canonicalize(kind, q, k);
    if (c.gen.arg == Q(1, 2) && k % 2 != 0) return FieldElem();
    FieldElem g = FieldElem::gen(c.gen);
    return c.scale == 1 ? g : -g;
}

/// Value of xi at q with the residue convention at the poles of xi_F.
inline FieldElem xi_value(XiKind kind, const Q& q) {
    if (kind == XiKind::E) return xi_value(XiKind::F, q) * xi_value(XiKind::Feta, q);
    if (kind == XiKind::F && (q == Q(0) || q == Q(1))) return xi_gen(kind, q, -1);
    return xi_gen(kind, q, 0);
}

/// xi_F(q, eta^p): the character power is resolved by parity.
inline FieldElem xi_eta(const Q& q, int p) {
    return xi_value(p % 2 == 0 ? XiKind::F : XiKind::Feta, q);
}

inline FieldElem xiE(const Q& q) { return xi_value(XiKind::E, q); }
inline FieldElem xiF(const Q& q) { return xi_value(XiKind::F, q); }
inline FieldElem xiFeta(const Q& q) { return xi_value(XiKind::Feta, q); }

inline FieldElem de_pow(const Q& e) { return FieldElem::gen(ZetaGen{GenKind::DE, Q(0), 0}, e); }
inline FieldElem df_pow(const Q& e) { return FieldElem::gen(ZetaGen{GenKind::DF, Q(0), 0}, e); }
inline FieldElem log_de() { return FieldElem::gen(ZetaGen{GenKind::LogDE, Q(0), 0}); }
inline FieldElem log_df() { return FieldElem::gen(ZetaGen{GenKind::LogDF, Q(0), 0}); }
inline FieldElem res_f() { return FieldElem::gen(ZetaGen{GenKind::F, Q(1), -1}); }

}  // namespace zv

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "constants.hpp"

namespace zv {

class FactUnknown : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PoleFact {
    int order = 0;
    bool exact = true;  // false: order is only an upper bound
    std::string provenance;
};

/// pole facts consumed along a derivation
struct Trace {
    std::set<std::string> facts;
    void use(const PoleFact& f) { facts.insert(f.provenance); }
};

namespace eis_detail {

inline std::string where(int m, int t, const Q& s0) {
    return "E(" + std::to_string(m) + "," + std::to_string(t) + ") at " + s0.str();
}

inline const char* kAvailable =
    "available facts: Siegel series E(m,m) at any rational point; E(m,t), t<m, at t/2, at (t+2)/2 for m >= 2t+1, "
    "and upper bounds for s0 >= (t+1)/2";

}  // namespace eis_detail

/// pole order of the spherical E^{(m,t)}(s) at s0; closed world, misses are errors
inline PoleFact pole_fact(int m, int t, const Q& s0) {
    using eis_detail::where;
    if (m < 1 || t < 1 || t > m) throw FactUnknown("no Eisenstein series " + where(m, t, s0) + ": need 1 <= t <= m");
    Q half_t(t, 2);
    if (t == m) {
        if (s0.sign() >= 0) {
            Q i = half_t - s0;
            if (i.is_integer() && i.sign() >= 0 && i < half_t)
                return {1, true, "Siegel series: simple pole of " + where(m, t, s0) + " (m/2 - i, 0 <= i < m/2)"};
            return {0, true, "Siegel series: " + where(m, t, s0) + " is holomorphic in Re s >= 0 off m/2 - i"};
        }
        PoleFact mirror = pole_fact(m, m, -s0);
        int v = structural_order(beta_factor(m), s0);
        return {mirror.order - v, mirror.exact,
                "Siegel functional equation E(s) = beta_m(s) E(-s): " + where(m, t, s0) + " has order " +
                    std::to_string(mirror.order - v)};
    }
    if (s0 == half_t) {
        if (m <= 2 * t - 1) return {2, true, "second term range: double pole of " + where(m, t, s0)};
        return {1, true, "first term range: simple pole of " + where(m, t, s0)};
    }
    if (m >= 2 * t + 1 && s0 == Q(t + 2, 2))
        return {0, true, "m >= 2t+1: " + where(m, t, s0) + " is holomorphic at (t+2)/2"};
    if (s0 >= Q(t + 1, 2)) return {1, false, "s0 >= (t+1)/2: at most a simple pole of " + where(m, t, s0)};
    throw FactUnknown("fact unknown: pole order of " + where(m, t, s0) + "; " + eis_detail::kAvailable);
}

inline int pole_order(int m, int t, const Q& s0) { return pole_fact(m, t, s0).order; }

/// order of vanishing at s0 of prod_j (C_{s-(r+1)/2+j} - C_{n-r+1/2})
inline int pz_vanishing_order(int n, int r, const Q& s0) {
    if (!(1 <= r && r <= n)) throw RangeError("range: need 1 <= r <= n");
    Q y = Q(n - r) + Q(1, 2);
    int c = 0;
    for (int j = 1; j <= r; ++j) {
        Q x = s0 - Q(r + 1, 2) + Q(j);
        if (x == y || x == -y) ++c;
    }
    return c;
}

/// pole order predicted from the theta side: [s0 = r/2] + ord P_z - ord lambda
inline int predicted_pole_order(int n, int r, const Q& s0) {
    return (s0 == Q(r, 2) ? 1 : 0) + pz_vanishing_order(n, r, s0) + structural_order(lambda_factor(n, r), s0);
}

/// E^{(m,t)}_d(s0), or the constant form 1
struct EisSymbol {
    bool one = false;
    int m = 0;
    int t = 0;
    int d = 0;
    Q s0;

    auto operator<=>(const EisSymbol&) const = default;
    bool operator==(const EisSymbol&) const = default;

    static EisSymbol unit() { EisSymbol e; e.one = true; return e; }

    /// rejects d below the pole order
    static EisSymbol make(int m, int t, int d, const Q& s0, Trace* tr = nullptr) {
        PoleFact f = pole_fact(m, t, s0);
        if (tr) tr->use(f);
        if (d < -f.order)
            throw AlgebraError("symbol " + eis_detail::where(m, t, s0) + " of order " + std::to_string(d) +
                               " lies below the pole order " + std::to_string(f.order));
        EisSymbol e;
        e.m = m;
        e.t = t;
        e.d = d;
        e.s0 = s0;
        return e;
    }

    bool siegel() const { return !one && m == t; }

    std::string render() const {
        if (one) return "1";
        return "E(" + std::to_string(m) + "," + std::to_string(t) + ";" + std::to_string(d) + "@" + s0.str() + ")";
    }
};

/// finite linear combination of symbols
template <class C>
class LinComb {
public:
    using Tr = CoeffTraits<C>;

    const std::map<EisSymbol, C>& terms() const { return t_; }
    bool empty() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }

    void add(const EisSymbol& s, const C& c) {
        auto it = t_.find(s);
        if (it == t_.end()) {
            if (!Tr::is_zero(c)) t_.emplace(s, c);
            return;
        }
        it->second += c;
        if (Tr::is_zero(it->second)) t_.erase(it);
    }
    void add(const LinComb& o, const C& k) {
        for (auto& [s, c] : o.t_) add(s, c * k);
    }

    C coeff(const EisSymbol& s) const {
        auto it = t_.find(s);
        return it == t_.end() ? Tr::zero() : it->second;
    }

    /// symbols whose coefficients are not negligible relative to scale
    std::vector<EisSymbol> support(const C& scale) const {
        std::vector<EisSymbol> out;
        for (auto& [s, c] : t_)
            if (!Tr::negligible(c, scale)) out.push_back(s);
        return out;
    }

    std::string render() const {
        if (t_.empty()) return "0";
        std::string s;
        for (auto& [sym, c] : t_) s += (s.empty() ? "" : " + ") + ("(" + Tr::render(c) + ")·" + sym.render());
        return s;
    }

private:
    std::map<EisSymbol, C> t_;
};

/// sum of ||a||^e (log ||a||)^k coeff E-symbol terms
template <class C>
class ConstantTermExpr {
public:
    using Tr = CoeffTraits<C>;
    using Key = std::tuple<Q, int, EisSymbol>;

    const std::map<Key, C>& terms() const { return t_; }
    bool empty() const { return t_.empty(); }

    void add(const Q& e, int k, const EisSymbol& s, const C& c) {
        Key key{e, k, s};
        auto it = t_.find(key);
        if (it == t_.end()) {
            if (!Tr::is_zero(c)) t_.emplace(key, c);
            return;
        }
        it->second += c;
        if (Tr::is_zero(it->second)) t_.erase(it);
    }
    void add(const ConstantTermExpr& o, const C& k) {
        for (auto& [key, c] : o.t_) add(std::get<0>(key), std::get<1>(key), std::get<2>(key), c * k);
    }

    std::set<std::pair<Q, int>> exponents() const {
        std::set<std::pair<Q, int>> out;
        for (auto& [key, c] : t_) out.insert({std::get<0>(key), std::get<1>(key)});
        return out;
    }

    std::string render() const {
        if (t_.empty()) return "0";
        std::string s;
        for (auto& [key, c] : t_) {
            auto& [e, k, sym] = key;
            std::string term = "||a||^" + e.str();
            if (k > 0) term += " log^" + std::to_string(k);
            term += " · (" + Tr::render(c) + ") · " + sym.render();
            s += (s.empty() ? "" : " + ") + term;
        }
        return s;
    }

private:
    std::map<Key, C> t_;
};

/// one summand of the constant term along Q
struct Piece {
    Q exponent;     // power of ||a|| at s0
    int slope = 0;  // d/ds of that power
    bool one = false;
    int m = 0, t = 0;
    Q s;
    std::optional<ZetaExpr> factor;
};

inline std::vector<Piece> constant_term_pieces(int m, int t, const Q& s0) {
    if (m < 2 || t < 1 || t > m) throw RangeError("range: constant term needs m >= 2 and 1 <= t <= m");
    Q h(1, 2);
    std::vector<Piece> out;
    if (t == m) {
        out.push_back({s0 + Q(m, 2), 1, false, m - 1, m - 1, s0 + h, std::nullopt});
        out.push_back({-s0 + Q(m, 2), -1, false, m - 1, m - 1, s0 - h, H_factor(m)});
    } else if (t == 1) {
        out.push_back({s0 + Q(m) - h, 1, true, 0, 0, Q(0), std::nullopt});
        out.push_back({Q(1), 0, false, m - 1, 1, s0, F_factor(m, 1)});
        out.push_back({-s0 + Q(m) - h, -1, true, 0, 0, Q(0), G_factor(m, 1)});
    } else {
        Q mid = Q(m) - Q(t, 2);
        out.push_back({s0 + mid, 1, false, m - 1, t - 1, s0 + h, std::nullopt});
        out.push_back({Q(t), 0, false, m - 1, t, s0, F_factor(m, t)});
        out.push_back({-s0 + mid, -1, false, m - 1, t - 1, s0 - h, G_factor(m, t)});
    }
    return out;
}

/// Coefficient of (s-s0)^d in the constant term along Q, whether or not d is above the
/// pole order of the parent.
template <class P>
ConstantTermExpr<typename P::Coeff> formal_constant_term(const P& p, int m, int t, int d, const Q& s0, Window w = {},
                                                         Trace* tr = nullptr) {
    using C = typename P::Coeff;
    ConstantTermExpr<C> out;
    for (auto& pc : constant_term_pieces(m, t, s0)) {
        int P0 = 0;
        if (!pc.one) {
            PoleFact f = pole_fact(pc.m, pc.t, pc.s);
            if (tr) tr->use(f);
            P0 = f.order;
        }
        int need = d + P0;
        Laurent<C> X = Laurent<C>::constant(s0, p.rational(1), std::max(need, 0));
        if (pc.factor) {
            if (need > w.hi)
                throw TruncationError("order " + std::to_string(d) + " needs factor coefficients up to " + std::to_string(need) +
                                      " but the window stops at " + std::to_string(w.hi));
            X = expand_expr(p, *pc.factor, s0, Window{w.lo, need});
        }
        if (X.known_zero()) continue;
        int vX = X.lo();
        int emax = pc.one ? 0 : d - vX;
        for (int e = pc.one ? 0 : -P0; e <= emax; ++e) {
            EisSymbol sym = pc.one ? EisSymbol::unit() : EisSymbol::make(pc.m, pc.t, e, pc.s, tr);
            int kmax = pc.slope == 0 ? 0 : d - e - vX;
            mpq_class sk = 1;
            for (int k = 0; k <= kmax; ++k) {
                if (k > 0) sk = sk * pc.slope / k;
                int f = d - e - k;
                if (f < vX) break;
                C c = X.coefficient(f);
                if (k > 0) c = c * p.rational(sk);
                out.add(pc.exponent, k, sym, c);
            }
        }
    }
    return out;
}

/// constant term of E^{(m,t)}_d(s0); empty below the pole order
template <class P>
ConstantTermExpr<typename P::Coeff> constant_term(const P& p, int m, int t, int d, const Q& s0, Window w = {},
                                                  Trace* tr = nullptr) {
    PoleFact f = pole_fact(m, t, s0);
    if (tr) tr->use(f);
    if (d < -f.order) return {};
    return formal_constant_term(p, m, t, d, s0, w, tr);
}

/// The constant term of a coefficient known to vanish (d below an exact pole order):
/// the whole expansion equals 0.
template <class P>
ConstantTermExpr<typename P::Coeff> vanishing_relation(const P& p, int m, int t, int d, const Q& s0, Window w = {},
                                                       Trace* tr = nullptr) {
    PoleFact f = pole_fact(m, t, s0);
    if (tr) tr->use(f);
    if (!f.exact || d >= -f.order)
        throw AlgebraError("no vanishing relation: order " + std::to_string(d) + " is not below the exact pole order of " +
                           eis_detail::where(m, t, s0));
    return formal_constant_term(p, m, t, d, s0, w, tr);
}

template <class C>
LinComb<C> extract(const ConstantTermExpr<C>& cte, const Q& e, int k) {
    LinComb<C> out;
    for (auto& [key, c] : cte.terms())
        if (std::get<0>(key) == e && std::get<1>(key) == k) out.add(std::get<2>(key), c);
    return out;
}

template <class C>
ConstantTermExpr<C> lincomb_constant_term(const LinComb<C>& l, const Q& e, int k) {
    ConstantTermExpr<C> out;
    for (auto& [s, c] : l.terms()) out.add(e, k, s, c);
    return out;
}

/// E^{(m,m)}_d(-s0) = sum_{f+e=d} beta_{m,f}(-s0) (-1)^e E^{(m,m)}_e(s0)
template <class P>
LinComb<typename P::Coeff> siegel_fe_rewrite(const P& p, int m, int d, const Q& s0, Window w = {}, Trace* tr = nullptr) {
    using C = typename P::Coeff;
    LinComb<C> out;
    PoleFact neg = pole_fact(m, m, -s0), pos = pole_fact(m, m, s0);
    if (tr) {
        tr->use(neg);
        tr->use(pos);
    }
    if (d < -neg.order) return out;
    int need = d + pos.order;
    if (need > w.hi)
        throw TruncationError("functional equation at order " + std::to_string(d) + " needs beta up to " + std::to_string(need) +
                              " but the window stops at " + std::to_string(w.hi));
    auto beta = expand_expr(p, beta_factor(m), -s0, Window{w.lo, need});
    if (beta.known_zero()) return out;
    for (int e = -pos.order; e <= d - beta.lo(); ++e) {
        C c = beta.coefficient(d - e);
        if (e % 2 != 0) c = -c;
        out.add(EisSymbol::make(m, m, e, s0, tr), c);
    }
    return out;
}

/// which first-term identities the rewriter may use
struct RewriteConfig {
    Mode mode = Mode::recursive;
    bool first_range = true;   // E^{(m,t)}_{-1}(t/2) -> c_{m,t} E^{(m,m)}_{-1}((m-2t)/2), m >= 2t+1
    bool boundary = true;      // E^{(2t,t)}_{-1}(t/2) -> c_t E^{(2t,2t)}_0(0)
    bool second_range = true;  // E^{(m,t)}_{-2}(t/2) -> d_{m,t} E^{(m,m)}_{-1}((2t-m)/2)
    bool known_zero = true;    // E^{(m,t)}_{-1}((t+2)/2) = 0, m >= 2t+1
    bool siegel_residue = false;  // E^{(m,m)}_{-1}(m/2) -> constant
};

template <class P>
LinComb<typename P::Coeff> apply_first_term_rewrites(const P& p, const LinComb<typename P::Coeff>& in,
                                                     const RewriteConfig& cfg = {}, Trace* tr = nullptr) {
    using C = typename P::Coeff;
    LinComb<C> out;
    for (auto& [s, c] : in.terms()) {
        if (s.one) {
            out.add(s, c);
            continue;
        }
        int m = s.m, t = s.t;
        if (t < m && s.s0 == Q(t, 2)) {
            if (cfg.first_range && s.d == -1 && m >= 2 * t + 1) {
                out.add(EisSymbol::make(m, m, -1, Q(m - 2 * t, 2), tr), c * c_nr(p, m, t, cfg.mode));
                continue;
            }
            if (cfg.boundary && s.d == -1 && m == 2 * t) {
                out.add(EisSymbol::make(m, m, 0, Q(0), tr), c * c_r(p, t, cfg.mode));
                continue;
            }
            if (cfg.second_range && s.d == -2 && t + 1 <= m && m <= 2 * t - 1) {
                out.add(EisSymbol::make(m, m, -1, Q(2 * t - m, 2), tr), c * d_nr(p, m, t, cfg.mode));
                continue;
            }
        }
        if (cfg.known_zero && t < m && s.d == -1 && m >= 2 * t + 1 && s.s0 == Q(t + 2, 2)) continue;
        if (cfg.siegel_residue && t == m && s.d == -1 && s.s0 == Q(m, 2)) {
            out.add(EisSymbol::unit(), c * siegel_residue(p, m));
            continue;
        }
        out.add(s, c);
    }
    return out;
}

/// Siegel symbols at negative points are moved to the positive side
template <class P>
LinComb<typename P::Coeff> rewrite_negative_siegel(const P& p, const LinComb<typename P::Coeff>& in, Window w = {},
                                                   Trace* tr = nullptr) {
    using C = typename P::Coeff;
    LinComb<C> out;
    for (auto& [s, c] : in.terms()) {
        if (s.siegel() && s.s0.sign() < 0) out.add(siegel_fe_rewrite(p, s.m, s.d, -s.s0, w, tr), c);
        else out.add(s, c);
    }
    return out;
}

/// constant term of a relation, extracted at ||a||^e, simplified by the functional
/// equation and the first-term identities
template <class P>
LinComb<typename P::Coeff> derive_step(const P& p, const LinComb<typename P::Coeff>& rel, const Q& e, Window w = {},
                                       const RewriteConfig& cfg = {}, Trace* tr = nullptr) {
    using C = typename P::Coeff;
    ConstantTermExpr<C> total;
    for (auto& [s, c] : rel.terms()) {
        if (s.one) total.add(Q(0), 0, s, c);
        else total.add(constant_term(p, s.m, s.t, s.d, s.s0, w, tr), c);
    }
    auto ex = extract(total, e, 0);
    ex = rewrite_negative_siegel(p, ex, w, tr);
    return apply_first_term_rewrites(p, ex, cfg, tr);
}

}  // namespace zv

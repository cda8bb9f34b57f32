#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "json.hpp"

#include "derivations.hpp"
#include "gk_appendix.hpp"

namespace zv::verify {

using json = nlohmann::ordered_json;

enum class RunMode { symbolic, numeric, both };

inline const char* run_mode_name(RunMode m) {
    switch (m) {
        case RunMode::symbolic: return "symbolic";
        case RunMode::numeric: return "numeric";
        default: return "both";
    }
}

inline std::optional<RunMode> parse_run_mode(const std::string& s) {
    if (s == "symbolic") return RunMode::symbolic;
    if (s == "numeric") return RunMode::numeric;
    if (s == "both") return RunMode::both;
    return std::nullopt;
}

struct Params {
    std::optional<int> n, r, j;

    std::optional<int>& at(char k) { return k == 'n' ? n : (k == 'r' ? r : j); }
    const std::optional<int>& at(char k) const { return k == 'n' ? n : (k == 'r' ? r : j); }

    int need(char k) const {
        auto& v = at(k);
        if (!v) throw RangeError(std::string("range: missing parameter ") + k);
        return *v;
    }

    json to_json() const {
        json o = json::object();
        if (n) o["n"] = *n;
        if (r) o["r"] = *r;
        if (j) o["j"] = *j;
        return o;
    }
};

struct Settings {
    RunMode mode = RunMode::both;
    unsigned digits = 30;
    Window window{};
    int r_max = 5;
};

struct Report {
    std::string check;
    Params params;
    std::string mode;
    std::string status;  // pass | fail | error
    std::string lhs, rhs;
    std::optional<double> abs_err;
    double elapsed_ms = 0;
    std::vector<std::string> facts_used;
    std::string detail;

    bool pass() const { return status == "pass"; }

    json to_json() const {
        json o;
        o["check"] = check;
        o["params"] = params.to_json();
        o["mode"] = mode;
        o["status"] = status;
        o["lhs"] = lhs;
        o["rhs"] = rhs;
        o["abs_err"] = abs_err ? json(*abs_err) : json(nullptr);
        o["elapsed_ms"] = elapsed_ms;
        o["facts_used"] = facts_used;
        if (!detail.empty()) o["detail"] = detail;
        return o;
    }
};

template <class C>
struct Claim {
    std::string label;
    C lhs, rhs;
    double tol = 1e-10;
};

template <class C>
struct Outcome {
    std::vector<Claim<C>> claims;
    std::vector<std::pair<std::string, bool>> conditions;
    std::vector<std::string> notes;
    Trace trace;

    void claim(std::string label, C l, C r, double tol = 1e-10) { claims.push_back({std::move(label), std::move(l), std::move(r), tol}); }
    void require(std::string label, bool ok) { conditions.emplace_back(std::move(label), ok); }
};

using SymOutcome = Outcome<FieldElem>;
using NumOutcome = Outcome<Real>;

struct Space {
    std::string keys;  // loop order, e.g. "rn"
    std::function<std::vector<int>(char, const Params&, const Settings&)> range;
    std::function<bool(const Params&)> valid;
};

struct CheckDef {
    std::string name;
    std::string citation;
    Space space;
    std::function<SymOutcome(const SymbolicProvider&, const Params&, const Settings&)> sym;
    std::function<NumOutcome(const NumericProvider&, const Params&, const Settings&)> num;
};

namespace detail {

inline std::vector<int> span(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return v;
}

template <class C>
bool close(const C& x, const C& y) {
    if constexpr (std::is_same_v<C, Real>) {
        Real s = max(abs(x), abs(y));
        return CoeffTraits<Real>::negligible(x - y, s);
    } else {
        return x == y;
    }
}

template <class C>
bool same_series(const Laurent<C>& a, const Laurent<C>& b, int upto) {
    int lo = std::min(a.lo(), b.lo());
    int hi = std::min({a.hi(), b.hi(), upto});
    for (int d = lo; d <= hi; ++d)
        if (!close(a.coefficient(d), b.coefficient(d))) return false;
    return true;
}

inline double to_double(const Real& x) { return x.convert_to<double>(); }

}  // namespace detail

namespace checks {

/// closed form of c_{n,r} against the displayed recursion and the constant-term derivation
struct Prop43 {
    template <class P>
    Outcome<typename P::Coeff> operator()(const P& p, const Params& a, const Settings& s) const {
        Outcome<typename P::Coeff> o;
        int n = a.need('n'), r = a.need('r');
        cst::need(r >= 1 && n >= 2 * r + 1, "need n >= 2r+1");
        auto closed = c_nr_closed(p, n, r);
        o.claim("c(" + std::to_string(n) + "," + std::to_string(r) + ") recursion", c_nr_recursive(p, n, r), closed);
        std::vector<EisSymbol> stray;
        o.claim("c(" + std::to_string(n) + "," + std::to_string(r) + ") derived", derive_c_nr(p, n, r, s.window, Mode::recursive, &o.trace, &stray),
                closed);
        o.require("no stray symbols", stray.empty());
        if (n == 3 && r == 1) o.claim("c(3,1) = xiF(4)/xiF(3)", closed, cst::F(p, Q(4)) / cst::F(p, Q(3)));
        return o;
    }
};

/// c_r from the boundary first-term identity, two paths
struct Prop45 {
    template <class P>
    Outcome<typename P::Coeff> operator()(const P& p, const Params& a, const Settings& s) const {
        Outcome<typename P::Coeff> o;
        int r = a.need('r');
        cst::need(r >= 1, "need r >= 1");
        auto closed = c_r_closed(p, r);
        o.claim("c(" + std::to_string(r) + ") via c(2r+1,r)", c_r_recursive(p, r, Mode::recursive), closed);
        std::vector<EisSymbol> stray;
        o.claim("c(" + std::to_string(r) + ") derived", derive_c_r(p, r, s.window, Mode::recursive, &o.trace, &stray), closed);
        o.require("no stray symbols", stray.empty());
        return o;
    }
};

/// d_{n,r}: base and downward recursion re-derived from vanishing constant terms
struct Prop46 {
    template <class P>
    Outcome<typename P::Coeff> operator()(const P& p, const Params& a, const Settings& s) const {
        Outcome<typename P::Coeff> o;
        int n = a.need('n'), r = a.need('r');
        cst::need(r >= 2 && r + 1 <= n && n <= 2 * r - 1, "need r+1 <= n <= 2r-1");
        auto chain = derive_d_chain(p, r, n, s.window, Mode::recursive, &o.trace);
        auto rec = d_nr(p, n, r, Mode::recursive);
        std::string tag = "d(" + std::to_string(n) + "," + std::to_string(r) + ")";
        o.claim(tag + " derived", chain.d.back(), rec);
        o.claim(tag + " closed", d_nr(p, n, r, Mode::closed), rec);
        bool clean = true;
        for (auto& st : chain.stray) clean = clean && st.empty();
        o.require("no stray symbols", clean);
        return o;
    }
};

/// boundary case of the second-term induction, with the functional-equation rewrite
struct Prop47 {
    template <class P>
    Outcome<typename P::Coeff> operator()(const P& p, const Params& a, const Settings& s) const {
        Outcome<typename P::Coeff> o;
        int r = a.need('r');
        cst::need(r >= 2, "need r >= 2");
        auto id = second_term_chain(p, r, 0, s.window, RewriteConfig{}, &o.trace).front();
        o.claim("X", id.X, X_closed(p, r, 0));
        o.claim("Y", id.Y, Y_closed(p, r, 0));
        o.claim("E0 coefficient", id.e0, p.rational(2) * c_r_closed(p, r));
        o.require("no stray symbols", id.stray.empty());
        o.claim("beta(2r-1) at -1/2, order 0", coeff_at(p, beta_factor(2 * r - 1), Q(-1, 2), 0), p.rational(0));
        auto hres = p.rational(mpq_class(1, 2)) * cst::E(p, Q(0)) / (cst::F(p, Q(2 * r - 1), 1) * cst::F(p, Q(2 * r)));
        o.claim("H(2r) residue at 0", coeff_at(p, H_factor(2 * r), Q(0), -1), hres);
        o.claim("1 + beta' H_-1", claim2_value(p, r), p.rational(2));
        o.notes.push_back("gamma = " + CoeffTraits<typename P::Coeff>::render(id.gamma));
        return o;
    }
};

/// one rung of the second-term induction
struct Thm48 {
    template <class P>
    Outcome<typename P::Coeff> operator()(const P& p, const Params& a, const Settings& s) const {
        Outcome<typename P::Coeff> o;
        int r = a.need('r'), j = a.need('j');
        auto chain = second_term_chain(p, r, j, s.window, RewriteConfig{}, &o.trace);
        auto& id = chain.back();
        o.claim("X", id.X, X_closed(p, r, j));
        o.claim("Y", id.Y, Y_closed(p, r, j));
        o.claim("E0 coefficient", id.e0, p.rational(2) * c_r_closed(p, r));
        o.require("no stray symbols", id.stray.empty());
        o.notes.push_back("gamma = " + CoeffTraits<typename P::Coeff>::render(id.gamma));
        return o;
    }
};

struct Claim2 {
    template <class P>
    Outcome<typename P::Coeff> operator()(const P& p, const Params& a, const Settings&) const {
        Outcome<typename P::Coeff> o;
        int r = a.need('r');
        cst::need(r >= 2, "need r >= 2");
        o.claim("1 + beta' H_-1", claim2_value(p, r), p.rational(2));
        return o;
    }
};

/// a_{n,r} from phi_c(0), c_{n,r} and lambda(r/2)
struct Prop51 {
    template <class P>
    Outcome<typename P::Coeff> operator()(const P& p, const Params& a, const Settings&) const {
        Outcome<typename P::Coeff> o;
        int n = a.need('n'), r = a.need('r');
        cst::need(r >= 1 && n >= 2 * r + 1, "need n >= 2r+1");
        o.claim("a derived", a_nr_derived(p, n, r, Mode::recursive), a_nr_closed(p, n, r));
        o.claim("lambda(r/2)", lambda_at_rho(p, n, r), lambda_rho_display(p, n, r));
        return o;
    }
};

struct Prop53 {
    template <class P>
    Outcome<typename P::Coeff> operator()(const P& p, const Params& a, const Settings&) const {
        Outcome<typename P::Coeff> o;
        int n = a.need('n'), r = a.need('r');
        cst::need(r >= 2 && r + 1 <= n && n <= 2 * r - 1, "need r+1 <= n <= 2r-1");
        auto closed = b_nr_closed(p, n, r, Mode::closed);
        o.claim("b derived", b_nr_derived(p, n, r, Mode::recursive), closed);
        auto prod = p.rational(1);
        for (int i = 1; i <= r; ++i) prod = prod * cst::E(p, Q(i)) / cst::E(p, Q(n - i + 1));
        o.claim("b d", closed * d_nr(p, n, r, Mode::closed), prod);
        return o;
    }
};

/// weak second term coefficient from the induction and the lambda normalization
struct Thm54 {
    template <class P>
    Outcome<typename P::Coeff> operator()(const P& p, const Params& a, const Settings& s) const {
        Outcome<typename P::Coeff> o;
        int n = a.need('n'), r = a.need('r');
        cst::need(r >= 2 && r + 1 <= n && n <= 2 * r - 1, "need r+1 <= n <= 2r-1");
        auto chain = second_term_chain(p, r, 2 * r - 1 - n, s.window, RewriteConfig{}, &o.trace);
        auto& id = chain.back();
        o.claim("weak2", weak2_from(p, n, r, id.X, id.Y), weak2_closed(p, n, r));
        o.claim("A0 normalization", p.rational(2) * c_r_closed(p, r) * lambda_at_rho(p, n, r) / (phi0(p, n, r) * id.X), p.rational(1));
        o.claim("telescope", telescope(p, n, r), p.rational(1));
        o.require("no stray symbols", id.stray.empty());
        return o;
    }
};

/// rank-one assembly of the intertwining constants
struct Appendix {
    template <class P>
    Outcome<typename P::Coeff> operator()(const P& p, const Params& a, const Settings&) const {
        using namespace gk;
        Outcome<typename P::Coeff> o;
        int n = a.need('n'), r = a.need('r');
        check_nr(n, r);
        const Q s0(10, 3);
        auto value = [&](const ZetaExpr& z) { return coeff_at(p, z, s0, 0); };
        if (r < n) {
            o.require("w1 inversion set", sigma_plus_enumerated(Weyl::w1, n, r) == sigma_plus_closed(Weyl::w1, n, r));
            auto c1 = assemble(Weyl::w1, n, r);
            o.require("c1 discriminants cancel", c1.discriminants_cancel);
            o.require("c1 closed form", c1.product == c1_closed(n, r));
            o.require("F = c1", F_factor(n, r) == c1_closed(n, r));
            o.require("G = c2", G_factor(n, r) == c2_closed(n, r));
            o.claim("c1 at 10/3", value(c1.product), value(c1_closed(n, r)));
        }
        o.require("w2 inversion set", sigma_plus_enumerated(Weyl::w2, n, r) == sigma_plus_closed(Weyl::w2, n, r));
        auto c2 = assemble(Weyl::w2, n, r);
        o.require("c2 discriminants cancel", c2.discriminants_cancel);
        o.require("c2 closed form", c2.product == c2_closed(n, r));
        if (r == n) o.require("H = c2", H_factor(n) == c2_closed(n, n));
        o.claim("c2 at 10/3", value(c2.product), value(c2_closed(n, r)));
        return o;
    }
};

struct Telescope {
    template <class P>
    Outcome<typename P::Coeff> operator()(const P& p, const Params& a, const Settings&) const {
        Outcome<typename P::Coeff> o;
        int n = a.need('n'), r = a.need('r');
        o.claim("product", telescope(p, n, r), p.rational(1));
        return o;
    }
};

/// pole facts against the theta-side prediction
struct Poles {
    template <class P>
    Outcome<typename P::Coeff> operator()(const P& p, const Params& a, const Settings& s) const {
        Outcome<typename P::Coeff> o;
        int n = a.need('n'), r = a.need('r');
        if (!(1 <= r && r <= n)) throw RangeError("range: need 1 <= r <= n");
        auto coherent = [&](const Q& s0) {
            PoleFact f = pole_fact(n, r, s0);
            o.trace.use(f);
            int pred = predicted_pole_order(n, r, s0);
            o.require("order at " + s0.str() + " = " + std::to_string(f.order) + (f.exact ? "" : " (bound)"),
                      f.exact ? pred == f.order : pred <= f.order);
            return f;
        };
        if (r < n) {
            PoleFact f = coherent(Q(r, 2));
            o.require("below the pole order the constant term is empty",
                      constant_term(p, n, r, -f.order - 1, Q(r, 2), s.window, &o.trace).empty());
            if (n >= 2 * r + 1) coherent(Q(r + 2, 2));
            for (int h = r + 1; h <= n + 2; ++h)
                if (Q(h, 2) != Q(r + 2, 2) || n < 2 * r + 1) coherent(Q(h, 2));
        } else {
            auto beta = beta_factor(n);
            for (int h = 1; h <= n + 1; ++h) {
                Q s0(h, 2);
                PoleFact pos = pole_fact(n, n, s0), neg = pole_fact(n, n, -s0);
                o.trace.use(pos);
                o.trace.use(neg);
                o.require("mirror at -" + s0.str(), neg.order == pos.order - structural_order(beta, -s0));
                bool pole = (Q(n, 2) - s0).is_integer() && s0 <= Q(n, 2);
                o.require("Siegel pole at " + s0.str(), pos.order == (pole ? 1 : 0));
            }
        }
        return o;
    }
};

/// sum of the extractions over all (exponent, log) pairs rebuilds the constant term
struct Partition {
    template <class P>
    Outcome<typename P::Coeff> operator()(const P& p, const Params& a, const Settings& s) const {
        using C = typename P::Coeff;
        Outcome<C> o;
        int r = a.need('r');
        cst::need(r >= 1, "need r >= 1");
        struct Site {
            int m, t;
            Q s0;
        };
        std::vector<Site> sites = {{2 * r, r, Q(r, 2)}, {2 * r + 1, r, Q(r, 2)}, {2 * r, 2 * r, Q(0)}, {2 * r, 2 * r, Q(r)}};
        if (r >= 2) sites.push_back({2 * r - 1, r, Q(r, 2)});
        for (auto& st : sites) {
            int ord = pole_fact(st.m, st.t, st.s0).order;
            for (int d = -ord; d <= 1 - ord; ++d) {
                auto cte = constant_term(p, st.m, st.t, d, st.s0, s.window, &o.trace);
                ConstantTermExpr<C> rebuilt;
                std::size_t count = 0;
                for (auto& [e, k] : cte.exponents()) {
                    auto part = extract(cte, e, k);
                    count += part.size();
                    rebuilt.add(lincomb_constant_term(part, e, k), CoeffTraits<C>::one());
                }
                bool ok = count == cte.terms().size() && rebuilt.terms().size() == cte.terms().size();
                if (ok)
                    for (auto& [key, c] : cte.terms()) {
                        auto it = rebuilt.terms().find(key);
                        ok = ok && it != rebuilt.terms().end() && detail::close(it->second, c);
                    }
                o.require("E(" + std::to_string(st.m) + "," + std::to_string(st.t) + ";" + std::to_string(d) + "@" + st.s0.str() + ")", ok);
            }
        }
        return o;
    }
};

/// Laurent ring laws on randomized zeta products
struct RingLaws {
    static constexpr int kCount = 1000;
    static constexpr unsigned kSeed = 20121;

    template <class P>
    Outcome<typename P::Coeff> operator()(const P& p, const Params&, const Settings&) const {
        using C = typename P::Coeff;
        Outcome<C> o;
        std::mt19937 rng(kSeed);
        auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
        const XiKind kinds[] = {XiKind::F, XiKind::Feta, XiKind::E};
        const int slopes[] = {1, 2, -1, -2};
        const int exps[] = {1, -1, 2, -2};
        auto random_expr = [&]() {
            ZetaExpr z = ZetaExpr::rational(mpq_class(pick(1, 5), pick(1, 4)));
            int nf = pick(1, 3);
            for (int i = 0; i < nf; ++i)
                z = z * ZetaExpr::xi(kinds[pick(0, 2)], Affine{Q(pick(-6, 6), 2), Q(slopes[pick(0, 3)])}, exps[pick(0, 3)]);
            if (pick(0, 3) == 0) z = z * ZetaExpr::de(Affine{Q(pick(-2, 2), 2), Q(pick(-1, 1))});
            return z;
        };
        const int hi = 1;
        Window w{-2, hi};
        int mult = 0, order = 0, comm = 0, assoc = 0, dist = 0, inv = 0;
        for (int it = 0; it < kCount; ++it) {
            ZetaExpr e1 = random_expr(), e2 = random_expr(), e3 = random_expr();
            Q s0(pick(-2, 3), 2);
            auto A = expand_expr(p, e1, s0, w), B = expand_expr(p, e2, s0, w), Cc = expand_expr(p, e3, s0, w);
            auto AB = expand_expr(p, e1 * e2, s0, w);
            if (!detail::same_series(AB, A * B, hi)) ++mult;
            if (structural_order(e1 * e2, s0) != structural_order(e1, s0) + structural_order(e2, s0) || A.lo() != structural_order(e1, s0))
                ++order;
            if (!detail::same_series(A * B, B * A, hi)) ++comm;
            if (!detail::same_series((A * B) * Cc, A * (B * Cc), hi)) ++assoc;
            auto Bs = B.shift(A.lo() - B.lo());
            if (!detail::same_series((A + Bs) * Cc, A * Cc + Bs * Cc, hi)) ++dist;
            auto one = Laurent<C>::constant(s0, CoeffTraits<C>::one(), A.hi() - A.lo());
            if (!detail::same_series(A * A.inverse(), one, A.hi() - A.lo())) ++inv;
        }
        auto req = [&](const std::string& law, int bad) { o.require(law + " (" + std::to_string(bad) + " of " + std::to_string(kCount) + " failing)", bad == 0); };
        req("multiplicative expansion", mult);
        req("order additivity", order);
        req("commutativity", comm);
        req("associativity", assoc);
        req("distributivity", dist);
        req("inverse", inv);
        return o;
    }
};

/// numeric backend self-consistency
struct Backend {
    static Real xiE_direct(const Q& q, unsigned digits) {
        Real s = to_real(q);
        Real two_pi = 2 * real_pi();
        Real gamma = zv::detail::gamma_jet(s, Real(1), 0, digits)[0];
        Real zeta = zv::detail::hurwitz_jet(q, Real(1), 0, digits).regular[0];
        Real L = pow(Real(4), -s) *
                 (zv::detail::hurwitz_jet(q, Real(1) / 4, 0, digits).regular[0] - zv::detail::hurwitz_jet(q, Real(3) / 4, 0, digits).regular[0]);
        return pow(Real(4), s / 2) * 2 * pow(two_pi, -s) * gamma * zeta * L;
    }

    static std::vector<Q> points() {
        return {Q(1, 3), Q(1, 4), Q(1, 5), Q(2, 5), Q(1, 6), Q(1, 7), Q(2, 7), Q(3, 7), Q(1, 8), Q(3, 8),
                Q(1, 9), Q(2, 9), Q(4, 9), Q(3, 10), Q(-1, 3), Q(-2, 3), Q(-3, 4), Q(-5, 4), Q(-7, 3), Q(-5, 2)};
    }

    NumOutcome operator()(const NumericProvider& p, const Params&, const Settings&) const {
        NumOutcome o;
        unsigned wd = p.working_digits();
        for (auto& q : points()) {
            for (XiKind k : {XiKind::F, XiKind::Feta}) {
                std::string tag = k == XiKind::F ? "xiF" : "xiFeta";
                Real a = zv::detail::xi_at(k, q, 0, wd).second[0];
                Real b = zv::detail::xi_at(k, Q(1) - q, 0, wd).second[0];
                o.claim("functional equation " + tag + "(" + q.str() + ")", a, b, 1e-20);
            }
            Q x = Q(1) - q;  // factorization at the mirror point, away from the gamma poles
            o.claim("factorization xiE(" + x.str() + ")", xi_val(p, XiKind::E, x), xiE_direct(x, wd), 1e-20);
        }
        o.claim("xiF'(1/2)", p.xi_coeff(XiKind::F, Q(1, 2), 1), Real(0), 1e-20);
        o.claim("xiFeta'(1/2)", p.xi_coeff(XiKind::Feta, Q(1, 2), 1), Real(0), 1e-20);
        o.claim("ResF", p.xi_coeff(XiKind::F, Q(1), -1), Real(1), 1e-10);
        // Richardson limit of h xi_F(1+h), h = 2^-k
        const int levels = 12;
        std::vector<Real> t;
        for (int k = 1; k <= levels; ++k) {
            Q h(1, std::int64_t(1) << k);
            t.push_back(to_real(h) * zv::detail::xi_at(XiKind::F, Q(1) + h, 0, wd).second[0]);
        }
        for (int m = 1; m < levels; ++m) {
            Real f = pow(Real(2), m);
            for (int k = levels - 1; k >= m; --k) t[k] = (f * t[k] - t[k - 1]) / (f - 1);
        }
        o.claim("ResF by extrapolation", t.back(), Real(1), 1e-10);
        return o;
    }
};

}  // namespace checks

template <class Fn>
CheckDef make_def(std::string name, std::string citation, Space space) {
    CheckDef d;
    d.name = std::move(name);
    d.citation = std::move(citation);
    d.space = std::move(space);
    d.sym = [](const SymbolicProvider& p, const Params& a, const Settings& s) { return Fn{}(p, a, s); };
    d.num = [](const NumericProvider& p, const Params& a, const Settings& s) { return Fn{}(p, a, s); };
    return d;
}

inline const std::vector<CheckDef>& registry() {
    using detail::span;
    static const std::vector<CheckDef> defs = [] {
        auto r_from = [](int lo) {
            return [lo](char, const Params&, const Settings& s) { return span(lo, s.r_max); };
        };
        auto first_range = [](int nmax) {
            return Space{"rn",
                         [nmax](char k, const Params& a, const Settings& s) {
                             if (k == 'r') return span(1, s.r_max);
                             return span(2 * *a.r + 1, std::max(nmax, 2 * *a.r + 2));
                         },
                         [](const Params& a) { return *a.r >= 1 && *a.n >= 2 * *a.r + 1; }};
        };
        auto second_range = [](int rlo, std::optional<int> rmax) {
            return Space{"rn",
                         [rlo, rmax](char k, const Params& a, const Settings& s) {
                             if (k == 'r') return span(rlo, rmax ? *rmax : s.r_max);
                             return span(*a.r + 1, 2 * *a.r - 1);
                         },
                         [](const Params& a) { return *a.r >= 2 && *a.r + 1 <= *a.n && *a.n <= 2 * *a.r - 1; }};
        };
        auto r_only = [&](int lo) { return Space{"r", r_from(lo), [lo](const Params& a) { return *a.r >= lo; }}; };
        auto none = Space{"", nullptr, [](const Params&) { return true; }};

        std::vector<CheckDef> v;
        v.push_back(make_def<checks::Prop43>(
            "prop43", "first-term constant c(n,r), n >= 2r+1: closed product = recursion through c(n-1,r-1) = constant-term derivation",
            Space{"rn",
                  [](char k, const Params& a, const Settings& s) {
                      if (k == 'r') return span(1, s.r_max);
                      return span(2 * *a.r + 1, 10);
                  },
                  [](const Params& a) { return *a.r >= 1 && *a.n >= 2 * *a.r + 1; }}));
        v.push_back(make_def<checks::Prop45>("prop45", "boundary constant c_r (n = 2r): closed product = route through c(2r+1,r) = derivation",
                                             r_only(1)));
        v.push_back(make_def<checks::Prop46>(
            "prop46", "second-term-range constant d(n,r), r+1 <= n <= 2r-1: base and recursion re-derived from constant terms",
            second_range(2, std::nullopt)));
        v.push_back(make_def<checks::Prop47>(
            "prop47", "boundary second-term identity n = 2r-1: Siegel functional equation rewrite, H residue, E0 coefficient 2c_r",
            r_only(2)));
        v.push_back(make_def<checks::Thm48>(
            "thm48", "second-term identity for n = 2r-1-j by induction on j; E0 coefficient 2c_r, gamma_j recorded",
            Space{"rj",
                  [](char k, const Params& a, const Settings& s) {
                      if (k == 'r') return span(2, s.r_max);
                      return span(0, *a.r - 2);
                  },
                  [](const Params& a) { return *a.r >= 2 && *a.j >= 0 && *a.j <= *a.r - 2; }}));
        v.push_back(make_def<checks::Claim2>("claim2", "1 + beta_{2r-1,1}(-1/2) H^{(2r)}_{-1}(0) = 2", r_only(2)));
        v.push_back(make_def<checks::Prop51>("prop51", "first-term coefficient a(n,r) from phi_c(0), c(n,r), lambda(r/2), with the D_E power",
                                             first_range(10)));
        v.push_back(make_def<checks::Prop53>("prop53", "second-term coefficient b(n,r) from phi(0), d(n,r), lambda(r/2)",
                                             second_range(2, std::nullopt)));
        v.push_back(make_def<checks::Thm54>(
            "thm54", "weak second-term coefficient from the induction and the lambda normalization, using the telescoping product",
            second_range(2, std::nullopt)));
        v.push_back(make_def<checks::Appendix>(
            "appendix", "inversion sets of w1, w2; rank-one assembly of c1, c2 with cancelling discriminants; F, G, H as specializations",
            Space{"nr",
                  [](char k, const Params& a, const Settings&) {
                      if (k == 'n') return span(1, 8);
                      return span(1, *a.n);
                  },
                  [](const Params& a) { return 1 <= *a.r && *a.r <= *a.n; }}));
        v.push_back(make_def<checks::Telescope>("telescope", "prod_{i=n-r+1}^{r} xiE(i)/xiE(n-i+1) = 1, r <= 8",
                                                second_range(2, 8)));
        v.push_back(make_def<checks::Poles>(
            "poles", "pole-fact table against [s0 = r/2] + ord P_z - ord lambda; Siegel mirror under the functional equation",
            Space{"rn",
                  [](char k, const Params& a, const Settings&) {
                      if (k == 'r') return span(1, 8);
                      return span(*a.r, 2 * *a.r + 3);
                  },
                  [](const Params& a) { return 1 <= *a.r && *a.r <= *a.n; }}));
        v.push_back(make_def<checks::Partition>("partition", "extraction over all (exponent, log power) pairs partitions each constant term",
                                                r_only(1)));
        v.push_back(make_def<checks::RingLaws>("ring_laws", "Laurent ring laws on 1000 seeded random zeta products", none));
        CheckDef b;
        b.name = "backend";
        b.citation = "numeric backend: functional equations, xiE factorization, xiF'(1/2) = 0, residue 1 at s = 1";
        b.space = none;
        b.num = checks::Backend{};
        v.push_back(std::move(b));
        return v;
    }();
    return defs;
}

inline const CheckDef* find_check(const std::string& name) {
    for (auto& d : registry())
        if (d.name == name) return &d;
    return nullptr;
}

/// parameter sets for a check; explicit values pin a loop, fully pinned sets are kept even out of range
inline std::vector<Params> enumerate(const CheckDef& d, const Settings& s, const Params& pin) {
    std::vector<Params> out{Params{}};
    bool all_pinned = true;
    for (char k : d.space.keys) {
        std::vector<Params> next;
        for (auto& a : out) {
            std::vector<int> vals = pin.at(k) ? std::vector<int>{*pin.at(k)} : d.space.range(k, a, s);
            for (int v : vals) {
                Params b = a;
                b.at(k) = v;
                next.push_back(b);
            }
        }
        all_pinned = all_pinned && pin.at(k).has_value();
        out = std::move(next);
    }
    if (!all_pinned) std::erase_if(out, [&](const Params& a) { return !d.space.valid(a); });
    return out;
}

namespace detail {

template <class C>
std::string side(const Outcome<C>& o, bool left) {
    std::string s;
    for (auto& c : o.claims) s += (s.empty() ? "" : "; ") + c.label + ": " + CoeffTraits<C>::render(left ? c.lhs : c.rhs);
    if (o.claims.empty()) {
        for (auto& [l, ok] : o.conditions) s += (s.empty() ? "" : "; ") + l + (left ? (ok ? " holds" : " FAILS") : " holds");
    }
    if (!left)
        for (auto& n : o.notes) s += (s.empty() ? "" : "; ") + n;
    return s;
}

inline std::string failed_conditions(const std::vector<std::pair<std::string, bool>>& cs) {
    std::string s;
    for (auto& [l, ok] : cs)
        if (!ok) s += (s.empty() ? "" : "; ") + ("condition failed: " + l);
    return s;
}

struct SymVerdict {
    bool pass = true;
    std::string detail;
};

inline SymVerdict judge(const SymOutcome& o) {
    SymVerdict v;
    for (auto& c : o.claims)
        if (!(c.lhs == c.rhs)) {
            v.pass = false;
            v.detail += (v.detail.empty() ? "" : "; ") + c.label + ": lhs - rhs = " + (c.lhs - c.rhs).render();
        }
    std::string f = failed_conditions(o.conditions);
    if (!f.empty()) {
        v.pass = false;
        v.detail += (v.detail.empty() ? "" : "; ") + f;
    }
    return v;
}

struct NumVerdict {
    bool pass = true;
    Real abs_err = 0;
    std::string detail;
};

inline NumVerdict judge(const NumOutcome& o) {
    NumVerdict v;
    for (auto& c : o.claims) {
        Real e = abs(c.lhs - c.rhs);
        v.abs_err = max(v.abs_err, e);
        Real scale = max(Real(1), max(abs(c.lhs), abs(c.rhs)));
        if (!(e <= Real(c.tol) * scale)) {
            v.pass = false;
            v.detail += (v.detail.empty() ? "" : "; ") + c.label + ": |lhs - rhs| = " + fmt(e, 6);
        }
    }
    std::string f = failed_conditions(o.conditions);
    if (!f.empty()) {
        v.pass = false;
        v.detail += (v.detail.empty() ? "" : "; ") + f;
    }
    return v;
}

/// symbolic claims evaluated under the numeric binding against the numeric run
inline std::string disagreement(const SymOutcome& so, const NumOutcome& no, const NumericProvider& np) {
    if (so.claims.size() != no.claims.size()) return "symbolic and numeric runs produced different claims";
    std::string out;
    for (std::size_t i = 0; i < so.claims.size(); ++i) {
        for (int side = 0; side < 2; ++side) {
            const FieldElem& x = side ? so.claims[i].rhs : so.claims[i].lhs;
            const Real& y = side ? no.claims[i].rhs : no.claims[i].lhs;
            Real v = bind_eval(x, np).value;
            if (abs(v - y) > Real(1e-8) * max(abs(v), abs(y)) + Real(1e-25))
                out += (out.empty() ? "" : "; ") + so.claims[i].label + ": symbolic value " + fmt(v, 12) + " vs numeric " + fmt(y, 12);
        }
    }
    return out;
}

inline void add_facts(Report& r, const Trace& t) {
    for (auto& f : t.facts)
        if (std::find(r.facts_used.begin(), r.facts_used.end(), f) == r.facts_used.end()) r.facts_used.push_back(f);
    std::sort(r.facts_used.begin(), r.facts_used.end());
}

}  // namespace detail

/// run one check at one parameter set; never throws
inline Report run_check(const CheckDef& d, const Params& a, const Settings& s, const NumericProvider& np) {
    Report rep;
    rep.check = d.name;
    rep.params = a;
    RunMode mode = d.sym ? s.mode : RunMode::numeric;
    rep.mode = run_mode_name(mode);
    auto t0 = std::chrono::steady_clock::now();
    try {
        std::optional<SymOutcome> so;
        bool sym_ok = true;
        if (mode != RunMode::numeric) {
            SymbolicProvider sp;
            so = d.sym(sp, a, s);
            detail::add_facts(rep, so->trace);
            auto v = detail::judge(*so);
            rep.lhs = detail::side(*so, true);
            rep.rhs = detail::side(*so, false);
            sym_ok = v.pass;
            rep.detail = v.detail;
        }
        if (mode == RunMode::symbolic || !sym_ok) {
            rep.status = sym_ok ? "pass" : "fail";
        } else {
            PrecisionScope ps(np.working_digits());
            NumOutcome no = d.num(np, a, s);
            detail::add_facts(rep, no.trace);
            auto v = detail::judge(no);
            rep.abs_err = detail::to_double(v.abs_err);
            if (mode == RunMode::numeric) {
                rep.lhs = detail::side(no, true);
                rep.rhs = detail::side(no, false);
            }
            bool ok = v.pass;
            std::string msg = v.detail;
            if (so) {
                std::string dis = detail::disagreement(*so, no, np);
                if (!dis.empty()) {
                    ok = false;
                    msg += (msg.empty() ? "" : "; ") + dis;
                }
            }
            rep.status = ok ? "pass" : "fail";
            rep.detail = msg;
        }
    } catch (const FactUnknown& e) {
        rep.status = "error";
        rep.detail = e.what();
    } catch (const std::exception& e) {
        rep.status = "error";
        rep.detail = e.what();
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline Report run_check(const std::string& name, const Params& a, const Settings& s) {
    const CheckDef* d = find_check(name);
    if (!d) {
        Report rep;
        rep.check = name;
        rep.params = a;
        rep.mode = run_mode_name(s.mode);
        rep.status = "error";
        rep.detail = "unknown check " + name;
        return rep;
    }
    NumericProvider np(s.digits);
    return run_check(*d, a, s, np);
}

struct Job {
    const CheckDef* def;
    Params params;
};

/// runs jobs on a thread pool; reports come back in job order
inline std::vector<Report> run_all(const std::vector<Job>& jobs, const Settings& s, unsigned threads = 0) {
    NumericProvider np(s.digits);
    std::vector<Report> out(jobs.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, std::max<std::size_t>(1, jobs.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < jobs.size();) out[i] = run_check(*jobs[i].def, jobs[i].params, s, np);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return out;
}

inline std::vector<Job> plan(const std::vector<std::string>& names, const Settings& s, const Params& pin) {
    std::vector<Job> jobs;
    for (auto& d : registry()) {
        if (!names.empty() && std::find(names.begin(), names.end(), d.name) == names.end()) continue;
        for (auto& a : enumerate(d, s, pin)) jobs.push_back({&d, a});
    }
    return jobs;
}

}  // namespace zv::verify

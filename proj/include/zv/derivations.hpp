#pragma once

#include <string>
#include <vector>

#include "eisenstein.hpp"

namespace zv {

/// one rung of the second-term induction: n = 2r-j-1
template <class C>
struct SecondTermIdentity {
    int r = 0, j = 0, n = 0;
    LinComb<C> relation;  // X T1 + Y T2 - 2c_r S0 - gamma S1 = 0
    EisSymbol T1, T2, S0, S1;
    C X, Y, e0, gamma;
    std::vector<EisSymbol> stray;  // any further symbols that survived
};

template <class P>
typename P::Coeff X_closed(const P& p, int r, int j) {
    auto v = p.rational(1);
    for (int i = 0; i <= j; ++i) v = v * xi_val(p, XiKind::E, Q(r - i)) / xi_val(p, XiKind::E, Q(2 * r - i));
    return v;
}

template <class P>
typename P::Coeff Y_closed(const P& p, int r, int j) {
    auto v = p.rational(1);
    for (int i = 0; i <= j; ++i)
        v = v * xi_val(p, XiKind::E, Q(r - i)) * xi_val(p, XiKind::E, Q(-i)) /
            (xi_val(p, XiKind::Feta, Q(2 * r - 2 * i - 1)) * xi_val(p, XiKind::F, Q(2 * r - 2 * i)) *
             xi_val(p, XiKind::E, Q(2 * r - i)));
    return v;
}

template <class P>
SecondTermIdentity<typename P::Coeff> read_identity(const P& p, int r, int j, LinComb<typename P::Coeff> rel) {
    using C = typename P::Coeff;
    SecondTermIdentity<C> s;
    s.r = r;
    s.j = j;
    s.n = 2 * r - j - 1;
    int n = s.n;
    s.T1 = EisSymbol::make(n, r, -1, Q(r, 2));
    s.T2 = EisSymbol::make(n, n - r, 0, Q(n - r, 2));
    s.S0 = EisSymbol::make(n, n, 0, Q(2 * r - n, 2));
    s.S1 = EisSymbol::make(n, n, -1, Q(2 * r - n, 2));
    s.X = rel.coeff(s.T1);
    s.Y = rel.coeff(s.T2);
    s.e0 = -rel.coeff(s.S0);
    s.gamma = -rel.coeff(s.S1);
    C scale = CoeffTraits<C>::one();
    for (auto& sym : rel.support(scale))
        if (!(sym == s.T1 || sym == s.T2 || sym == s.S0 || sym == s.S1)) s.stray.push_back(sym);
    s.relation = std::move(rel);
    return s;
}

/// Induction from the boundary identity E^{(2r,r)}_{-1}(r/2) = c_r E^{(2r,2r)}_0(0).
/// Returns the identities for j = 0..jmax.
template <class P>
std::vector<SecondTermIdentity<typename P::Coeff>> second_term_chain(const P& p, int r, int jmax, Window w = {},
                                                                     const RewriteConfig& cfg = {}, Trace* tr = nullptr) {
    using C = typename P::Coeff;
    if (r < 2 || jmax < 0 || jmax > r - 2) throw RangeError("range: need r >= 2 and 0 <= j <= r-2");
    LinComb<C> rel;
    rel.add(EisSymbol::make(2 * r, r, -1, Q(r, 2), tr), p.rational(1));
    rel.add(EisSymbol::make(2 * r, 2 * r, 0, Q(0), tr), -c_r(p, r, cfg.mode));
    std::vector<SecondTermIdentity<C>> out;
    for (int j = 0; j <= jmax; ++j) {
        rel = derive_step(p, rel, Q(r), w, cfg, tr);
        out.push_back(read_identity(p, r, j, rel));
    }
    return out;
}

/// 1 + beta_{2r-1,1}(-1/2) H^{(2r)}_{-1}(0)
template <class P>
typename P::Coeff claim2_value(const P& p, int r) {
    auto b1 = coeff_at(p, beta_factor(2 * r - 1), Q(-1, 2), 1);
    auto h = coeff_at(p, H_factor(2 * r), Q(0), -1);
    return p.rational(1) + b1 * h;
}

/// d_{n,r} for n = 2r-1 down to nmin, re-derived from the vanishing of E^{(2r,r)}_{-2}(r/2)
template <class C>
struct DChain {
    std::vector<int> n;
    std::vector<C> d;
    std::vector<std::vector<EisSymbol>> stray;
};

template <class P>
DChain<typename P::Coeff> derive_d_chain(const P& p, int r, int nmin, Window w = {}, Mode mode = Mode::recursive,
                                         Trace* tr = nullptr) {
    using C = typename P::Coeff;
    if (r < 2 || nmin < r + 1 || nmin > 2 * r - 1) throw RangeError("range: need r+1 <= n <= 2r-1");
    RewriteConfig cfg;
    cfg.mode = mode;
    cfg.second_range = false;
    DChain<C> out;
    auto solve = [&](const LinComb<C>& rel, int n) {
        EisSymbol T = EisSymbol::make(n, r, -2, Q(r, 2), tr);
        EisSymbol B = EisSymbol::make(n, n, -1, Q(2 * r - n, 2), tr);
        std::vector<EisSymbol> stray;
        for (auto& s : rel.support(CoeffTraits<C>::one()))
            if (!(s == T || s == B)) stray.push_back(s);
        C d = -rel.coeff(B) / rel.coeff(T);
        out.n.push_back(n);
        out.d.push_back(d);
        out.stray.push_back(stray);
        return std::make_pair(T, B);
    };
    auto base = extract(vanishing_relation(p, 2 * r, r, -2, Q(r, 2), w, tr), Q(r), 0);
    base = apply_first_term_rewrites(p, rewrite_negative_siegel(p, base, w, tr), cfg, tr);
    auto [T, B] = solve(base, 2 * r - 1);
    for (int n = 2 * r - 1; n > nmin; --n) {
        LinComb<C> rel;
        rel.add(T, p.rational(1));
        rel.add(B, -out.d.back());
        auto next = derive_step(p, rel, Q(r), w, cfg, tr);
        std::tie(T, B) = solve(next, n - 1);
    }
    return out;
}

/// c_r from the first-term identity for (2r+1, r), compared at ||a||^r
template <class P>
typename P::Coeff derive_c_r(const P& p, int r, Window w = {}, Mode mode = Mode::recursive, Trace* tr = nullptr,
                             std::vector<EisSymbol>* stray = nullptr) {
    using C = typename P::Coeff;
    RewriteConfig cfg;
    cfg.mode = mode;
    cfg.boundary = false;
    LinComb<C> rel;
    rel.add(EisSymbol::make(2 * r + 1, r, -1, Q(r, 2), tr), p.rational(1));
    rel.add(EisSymbol::make(2 * r + 1, 2 * r + 1, -1, Q(1, 2), tr), -c_nr(p, 2 * r + 1, r, mode));
    auto out = derive_step(p, rel, Q(r), w, cfg, tr);
    EisSymbol T = EisSymbol::make(2 * r, r, -1, Q(r, 2), tr);
    EisSymbol Z = EisSymbol::make(2 * r, 2 * r, 0, Q(0), tr);
    if (stray)
        for (auto& s : out.support(CoeffTraits<C>::one()))
            if (!(s == T || s == Z)) stray->push_back(s);
    return -out.coeff(Z) / out.coeff(T);
}

/// c_{n,r} by comparing the ||a||^{n-r} parts of both sides of the first-term identity
template <class P>
typename P::Coeff derive_c_nr(const P& p, int n, int r, Window w = {}, Mode mode = Mode::recursive, Trace* tr = nullptr,
                              std::vector<EisSymbol>* stray = nullptr) {
    using C = typename P::Coeff;
    if (r < 1 || n < 2 * r + 1) throw RangeError("range: need n >= 2r+1");
    RewriteConfig cfg;
    cfg.mode = mode;
    cfg.siegel_residue = true;
    Q e(n - r);
    auto L = extract(constant_term(p, n, r, -1, Q(r, 2), w, tr), e, 0);
    auto R = extract(constant_term(p, n, n, -1, Q(n - 2 * r, 2), w, tr), e, 0);
    L = apply_first_term_rewrites(p, rewrite_negative_siegel(p, L, w, tr), cfg, tr);
    R = apply_first_term_rewrites(p, rewrite_negative_siegel(p, R, w, tr), cfg, tr);
    EisSymbol B = r == 1 ? EisSymbol::unit() : EisSymbol::make(n - 1, n - 1, -1, Q(n - 2 * r + 1, 2), tr);
    if (stray) {
        for (auto& s : L.support(CoeffTraits<C>::one()))
            if (!(s == B)) stray->push_back(s);
        for (auto& s : R.support(CoeffTraits<C>::one()))
            if (!(s == B)) stray->push_back(s);
    }
    return L.coeff(B) / R.coeff(B);
}

}  // namespace zv

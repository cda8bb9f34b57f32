#pragma once

#include <set>
#include <string>
#include <vector>

#include "factors.hpp"

namespace zv::gk {

enum class Form { minus, plus, twice };  // x_i - x_j, x_i + x_j, 2 x_k
enum class Weyl { w1, w2 };

struct Root {
    Form form = Form::minus;
    int i = 1;
    int j = 0;  // unused for twice

    auto operator<=>(const Root&) const = default;
    bool operator==(const Root&) const = default;

    static Root minus(int i, int j) { return {Form::minus, i, j}; }
    static Root plus(int i, int j) { return {Form::plus, i, j}; }
    static Root twice(int k) { return {Form::twice, k, 0}; }

    /// coefficient vector on x_1..x_n
    std::vector<int> coords(int n) const {
        std::vector<int> v(n, 0);
        if (form == Form::twice) {
            v[i - 1] = 2;
        } else {
            v[i - 1] += 1;
            v[j - 1] += form == Form::minus ? -1 : 1;
        }
        return v;
    }

    std::string render() const {
        auto x = [](int k) { return "x" + std::to_string(k); };
        switch (form) {
            case Form::minus: return x(i) + "-" + x(j);
            case Form::plus: return x(i) + "+" + x(j);
            default: return "2" + x(i);
        }
    }
};

inline void check_nr(int n, int r) {
    if (!(1 <= r && r <= n)) throw RangeError("range: need 1 <= r <= n");
}

/// all positive roots of the C_n system
inline std::vector<Root> positive_roots(int n) {
    std::vector<Root> out;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            out.push_back(Root::minus(i, j));
            out.push_back(Root::plus(i, j));
        }
    for (int k = 1; k <= n; ++k) out.push_back(Root::twice(k));
    return out;
}

/// signed permutation of the characters: x_i -> sign[i] x_{perm[i]} (1-based)
struct SignedPerm {
    std::vector<int> perm;
    std::vector<int> sign;

    static SignedPerm identity(int n) {
        SignedPerm w;
        for (int i = 0; i <= n; ++i) {
            w.perm.push_back(i);
            w.sign.push_back(1);
        }
        return w;
    }

    std::vector<int> apply(const std::vector<int>& v) const {
        std::vector<int> out(v.size(), 0);
        for (std::size_t i = 0; i < v.size(); ++i) out[perm[i + 1] - 1] += sign[i + 1] * v[i];
        return out;
    }

    /// (this after o)
    SignedPerm after(const SignedPerm& o) const {
        SignedPerm w = identity(int(perm.size()) - 1);
        for (std::size_t i = 1; i < perm.size(); ++i) {
            w.perm[i] = perm[o.perm[i]];
            w.sign[i] = o.sign[i] * sign[o.perm[i]];
        }
        return w;
    }
};

/// inverse of the Weyl element w' w_k, acting on characters
inline SignedPerm weyl_inverse(Weyl which, int n, int r) {
    check_nr(n, r);
    SignedPerm cyc = SignedPerm::identity(n);  // inverse of w': x_i -> x_{i+1}, x_r -> x_1
    for (int i = 1; i <= r; ++i) cyc.perm[i] = i < r ? i + 1 : 1;
    SignedPerm w = SignedPerm::identity(n);
    if (which == Weyl::w1) {
        if (r >= n) throw RangeError("range: w1 needs r < n");
        w.perm[1] = r + 1;
        w.perm[r + 1] = 1;
    } else {
        w.sign[1] = -1;
    }
    return w.after(cyc);
}

inline bool is_positive(const std::vector<int>& v) {
    for (int c : v)
        if (c != 0) return c > 0;
    return false;
}

/// {a in Sigma+ : w^{-1} a in Sigma-} by direct enumeration
inline std::set<Root> sigma_plus_enumerated(Weyl which, int n, int r) {
    SignedPerm winv = weyl_inverse(which, n, r);
    std::set<Root> out;
    for (auto& a : positive_roots(n))
        if (!is_positive(winv.apply(a.coords(n)))) out.insert(a);
    return out;
}

inline std::set<Root> sigma_plus_closed(Weyl which, int n, int r) {
    check_nr(n, r);
    std::set<Root> out;
    if (which == Weyl::w1) {
        if (r >= n) throw RangeError("range: w1 needs r < n");
        for (int i = 1; i <= r; ++i) out.insert(Root::minus(i, r + 1));
        return out;
    }
    for (int i = 1; i < r; ++i) out.insert(Root::plus(i, r));
    out.insert(Root::twice(r));
    for (int j = r + 1; j <= n; ++j) {
        out.insert(Root::plus(r, j));
        out.insert(Root::minus(r, j));
    }
    return out;
}

/// exponent of the inducing character on a_i
inline Affine torus_exponent(int n, int r, int i) {
    check_nr(n, r);
    if (i < 1 || i > n) throw RangeError("range: torus index out of bounds");
    if (i <= r) return Affine{Q(i) - Q(r + 1, 2), Q(1)};
    return Affine{Q(i - n) - Q(1, 2), Q(0)};
}

/// pairing of the inducing character with the coroot of a
inline Affine coroot_exponent(const Root& a, int n, int r) {
    switch (a.form) {
        case Form::minus: return torus_exponent(n, r, a.i) - torus_exponent(n, r, a.j);
        case Form::plus: return torus_exponent(n, r, a.i) + torus_exponent(n, r, a.j);
        default: return torus_exponent(n, r, a.i) * Q(2);
    }
}

/// unnormalized zeta_K(w) = D_K^{-w/2} xi_K(w)
inline ZetaExpr zeta_K(bool over_E, const Affine& w, int exp = 1) {
    ZetaExpr z = ZetaExpr::xi(over_E ? XiKind::E : XiKind::F, w, exp);
    Affine d = w * Q(-exp, 2);
    return z * (over_E ? ZetaExpr::de(d) : ZetaExpr::df(d));
}

/// global rank-one factor vol * zeta(l)/zeta(l+1), in xi form with discriminants kept
inline ZetaExpr rank_one_factor(const Root& a, int n, int r) {
    auto s1 = sigma_plus_closed(Weyl::w2, n, r);
    bool in1 = r < n && sigma_plus_closed(Weyl::w1, n, r).count(a);
    if (!in1 && !s1.count(a)) throw RangeError("root " + a.render() + " is not in either inversion set");
    bool over_E = a.form != Form::twice;
    Affine l = coroot_exponent(a, n, r);
    ZetaExpr vol = over_E ? ZetaExpr::de(Affine{Q(-1, 2), Q(0)}) : ZetaExpr::df(Affine{Q(-1, 2), Q(0)});
    return vol * zeta_K(over_E, l) * zeta_K(over_E, l + Affine{Q(1), Q(0)}, -1);
}

struct Assembly {
    ZetaExpr product;
    bool discriminants_cancel = false;
};

inline Assembly assemble(Weyl which, int n, int r) {
    Assembly a;
    for (auto& root : sigma_plus_enumerated(which, n, r)) a.product = a.product * rank_one_factor(root, n, r);
    ZetaExpr nf = a.product.normalized();
    a.discriminants_cancel = nf.de_exp.is_zero() && nf.df_exp.is_zero();
    return a;
}

inline ZetaExpr c1_closed(int n, int r) {
    if (!(1 <= r && r < n)) throw RangeError("range: c1 needs 1 <= r < n");
    return ZetaExpr::xiE(Affine{Q(n) - Q(3 * r, 2), Q(1)}) / ZetaExpr::xiE(Affine{Q(n) - Q(r, 2), Q(1)});
}

inline ZetaExpr c2_closed(int n, int r) {
    check_nr(n, r);
    return ZetaExpr::xiE(Affine{Q(0), Q(2)}) / ZetaExpr::xiE(Affine{Q(r - 1), Q(2)}) * ZetaExpr::xiF(Affine{Q(r - 1), Q(2)}) /
           ZetaExpr::xiF(Affine{Q(r), Q(2)}) * ZetaExpr::xiE(Affine{Q(3 * r, 2) - Q(n), Q(1)}) /
           ZetaExpr::xiE(Affine{Q(n) - Q(r, 2), Q(1)});
}

}  // namespace zv::gk

#pragma once

#include <string>

#include "factors.hpp"
#include "numeric_zeta.hpp"

namespace zv {

enum class Mode { closed, recursive };

inline const char* mode_name(Mode m) { return m == Mode::closed ? "closed" : "recursive"; }

namespace cst {

template <class P>
typename P::Coeff E(const P& p, const Q& q) { return xi_val(p, XiKind::E, q); }
template <class P>
typename P::Coeff F(const P& p, const Q& q, int eta = 0) { return xi_eta_val(p, q, eta); }
template <class P>
typename P::Coeff one(const P& p) { return p.rational(1); }
template <class P>
typename P::Coeff rat(const P& p, const mpq_class& c) { return p.rational(c); }
template <class P>
typename P::Coeff DE(const P& p, const Q& e) { return p.disc_pow(GenKind::DE, e); }

inline void need(bool ok, const std::string& what) {
    if (!ok) throw RangeError("range: " + what);
}

}  // namespace cst

/// residue of the Siegel series at its rightmost pole n/2
template <class P>
typename P::Coeff siegel_residue(const P& p, int n) {
    using namespace cst;
    need(n >= 1, "need n >= 1");
    auto v = rat(p, mpq_class(1, 2));
    for (int i = 0; i < n; ++i) v = v * F(p, Q(i + 1), i) / F(p, Q(2 * n - i), i);
    return v;
}

template <class P>
typename P::Coeff c_nr_closed(const P& p, int n, int r) {
    using namespace cst;
    need(r >= 1 && n >= 2 * r + 1, "need n >= 2r+1");
    auto v = one(p);
    for (int i = 1; i <= r; ++i) v = v * F(p, Q(i), i - 1) / F(p, Q(r + i), r + i);
    for (int i = 1; i <= r; ++i) v = v * E(p, Q(n - 2 * r + i)) / E(p, Q(n - i + 1));
    for (int i = 0; i <= n - r - 1; ++i) v = v * F(p, Q(2 * n - 2 * r - i), i) / F(p, Q(i + 1), i);
    return v;
}

/// base of the recursion: c_{n,1}
template <class P>
typename P::Coeff c_n1(const P& p, int n) {
    using namespace cst;
    need(n >= 3, "need n >= 3");
    auto v = E(p, Q(n - 1)) / E(p, Q(n)) * F(p, Q(1)) / F(p, Q(2));
    for (int i = 0; i <= n - 2; ++i) v = v * F(p, Q(2 * n - 2 - i), i) / F(p, Q(i + 1), i);
    return v;
}

/// c_{n,r} = c_{n-1,r-1} * G^{(n,r)}(r/2), with the G value as displayed
template <class P>
typename P::Coeff c_nr_recursive(const P& p, int n, int r) {
    using namespace cst;
    need(r >= 1 && n >= 2 * r + 1, "need n >= 2r+1");
    if (r == 1) return c_n1(p, n);
    auto g = E(p, Q(r)) / (F(p, Q(2 * r - 1), 1) * F(p, Q(2 * r))) * E(p, Q(n - 2 * r + 1)) / E(p, Q(n));
    return c_nr_recursive(p, n - 1, r - 1) * g;
}

template <class P>
typename P::Coeff c_nr(const P& p, int n, int r, Mode m) {
    return m == Mode::closed ? c_nr_closed(p, n, r) : c_nr_recursive(p, n, r);
}

template <class P>
typename P::Coeff c_r_closed(const P& p, int r) {
    using namespace cst;
    need(r >= 1, "need r >= 1");
    auto v = rat(p, mpq_class(1, 2));
    for (int i = 1; i <= r; ++i) v = v * E(p, Q(i)) / E(p, Q(r + i));
    return v;
}

/// c_r = c_{2r+1,r}/2 * xi_E(1) xi_F(2r+1) / (xi_E(r+1) xi_F(2r+2))
template <class P>
typename P::Coeff c_r_recursive(const P& p, int r, Mode inner = Mode::recursive) {
    using namespace cst;
    need(r >= 1, "need r >= 1");
    return c_nr(p, 2 * r + 1, r, inner) * rat(p, mpq_class(1, 2)) * E(p, Q(1)) * F(p, Q(2 * r + 1)) /
           (E(p, Q(r + 1)) * F(p, Q(2 * r + 2)));
}

template <class P>
typename P::Coeff c_r(const P& p, int r, Mode m) {
    return m == Mode::closed ? c_r_closed(p, r) : c_r_recursive(p, r);
}

template <class P>
typename P::Coeff d_base(const P& p, int r, Mode m) {
    using namespace cst;
    need(r >= 2, "need r >= 2");
    return c_nr(p, 2 * r - 1, r - 1, m) * E(p, Q(1)) * F(p, Q(2 * r - 1)) / (E(p, Q(2 * r - 1)) * F(p, Q(2 * r)));
}

/// recursive: step down from n = 2r-1 one rank at a time; closed: the unrolled product
template <class P>
typename P::Coeff d_nr(const P& p, int n, int r, Mode m) {
    using namespace cst;
    need(r >= 2 && r + 1 <= n && n <= 2 * r - 1, "need r+1 <= n <= 2r-1");
    if (m == Mode::recursive) {
        auto d = d_base(p, r, m);
        for (int k = 2 * r - 1; k > n; --k) d = d * E(p, Q(k)) / E(p, Q(k - r));
        return d;
    }
    auto num = one(p), den = one(p);
    for (int k = n + 1; k <= 2 * r - 1; ++k) {
        num = num * E(p, Q(k));
        den = den * E(p, Q(k - r));
    }
    return d_base(p, r, m) * num / den;
}

/// phi^0(0) for the spherical Schwartz function on V^n with dim V = 2r
template <class P>
typename P::Coeff phi0(const P& p, int n, int r) {
    return cst::DE(p, Q(-r * n, 2));
}

/// phi^0_c(0) for the complementary space of dimension 2(n-r)
template <class P>
typename P::Coeff phi0_c(const P& p, int n, int r) {
    return cst::DE(p, Q(-n * (n - r), 2));
}

/// lambda_{n,r} at its own distinguished point r/2, read off the Laurent expansion
template <class P>
typename P::Coeff lambda_at_rho(const P& p, int n, int r, int d = 0) {
    return coeff_at(p, lambda_factor(n, r), Q(r, 2), d);
}

/// |D_E|^{-rn/2} prod xi_E(n-i+1)/xi_E(i)
template <class P>
typename P::Coeff lambda_rho_display(const P& p, int n, int r) {
    using namespace cst;
    auto v = DE(p, Q(-r * n, 2));
    for (int i = 1; i <= r; ++i) v = v * E(p, Q(n - i + 1)) / E(p, Q(i));
    return v;
}

template <class P>
typename P::Coeff a_nr_closed(const P& p, int n, int r) {
    using namespace cst;
    need(r >= 1 && n >= 2 * r + 1, "need n >= 2r+1");
    auto v = DE(p, Q(n * (2 * r - n), 2));
    for (int i = 0; i <= n - 1; ++i) v = v * F(p, Q(i + 1 - 2 * r), i) / F(p, Q(2 * n - 2 * r - i), i);
    return v;
}

/// phi^0_c(0) c_{n,r}^{-1} / lambda_{n,r}(r/2)
template <class P>
typename P::Coeff a_nr_derived(const P& p, int n, int r, Mode m) {
    cst::need(r >= 1 && n >= 2 * r + 1, "need n >= 2r+1");
    return phi0_c(p, n, r) / (c_nr(p, n, r, m) * lambda_at_rho(p, n, r));
}

template <class P>
typename P::Coeff b_nr_closed(const P& p, int n, int r, Mode m) {
    using namespace cst;
    auto v = one(p) / d_nr(p, n, r, m);
    for (int i = 1; i <= r; ++i) v = v * E(p, Q(i)) / E(p, Q(n - i + 1));
    return v;
}

/// phi^0(0) d_{n,r}^{-1} / lambda_{n,r}(r/2)
template <class P>
typename P::Coeff b_nr_derived(const P& p, int n, int r, Mode m) {
    return phi0(p, n, r) / (d_nr(p, n, r, m) * lambda_at_rho(p, n, r));
}

template <class P>
typename P::Coeff weak2_closed(const P& p, int n, int r) {
    using namespace cst;
    need(r >= 2 && r + 1 <= n && n <= 2 * r - 1, "need r+1 <= n <= 2r-1");
    auto v = DE(p, Q(n * (n - 2 * r), 2));
    for (int i = 0; i <= 2 * r - n - 1; ++i) v = v * E(p, Q(-i)) / (F(p, Q(2 * r - 2 * i - 1), 1) * F(p, Q(2 * r - 2 * i)));
    return v;
}

/// weak2 from the coefficients X (of E^{(n,r)}_{-1}) and Y (of E^{(n,n-r)}_0)
template <class P>
typename P::Coeff weak2_from(const P& p, int n, int r, const typename P::Coeff& X, const typename P::Coeff& Y) {
    return lambda_at_rho(p, n, r) * Y / (lambda_at_rho(p, n, n - r) * X);
}

/// prod_{i=n-r+1}^{r} xi_E(i)/xi_E(n-i+1)
template <class P>
typename P::Coeff telescope(const P& p, int n, int r) {
    using namespace cst;
    need(r >= 1 && r < n && n <= 2 * r - 1, "need r+1 <= n <= 2r-1");
    auto v = one(p);
    for (int i = n - r + 1; i <= r; ++i) v = v * E(p, Q(i)) / E(p, Q(n - i + 1));
    return v;
}

struct LocalFactor {
    bool exact = false;
    mpq_class value;
    double approx = 0;
};

/// unramified local factor prod_i L(2s+n-i, eta^i) with eta = +1 (split) or -1 (inert)
inline LocalFactor d_n_unramified(int n, const Q& s, long q, bool split) {
    if (n < 1 || q < 2) throw RangeError("range: need n >= 1 and q >= 2");
    LocalFactor out;
    out.exact = (Q(2) * s).is_integer();
    out.value = 1;
    long double approx = 1;
    for (int i = 0; i < n; ++i) {
        Q x = Q(2) * s + Q(n - i);
        int eps = (split || i % 2 == 0) ? 1 : -1;
        if (x.is_zero() && eps == 1) throw RangeError("pole of the local factor at i = " + std::to_string(i));
        approx /= 1.0L - eps * std::pow((long double)q, -(long double)x.to_double());
        if (out.exact) {
            std::int64_t e = x.num();
            mpz_class qe;
            mpz_ui_pow_ui(qe.get_mpz_t(), (unsigned long)q, (unsigned long)(e < 0 ? -e : e));
            mpq_class t = e >= 0 ? mpq_class(1, 1) / mpq_class(qe) : mpq_class(qe);
            out.value /= 1 - eps * t;
        }
    }
    out.approx = (double)approx;
    if (out.exact) out.value.canonicalize();
    return out;
}

}  // namespace zv

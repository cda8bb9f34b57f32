#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "laurent.hpp"

namespace zv {

using Real = boost::multiprecision::mpfr_float;

class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// MPFR default precision is process-global in this Boost; every numeric section
/// holds this lock while it runs at its precision.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits) : lock_(mutex()), saved_(Real::default_precision()) {
        Real::default_precision(digits);
    }
    ~PrecisionScope() { Real::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    static std::recursive_mutex& mutex() {
        static std::recursive_mutex m;
        return m;
    }
    std::unique_lock<std::recursive_mutex> lock_;
    unsigned saved_;
};

template <>
struct CoeffTraits<Real> {
    static Real zero() { return Real(0); }
    static Real one() { return Real(1); }
    static Real from_mpq(const mpq_class& q) {
        Real r;
        mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static bool is_zero(const Real& x) { return x == 0; }
    /// below the working precision, minus a margin of 20 digits
    static bool negligible(const Real& x, const Real& scale) {
        Real s = abs(scale) > 1 ? Real(abs(scale)) : Real(1);
        return abs(x) <= s * pow(Real(10), -int(Real::default_precision()) + 20);
    }
    static std::string render(const Real& x);
};

inline Real to_real(const mpq_class& q) { return CoeffTraits<Real>::from_mpq(q); }
inline Real to_real(const Q& q) { return to_real(q.to_mpq()); }

inline Real real_pi() {
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

inline std::string fmt(const Real& x, int digits = 25) {
    return x.str(digits, std::ios_base::scientific);
}

inline std::string CoeffTraits<Real>::render(const Real& x) { return fmt(x, 20); }

namespace detail {

/// exact B_{2k}, k = 0..n-1
inline std::vector<mpq_class> bernoulli_even(std::size_t n) {
    static std::mutex m;
    static std::vector<mpq_class> b2;
    std::lock_guard<std::mutex> g(m);
    if (b2.size() >= n) return b2;
    // B_m from the standard recurrence sum_{j=0}^{m} C(m+1,j) B_j = 0
    std::size_t top = 2 * n + 2;
    std::vector<mpq_class> b(top + 1);
    b[0] = 1;
    for (std::size_t mm = 1; mm <= top; ++mm) {
        mpz_class c = 1;  // C(mm+1, 0)
        mpq_class s = 0;
        for (std::size_t j = 0; j < mm; ++j) {
            s += mpq_class(c) * b[j];
            c = c * mpz_class((unsigned long)(mm + 1 - j)) / mpz_class((unsigned long)(j + 1));
        }
        b[mm] = -s / mpq_class(mpz_class((unsigned long)(mm + 1)));
    }
    b2.clear();
    for (std::size_t k = 0; k <= top / 2; ++k) b2.push_back(b[2 * k]);
    return b2;
}

using Jet = std::vector<Real>;

inline Jet jet_const(const Real& c, int K) {
    Jet j(K + 1, Real(0));
    j[0] = c;
    return j;
}

inline Jet jet_lin(const Real& c0, const Real& c1, int K) {
    Jet j = jet_const(c0, K);
    if (K >= 1) j[1] = c1;
    return j;
}

inline Jet operator*(const Jet& a, const Jet& b) {
    int K = int(a.size()) - 1;
    Jet r(K + 1, Real(0));
    for (int i = 0; i <= K; ++i)
        for (int j = 0; i + j <= K; ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline Jet operator+(Jet a, const Jet& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline Jet operator-(Jet a, const Jet& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline Jet scale(Jet a, const Real& k) {
    for (auto& x : a) x *= k;
    return a;
}

inline Jet jet_inv(const Jet& a) {
    int K = int(a.size()) - 1;
    Jet g(K + 1, Real(0));
    Real inv0 = 1 / a[0];
    g[0] = inv0;
    for (int n = 1; n <= K; ++n) {
        Real s = 0;
        for (int k = 1; k <= n; ++k) s += a[k] * g[n - k];
        g[n] = -s * inv0;
    }
    return g;
}

inline Jet jet_exp(const Jet& a) {
    int K = int(a.size()) - 1;
    Jet g(K + 1, Real(0));
    g[0] = exp(a[0]);
    for (int n = 1; n <= K; ++n) {
        Real s = 0;
        for (int k = 1; k <= n; ++k) s += k * a[k] * g[n - k];
        g[n] = s / n;
    }
    return g;
}

inline Jet jet_log(const Jet& a) {
    int K = int(a.size()) - 1;
    Jet h(K + 1, Real(0));
    h[0] = log(a[0]);
    for (int n = 1; n <= K; ++n) {
        Real s = 0;
        for (int k = 1; k < n; ++k) s += k * h[k] * a[n - k];
        h[n] = (a[n] - s / n) / a[0];
    }
    return h;
}

/// x^{-(s0+u)} as a jet in u
inline Jet jet_pow_neg(const Real& x, const Real& s0, int K) {
    Real L = log(x);
    Jet j(K + 1, Real(0));
    j[0] = pow(x, -s0);
    for (int n = 1; n <= K; ++n) j[n] = j[n - 1] * (-L) / n;
    return j;
}

struct Tuning {
    int terms;       // Bernoulli terms
    int shift;       // direct summation length
};

inline Tuning tuning(unsigned digits) {
    int m = int(std::ceil(digits / 1.5)) + 8;
    return {m, 2 * m + 20};
}

/// Gamma(z0 + slope*u) as a jet; z0 must avoid the poles of Gamma
inline Jet gamma_jet(const Real& z0, const Real& slope, int K, unsigned digits) {
    Tuning t = tuning(digits);
    int ns = t.terms + 10;
    const auto b = bernoulli_even(t.terms + 1);
    Jet prod = jet_const(Real(1), K);
    for (int j = 0; j < ns; ++j) prod = prod * jet_lin(z0 + j, slope, K);
    Jet Z = jet_lin(z0 + ns, slope, K);
    Jet lz = jet_log(Z);
    Jet res = (Z - jet_const(Real(0.5), K)) * lz - Z;
    res[0] += log(2 * real_pi()) / 2;
    Jet iz = jet_inv(Z);
    Jet iz2 = iz * iz;
    Jet pw = iz;
    for (int k = 1; k <= t.terms; ++k) {
        Real c = to_real(b[k] / mpq_class(2 * k * (2 * k - 1)));
        res = res + scale(pw, c);
        pw = pw * iz2;
    }
    return jet_exp(res) * jet_inv(prod);
}

/// Hurwitz zeta(s, a) near s0 = q: residue (nonzero only at q = 1) and regular jet
struct PoleJet {
    Real residue;
    Jet regular;
};

inline PoleJet hurwitz_jet(const Q& q, const Real& a, int K, unsigned digits) {
    Tuning t = tuning(digits);
    const auto b = bernoulli_even(t.terms + 1);
    Real s0 = to_real(q);
    Jet sum = jet_const(Real(0), K);
    for (int n = 0; n < t.shift; ++n) sum = sum + jet_pow_neg(a + n, s0, K);
    Real x = a + t.shift;
    Jet X = jet_pow_neg(x, s0, K);
    PoleJet out{Real(0), sum};
    // x^{1-s}/(s-1)
    if (q == Q(1)) {
        out.residue = 1;
        Real L = log(x);
        Real term = 1;
        for (int j = 0; j <= K; ++j) {
            term = term * (-L) / (j + 1);
            out.regular[j] += term;
        }
    } else {
        Jet num = scale(X, x);
        out.regular = out.regular + num * jet_inv(jet_lin(s0 - 1, Real(1), K));
    }
    out.regular = out.regular + scale(X, Real(0.5));
    // Euler-Maclaurin corrections B_{2k}/(2k)! (s)_{2k-1} x^{-s-2k+1}
    Jet poch = jet_lin(s0, Real(1), K);
    Jet acc = jet_const(Real(0), K);
    Real xinv2 = 1 / (x * x);
    Real xpow = 1 / x;
    mpq_class fact = 2;  // (2k)!
    for (int k = 1; k <= t.terms; ++k) {
        Real c = to_real(b[k] / fact) * xpow;
        acc = acc + scale(poch, c);
        poch = poch * jet_lin(s0 + 2 * k - 1, Real(1), K) * jet_lin(s0 + 2 * k, Real(1), K);
        xpow *= xinv2;
        fact *= mpq_class((2 * k + 1) * (2 * k + 2));
    }
    out.regular = out.regular + X * acc;
    return out;
}

/// Laurent coefficients (orders lo..K) of xi at q; q must avoid 0 and the
/// trivial-zero/Gamma-pole points. Callers normally pass canonical q >= 1/2.
inline std::pair<int, std::vector<Real>> xi_at(XiKind kind, const Q& q, int K, unsigned digits) {
    Real s0 = to_real(q);
    Real pi = real_pi();
    bool pole = kind == XiKind::F && q == Q(1);
    int KA = K + 1;
    Jet A, Z;
    Real residue = 0;
    if (kind == XiKind::F) {
        // pi^{-s/2} Gamma(s/2)
        Jet e = jet_lin(-s0 / 2 * log(pi), -log(pi) / 2, KA);
        A = jet_exp(e) * gamma_jet(s0 / 2, Real(0.5), KA, digits);
        PoleJet z = hurwitz_jet(q, Real(1), KA, digits);
        residue = z.residue;
        Z = z.regular;
    } else {
        // 2^{-s} pi^{-(s+1)/2} Gamma((s+1)/2) (zeta(s,1/4) - zeta(s,3/4))
        Jet e = jet_lin(-s0 * log(Real(2)) - (s0 + 1) / 2 * log(pi), -log(Real(2)) - log(pi) / 2, KA);
        A = jet_exp(e) * gamma_jet((s0 + 1) / 2, Real(0.5), KA, digits);
        PoleJet z1 = hurwitz_jet(q, Real(1) / 4, KA, digits);
        PoleJet z3 = hurwitz_jet(q, Real(3) / 4, KA, digits);
        Z = z1.regular - z3.regular;
    }
    Jet AZ = A * Z;
    std::vector<Real> c;
    if (pole) {
        c.push_back(A[0] * residue);
        for (int k = 0; k <= K; ++k) c.push_back(AZ[k] + A[k + 1] * residue);
        return {-1, c};
    }
    for (int k = 0; k <= K; ++k) c.push_back(AZ[k]);
    return {0, c};
}

}  // namespace detail

/// Laurent coefficients of xi_kind at any rational q, orders lo..k_max, with an
/// error estimate from re-evaluation at higher precision.
struct NumericLaurent {
    int lo = 0;
    std::vector<Real> c;
    std::vector<Real> err;
};

inline NumericLaurent xi_laurent_numeric(XiKind kind, const Q& q, int k_max, unsigned digits) {
    if (digits < 15) throw PrecisionError("precision below 15 digits");
    if (kind == XiKind::E) throw AlgebraError("xi_E is evaluated as the F * Feta composite");
    Q qc = q < Q(1, 2) ? Q(1) - q : q;
    bool reflect = q < Q(1, 2);
    unsigned work = digits + 15;
    std::pair<int, std::vector<Real>> hi_res;
    {
        PrecisionScope ps(work + 15);
        hi_res = detail::xi_at(kind, qc, k_max, work + 15);
    }
    PrecisionScope ps(work);
    auto res = detail::xi_at(kind, qc, k_max, work);
    NumericLaurent out;
    out.lo = res.first;
    Real tol = pow(Real(10), -int(digits));
    for (std::size_t i = 0; i < res.second.size(); ++i) {
        int k = out.lo + int(i);
        Real v = res.second[i];
        Real e = abs(v - Real(hi_res.second[i]));
        if (e > tol * (1 + abs(v)))
            throw PrecisionError("xi coefficient " + std::to_string(k) + " at " + q.str() + " carries error " + fmt(e, 5));
        if (reflect && k % 2 != 0) v = -v;
        out.c.push_back(v);
        out.err.push_back(e);
    }
    return out;
}

/// Numeric coefficient provider for F = Q, E = Q(i), eta = chi_{-4}.
class NumericProvider {
public:
    using Coeff = Real;

    explicit NumericProvider(unsigned digits = 30) : digits_(digits) {}

    unsigned digits() const { return digits_; }
    unsigned working_digits() const { return digits_ + 15; }

    Real xi_coeff(XiKind kind, const Q& q, int k) const {
        const Entry& e = entry(kind, q, k);
        return e.data.c[k - e.data.lo];
    }
    Real xi_error(XiKind kind, const Q& q, int k) const {
        const Entry& e = entry(kind, q, k);
        return e.data.err[k - e.data.lo];
    }

    Real rational(const mpq_class& c) const { return to_real(c); }
    Real disc_pow(GenKind which, const Q& e) const {
        return which == GenKind::DE ? pow(Real(4), to_real(e)) : Real(1);
    }
    Real log_disc(GenKind which) const { return which == GenKind::DE ? log(Real(4)) : Real(0); }

private:
    struct Entry {
        NumericLaurent data;
        int kmax = -2;
    };

    const Entry& entry(XiKind kind, const Q& q, int k) const {
        std::lock_guard<std::mutex> g(m_);
        Entry& e = cache_[{kind, q}];
        if (k > e.kmax) {
            int kmax = std::max(k, 6);
            e.data = xi_laurent_numeric(kind, q, kmax, digits_);
            e.kmax = kmax;
        }
        if (k < e.data.lo) throw AlgebraError("no Laurent coefficient of order " + std::to_string(k) + " at " + q.str());
        return e;
    }

    unsigned digits_;
    mutable std::mutex m_;
    mutable std::map<std::pair<XiKind, Q>, Entry> cache_;
};

struct BoundValue {
    Real value;
    Real err;
};

/// Numbers substituted for generators; immutable once built.
class Binding {
public:
    Binding(const NumericProvider& p, const std::set<ZetaGen>& gens) : digits_(p.working_digits()) {
        PrecisionScope ps(digits_);
        for (auto& g : gens) values_.emplace(g, bind_one(p, g));
    }

    unsigned digits() const { return digits_; }
    const BoundValue& at(const ZetaGen& g) const {
        auto it = values_.find(g);
        if (it == values_.end()) throw AlgebraError("unbound generator " + g.render());
        return it->second;
    }

private:
    static BoundValue bind_one(const NumericProvider& p, const ZetaGen& g) {
        switch (g.kind) {
            case GenKind::DE: return {Real(4), Real(0)};
            case GenKind::DF: return {Real(1), Real(0)};
            case GenKind::LogDE: return {log(Real(4)), Real(0)};
            case GenKind::LogDF: return {Real(0), Real(0)};
            default: break;
        }
        XiKind k = g.kind == GenKind::F ? XiKind::F : XiKind::Feta;
        Real v = p.xi_coeff(k, g.arg, g.order);
        Real e = p.xi_error(k, g.arg, g.order);
        if (!g.is_pole_site() && g.order > 0) {
            Real f = to_real(factorial_q(g.order));
            v *= f;
            e *= f;
        }
        return {v, e};
    }

    unsigned digits_;
    std::map<ZetaGen, BoundValue> values_;
};

struct NumEval {
    Real value;
    Real abs_err;
};

namespace detail {

inline std::pair<Real, Real> eval_poly(const Poly& p, const Binding& b) {
    Real sum = 0, err = 0;
    Real eps = pow(Real(10), -int(b.digits()));
    for (auto& [m, c] : p.terms()) {
        Real term = to_real(c);
        Real rel = eps;
        for (auto& [g, e] : m.f) {
            const BoundValue& v = b.at(g);
            term *= e.is_integer() ? pow(v.value, int(e.num())) : pow(v.value, to_real(e));
            Real ae = abs(to_real(e));
            if (v.value != 0) rel += ae * v.err / abs(v.value) + ae * eps;
        }
        sum += term;
        err += abs(term) * rel;
    }
    return {sum, err};
}

}  // namespace detail

/// Evaluate a FieldElem under a binding, tracking a first-order absolute error bound.
inline NumEval bind_eval(const FieldElem& x, const Binding& b) {
    PrecisionScope ps(b.digits());
    auto [n, ne] = detail::eval_poly(x.num(), b);
    auto [d, de] = detail::eval_poly(x.den(), b);
    if (abs(d) <= de) throw PrecisionError("denominator indistinguishable from 0 at working precision");
    NumEval r;
    r.value = n / d;
    r.abs_err = ne / abs(d) + abs(r.value) * de / abs(d);
    return r;
}

inline NumEval bind_eval(const FieldElem& x, const NumericProvider& p) {
    Binding b(p, x.generators());
    return bind_eval(x, b);
}

}  // namespace zv

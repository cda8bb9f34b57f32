#pragma once

#include <string>

#include "laurent.hpp"

namespace zv {

class RangeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace factors {

inline Q half(std::int64_t k) { return Q(k, 2); }

/// xi_F(a + b s, eta^e), parity resolved
inline ZetaExpr xi_eta(const Affine& arg, int e, int exp = 1) {
    return ZetaExpr::xi(e % 2 == 0 ? XiKind::F : XiKind::Feta, arg, exp);
}

inline ZetaExpr E(const Q& a, std::int64_t b = 1, int exp = 1) { return ZetaExpr::xiE(Affine{a, Q(b)}, exp); }
inline ZetaExpr Fz(const Q& a, std::int64_t b = 1, int exp = 1) { return ZetaExpr::xiF(Affine{a, Q(b)}, exp); }

}  // namespace factors

/// F^{(n,r)}(s), defined for 1 <= r < n
inline ZetaExpr F_factor(int n, int r) {
    using namespace factors;
    if (!(1 <= r && r < n)) throw RangeError("range: F needs 1 <= r < n");
    return E(Q(n) - half(3 * r)) / E(Q(n) - half(r));
}

/// G^{(n,r)}(s), defined for 1 <= r < n; at r = 1 the xi_E(2s) quotient is trivial
inline ZetaExpr G_factor(int n, int r) {
    using namespace factors;
    if (!(1 <= r && r < n)) throw RangeError("range: G needs 1 <= r < n");
    ZetaExpr g = Fz(Q(r - 1), 2) / Fz(Q(r), 2) * E(half(3 * r) - Q(n)) / E(Q(n) - half(r));
    if (r > 1) g = g * E(Q(0), 2) / E(Q(r - 1), 2);
    return g;
}

/// H^{(n)}(s), n >= 2
inline ZetaExpr H_factor(int n) {
    using namespace factors;
    if (n < 1) throw RangeError("range: H needs n >= 1");
    return E(Q(0), 2) / E(Q(n - 1), 2) * Fz(Q(n - 1), 2) / Fz(Q(n), 2);
}

/// Siegel functional equation factor: E(s) = beta_n(s) E(-s)
inline ZetaExpr beta_factor(int n) {
    using namespace factors;
    if (n < 1) throw RangeError("range: beta needs n >= 1");
    ZetaExpr b;
    for (int i = 1; i <= n; ++i) b = b * xi_eta(Affine{Q(i - n), Q(2)}, i - 1) / xi_eta(Affine{Q(n + 1 - i), Q(2)}, i - 1);
    return b;
}

/// spherical normalization of the regularized theta integral
inline ZetaExpr lambda_factor(int n, int r) {
    using namespace factors;
    if (!(1 <= r && r <= n)) throw RangeError("range: lambda needs 1 <= r <= n");
    Q off = Q(n) - half(r);
    ZetaExpr l = ZetaExpr::de(Affine{-Q(r) * off / Q(2), Q(-r, 2)});
    for (int i = 1; i <= r; ++i) l = l * E(off - Q(i - 1)) / E(Q(i), 0);
    return l;
}

}  // namespace zv

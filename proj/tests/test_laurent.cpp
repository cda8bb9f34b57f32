#include <random>

#include <gtest/gtest.h>

#include "zv/factors.hpp"
#include "zv/numeric_zeta.hpp"

using namespace zv;

namespace {

Affine aff(int a2, int b) { return Affine{Q(a2, 2), Q(b)}; }

ZetaExpr random_expr(std::mt19937& rng) {
    std::uniform_int_distribution<int> kind(0, 2), a2(-8, 8), b(-2, 2), e(-1, 1);
    ZetaExpr z = ZetaExpr::rational(mpq_class(1 + kind(rng), 2));
    for (int i = 0; i < 3; ++i) {
        int ex = e(rng);
        if (ex == 0) ex = 1;
        z = z * ZetaExpr::xi(XiKind(kind(rng)), aff(a2(rng), b(rng)), ex);
    }
    return z * ZetaExpr::de(aff(a2(rng), b(rng)));
}

}  // namespace

TEST(Laurent, PoleOfXiFAtOne) {
    SymbolicProvider p;
    auto l = expand_expr(p, ZetaExpr::xiF(s_plus(Q(0))), Q(1), Window{-1, 1});
    EXPECT_EQ(l.lo(), -1);
    EXPECT_EQ(l.coefficient(-1), res_f());
    // at s = 0 the residue flips sign
    auto l0 = expand_expr(p, ZetaExpr::xiF(s_plus(Q(0))), Q(0), Window{-1, 0});
    EXPECT_EQ(l0.coefficient(-1), -res_f());
}

TEST(Laurent, ResidueOfXiFAtTwoSPlusOne) {
    // xi_F(2s+1) at s0 = -1/2 has residue -ResF/2
    SymbolicProvider p;
    EXPECT_EQ(coeff_at(p, ZetaExpr::xiF(Affine{Q(1), Q(2)}), Q(-1, 2), -1), res_f() * FieldElem(mpq_class(-1, 2)));
    EXPECT_EQ(coeff_at(p, ZetaExpr::xiF(Affine{Q(1), Q(2)}), Q(0), -1), res_f() * FieldElem(mpq_class(1, 2)));
}

TEST(Laurent, ChainRuleUnderReflection) {
    SymbolicProvider p;
    // xi_F(1-s) at s0 = 1/3: coefficient of (s-s0) is -xiF'(2/3) = xiF'(1/3)
    auto l = expand_expr(p, ZetaExpr::xiF(Affine{Q(1), Q(-1)}), Q(1, 3), Window{0, 1});
    EXPECT_EQ(l.coefficient(1), -xi_gen(XiKind::F, Q(2, 3), 1));
}

TEST(Laurent, DiscriminantExpansion) {
    SymbolicProvider p;
    auto l = expand_expr(p, ZetaExpr::de(Affine{Q(0), Q(2)}), Q(1), Window{0, 2});
    EXPECT_EQ(l.coefficient(0), de_pow(Q(2)));
    EXPECT_EQ(l.coefficient(1), de_pow(Q(2)) * log_de() * FieldElem(2));
    EXPECT_EQ(l.coefficient(2), de_pow(Q(2)) * log_de() * log_de() * FieldElem(2));
}

TEST(Laurent, TruncationIsReported) {
    SymbolicProvider p;
    auto l = expand_expr(p, ZetaExpr::xiF(s_plus(Q(0))), Q(2), Window{0, 1});
    EXPECT_THROW(l.coefficient(2), TruncationError);
    EXPECT_THROW(expand_expr(p, ZetaExpr::xiF(s_plus(Q(0))), Q(2), Window{0, 100}), TruncationError);
    EXPECT_THROW(expand_expr(p, ZetaExpr::xiF(s_plus(Q(0))), Q(2), Window{1, 0}), TruncationError);
}

TEST(Laurent, NormalizationIdentities) {
    ZetaExpr a = ZetaExpr::xiE(aff(3, 1)) / ZetaExpr::xiE(aff(3, 1));
    EXPECT_EQ(a.normalized(), ZetaExpr::one().normalized());
    ZetaExpr refl = ZetaExpr::xiF(Affine{Q(1), Q(-2)});
    EXPECT_EQ(refl.normalized(), ZetaExpr::xiF(Affine{Q(0), Q(2)}).normalized());
    EXPECT_EQ((ZetaExpr::rational(mpq_class(2, 4)) * ZetaExpr::rational(2)).normalized(), ZetaExpr::one().normalized());
}

TEST(Laurent, RingLawsSymbolic) {
    SymbolicProvider p;
    std::mt19937 rng(20121);
    Window w{-2, 1};
    for (int it = 0; it < 150; ++it) {
        ZetaExpr x = random_expr(rng), y = random_expr(rng);
        Q s0(std::uniform_int_distribution<int>(-4, 6)(rng), 2);
        auto lx = expand_expr(p, x, s0, w), ly = expand_expr(p, y, s0, w);
        auto lxy = expand_expr(p, x * y, s0, w);
        auto prod = lx * ly;
        int top = std::min(prod.hi(), lxy.hi());
        for (int d = std::min(prod.lo(), lxy.lo()); d <= top; ++d) EXPECT_EQ(prod.coefficient(d), lxy.coefficient(d));
        EXPECT_EQ(structural_order(x * y, s0), structural_order(x, s0) + structural_order(y, s0));
        if (!lx.known_zero()) {
            auto one = lx * lx.inverse();
            EXPECT_EQ(one.coefficient(0), FieldElem(1));
            for (int d = 1; d <= one.hi(); ++d) EXPECT_TRUE(one.coefficient(d).is_zero());
        }
    }
}

TEST(Laurent, NumericAgreesWithSymbolic) {
    SymbolicProvider sp;
    NumericProvider np(30);
    ZetaExpr z = lambda_factor(5, 2);
    auto ls = expand_expr(sp, z, Q(1), Window{-1, 1});
    PrecisionScope ps(np.working_digits());
    auto ln = expand_expr(np, z, Q(1), Window{-1, 1});
    for (int d = ls.lo(); d <= 1; ++d) {
        auto v = bind_eval(ls.coefficient(d), np);
        Real diff = abs(v.value - ln.coefficient(d));
        EXPECT_LT(diff, Real(1e-20) * (1 + abs(v.value))) << "order " << d;
    }
}

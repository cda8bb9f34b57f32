#include <gtest/gtest.h>

#include "zv/gk_appendix.hpp"

using namespace zv;
using namespace zv::gk;

namespace {
bool same(const ZetaExpr& a, const ZetaExpr& b) { return a.normalized() == b.normalized(); }
}  // namespace

TEST(Appendix, PositiveRootCount) {
    for (int n = 1; n <= 8; ++n) EXPECT_EQ(positive_roots(n).size(), std::size_t(n * n));
}

TEST(Appendix, InversionSetsEnumeratedEqualClosed) {
    for (int n = 1; n <= 8; ++n)
        for (int r = 1; r <= n; ++r) {
            EXPECT_EQ(sigma_plus_enumerated(Weyl::w2, n, r), sigma_plus_closed(Weyl::w2, n, r)) << n << "," << r;
            EXPECT_EQ(sigma_plus_closed(Weyl::w2, n, r).size(), std::size_t(2 * n - r));
            if (r < n) {
                EXPECT_EQ(sigma_plus_enumerated(Weyl::w1, n, r), sigma_plus_closed(Weyl::w1, n, r)) << n << "," << r;
                EXPECT_EQ(sigma_plus_closed(Weyl::w1, n, r).size(), std::size_t(r));
            }
        }
}

TEST(Appendix, WeylInverseIsSignedPermutation) {
    auto w = weyl_inverse(Weyl::w2, 4, 3);
    // x1 -> x2 -> x3 -> -x1 under the inverse
    EXPECT_EQ(w.apply({1, 0, 0, 0}), (std::vector<int>{0, 1, 0, 0}));
    EXPECT_EQ(w.apply({0, 0, 1, 0}), (std::vector<int>{-1, 0, 0, 0}));
    EXPECT_EQ(w.apply({0, 0, 0, 1}), (std::vector<int>{0, 0, 0, 1}));
    EXPECT_THROW(weyl_inverse(Weyl::w1, 3, 3), RangeError);
}

TEST(Appendix, C1Example) {
    // n = 5, r = 2: a telescoping ratio two steps apart
    auto want = ZetaExpr::xiE(s_plus(Q(2))) / ZetaExpr::xiE(s_plus(Q(4)));
    EXPECT_TRUE(same(c1_closed(5, 2), want));
    EXPECT_TRUE(same(assemble(Weyl::w1, 5, 2).product, want));
}

TEST(Appendix, AssemblyMatchesClosedForms) {
    for (int n = 1; n <= 8; ++n)
        for (int r = 1; r <= n; ++r) {
            auto a2 = assemble(Weyl::w2, n, r);
            EXPECT_TRUE(a2.discriminants_cancel) << n << "," << r;
            EXPECT_TRUE(same(a2.product, c2_closed(n, r))) << n << "," << r << ": " << a2.product.normalized().render();
            if (r < n) {
                auto a1 = assemble(Weyl::w1, n, r);
                EXPECT_TRUE(a1.discriminants_cancel);
                EXPECT_TRUE(same(a1.product, c1_closed(n, r))) << n << "," << r;
            }
        }
}

TEST(Appendix, SpecializesToConstantTermFactors) {
    for (int n = 2; n <= 8; ++n) {
        EXPECT_TRUE(same(H_factor(n), c2_closed(n, n))) << n;
        for (int r = 1; r < n; ++r) {
            EXPECT_TRUE(same(F_factor(n, r), c1_closed(n, r))) << n << "," << r;
            EXPECT_TRUE(same(G_factor(n, r), c2_closed(n, r))) << n << "," << r;
        }
    }
}

TEST(Appendix, RankOneFactorRejectsOtherRoots) {
    EXPECT_THROW(rank_one_factor(Root::minus(1, 2), 4, 3), RangeError);
}

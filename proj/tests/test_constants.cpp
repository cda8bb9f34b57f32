#include <gtest/gtest.h>

#include "zv/constants.hpp"
#include "zv/numeric_zeta.hpp"

using namespace zv;

namespace {

SymbolicProvider sp;

FieldElem E_(int q) { return xiE(Q(q)); }

void expect_numeric_match(const FieldElem& sym, const Real& num) {
    NumericProvider np(30);
    auto v = bind_eval(sym, np);
    PrecisionScope ps(np.working_digits());
    EXPECT_LT(abs(v.value - num), Real("1e-8") * abs(num) + Real("1e-25"));
}

}  // namespace

TEST(Constants, C31) {
    EXPECT_EQ(c_nr_closed(sp, 3, 1), xiF(Q(4)) / xiF(Q(3)));
    EXPECT_EQ(c_nr_recursive(sp, 3, 1), xiF(Q(4)) / xiF(Q(3)));
}

TEST(Constants, C2ByDirectProduct) {
    FieldElem direct = FieldElem(mpq_class(1, 2)) * E_(1) * E_(2) / (E_(3) * E_(4));
    EXPECT_EQ(c_r_closed(sp, 2), direct);
    EXPECT_EQ(c_r_recursive(sp, 2), direct);
}

TEST(Constants, CnrClosedEqualsRecursive) {
    NumericProvider np(30);
    for (int n = 3; n <= 10; ++n)
        for (int r = 1; 2 * r + 1 <= n; ++r) {
            FieldElem a = c_nr_closed(sp, n, r), b = c_nr_recursive(sp, n, r);
            EXPECT_EQ(a, b) << n << "," << r;
            PrecisionScope ps(np.working_digits());
            expect_numeric_match(a, c_nr_recursive(np, n, r));
        }
}

TEST(Constants, CrClosedEqualsRecursive) {
    NumericProvider np(30);
    for (int r = 1; r <= 6; ++r) {
        EXPECT_EQ(c_r_closed(sp, r), c_r_recursive(sp, r)) << r;
        EXPECT_EQ(c_r_closed(sp, r), c_r_recursive(sp, r, Mode::closed)) << r;
        PrecisionScope ps(np.working_digits());
        expect_numeric_match(c_r_closed(sp, r), c_r_recursive(np, r));
    }
}

TEST(Constants, DnrClosedEqualsRecursive) {
    NumericProvider np(30);
    for (int r = 2; r <= 6; ++r)
        for (int n = r + 1; n <= 2 * r - 1; ++n) {
            EXPECT_EQ(d_nr(sp, n, r, Mode::closed), d_nr(sp, n, r, Mode::recursive)) << n << "," << r;
            PrecisionScope ps(np.working_digits());
            expect_numeric_match(d_nr(sp, n, r, Mode::closed), d_nr(np, n, r, Mode::recursive));
        }
}

TEST(Constants, DnrStepQuotient) {
    // each step down multiplies by xi_E(k)/xi_E(k-r)
    for (int r = 3; r <= 6; ++r)
        for (int n = r + 1; n < 2 * r - 1; ++n)
            EXPECT_EQ(d_nr(sp, n, r, Mode::closed) / d_nr(sp, n + 1, r, Mode::closed), E_(n + 1) / E_(n + 1 - r));
}

TEST(Constants, SiegelResidueRankOne) {
    EXPECT_EQ(siegel_residue(sp, 1), res_f() / (FieldElem(2) * xiF(Q(2))));
}

TEST(Constants, RangeErrors) {
    EXPECT_THROW(c_nr_closed(sp, 4, 2), RangeError);
    EXPECT_THROW(d_nr(sp, 6, 3, Mode::closed), RangeError);
    EXPECT_THROW(weak2_closed(sp, 3, 1), RangeError);
    try {
        d_nr(sp, 9, 3, Mode::closed);
    } catch (const RangeError& e) {
        EXPECT_STREQ(e.what(), "range: need r+1 <= n <= 2r-1");
    }
}

TEST(Constants, TelescopeIsOne) {
    for (int r = 2; r <= 8; ++r)
        for (int n = r + 1; n <= 2 * r - 1; ++n) EXPECT_EQ(telescope(sp, n, r), FieldElem(1));
}

TEST(Constants, LambdaDisplay) {
    for (int n = 2; n <= 7; ++n)
        for (int r = 1; r <= n; ++r)
            if (structural_order(lambda_factor(n, r), Q(r, 2)) == 0)
                EXPECT_EQ(lambda_at_rho(sp, n, r), lambda_rho_display(sp, n, r)) << n << "," << r;
}

TEST(Constants, FirstTermCoefficient) {
    for (int r = 1; r <= 4; ++r)
        for (int n = 2 * r + 1; n <= 2 * r + 4; ++n)
            EXPECT_EQ(a_nr_derived(sp, n, r, Mode::recursive), a_nr_closed(sp, n, r)) << n << "," << r;
}

TEST(Constants, SecondTermCoefficient) {
    for (int r = 2; r <= 5; ++r)
        for (int n = r + 1; n <= 2 * r - 1; ++n) {
            EXPECT_EQ(b_nr_derived(sp, n, r, Mode::recursive), b_nr_closed(sp, n, r, Mode::recursive));
            FieldElem prod(1);
            for (int i = 1; i <= r; ++i) prod = prod * E_(i) / E_(n - i + 1);
            EXPECT_EQ(b_nr_closed(sp, n, r, Mode::closed) * d_nr(sp, n, r, Mode::closed), prod);
        }
}

TEST(Constants, UnramifiedLocalFactor) {
    // prod_{i=0}^{1} (1 - eps_i 3^{-(3-i)})^{-1} at s = 1/2, n = 2
    auto split = d_n_unramified(2, Q(1, 2), 3, true);
    auto inert = d_n_unramified(2, Q(1, 2), 3, false);
    ASSERT_TRUE(split.exact);
    EXPECT_EQ(split.value, mpq_class(243, 208));
    EXPECT_EQ(inert.value, mpq_class(243, 260));
    EXPECT_NEAR(split.approx, 243.0 / 208.0, 1e-15);
    auto irr = d_n_unramified(3, Q(1, 3), 5, true);
    EXPECT_FALSE(irr.exact);
    double want = 1;
    for (int i = 0; i < 3; ++i) want /= 1 - std::pow(5.0, -(2.0 / 3 + 3 - i));
    EXPECT_NEAR(irr.approx, want, 1e-14);
    EXPECT_THROW(d_n_unramified(2, Q(-1), 3, true), RangeError);
}

#include <gtest/gtest.h>

#include "zv/derivations.hpp"
#include "zv/numeric_zeta.hpp"

using namespace zv;

namespace {
SymbolicProvider sp;
}

TEST(PoleFacts, SiegelSeries) {
    EXPECT_EQ(pole_order(4, 4, Q(2)), 1);
    EXPECT_EQ(pole_order(4, 4, Q(1)), 1);
    EXPECT_EQ(pole_order(4, 4, Q(0)), 0);
    EXPECT_EQ(pole_order(3, 3, Q(3, 2)), 1);
    EXPECT_EQ(pole_order(3, 3, Q(1, 2)), 1);
    EXPECT_EQ(pole_order(3, 3, Q(1)), 0);
    EXPECT_TRUE(pole_fact(4, 4, Q(2)).exact);
}

TEST(PoleFacts, SiegelMirrorMatchesFunctionalEquation) {
    for (int m = 1; m <= 6; ++m)
        for (int k = 1; k <= 2 * m; ++k) {
            Q s0(-k, 2);
            EXPECT_EQ(pole_order(m, m, s0), pole_order(m, m, -s0) - structural_order(beta_factor(m), s0)) << m << "," << k;
        }
}

TEST(PoleFacts, NonSiegel) {
    EXPECT_EQ(pole_order(5, 2, Q(1)), 1);     // first term range
    EXPECT_EQ(pole_order(3, 2, Q(1)), 2);     // second term range
    EXPECT_EQ(pole_order(5, 2, Q(2)), 0);     // (t+2)/2 for m >= 2t+1
    auto f = pole_fact(3, 2, Q(2));
    EXPECT_FALSE(f.exact);
    EXPECT_EQ(f.order, 1);
}

TEST(PoleFacts, UnknownFactNamesTheAvailableFacts) {
    try {
        pole_fact(5, 2, Q(1, 4));
        FAIL() << "expected FactUnknown";
    } catch (const FactUnknown& e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("E(5,2) at 1/4"), std::string::npos);
        EXPECT_NE(msg.find("available facts"), std::string::npos);
    }
    EXPECT_THROW(pole_fact(2, 3, Q(1)), FactUnknown);
}

TEST(PoleFacts, PredictionMatchesExactFacts) {
    for (int r = 1; r <= 8; ++r)
        for (int n = r + 1; n <= 2 * r + 3; ++n) {
            Q s0(r, 2);
            EXPECT_EQ(predicted_pole_order(n, r, s0), pole_order(n, r, s0)) << n << "," << r;
        }
}

TEST(Symbols, BelowPoleOrderRejected) {
    EXPECT_THROW(EisSymbol::make(3, 2, -3, Q(1)), AlgebraError);
    EXPECT_NO_THROW(EisSymbol::make(3, 2, -2, Q(1)));
    Trace tr;
    EisSymbol::make(5, 2, -1, Q(1), &tr);
    ASSERT_EQ(tr.facts.size(), 1u);
    EXPECT_NE(tr.facts.begin()->find("first term range"), std::string::npos);
}

TEST(ConstantTerm, EmptyBelowPoleOrder) {
    EXPECT_TRUE(constant_term(sp, 5, 2, -2, Q(1)).empty());
    EXPECT_FALSE(constant_term(sp, 5, 2, -1, Q(1)).empty());
    EXPECT_FALSE(vanishing_relation(sp, 4, 2, -2, Q(1)).empty());
    EXPECT_THROW(vanishing_relation(sp, 5, 2, -1, Q(1)), AlgebraError);
}

TEST(ConstantTerm, ExtractionPartitions) {
    for (auto [m, t, s0] : {std::tuple{4, 2, Q(1)}, std::tuple{5, 2, Q(1)}, std::tuple{4, 4, Q(0)}, std::tuple{3, 2, Q(1)}}) {
        int ord = pole_order(m, t, s0);
        for (int d = -ord; d <= 1 - ord; ++d) {
            auto cte = constant_term(sp, m, t, d, s0);
            ConstantTermExpr<FieldElem> rebuilt;
            for (auto [e, k] : cte.exponents()) {
                auto part = extract(cte, e, k);
                for (auto& [sym, c] : part.terms()) rebuilt.add(e, k, sym, c);
            }
            EXPECT_EQ(rebuilt.terms().size(), cte.terms().size());
            for (auto& [key, c] : cte.terms()) EXPECT_EQ(rebuilt.terms().at(key), c);
        }
    }
}

TEST(ConstantTerm, RankTwoSiegelResidue) {
    // only the reflected piece sees a pole: H^{(2)}(1) E^{(1,1)}_{-1}(1/2) at ||a||^0,
    // with H^{(2)}(1) = xi_E(2) xi_F(3) / (xi_E(3) xi_F(4))
    auto cte = constant_term(sp, 2, 2, -1, Q(1));
    ASSERT_EQ(cte.terms().size(), 1u);
    FieldElem h = xiE(Q(2)) * xiF(Q(3)) / (xiE(Q(3)) * xiF(Q(4)));
    EXPECT_EQ(extract(cte, Q(0), 0).coeff(EisSymbol::make(1, 1, -1, Q(1, 2))), h);
    EXPECT_THROW(EisSymbol::make(1, 1, -1, Q(3, 2)), AlgebraError);
}

TEST(Derivation, FirstTermConstantMatchesClosed) {
    for (auto [n, r] : {std::pair{3, 1}, std::pair{5, 2}, std::pair{6, 2}, std::pair{7, 3}}) {
        std::vector<EisSymbol> stray;
        EXPECT_EQ(derive_c_nr(sp, n, r, {}, Mode::recursive, nullptr, &stray), c_nr_closed(sp, n, r)) << n << "," << r;
        EXPECT_TRUE(stray.empty());
    }
}

TEST(Derivation, BoundaryConstantMatchesClosed) {
    for (int r = 1; r <= 4; ++r) {
        std::vector<EisSymbol> stray;
        EXPECT_EQ(derive_c_r(sp, r, {}, Mode::recursive, nullptr, &stray), c_r_closed(sp, r)) << r;
        EXPECT_TRUE(stray.empty());
    }
}

TEST(Derivation, SecondRangeChain) {
    for (int r = 2; r <= 5; ++r) {
        auto ch = derive_d_chain(sp, r, r + 1);
        for (std::size_t i = 0; i < ch.n.size(); ++i) {
            EXPECT_EQ(ch.d[i], d_nr(sp, ch.n[i], r, Mode::closed)) << ch.n[i] << "," << r;
            EXPECT_TRUE(ch.stray[i].empty());
        }
    }
}

TEST(Derivation, SecondTermIdentity) {
    for (int r = 2; r <= 4; ++r) {
        Trace tr;
        auto chain = second_term_chain(sp, r, r - 2, {}, {}, &tr);
        for (auto& id : chain) {
            EXPECT_EQ(id.X, X_closed(sp, r, id.j));
            EXPECT_EQ(id.Y, Y_closed(sp, r, id.j));
            EXPECT_EQ(id.e0, FieldElem(2) * c_r_closed(sp, r));
            EXPECT_TRUE(id.stray.empty());
        }
        EXPECT_FALSE(tr.facts.empty());
    }
}

TEST(Derivation, Claim2) {
    for (int r = 2; r <= 4; ++r) EXPECT_EQ(claim2_value(sp, r), FieldElem(2)) << r;
    NumericProvider np(30);
    PrecisionScope ps(np.working_digits());
    EXPECT_LT(abs(claim2_value(np, 3) - 2), Real("1e-25"));
}

TEST(Derivation, RangeGuards) {
    EXPECT_THROW(second_term_chain(sp, 1, 0), RangeError);
    EXPECT_THROW(second_term_chain(sp, 3, 2), RangeError);
    EXPECT_THROW(derive_d_chain(sp, 3, 6), RangeError);
    EXPECT_THROW(derive_c_nr(sp, 4, 2), RangeError);
}

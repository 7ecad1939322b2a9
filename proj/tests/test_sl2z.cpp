#include <k3fib/sl2z.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace k3fib;

namespace {

// random product of R^{+-1}, L^{+-1} and S
SL2 random_sl2(std::mt19937& rng, int len)
{
    std::uniform_int_distribution<int> pick(0, 4);
    SL2 out;
    for (int i = 0; i < len; ++i) {
        switch (pick(rng)) {
        case 0: out = out * mat_R(); break;
        case 1: out = out * mat_R().inverse(); break;
        case 2: out = out * mat_L(); break;
        case 3: out = out * mat_L().inverse(); break;
        default: out = out * mat_S(); break;
        }
    }
    return out;
}

SL2 random_hyperbolic(std::mt19937& rng)
{
    for (;;) {
        SL2 m = random_sl2(rng, 6);
        if (classify(m) == ConjClass::hyperbolic) return m;
    }
}

bool rotation_of(const RLWord& a, const RLWord& b) { return cyclic_match(a, b).has_value(); }

} // namespace

TEST(SL2, ConstructorRejectsWrongDeterminant)
{
    EXPECT_THROW(SL2(1, 1, 1, 1), Error);
    EXPECT_NO_THROW(SL2(2, 1, 1, 1));
}

TEST(SL2, MonodromyMatrices)
{
    EXPECT_EQ(monodromy_matrix(2, 3, 7), SL2(5, -11, 1, -2));
    EXPECT_EQ(monodromy_matrix(3, 3, 3), SL2(4, -3, 3, -2));
    SL2 a238 = monodromy_matrix(2, 3, 8);
    EXPECT_EQ(a238, SL2(6, -13, 1, -2));
    EXPECT_EQ(a238.trace(), 4);
    EXPECT_EQ(monodromy_matrix(2, 4, 4), SL2(5, -8, 2, -3));
    EXPECT_THROW(monodromy_matrix(1, 3, 7), Error);
    EXPECT_THROW(monodromy_matrix(2, 3, 0), Error);
}

TEST(SL2, MonodromyIsProductInWrittenOrder)
{
    // independent recomputation with plain integers
    for (int p = 2; p <= 6; ++p)
        for (int q = 2; q <= 6; ++q)
            for (int r = 2; r <= 6; ++r) {
                long long m[2][2] = {{1, 0}, {0, 1}};
                for (int n : {r, q, p}) {
                    long long f[2][2] = {{n - 1, -1}, {1, 0}};
                    long long t[2][2];
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j) t[i][j] = m[i][0] * f[0][j] + m[i][1] * f[1][j];
                    std::copy(&t[0][0], &t[0][0] + 4, &m[0][0]);
                }
                EXPECT_EQ(monodromy_matrix(p, q, r), SL2(m[0][0], m[0][1], m[1][0], m[1][1]));
            }
}

TEST(SL2, Classification)
{
    EXPECT_EQ(classify(SL2(5, -11, 1, -2)), ConjClass::hyperbolic);
    EXPECT_EQ(classify(SL2()), ConjClass::identity);
    EXPECT_EQ(classify(-SL2()), ConjClass::minus_identity);
    EXPECT_EQ(classify(SL2(5, -8, 2, -3)), ConjClass::parabolic);
    EXPECT_EQ(classify(mat_S()), ConjClass::elliptic);
    EXPECT_EQ(classify(SL2(-3, 1, -1, 0)), ConjClass::hyperbolic);
}

TEST(SL2, RLWords)
{
    RLWord w = rl_word(SL2(2, 1, 1, 1));
    ASSERT_EQ(w.blocks.size(), 1u);
    EXPECT_EQ(w.blocks[0].first, 1);
    EXPECT_EQ(w.blocks[0].second, 1);
    EXPECT_FALSE(w.negated);
    EXPECT_THROW(rl_word(SL2(1, 1, 0, 1)), Error);
    EXPECT_TRUE(rotation_of(rl_word(monodromy_matrix(2, 3, 7)), w));

    RLWord neg = rl_word(SL2(-2, -1, -1, -1));
    EXPECT_TRUE(neg.negated);
    EXPECT_EQ(evaluate_rl(neg).trace(), -3);
}

TEST(SL2, RLFactorizationReproducesMatrix)
{
    std::mt19937 rng(1);
    for (int i = 0; i < 200; ++i) {
        SL2 m = random_hyperbolic(rng);
        auto f = rl_factorization(m);
        EXPECT_EQ(f.conjugator * m * f.conjugator.inverse(), evaluate_rl(f.word)) << m;
        for (auto& [a, b] : f.word.blocks) {
            EXPECT_GE(a, 1);
            EXPECT_GE(b, 1);
        }
    }
}

TEST(SL2, ConjugacyCases)
{
    auto c = is_conjugate(monodromy_matrix(2, 3, 7), SL2(2, 1, 1, 1));
    ASSERT_TRUE(c);
    EXPECT_TRUE(c->verify());

    SL2 m(7, 3, 2, 1);
    auto self = is_conjugate(m, m);
    ASSERT_TRUE(self);
    EXPECT_EQ(self->conjugator, SL2());

    EXPECT_FALSE(is_conjugate(SL2(1, 1, 0, 1), SL2(1, 2, 0, 1)));
    EXPECT_FALSE(brute_force_conjugator(SL2(1, 1, 0, 1), SL2(1, 2, 0, 1), 20));
}

TEST(SL2, InverseConjugacyCases)
{
    auto c = is_conjugate_to_inverse(SL2(2, 1, 1, 1), SL2(2, 1, 1, 1));
    ASSERT_TRUE(c);
    EXPECT_EQ(c->target, SL2(1, -1, -1, 2));
    EXPECT_TRUE(c->verify());
    auto d = is_conjugate_to_inverse(monodromy_matrix(2, 4, 5), monodromy_matrix(2, 3, 8));
    ASSERT_TRUE(d);
    EXPECT_TRUE(d->verify());
    EXPECT_FALSE(is_conjugate_to_inverse(monodromy_matrix(2, 3, 7), monodromy_matrix(2, 3, 9)));
}

TEST(SL2, DirectConjugacyCanFailWhereInverseSucceeds)
{
    // R^2 L and R L^2 have the same trace but are inverse classes
    SL2 a = mat_R() * mat_R() * mat_L(), b = mat_R() * mat_L() * mat_L();
    EXPECT_FALSE(is_conjugate(a, b));
    EXPECT_FALSE(brute_force_conjugator(a, b, 20));
    EXPECT_TRUE(is_conjugate_to_inverse(a, b));
}

TEST(SL2, EllipticAndParabolicClasses)
{
    // S and S^{-1} are not conjugate in SL(2,Z)
    EXPECT_FALSE(is_conjugate(mat_S(), mat_S().inverse()));
    EXPECT_FALSE(brute_force_conjugator(mat_S(), mat_S().inverse(), 20));
    SL2 st = mat_S() * mat_T(1); // order 6
    std::mt19937 rng(3);
    for (int i = 0; i < 30; ++i) {
        SL2 P = random_sl2(rng, 5);
        for (const SL2& m : {mat_S(), st, st * st, SL2(1, 3, 0, 1), SL2(-1, 2, 0, -1)}) {
            auto c = is_conjugate(m, P * m * P.inverse());
            ASSERT_TRUE(c) << m << " " << P;
            EXPECT_TRUE(c->verify());
        }
    }
    EXPECT_FALSE(is_conjugate(SL2(1, 2, 0, 1), SL2(1, -2, 0, 1)));
    EXPECT_FALSE(is_conjugate(SL2(1, 2, 0, 1), SL2(-1, 2, 0, -1)));
}

TEST(SL2Property, DeterminantStaysOne)
{
    std::mt19937 rng(5);
    for (int i = 0; i < 200; ++i) {
        SL2 m = random_sl2(rng, 10) * random_sl2(rng, 10).inverse();
        EXPECT_EQ(m.a() * m.d() - m.b() * m.c(), 1);
    }
}

TEST(SL2Property, ClassAndWordInvariantUnderConjugation)
{
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        SL2 m = random_sl2(rng, 6), P = random_sl2(rng, 6);
        SL2 n = P * m * P.inverse();
        EXPECT_EQ(classify(n), classify(m));
        if (classify(m) == ConjClass::hyperbolic) {
            EXPECT_TRUE(rotation_of(rl_word(m), rl_word(n)));
            auto c = is_conjugate(m, n);
            ASSERT_TRUE(c);
            EXPECT_TRUE(c->verify());
        }
    }
}

TEST(SL2Property, AgreesWithBruteForceOracle)
{
    // all pairs of small matrices of equal trace: a conjugator with entries <= 20 exists iff one is found
    std::vector<SL2> mats;
    for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b)
            for (int c = -3; c <= 3; ++c)
                for (int d = -3; d <= 3; ++d)
                    if (a * d - b * c == 1 && a + d == 3) mats.emplace_back(a, b, c, d);
    ASSERT_GT(mats.size(), 4u);
    for (std::size_t i = 0; i < mats.size(); ++i)
        for (std::size_t j = i; j < mats.size(); ++j) {
            auto ours = is_conjugate(mats[i], mats[j]);
            auto brute = brute_force_conjugator(mats[i], mats[j], 20);
            EXPECT_EQ(ours.has_value(), brute.has_value()) << mats[i] << " " << mats[j];
        }
}

TEST(DehnTwist, Matrices)
{
    EXPECT_EQ(dehn_twist(class_alpha()), SL2(1, -1, 0, 1));
    EXPECT_EQ(dehn_twist(class_beta()), SL2(1, 0, 1, 1));
    EXPECT_EQ(dehn_twist(class_gamma()), SL2(0, -1, 1, 2));
    EXPECT_THROW(HomologyClass(0, 0), Error);
    EXPECT_THROW(HomologyClass(2, 4), Error);
}

TEST(DehnTwist, ActsAsTransvection)
{
    // oracle: v -> v + <v,c> c on the basis vectors
    for (int m = -4; m <= 4; ++m)
        for (int n = -4; n <= 4; ++n) {
            if (gcd(Int(m), Int(n)) != 1) continue;
            HomologyClass c(m, n);
            SL2 t = dehn_twist(c);
            EXPECT_EQ(t.trace(), 2);
            EXPECT_EQ(t.a() * m + t.b() * n, m);
            EXPECT_EQ(t.c() * m + t.d() * n, n);
            for (auto [x1, x2] : {std::pair{1, 0}, std::pair{0, 1}}) {
                Int k = intersection(x1, x2, m, n);
                EXPECT_EQ(t.a() * x1 + t.b() * x2, x1 + k * m);
                EXPECT_EQ(t.c() * x1 + t.d() * x2, x2 + k * n);
            }
        }
}

TEST(DehnTwist, Words)
{
    EXPECT_EQ(evaluate_word({}), SL2());
    TwistWord ab;
    for (int i = 0; i < 4; ++i) {
        ab.push_back({class_alpha(), 1});
        ab.push_back({class_beta(), 1});
    }
    EXPECT_EQ(evaluate_word(ab), SL2(0, 1, -1, -1));
    for (int n = 1; n <= 4; ++n) {
        TwistWord ba;
        for (int i = 0; i < 6 * n; ++i) {
            ba.push_back({class_beta(), 1});
            ba.push_back({class_alpha(), 1});
        }
        EXPECT_TRUE(evaluate_word(ba).is_identity()) << n;
    }
    // the leftmost letter is applied last
    TwistWord w{{class_alpha(), 1}, {class_beta(), 2}};
    EXPECT_EQ(evaluate_word(w), dehn_twist(class_alpha()) * dehn_twist(class_beta()).pow(2));
    TwistWord inv{{class_alpha(), -3}};
    EXPECT_EQ(evaluate_word(inv), dehn_twist(class_alpha()).inverse().pow(3));
}

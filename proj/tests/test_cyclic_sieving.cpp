#include "posetdyn/cyclic_sieving.hpp"
#include "posetdyn/rowmotion.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <numbers>

using namespace posetdyn;

namespace {

// floating-point evaluation used only as an independent oracle
std::complex<double> eval_complex(const IntPolynomial& X, int N, int k)
{
    std::complex<double> z = std::polar(1.0, 2 * std::numbers::pi * k / N), r = 0;
    for (long i = X.degree(); i >= 0; --i) r = r * z + X[i].convert_to<double>();
    return r;
}

IntPolynomial rowmotion_size_gf_check(const FamilySpec& s, int ell)
{
    Poset P = make(s);
    return size_generating_function(IdealLattice(P), ell);
}

} // namespace

TEST(Polynomials, QRationalProduct)
{
    EXPECT_EQ(q_rational_product({2}, {1}), int_poly({1, 1}));
    EXPECT_EQ(q_rational_product({4, 3}, {1, 2}), int_poly({1, 1, 2, 1, 1}));
    EXPECT_THROW(q_rational_product({3}, {2}), std::domain_error);
    EXPECT_THROW(q_rational_product({0}, {}), std::invalid_argument);
}

TEST(Polynomials, Cyclotomic)
{
    EXPECT_EQ(cyclotomic_polynomial(1), int_poly({-1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(2), int_poly({1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(3), int_poly({1, 1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(4), int_poly({1, 0, 1}));
    EXPECT_EQ(cyclotomic_polynomial(6), int_poly({1, -1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(12), int_poly({1, 0, -1, 0, 1}));
    // q^n - 1 is the product over divisors
    for (int n = 1; n <= 30; ++n) {
        IntPolynomial p = IntPolynomial::constant(1);
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) p *= cyclotomic_polynomial(d);
        EXPECT_EQ(p, IntPolynomial::monomial(1, n) - IntPolynomial::constant(1));
    }
}

TEST(RootsOfUnity, Evaluation)
{
    IntPolynomial X = int_poly({1, 1, 1});
    EXPECT_EQ(eval_at_root_of_unity(X, 3, 0).integer(), 3);
    EXPECT_EQ(eval_at_root_of_unity(X, 3, 1).integer(), 0);
    EXPECT_FALSE(eval_at_root_of_unity(int_poly({0, 1}), 4, 1).is_integer());
    EXPECT_THROW(eval_at_root_of_unity(X, 3, 3), std::invalid_argument);
    for (int N = 1; N <= 12; ++N)
        for (int k = 0; k < N; ++k) {
            IntPolynomial Y = macmahon(2, 3, 2);
            auto v = eval_at_root_of_unity(Y, N, k);
            auto z = eval_complex(Y, N, k);
            if (v.is_integer()) {
                EXPECT_NEAR(z.real(), v.integer().convert_to<double>(), 1e-6);
                EXPECT_NEAR(z.imag(), 0, 1e-6);
            } else {
                EXPECT_GT(std::abs(z.imag()) + std::abs(z.real() - std::round(z.real())), 1e-9);
            }
        }
}

TEST(Sieving, DiamondByHand)
{
    CombinatorialSystem S(make("rect:2x2"));
    IntPolynomial F = minuscule_size_gf(make("rect:2x2"), 1);
    EXPECT_EQ(F, int_poly({1, 1, 2, 1, 1}));
    auto res = csp_check(S.orbits(), 4, F);
    ASSERT_TRUE(res.ok());
    std::vector<long> fixed;
    for (auto& r : res.rows) fixed.push_back(r.fixed.convert_to<long>());
    EXPECT_EQ(fixed, (std::vector<long>{6, 0, 2, 0}));
}

TEST(Sieving, OrderMustDivide)
{
    CombinatorialSystem S(make("rect:2x3"));
    EXPECT_THROW(csp_check(S.orbits(), 4, int_poly({1})), std::domain_error);
}

TEST(Sieving, MinusculeCombinatorial)
{
    std::vector<FamilySpec> specs = {cayley_plane(), shifted_staircase(4), shifted_staircase(5), propeller(3),
                                     propeller(6)};
    for (int a = 1; a <= 4; ++a)
        for (int b = a; a * b <= 16; ++b) specs.push_back(rectangle(a, b));
    for (auto& s : specs) {
        auto sd = sieving_polynomial(s, 1);
        EXPECT_EQ(sd.N, coxeter_number(s));
        EXPECT_EQ(sd.X, rowmotion_size_gf_check(s, 1));
        auto res = csp_check(CombinatorialSystem(make(s)).orbits(), sd.N, sd.X);
        EXPECT_TRUE(res.ok()) << to_string(s);
        EXPECT_EQ(res.rows[0].fixed, sd.X.sum_of_coeffs());
    }
}

TEST(Sieving, RootPosetsCombinatorial)
{
    std::vector<FamilySpec> specs = {root_poset('H', 3)};
    for (int n = 1; n <= 5; ++n) specs.push_back(root_poset('A', n));
    for (int n = 2; n <= 4; ++n) specs.push_back(root_poset('B', n));
    for (int m = 2; m <= 6; ++m) specs.push_back(root_poset('I', m));
    for (auto& s : specs) {
        auto sd = sieving_polynomial(s, 1);
        EXPECT_EQ(sd.N, 2 * coxeter_number(s));
        EXPECT_TRUE(nonnegative(sd.X));
        auto res = csp_check(CombinatorialSystem(make(s)).orbits(), sd.N, sd.X);
        EXPECT_TRUE(res.ok()) << to_string(s);
    }
    EXPECT_THROW(sieving_polynomial(root_poset('D', 4), 1), std::invalid_argument);
}

TEST(Sieving, PPartitionLevels)
{
    for (auto s : {"rect:2x3", "shifted:4", "prop:3", "root:A3", "root:B3", "root:H3", "root:I2(5)"})
        for (int ell = 2; ell <= 4; ++ell) {
            auto spec = parse_spec(s);
            auto sd = sieving_polynomial(spec, ell);
            PPSystem S(make(spec), ell);
            auto res = csp_check(S.orbits(), sd.N, sd.X);
            EXPECT_TRUE(res.ok()) << s << " " << ell;
            EXPECT_EQ(sd.X.sum_of_coeffs(), BigInt(S.size()));
        }
}

TEST(Sieving, FixedPointsDependOnGcd)
{
    CombinatorialSystem S(make("root:A4"));
    auto res = csp_check(S.orbits(), 10, sieving_polynomial(root_poset('A', 4), 1).X);
    for (int k = 0; k < 10; ++k) EXPECT_EQ(res.rows[k].fixed, res.rows[std::gcd(k, 10) % 10].fixed);
}

TEST(Identities, GrassmannianSquaredIsTypeBCatalan)
{
    for (int k = 1; k <= 4; ++k)
        EXPECT_EQ(minuscule_size_gf(make(grassmannian(k, 2 * k)), 1).substitute_power(2),
                  q_catalan(degrees(root_poset('B', k)), 2 * k));
}

TEST(Identities, OrthogonalGrassmannianAndH3)
{
    IntPolynomial lhs = minuscule_size_gf(make("shifted:6"), 1).substitute_power(2);
    EXPECT_EQ(lhs, q_rational_product({12, 16, 20}, {2, 6, 10}));
    EXPECT_EQ(lhs, q_catalan(degrees(root_poset('H', 3)), 10));
}

TEST(Identities, TypeAMultiCatalan)
{
    for (int n = 1; n <= 4; ++n)
        for (int ell = 1; ell <= 3; ++ell) {
            std::vector<long> num, den;
            for (int i = 1; i <= n; ++i)
                for (int j = i; j <= n; ++j) {
                    num.push_back(2 * ell + i + j);
                    den.push_back(i + j);
                }
            EXPECT_EQ(multi_catalan(degrees(root_poset('A', n)), n + 1, ell), q_rational_product(num, den));
        }
}

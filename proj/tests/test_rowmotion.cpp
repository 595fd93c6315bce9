#include "posetdyn/cde.hpp"
#include "posetdyn/families.hpp"
#include "posetdyn/iso.hpp"
#include "posetdyn/matching.hpp"
#include "posetdyn/rowmotion.hpp"
#include "posetdyn/transfer.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace posetdyn;

namespace {

RationalVector indicator(const Poset& P, Mask I)
{
    RationalVector f(P.size(), Rational(1));
    for_each_bit(I, [&](int p) { f[p] = 0; });
    return f;
}

RationalVector x0(const Poset& P)
{
    RationalVector f(P.size());
    for (int p = 0; p < P.size(); ++p) f[p] = Rational(P.rank(p) + 1, P.rank() + 2);
    return f;
}

RationalVector scaled(const PPartition& T)
{
    RationalVector f;
    for (int v : T.values) f.emplace_back(v, T.height);
    return f;
}

std::multiset<std::multiset<long long>> ddeg_multisets(const CombinatorialSystem& S)
{
    std::multiset<std::multiset<long long>> out;
    for (auto& o : S.orbits().orbits) {
        std::multiset<long long> m;
        for (auto x : o) m.insert(S.ddeg[x]);
        out.insert(m);
    }
    return out;
}

std::vector<std::size_t> sorted_lengths(const OrbitPartition& part)
{
    auto v = part.lengths();
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TEST(Toggles, InvolutionAndMinimal)
{
    Poset P = make("rect:2x3");
    for (Mask I : order_ideals(P))
        for (int p = 0; p < P.size(); ++p) {
            Mask J = toggle(P, I, p);
            EXPECT_TRUE(is_ideal(P, J));
            EXPECT_EQ(toggle(P, J, p), I);
        }
    EXPECT_EQ(toggle(P, 0, std::countr_zero(P.minimal())), P.minimal());
}

TEST(Toggles, CommuteWithoutCoverRelation)
{
    for (auto& P : connected_posets(6))
        for (Mask I : order_ideals(P))
            for (int p = 0; p < P.size(); ++p)
                for (int q = p + 1; q < P.size(); ++q) {
                    bool cover = ((P.upper_covers(p) | P.lower_covers(p)) >> q) & 1;
                    if (cover) continue;
                    ASSERT_EQ(toggle(P, toggle(P, I, p), q), toggle(P, toggle(P, I, q), p));
                }
}

TEST(Rowmotion, DirectMatchesToggles)
{
    for (int n = 1; n <= 6; ++n)
        for (auto& P : connected_posets(n))
            for (Mask I : order_ideals(P)) {
                ASSERT_EQ(rowmotion_by_toggles(P, I), rowmotion_direct(P, I));
                ASSERT_EQ(inverse_rowmotion(P, rowmotion(P, I)), I);
                ASSERT_EQ(max_of(P, rowmotion(P, I)), min_of(P, P.all() & ~I));
            }
}

TEST(Rowmotion, IndependentOfLinearExtension)
{
    for (auto s : {"rect:2x3", "ex7p", "root:A3", "trap:2,5"}) {
        Poset P = make(s);
        auto ideals = order_ideals(P);
        for_each_linear_extension(P, [&](const std::vector<int>& le) {
            for (Mask I : ideals) ASSERT_EQ(rowmotion_along(P, I, le), rowmotion_direct(P, I));
        });
    }
}

TEST(Rowmotion, Diamond)
{
    CombinatorialSystem S(make("rect:2x2"));
    auto part = S.orbits();
    EXPECT_EQ(sorted_lengths(part), (std::vector<std::size_t>{2, 4}));
    EXPECT_EQ(part.order(), 4);
    for (auto& o : summarize(part, S.ddeg)) EXPECT_EQ(o.ddeg_average(), 1);
}

TEST(Rowmotion, RectangleOrder)
{
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b) EXPECT_EQ(CombinatorialSystem(make(rectangle(a, b))).orbits().order(), a + b);
}

TEST(Rowmotion, CounterexampleOrders)
{
    EXPECT_EQ(CombinatorialSystem(make("ex6p")).orbits().order(), 4);
    EXPECT_EQ(CombinatorialSystem(make("ex6q")).orbits().order(), 12);
}

TEST(Rowmotion, SingletonAndChains)
{
    CombinatorialSystem S(make("chain:1"));
    EXPECT_EQ(sorted_lengths(S.orbits()), (std::vector<std::size_t>{2}));
    for (int n = 1; n <= 6; ++n) EXPECT_EQ(CombinatorialSystem(make(chain(n))).orbits().order(), n + 1);
}

TEST(Rowmotion, RootPosetHalfTurn)
{
    // row^h acts as an automorphism of the root poset and row^{2h} = 1
    for (auto s : {"root:A2", "root:A3", "root:A4", "root:B3", "root:H3", "root:I2(5)"}) {
        Poset P = make(s);
        int h = coxeter_number(parse_spec(s));
        CombinatorialSystem S(P);
        EXPECT_EQ(BigInt(2 * h) % S.orbits().order(), 0) << s;
        for (Mask I : S.lattice.ideals()) {
            Mask J = I;
            for (int k = 0; k < h; ++k) J = rowmotion(P, J);
            EXPECT_EQ(popcount(J), popcount(I));
            EXPECT_EQ(popcount(max_of(P, J)), popcount(max_of(P, I)));
        }
    }
    EXPECT_EQ(CombinatorialSystem(make("root:A2")).orbits().order(), 6);
}

TEST(Rowmotion, SevenElementMultisets)
{
    using M = std::multiset<long long>;
    EXPECT_EQ(ddeg_multisets(CombinatorialSystem(make("ex7p"))),
              (std::multiset<M>{M{1, 0, 2, 2, 2, 1, 1, 2, 3}, M{3, 1, 1}, M{2, 1, 2, 2, 1, 2}}));
    EXPECT_EQ(ddeg_multisets(CombinatorialSystem(make("ex7q"))),
              (std::multiset<M>{M{1, 0, 2, 3, 1, 1, 1, 3, 2}, M{2, 1, 2}, M{2, 1, 2, 2, 1, 2}}));
}

TEST(Rowmotion, ToggleabilityShift)
{
    for (auto s : {"rect:2x3", "ex7q", "root:D4"}) {
        Poset P = make(s);
        for (Mask I : order_ideals(P))
            for (int p = 0; p < P.size(); ++p)
                EXPECT_EQ(toggleability(P, rowmotion(P, I), p).minus, toggleability(P, I, p).plus);
    }
}

TEST(Orbits, RejectNonPermutation)
{
    EXPECT_THROW(orbit_partition({1, 1}), std::logic_error);
    auto part = orbit_partition({1, 2, 0, 3});
    EXPECT_EQ(part.lengths(), (std::vector<std::size_t>{3, 1}));
    EXPECT_EQ(part.order(), 3);
}

TEST(Homomesy, CombinatorialStatistics)
{
    std::vector<std::string> specs = {"rect:2x3", "rect:3x3", "shifted:5", "prop:4", "e6",        "root:A3",
                                      "root:A4",  "root:B3",  "root:H3",   "root:I2(6)", "root:I2(7)"};
    for (auto& s : specs) {
        Poset P = make(s);
        int h = coxeter_number(parse_spec(s));
        CombinatorialSystem S(P);
        auto part = S.orbits();
        EXPECT_EQ(homomesy_value(part, [&](auto x) { return Rational(S.antichain_size(x)); }), Rational(P.size(), h))
            << s;
        for (int p = 0; p < P.size(); ++p)
            EXPECT_EQ(homomesy_value(part, [&](auto x) { return Rational(S.toggleability(x, p)); }), Rational(0));
    }
}

TEST(PiecewiseLinear, SpecializesToCombinatorial)
{
    Poset P = make("ex7p");
    for (Mask I : order_ideals(P))
        for (int p = 0; p < P.size(); ++p) {
            RationalVector f = indicator(P, I);
            auto t = pl_toggleability(P, f, p);
            auto c = toggleability(P, I, p);
            EXPECT_EQ(t.plus, c.plus);
            EXPECT_EQ(t.minus, c.minus);
            pl_toggle(P, f, p);
            EXPECT_EQ(f, indicator(P, toggle(P, I, p)));
        }
}

TEST(PiecewiseLinear, FixedPointAndInvolution)
{
    std::mt19937 rng(5);
    for (auto s : {"rect:3x4", "root:H3", "e6", "trap:2,5"}) {
        Poset P = make(s);
        RationalVector z = x0(P);
        for (int p = 0; p < P.size(); ++p) {
            RationalVector g = z;
            pl_toggle(P, g, p);
            EXPECT_EQ(g, z);
        }
        EXPECT_EQ(pl_ddeg(P, z), Rational(P.size(), P.rank() + 2));
        EXPECT_EQ(pl_orbit_length(P, z, 4), 1u);
        RationalVector f(P.size());
        for (auto& x : f) x = Rational(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 9) + 1);
        EXPECT_EQ(pl_inverse_rowmotion(P, pl_rowmotion(P, f)), f);
        for (int p = 0; p < P.size(); ++p) {
            RationalVector g = f;
            pl_toggle(P, g, p, Rational(-3), Rational(7, 2));
            pl_toggle(P, g, p, Rational(-3), Rational(7, 2));
            EXPECT_EQ(g, f);
        }
    }
}

TEST(PiecewiseLinear, DdegAgreesWithTransferMap)
{
    Poset P = make("rect:2x2");
    for (auto& T : enumerate_ppartitions(P, 3)) {
        RationalVector f = scaled(T);
        EXPECT_EQ(Rational(ppartition_ddeg(P, T)), 3 * pl_ddeg(P, f));
        Rational s = 0;
        for (auto& g : transfer_map(P, f)) s += g;
        EXPECT_EQ(pl_ddeg(P, f), s);
        EXPECT_EQ(scaled(pp_rowmotion(P, T)), pl_rowmotion(P, f));
        for (int p = 0; p < P.size(); ++p)
            EXPECT_EQ(pl_toggleability(P, pl_rowmotion(P, f), p).minus, pl_toggleability(P, f, p).plus);
    }
}

TEST(PiecewiseLinear, CertificateLiftsToRationalPoints)
{
    for (auto s : {"rect:2x3", "root:A3", "root:H3", "shifted:4"}) {
        Poset P = make(s);
        auto cert = tcde_solve(IdealLattice(P));
        ASSERT_TRUE(cert);
        for (int den = 2; den <= 4; ++den)
            for_each_ppartition(P, den, [&](const PPartition& T) {
                RationalVector f = scaled(T);
                Rational v = pl_ddeg(P, f);
                for (int p = 0; p < P.size(); ++p) v += cert->c[p] * pl_toggleability(P, f, p).value();
                ASSERT_EQ(v, cert->delta);
            });
    }
}

TEST(PiecewiseLinear, ToggleabilityAveragesVanish)
{
    Poset P = make("rect:2x3");
    std::mt19937 rng(9);
    for (int t = 0; t < 20; ++t) {
        std::vector<Rational> vals;
        for (int p = 0; p < P.size(); ++p) vals.emplace_back(static_cast<long>(rng() % 17), 16);
        std::sort(vals.begin(), vals.end());
        RationalVector f(vals.begin(), vals.end()); // sorted values on a linear extension stay monotone
        ASSERT_TRUE(in_order_polytope(P, f));
        auto len = pl_orbit_length(P, f, 20);
        ASSERT_TRUE(len);
        EXPECT_EQ(5 % *len, 0u);
        for (int p = 0; p < P.size(); ++p) {
            Rational s = 0;
            RationalVector g = f;
            for (std::size_t k = 0; k < *len; ++k) {
                s += pl_toggleability(P, g, p).value();
                g = pl_rowmotion(P, g);
            }
            EXPECT_EQ(s, 0);
        }
    }
}

TEST(PPartitionRowmotion, DirectMatchesToggles)
{
    for (auto& P : connected_posets(5))
        for (int ell = 1; ell <= 3; ++ell)
            for_each_ppartition(P, ell, [&](const PPartition& T) {
                ASSERT_EQ(pp_rowmotion_by_toggles(P, T), pp_rowmotion_direct(P, T));
            });
}

TEST(PPartitionRowmotion, WorkedDiamondOrbit)
{
    PPSystem S(make("rect:2x2"), 3);
    bool found = false;
    for (auto& o : S.orbits().orbits) {
        std::multiset<long long> m;
        for (auto x : o) m.insert(S.ddeg[x]);
        found = found || (o.size() == 4 && m == std::multiset<long long>{2, 2, 4, 4});
    }
    EXPECT_TRUE(found);
    EXPECT_EQ(homomesy_value(S.orbits(), [&](auto x) { return Rational(S.ddeg[x]); }), 3);
}

TEST(PPartitionRowmotion, MinusculeOrderIsCoxeterNumber)
{
    for (auto s : {"rect:2x3", "rect:3x3", "shifted:4", "prop:3", "e6"}) {
        Poset P = make(s);
        int h = coxeter_number(parse_spec(s));
        for (int ell = 1; ell <= (P.size() > 12 ? 2 : 4); ++ell) {
            PPSystem S(P, ell);
            EXPECT_EQ(S.orbits().order(), h) << s << " " << ell;
            // T_i = 0 below rank i, ell from rank i on
            std::vector<std::uint32_t> stair;
            for (int i = 0; i <= P.rank() + 1; ++i) {
                PPartition T{ell, std::vector<int>(P.size())};
                for (int p = 0; p < P.size(); ++p) T.values[p] = P.rank(p) < i ? 0 : ell;
                stair.push_back(S.space.find(T));
            }
            for (int i = 0; i <= P.rank() + 1; ++i) EXPECT_EQ(S.next[stair[i]], stair[(i + 1) % h]);
        }
    }
}

TEST(PPartitionRowmotion, DdegHomomesy)
{
    for (auto s : {"rect:2x3", "shifted:4", "root:A3", "root:B3", "root:H3", "root:I2(5)"}) {
        Poset P = make(s);
        auto cert = tcde_solve(IdealLattice(P));
        ASSERT_TRUE(cert);
        for (int ell = 1; ell <= 3; ++ell) {
            PPSystem S(P, ell);
            auto part = S.orbits();
            EXPECT_EQ(homomesy_value(part, [&](auto x) { return Rational(S.ddeg[x]); }), ell * cert->delta) << s;
            for (int p = 0; p < P.size(); ++p)
                EXPECT_EQ(homomesy_value(part, [&](auto x) { return Rational(S.toggleability(x, p)); }), 0);
        }
    }
}

TEST(PPartitionRowmotion, D4HasOrbitOf54)
{
    PPSystem S(make("root:D4"), 2);
    auto lengths = S.orbits().lengths();
    EXPECT_NE(std::find(lengths.begin(), lengths.end(), 54u), lengths.end());
    EXPECT_FALSE(homomesy_value(S.orbits(), [&](auto x) { return Rational(S.ddeg[x]); }));
}

TEST(Dualization, EquivariantBijection)
{
    for (int n = 2; n <= 6; ++n)
        for (auto& P : connected_posets(n)) {
            CombinatorialSystem SP(P);
            for (Mask A : autonomous_subsets(P)) {
                if (popcount(A) < 2) continue;
                Poset Q = dualize_autonomous(P, A);
                CombinatorialSystem SQ(Q);
                auto psi = dualization_bijection(SP.lattice, SQ.lattice, A);
                std::vector<char> hit(SQ.size(), 0);
                for (std::size_t i = 0; i < SP.size(); ++i) {
                    ASSERT_FALSE(hit[psi[i]]);
                    hit[psi[i]] = 1;
                    ASSERT_EQ(psi[SP.next[i]], SQ.next[psi[i]]);
                }
                EXPECT_EQ(psi[0], 0u);
            }
        }
}

TEST(Matching, AgreesWithPermutationSearch)
{
    std::mt19937 rng(13);
    for (int t = 0; t < 300; ++t) {
        std::size_t n = rng() % 6;
        std::vector<OrbitKey> a, b;
        for (std::size_t i = 0; i < n; ++i) {
            a.emplace_back(1 + rng() % 2, rng() % 2);
            b.emplace_back(1 + rng() % 2, rng() % 2);
        }
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        bool exists = false;
        do exists = exists || valid_matching(a, b, perm);
        while (std::next_permutation(perm.begin(), perm.end()));
        auto m = match_orbits(a, b);
        EXPECT_EQ(m.has_value(), exists);
        if (m) EXPECT_TRUE(valid_matching(a, b, *m));
    }
    EXPECT_FALSE(match_orbits({{1, 0}}, {}));
}

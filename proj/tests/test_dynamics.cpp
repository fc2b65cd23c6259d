#include <doctest.h>

#include "betatile/dynamics.hpp"

using namespace betatile;

namespace {

BetaField make(std::initializer_list<long> desc, unsigned bits = 96) {
    IntPoly p;
    for (auto it = std::rbegin(desc); it != std::rend(desc); ++it) p.push_back(Int(*it));
    return BetaField::make(p, bits);
}

bool contains(const std::vector<FieldElement>& set, const FieldElement& x) {
    for (const auto& e : set)
        if (e == x) return true;
    return false;
}

}  // namespace

TEST_CASE("t_step on beta^2 = 3beta+2") {
    BetaField f = make({1, -3, -2});
    CHECK(t_step(f.zero()).is_zero());
    // x = beta-3: beta*x = 2, digit 2 -> T(x) = 0
    CHECK(t_step(f.beta() - Rat(3)).is_zero());
    // x = 1/2 -> beta/2 - 1
    FieldElement half = f.from_rational(Rat(1, 2));
    CHECK(t_step(half) == f.beta() * Rat(1, 2) - Rat(1));
    CHECK_THROWS_AS(t_step(f.one()), Error);
}

TEST_CASE("greedy_expansion examples") {
    BetaField f = make({1, -3, -2});
    CHECK(greedy_expansion(f.zero(), 5) == std::vector<int>{0, 0, 0, 0, 0});
    CHECK(greedy_expansion(f.beta() - Rat(3), 2) == std::vector<int>{2, 0});

    // golden base, x = 1/2: partial-sum identity x - sum a_k beta^-k = beta^-n T^n(x)
    BetaField g = make({1, -1, -1});
    FieldElement x = g.from_rational(Rat(1, 2));
    int n = 4;
    auto digits = greedy_expansion(x, n);
    FieldElement acc = g.zero();
    FieldElement cur = x;
    for (int k = 0; k < n; ++k) {
        acc = acc + g.one().pow_beta(-(k + 1)) * Rat(digits[k]);
        cur = t_step(cur);
    }
    CHECK(x - acc == cur.pow_beta(-n));
}

TEST_CASE("parry data: beta^2 = 2beta+2 (V = {0, beta-2}, L = Z(beta-3))") {
    BetaField f = make({1, -2, -2});
    ParryData p = parry_data(f);
    CHECK(p.d_one == std::vector<int>{2, 2});
    CHECK(p.d_one_finite);
    CHECK(p.quasi_period == std::vector<int>{2, 1});
    REQUIRE(p.V.size() == 2);
    CHECK(p.V[0] == f.zero());
    CHECK(p.V[1] == f.beta() - Rat(2));
    REQUIRE(p.V_hat.size() == 2);
    CHECK(p.V_hat[0] == f.beta() - Rat(2));
    CHECK(p.V_hat[1] == f.one());
    // successor: hat(0) = beta-2, hat(beta-2) = 1
    CHECK(p.hat(0) == f.beta() - Rat(2));
    CHECK(p.hat(1) == f.one());
    // L = Z (beta - 3)
    CHECK(p.L_rank == 1);
    CHECK(p.qm_holds);
    CHECK(p.in_L(f.beta() - Rat(3)));
    CHECK(p.in_L(f.element({Rat(6), Rat(-2)})));
    CHECK(!p.in_L(f.one()));
    CHECK(!p.in_L(f.beta()));
}

TEST_CASE("parry data: beta^3 = 2beta^2 - beta + 1 (QM holds, #V > deg)") {
    BetaField f = make({1, -2, 1, -1});
    ParryData p = parry_data(f);
    FieldElement b = f.beta(), b2 = f.beta() * f.beta();
    // V_hat = {1, beta-1, beta^2-beta-1, beta^2-2beta+1}
    REQUIRE(p.V_hat.size() == 4);
    CHECK(contains(p.V_hat, f.one()));
    CHECK(contains(p.V_hat, b - Rat(1)));
    CHECK(contains(p.V_hat, b2 - b - Rat(1)));
    CHECK(contains(p.V_hat, b2 - b * Rat(2) + Rat(1)));
    CHECK(p.V.size() == 4);
    CHECK(p.L_rank == 2);
    CHECK(p.qm_holds);
    // L = <beta-2, beta^2-2beta>
    CHECK(p.in_L(b - Rat(2)));
    CHECK(p.in_L(b2 - b * Rat(2)));
    CHECK(!p.in_L(f.one()));
}

TEST_CASE("parry data: beta^3 = beta + 1 (smallest Pisot, QM fails)") {
    BetaField f = make({1, 0, -1, -1});
    ParryData p = parry_data(f);
    CHECK(p.d_one == std::vector<int>{1, 0, 0, 0, 1});
    CHECK(p.d_one_finite);
    REQUIRE(p.V_hat.size() == 5);
    FieldElement b = f.beta(), b2 = f.beta() * f.beta();
    CHECK(contains(p.V_hat, f.one()));
    CHECK(contains(p.V_hat, b - Rat(1)));
    CHECK(contains(p.V_hat, b2 - b));
    CHECK(contains(p.V_hat, f.one() + b - b2));
    CHECK(contains(p.V_hat, b2 - Rat(1)));
    CHECK(p.L_rank == 3);  // L = Z[beta]
    CHECK(!p.qm_holds);
}

TEST_CASE("parry data: non-simple Parry number beta^2 = 3beta - 1") {
    BetaField f = make({1, -3, 1});
    ParryData p = parry_data(f);
    CHECK(!p.d_one_finite);
    // d(1) = 2 1 1 1 ... (preperiod 2, period 1)
    REQUIRE(p.d_one.size() >= 2);
    CHECK(p.d_one[0] == 2);
    CHECK(p.d_one[1] == 1);
    REQUIRE(p.V_hat.size() == 2);
    CHECK(p.V_hat[0] == f.beta() - Rat(2));
    CHECK(p.V_hat[1] == f.one());
}

TEST_CASE("quasi-greedy expansion is lexicographically >= its shifts") {
    for (auto desc : {std::initializer_list<long>{1, -3, -2},
                      std::initializer_list<long>{1, -2, -2},
                      std::initializer_list<long>{1, 0, -1, -1},
                      std::initializer_list<long>{1, -3, 1}}) {
        BetaField f = make(desc);
        ParryData p = parry_data(f);
        // build a long prefix of d*(1)
        std::vector<int> d;
        for (int x : p.quasi_preperiod) d.push_back(x);
        while (d.size() < 40)
            for (int x : p.quasi_period) d.push_back(x);
        d.resize(40);
        for (size_t s = 1; s + 10 < d.size(); ++s) {
            std::vector<int> shifted(d.begin() + s, d.begin() + s + 10);
            std::vector<int> prefix(d.begin(), d.begin() + 10);
            CHECK(shifted <= prefix);
        }
    }
}

TEST_CASE("t_preimages on beta^2 = 3beta+2") {
    BetaField f = make({1, -3, -2});
    auto all = t_preimages(f.zero(), false);
    REQUIRE(all.size() == 4);  // {0, 1/beta, 2/beta, 3/beta}
    auto integral = t_preimages(f.zero(), true);
    REQUIRE(integral.size() == 2);  // {0, beta-3}; cardinality |N(beta)|
    CHECK(contains(integral, f.zero()));
    CHECK(contains(integral, f.beta() - Rat(3)));
    // x = 0.9 loses the top digit
    auto high = t_preimages(f.from_rational(Rat(9, 10)), false);
    CHECK(high.size() == 3);  // a in {0,1,2}
}

TEST_CASE("preimages invert t_step") {
    BetaField f = make({1, -2, -2});
    FieldElement x = f.element({Rat(1, 3), Rat(1, 5)});
    if (compare(x, Rat(0)) != Ordering::Less && compare(x, Rat(1)) == Ordering::Less) {
        FieldElement y = t_step(x);
        auto pre = t_preimages(y, false);
        CHECK(contains(pre, x));
    }
}

TEST_CASE("beta integers: beta^2 = 3beta+2, first five are 0,1,2,3,beta") {
    BetaField f = make({1, -3, -2});
    ParryData p = parry_data(f);
    auto bi = beta_integers(p, 5);
    REQUIRE(bi.values.size() == 5);
    CHECK(bi.values[0] == f.zero());
    CHECK(bi.values[1] == f.one());
    CHECK(bi.values[2] == f.from_rational(Rat(2)));
    CHECK(bi.values[3] == f.from_rational(Rat(3)));
    CHECK(bi.values[4] == f.beta());
    // distances 1,1,1,beta-3
    CHECK(bi.distances[3] == f.beta() - Rat(3));
}

TEST_CASE("beta integers: any base, n = 1 gives {0}") {
    BetaField f = make({1, -2, -2});
    ParryData p = parry_data(f);
    auto bi = beta_integers(p, 1);
    REQUIRE(bi.values.size() == 1);
    CHECK(bi.values[0].is_zero());
}

TEST_CASE("beta integers: golden base prefix sums and membership identity") {
    BetaField f = make({1, -1, -1});
    ParryData p = parry_data(f);
    int n = 12;
    auto bi = beta_integers(p, n);
    // values ascend and every entry z satisfies T^k(beta^-k z) = 0 at the
    // minimal k with beta^-k z < 1
    for (int i = 0; i + 1 < n; ++i)
        CHECK(compare(bi.values[i], bi.values[i + 1]) == Ordering::Less);
    for (const auto& z : bi.values) {
        if (z.is_zero()) continue;
        FieldElement scaled = z;
        int k = 0;
        while (compare(scaled, Rat(1)) != Ordering::Less) {
            scaled = scaled.div_beta();
            ++k;
        }
        FieldElement cur = scaled;
        for (int i = 0; i < k; ++i) cur = t_step(cur);
        CHECK(cur.is_zero());
    }
    // golden distance word starts 1, (beta-1), 1, 1, (beta-1)
    CHECK(bi.distances[0] == f.one());
    CHECK(bi.distances[1] == f.beta() - Rat(1));
    CHECK(bi.distances[2] == f.one());
    CHECK(bi.distances[3] == f.one());
    CHECK(bi.distances[4] == f.beta() - Rat(1));
}

TEST_CASE("conjugation bound along orbits") {
    BetaField f = make({1, -3, -2});
    for (auto start : {std::vector<Rat>{Rat(1, 7), Rat(0)},
                       std::vector<Rat>{Rat(-3), Rat(1)},
                       std::vector<Rat>{Rat(2, 5), Rat(0)}}) {
        FieldElement x = f.element(std::vector<Rat>(start));
        if (compare(x, Rat(0)) == Ordering::Less || compare(x, Rat(1)) != Ordering::Less)
            continue;
        for (int pl = 0; pl < f.num_conjugate_places(); ++pl) {
            Rat xmod = x.conjugate_box(pl).mod_upper();
            Rat bmod = f.conj_mod_upper(pl);
            Rat tail = f.tail_bound(pl);
            FieldElement cur = x;
            Rat bpow(1);
            for (int n = 0; n < 12; ++n) {
                Rat bound = xmod * bpow + tail;
                CHECK(cur.conjugate_box(pl).mod_lower() <= bound);
                cur = t_step(cur);
                bpow *= bmod;
            }
        }
    }
}

TEST_CASE("hermite basis canonical form") {
    // rows spanning the same module in different order give the same HNF
    std::vector<std::vector<Int>> a{{Int(-3), Int(1)}, {Int(6), Int(-2)}};
    std::vector<std::vector<Int>> b{{Int(3), Int(-1)}};
    CHECK(hermite_basis(a) == hermite_basis(b));
    std::vector<std::vector<Int>> c{{Int(2), Int(0), Int(4)}, {Int(0), Int(3), Int(1)},
                                    {Int(2), Int(3), Int(5)}};
    auto h = hermite_basis(c);
    CHECK(h.size() == 2);  // third row is the sum of the first two
}

#include <doctest.h>

#include <random>

#include "fflcm/tpoly.hpp"

using namespace fflcm;

namespace {

// Trial division by every monic polynomial of degree <= deg/2.
bool irreducible_by_trial_division(const TRing& R, const TPoly& f) {
    for (int d = 1; 2 * d <= f.deg(); ++d)
        for (const auto& g : R.enumerate_monic(d))
            if (R.divides(g, f)) return false;
    return true;
}

}  // namespace

TEST_CASE("arithmetic examples") {
    Field F2(2), F3(3);
    TRing R2(F2), R3(F3);
    CHECK(R2.gcd(R2.parse("T^2+T"), R2.parse("T^2+1")) == R2.parse("T+1"));
    CHECK(R3.mul(R3.parse("T+1"), R3.parse("T+2")) == R3.parse("T^2+2"));
    auto a = R3.parse("2*T^4+T+1");
    auto [s, r] = R3.divmod(a, R3.one());
    CHECK(s == a);
    CHECK(r.is_zero());
    CHECK(R3.gcd(R3.zero(), R3.zero()).is_zero());
    CHECK_THROWS_AS(R3.divmod(a, R3.zero()), std::domain_error);
    CHECK(R3.zero().deg() == kZeroDegree);
}

TEST_CASE("divmod and xgcd identities on random inputs") {
    Field F = Field::parse("9");
    TRing R(F);
    std::mt19937_64 rng(7);
    for (int it = 0; it < 200; ++it) {
        TPoly a = R.random(10, rng), b = R.random(6, rng);
        if (b.is_zero()) continue;
        auto [s, r] = R.divmod(a, b);
        CHECK(R.add(R.mul(s, b), r) == a);
        CHECK(r.deg() < b.deg());
        auto x = R.xgcd(a, b);
        CHECK(R.add(R.mul(x.s, a), R.mul(x.t, b)) == x.g);
        CHECK(x.g == R.gcd(a, b));
    }
}

TEST_CASE("literal grammar round trip") {
    Field F4(2, 2);
    TRing R(F4);
    TPoly f = R.parse("(a+1)*T^2+a");
    CHECK(f.deg() == 2);
    CHECK(R.parse(R.format(f)) == f);
    Field F3(3);
    TRing R3(F3);
    CHECK(R3.format(R3.parse("T^3+2*T+1")) == "T^3+2*T+1");
    CHECK(R3.parse("-T") == R3.parse("2T"));
    CHECK_THROWS_AS(R3.parse("T^^2"), ValidationError);
    CHECK_THROWS_AS(R3.parse("a+T"), ValidationError);
    CHECK_THROWS_AS(R3.parse("T+x"), ValidationError);
}

TEST_CASE("is_irreducible examples") {
    Field F2(2), F3(3);
    TRing R2(F2), R3(F3);
    CHECK(R2.is_irreducible(R2.parse("T^2+T+1")));
    CHECK_FALSE(R3.is_irreducible(R3.parse("T^2+2")));
    CHECK(R2.is_irreducible(R2.parse("T^4+T+1")));
    CHECK_FALSE(R2.is_irreducible(R2.parse("T^4+T^2+1")));
    CHECK_THROWS_AS(R2.is_irreducible(R2.one()), std::domain_error);
}

TEST_CASE("Rabin test agrees with trial division") {
    for (const char* spec : {"2", "3", "4", "5"}) {
        Field F = Field::parse(spec);
        TRing R(F);
        const int maxd = F.q() <= 3 ? 6 : 4;
        for (int d = 1; d <= maxd; ++d)
            for (const auto& f : R.enumerate_monic(d)) CHECK(R.is_irreducible(f) == irreducible_by_trial_division(R, f));
    }
}

TEST_CASE("factor examples") {
    Field F2(2), F3(3);
    TRing R2(F2), R3(F3);
    auto f1 = R2.factor(R2.parse("T^2+1"));
    CHECK(f1.unit == F2.one());
    REQUIRE(f1.factors.size() == 1);
    CHECK(f1.factors.begin()->first == R2.parse("T+1"));
    CHECK(f1.factors.begin()->second == 2);

    auto f2 = R3.factor(R3.parse("2*T^2+2*T"));
    CHECK(f2.unit == Elem{2});
    CHECK(f2.factors.size() == 2);
    CHECK(f2.factors.at(R3.parse("T")) == 1);
    CHECK(f2.factors.at(R3.parse("T+1")) == 1);
    CHECK_THROWS_AS(R3.factor(R3.zero()), std::domain_error);
}

TEST_CASE("factor round trip on random inputs, q in {2,3,4,5,9}") {
    std::mt19937_64 rng(2024);
    for (const char* spec : {"2", "3", "4", "5", "9"}) {
        Field F = Field::parse(spec);
        TRing R(F);
        for (int it = 0; it < 1000; ++it) {
            TPoly a = R.random(12, rng);
            if (a.is_zero()) continue;
            // Plant repeated factors and p-th powers regularly.
            if (it % 4 == 0) a = R.mul(a, R.pow(R.random(3, rng), F.p()));
            if (it % 7 == 0) a = R.mul(a, R.mul(R.random(2, rng), R.random(2, rng)));
            if (a.is_zero()) continue;
            auto fac = R.factor(a, static_cast<std::uint64_t>(it));
            REQUIRE(R.expand(fac) == a);
            int degsum = 0;
            for (const auto& [P, e] : fac.factors) {
                CHECK(P.lead().is_one());
                CHECK(R.is_irreducible(P));
                CHECK(R.valuation(a, P) == e);
                degsum += e * P.deg();
            }
            CHECK(degsum == a.deg());
            TPoly rad = R.radical(fac);
            CHECK(R.squarefree_decomposition(rad).size() <= 1);
        }
    }
}

TEST_CASE("factorization does not depend on the splitting seed") {
    Field F(5);
    TRing R(F);
    std::mt19937_64 rng(3);
    for (int it = 0; it < 50; ++it) {
        TPoly a = R.random(14, rng);
        if (a.is_zero()) continue;
        auto f1 = R.factor(a, 1), f2 = R.factor(a, 99);
        CHECK(f1.factors == f2.factors);
    }
}

TEST_CASE("monic enumeration") {
    Field F2(2);
    TRing R(F2);
    auto m2 = R.enumerate_monic(2);
    REQUIRE(m2.size() == 4);
    CHECK(m2[0] == R.parse("T^2"));
    CHECK(m2[1] == R.parse("T^2+1"));
    CHECK(m2[2] == R.parse("T^2+T"));
    CHECK(m2[3] == R.parse("T^2+T+1"));
    for (std::uint64_t i = 0; i < 16; ++i) CHECK(R.monic_index(R.monic_from_index(4, i)) == i);
    CHECK(R.enumerate_monic(0).size() == 1);
}

TEST_CASE("prime counts satisfy sum_{d|n} d*pi(d) = q^n") {
    Field F3(3), F2(2);
    CHECK(TRing(F3).primes_of_degree(1).size() == 3);
    CHECK(TRing(F2).primes_of_degree(4).size() == 3);
    for (const char* spec : {"2", "3", "4", "5"}) {
        Field F = Field::parse(spec);
        TRing R(F);
        const int maxd = F.q() == 2 ? 8 : (F.q() == 3 ? 6 : 4);
        std::vector<std::size_t> pi(static_cast<std::size_t>(maxd) + 1);
        for (int d = 1; d <= maxd; ++d) pi[d] = R.primes_of_degree(d).size();
        for (int n = 1; n <= maxd; ++n) {
            std::uint64_t s = 0;
            for (int d = 1; d <= n; ++d)
                if (n % d == 0) s += static_cast<std::uint64_t>(d) * pi[d];
            CHECK(s == R.count_monic(n));
        }
        // Cross-check against filtering all monics with Rabin.
        for (int d = 1; d <= std::min(maxd, 4); ++d) {
            std::size_t cnt = 0;
            for (const auto& Q : R.enumerate_monic(d)) cnt += R.is_irreducible(Q) ? 1 : 0;
            CHECK(cnt == pi[d]);
        }
    }
}

TEST_CASE("valuation") {
    Field F2(2);
    TRing R(F2);
    CHECK(R.valuation(R.parse("T^2+1"), R.parse("T+1")) == 2);
    CHECK(R.valuation(R.parse("T+1"), R.parse("T")) == 0);
    CHECK_THROWS_AS(R.valuation(R.zero(), R.parse("T")), std::domain_error);
}

TEST_CASE("monic divisors") {
    Field F3(3);
    TRing R(F3);
    auto divs = R.monic_divisors(R.factor(R.parse("T^2*(T+1)")));
    CHECK(divs.size() == 6);
    for (const auto& d : divs) CHECK(R.divides(d, R.parse("T^3+T^2")));
}

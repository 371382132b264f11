#include <doctest.h>

#include <random>

#include "fflcm/irreducibility.hpp"
#include "fflcm/local_counts.hpp"

using namespace fflcm;

namespace {

struct Ctx {
    Field F;
    TRing R;
    XRing X;
    explicit Ctx(const std::string& spec) : F(Field::parse(spec)), R(F), X(R) {}
    XPoly poly(std::vector<std::string> c) const { return X.parse(c); }
};

struct CorpusEntry {
    const char* field;
    std::vector<std::string> coeffs;
};

const std::vector<CorpusEntry> kCorpus = {
    {"3", {"T", "0", "1"}},        // X^2 + T
    {"2", {"T", "1", "1"}},        // X^2 + X + T
    {"3", {"T", "2", "0", "1"}},   // X^3 - X + T
    {"3", {"T", "0", "0", "1"}},   // X^3 + T
    {"2", {"T", "0", "0", "1"}},   // X^3 + T
    {"5", {"1", "T", "1"}},        // X^2 + T X + 1
};

// Brute-force roots mod P.
std::vector<TPoly> brute_roots(const Ctx& c, const XPoly& f, const TPoly& P) {
    std::vector<TPoly> out;
    const std::uint64_t n = c.R.count_monic(P.deg());
    for (std::uint64_t i = 0; i < n; ++i) {
        TPoly x = c.R.from_index(P.deg(), i);
        if (c.X.eval_mod(f, x, P).is_zero()) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("roots mod P examples") {
    Ctx c("3");
    auto f = c.poly({"T", "0", "1"});
    CHECK(roots_mod_prime(c.X, f, c.R.parse("T")) == std::vector<TPoly>{c.R.zero()});
    TPoly P = c.R.parse("T+2");
    CHECK(roots_mod_prime(c.X, f, P) == brute_roots(c, f, P));
    CHECK_THROWS_AS(roots_mod_prime(c.X, c.poly({"T", "0", "T"}), c.R.parse("T")), std::domain_error);
}

TEST_CASE("X^2 + 1 has two roots mod P iff -1 is a square in the residue field") {
    for (const char* spec : {"3", "5", "7"}) {
        Ctx c(spec);
        auto f = c.poly({"1", "0", "1"});
        for (const auto& P : c.R.enumerate_primes(3)) {
            const std::uint64_t Q = ResidueField(c.R, P).size();
            const std::size_t want = (Q % 4 == 1) ? 2 : 0;
            CHECK(roots_mod_prime(c.X, f, P).size() == want);
            CHECK(brute_roots(c, f, P).size() == want);
        }
    }
}

TEST_CASE("roots mod P agree with brute force") {
    std::mt19937_64 rng(71);
    for (const char* spec : {"2", "3", "4", "5", "9"}) {
        Ctx c(spec);
        const int maxdeg = c.F.q() <= 3 ? 4 : 2;
        const auto primes = c.R.enumerate_primes(maxdeg);
        for (int it = 0; it < 40; ++it) {
            std::vector<TPoly> co;
            for (int i = 0; i <= 4; ++i) co.push_back(c.R.random(3, rng));
            XPoly f(co);
            if (f.deg() < 1) continue;
            const TPoly& P = primes[rng() % primes.size()];
            ResidueField k(c.R, P);
            ResiduePolyRing RP(k);
            if (RP.reduce(f).empty()) continue;
            CHECK(roots_mod_prime(c.X, f, P, it) == brute_roots(c, f, P));
        }
    }
}

TEST_CASE("residue-field Rabin test matches F_q[T] over a degree-one prime") {
    for (const char* spec : {"2", "3", "4"}) {
        Ctx c(spec);
        ResidueField k(c.R, c.R.parse("T"));
        ResiduePolyRing RP(k);
        for (int d = 1; d <= 4; ++d)
            for (const auto& g : c.R.enumerate_monic(d)) {
                RPoly r;
                for (Elem e : g.c) r.push_back(c.R.constant(e));
                while (!r.empty() && r.back().is_zero()) r.pop_back();
                CHECK(RP.is_irreducible(r) == c.R.is_irreducible(g));
            }
    }
}

TEST_CASE("rho examples") {
    Ctx c("3");
    auto f = c.poly({"T", "0", "1"});
    TPoly T = c.R.parse("T");
    CHECK(rho(c.X, f, T, 1) == 1);
    CHECK(rho(c.X, f, T, 2) == 0);
    CHECK(oracle_rho(c.X, f, T, 2) == 0);
    for (int k = 2; k <= 7; ++k) CHECK(rho(c.X, f, T, k) == 0);
    auto prof = rho_profile(c.X, f, T, 5);
    CHECK(prof.values == std::vector<std::uint64_t>{1, 0, 0, 0, 0});
    CHECK(prof.stabilized_at <= 3);
    CHECK(prof.mu == 1);
    CHECK(prof.guaranteed_from == 3);
    CHECK(prof.invariants_hold);

    auto g = c.poly({"T", "0", "0", "1"});  // inseparable
    CHECK(local_resultant(c.X, g).is_one());
    CHECK(oracle_rho(c.X, g, T, 2) == 0);
    for (const auto& P : c.R.enumerate_primes(2)) {
        CHECK(rho(c.X, g, P, 1) == 1);
        for (int k = 2; k <= 4; ++k) CHECK(rho(c.X, g, P, k, {.paranoid = true}) == 0);
    }

    TPoly P = c.R.parse("T+1");  // f = X^2 + 2 mod T+1, roots 1 and 2
    CHECK(rho(c.X, f, P, 1) == 2);
    // no roots mod P: nothing lifts
    for (const auto& Q : c.R.enumerate_primes(2))
        if (rho(c.X, f, Q, 1) == 0)
            for (int k = 2; k <= 4; ++k) CHECK(rho(c.X, f, Q, k) == 0);
}

TEST_CASE("rho agrees with the exhaustive oracle on the corpus") {
    int checked = 0;
    for (const auto& e : kCorpus) {
        Ctx c(e.field);
        XPoly f = c.poly(e.coeffs);
        const int q = static_cast<int>(c.F.q());
        for (const auto& P : c.R.enumerate_primes(6)) {
            for (int k = 1;; ++k) {
                // |P|^k <= 3^6
                double size = 1;
                for (int i = 0; i < k * P.deg(); ++i) size *= q;
                if (size > 729) break;
                const auto want = oracle_rho(c.X, f, P, k);
                CHECK(rho(c.X, f, P, k) == want);
                CHECK(rho(c.X, f, P, k, {.paranoid = true}) == want);
                CHECK(lifting_tree_counts(c.X, f, P, k).back() == want);
                ++checked;
            }
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("lifting tree matches the oracle for reducible polynomials too") {
    Ctx c("3");
    for (auto co : std::vector<std::vector<std::string>>{{"2*T^2", "0", "1"}, {"0", "T^2", "T"}, {"T^2", "2*T", "1"}}) {
        XPoly f = c.poly(co);
        for (const auto& P : c.R.enumerate_primes(2))
            for (int k = 1; k * P.deg() <= 6; ++k) {
                if (c.X.content(f).deg() > 0 && c.R.divides(P, c.X.content(f))) continue;
                CHECK(lifting_tree_counts(c.X, f, P, k).back() == oracle_rho(c.X, f, P, k));
            }
    }
}

TEST_CASE("profile invariants across the corpus") {
    for (const auto& e : kCorpus) {
        Ctx c(e.field);
        XPoly f = c.poly(e.coeffs);
        const auto bad = bad_primes(c.X, f);
        for (const auto& P : c.R.enumerate_primes(3)) {
            auto prof = rho_profile(c.X, f, P, 8, {.paranoid = true});
            CHECK(prof.invariants_hold);
            const bool is_bad = std::find(bad.begin(), bad.end(), P) != bad.end();
            if (!is_bad) {
                CHECK(prof.mu == 0);
                for (auto v : prof.values) CHECK(v <= static_cast<std::uint64_t>(f.deg()));
            }
            // fast path and full tree agree on every listed value
            CHECK(rho_profile(c.X, f, P, 8).values == prof.values);
        }
    }
}

TEST_CASE("lift count above a planted root set") {
    // f = X^2 - x1^2 - P^{a+b} r with v_P(x1) = b: then v_P(f'(x1)) = b, mu = 2b
    for (const char* spec : {"3", "5"}) {
        Ctx c(spec);
        std::mt19937_64 rng(13);
        for (const auto& P : c.R.enumerate_primes(1)) {
            for (int beta = 1; beta <= 2; ++beta) {
                const int alpha = 2 * beta + 1;
                TPoly w = c.R.random(0, rng);
                if (w.is_zero() || c.R.divides(P, w)) w = c.R.one();
                TPoly x1 = c.R.mul(w, c.R.pow(P, static_cast<std::uint64_t>(beta)));
                TPoly r = c.R.add(c.R.random(1, rng), c.R.one());
                if (c.R.divides(P, r)) r = c.R.add(r, c.R.one());
                const TPoly Pab = c.R.pow(P, static_cast<std::uint64_t>(alpha + beta));
                XPoly f({c.R.neg(c.R.add(c.R.mul(x1, x1), c.R.mul(Pab, r))), TPoly{}, c.R.one()});
                const TPoly res = local_resultant(c.X, f);
                REQUIRE(c.R.valuation(res, P) == 2 * beta);
                REQUIRE(alpha > 2 * beta);

                // S1 = {x1 + u P^alpha : u mod P^beta}
                const TPoly Pa = c.R.pow(P, static_cast<std::uint64_t>(alpha));
                const TPoly Pab1 = c.R.mul(Pab, P);
                const std::uint64_t nu = c.R.count_monic(beta * P.deg());
                const std::uint64_t nv = c.R.count_monic(P.deg());
                std::uint64_t lifts = 0;
                for (std::uint64_t iu = 0; iu < nu; ++iu) {
                    TPoly s = c.R.add(x1, c.R.mul(c.R.from_index(beta * P.deg(), iu), Pa));
                    CHECK(c.X.eval_mod(f, s, Pab).is_zero());
                    for (std::uint64_t iv = 0; iv < nv; ++iv) {
                        TPoly y = c.R.add(s, c.R.mul(c.R.from_index(P.deg(), iv), Pab));
                        if (c.X.eval_mod(f, y, Pab1).is_zero()) ++lifts;
                    }
                }
                CHECK(lifts == nu);
            }
        }
    }
}

TEST_CASE("inseparable descent preserves roots mod P via Frobenius") {
    for (auto [spec, co] : std::vector<std::pair<const char*, std::vector<std::string>>>{
             {"3", {"T", "0", "0", "1"}},
             {"3", {"T", "0", "0", "T", "0", "0", "1"}},
             {"2", {"T", "0", "1"}},
             {"2", {"T", "0", "T^2+T", "0", "1"}},
         }) {
        Ctx c(spec);
        XPoly f = c.poly(co);
        REQUIRE(irreducibility_guard(c.X, f).status == Irreducibility::Irreducible);
        const Descent d = c.X.inseparable_descent(f);
        REQUIRE(d.m >= 1);
        std::uint64_t pm = 1;
        for (int i = 0; i < d.m; ++i) pm *= c.F.p();
        for (const auto& P : c.R.enumerate_primes(3)) {
            const auto rf = roots_mod_prime(c.X, f, P);
            const auto rh = roots_mod_prime(c.X, d.h, P);
            std::vector<TPoly> image;
            for (const auto& x : rf) image.push_back(c.R.powmod(x, pm, P));
            std::sort(image.begin(), image.end());
            CHECK(image == rh);
            CHECK(descent_rho(c.X, f, P) == rf.size());
        }
    }
}

TEST_CASE("bad primes and guards") {
    Ctx c("3");
    CHECK(bad_primes(c.X, c.poly({"T", "0", "1"})) == std::vector<TPoly>{c.R.parse("T")});
    CHECK(bad_primes(c.X, c.poly({"T", "0", "0", "1"})).empty());
    // (X + T)^2 has a repeated factor
    CHECK_THROWS_AS(rho(c.X, c.poly({"T^2", "2*T", "1"}), c.R.parse("T"), 2), ValidationError);
    CHECK_THROWS_AS(rho(c.X, c.poly({"T", "T"}), c.R.parse("T+1"), 2), ValidationError);
    CHECK_THROWS_AS(oracle_rho(c.X, c.poly({"T", "0", "1"}), c.R.parse("T^2+1"), 7), ResourceError);
    CHECK_THROWS_AS(lifting_tree_counts(c.X, c.poly({"T", "0", "1"}), c.R.parse("T"), 100, {.max_level_degree = 50}),
                    ResourceError);
    // the shortcut keeps large k cheap
    CHECK(rho(c.X, c.poly({"T", "0", "1"}), c.R.parse("T"), 1000) == 0);
}

TEST_CASE("irreducibility guard") {
    for (const auto& e : kCorpus) {
        Ctx c(e.field);
        CHECK(irreducibility_guard(c.X, c.poly(e.coeffs)).status == Irreducibility::Irreducible);
    }
    Ctx c("3");
    auto st = [&](std::vector<std::string> co) { return irreducibility_guard(c.X, c.poly(co)).status; };
    CHECK(st({"2*T^2", "0", "1"}) == Irreducibility::Reducible);            // X^2 - T^2
    CHECK(st({"0", "T", "1"}) == Irreducibility::Reducible);                // X(X + T)
    CHECK(st({"T", "T"}) == Irreducibility::Reducible);                     // T(X + 1)
    CHECK(st({"T+1", "1"}) == Irreducibility::Irreducible);
    CHECK(st({"2", "0", "1"}) == Irreducibility::Reducible);                // X^2 - 1
    CHECK(st({"1", "0", "1"}) == Irreducibility::Irreducible);              // X^2 + 1 over F_3
    CHECK(st({"T", "T^2", "0", "0", "1"}) == Irreducibility::Irreducible);  // Eisenstein at T
    // reduces mod T to X^4 + X + 2, irreducible over F_3
    REQUIRE(c.R.is_irreducible(c.R.parse("T^4+T+2")));
    CHECK(st({"T^2+2", "T^2+1", "0", "T^2", "1"}) == Irreducibility::Irreducible);
    CHECK(st({"T^2+2", "0", "0", "T^2", "1"}) == Irreducibility::Reducible);  // root X = -1
    // (X^2 + T)(X^2 + T + 1): no roots, no criterion can certify it
    CHECK(st({"T^2+T", "0", "2*T+1", "0", "1"}) != Irreducibility::Irreducible);
    CHECK(to_string(Irreducibility::Unverified) == "unverified");
}

TEST_CASE("root finding in residue fields beyond 64-bit size") {
    for (const char* spec : {"2", "3", "9"}) {
        Ctx c(spec);
        const int deg = c.F.q() == 2 ? 70 : (c.F.q() == 3 ? 45 : 25);
        TPoly P;
        for (std::uint64_t i = 0;; ++i) {
            P = c.R.monic_from_index(deg, i);
            if (c.R.is_irreducible(P)) break;
        }
        const ResidueField k(c.R, P);
        const ResiduePolyRing RP(k);
        CHECK_THROWS_AS(k.size(), ResourceError);
        std::mt19937_64 rng(5);
        for (int it = 0; it < 3; ++it) {
            std::vector<TPoly> planted;
            for (int i = 0; i < 3; ++i) planted.push_back(k.random(rng));
            RPoly f = {c.R.one()};
            for (const auto& a : planted) f = RP.mul(f, {c.R.neg(a), c.R.one()});
            // times X^2 - s with s a non-square (or an Artin-Schreier-type quadratic in characteristic 2)
            RPoly quad = {k.random(rng), c.F.p() == 2 ? c.R.one() : TPoly{}, c.R.one()};
            if (RP.is_irreducible(quad)) f = RP.mul(f, quad);
            std::sort(planted.begin(), planted.end());
            planted.erase(std::unique(planted.begin(), planted.end()), planted.end());
            CHECK(RP.roots(f, static_cast<std::uint64_t>(it)) == planted);
        }
        // an irreducible cubic over F_q stays irreducible when deg P is prime to 3
        if (deg % 3 != 0) {
            const XPoly cubic = c.F.q() == 2 ? c.poly({"1", "1", "0", "1"}) : c.poly({"1", "2", "0", "1"});
            CHECK(RP.is_irreducible(RP.reduce(cubic)));
        }
    }
}

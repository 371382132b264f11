#include <doctest.h>

#include <map>
#include <random>

#include "fflcm/xpoly.hpp"

using namespace fflcm;

namespace {

using Matrix = std::vector<std::vector<TPoly>>;

// Determinant by cofactor expansion along the first row.
TPoly cofactor_det(const TRing& R, const Matrix& M) {
    const std::size_t n = M.size();
    if (n == 0) return R.one();
    if (n == 1) return M[0][0];
    TPoly acc;
    for (std::size_t j = 0; j < n; ++j) {
        if (M[0][j].is_zero()) continue;
        Matrix minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<TPoly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(M[i][k]);
            minor.push_back(std::move(row));
        }
        TPoly term = R.mul(M[0][j], cofactor_det(R, minor));
        acc = (j % 2 == 0) ? R.add(acc, term) : R.sub(acc, term);
    }
    return acc;
}

TPoly sylvester(const TRing& R, const XPoly& f, const XPoly& g) {
    const int m = f.deg(), n = g.deg();
    const int N = m + n;
    Matrix S(static_cast<std::size_t>(N), std::vector<TPoly>(static_cast<std::size_t>(N)));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) S[r][r + i] = f.coeff(static_cast<std::size_t>(m - i));
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) S[n + r][r + i] = g.coeff(static_cast<std::size_t>(n - i));
    return cofactor_det(R, S);
}

XPoly random_xpoly(const TRing& R, int dx, int dt, std::mt19937_64& rng) {
    std::vector<TPoly> c;
    for (int i = 0; i <= dx; ++i) c.push_back(R.random(dt, rng));
    return XPoly(std::move(c));
}

}  // namespace

TEST_CASE("eval examples") {
    Field F3(3);
    TRing R(F3);
    XRing X(R);
    XPoly f = X.parse({"T", "0", "1"});
    CHECK(X.eval(f, R.parse("T")) == R.parse("T^2+T"));
    CHECK(X.eval(f, R.parse("T+1")) == R.parse("T^2+1"));
    for (const auto& Q : R.enumerate_monic(4)) CHECK(X.eval(f, Q).deg() == 8);
    TPoly m = R.parse("T^3+2*T+1");
    std::mt19937_64 rng(1);
    for (int i = 0; i < 50; ++i) {
        TPoly Q = R.random(7, rng);
        CHECK(X.eval_mod(f, Q, m) == R.rem(X.eval(f, Q), m));
    }
}

TEST_CASE("separability examples") {
    Field F3(3);
    TRing R(F3);
    XRing X(R);
    CHECK(X.is_separable(X.parse({"T", "0", "1"})));
    CHECK_FALSE(X.is_separable(X.parse({"T", "0", "0", "1"})));
    CHECK_FALSE(X.is_separable(X.parse({"1", "0", "0", "T", "0", "0", "1"})));
    XPoly g = X.parse({"T^2", "T", "1"});
    CHECK(X.derivative_x(g) == X.parse({"T", "2"}));
    CHECK(X.derivative_t(g) == X.parse({"2*T", "1"}));
}

TEST_CASE("json coefficient form") {
    Field F3(3);
    TRing R(F3);
    XRing X(R);
    XPoly f = X.parse_json(R"(["T", "0", "1"])");
    CHECK(X.format(f) == "X^2+T");
    CHECK(X.to_strings(f) == std::vector<std::string>{"T", "0", "1"});
    CHECK_THROWS_AS(X.parse_json("[\"T\", "), ValidationError);
    CHECK(X.parse_json("[\"T\", \"0\"]") == X.constant(R.parse("T")));
    CHECK_THROWS_AS(X.parse_json("{\"a\": 1}"), ValidationError);
    CHECK_THROWS_AS(X.parse_json("[1.5]"), ValidationError);
}

TEST_CASE("resultant examples") {
    Field F3(3);
    TRing R(F3);
    XRing X(R);
    XPoly f = X.parse({"T", "0", "1"}), g = X.parse({"0", "2"});
    TPoly oracle = sylvester(R, f, g);
    CHECK(oracle == R.parse("T"));
    auto res = X.resultant_x(f, g);
    CHECK(res.value == oracle);
    CHECK_FALSE(res.degenerate);
    CHECK(X.resultant_x(f, f).value.is_zero());
    auto deg0 = X.resultant_x(X.constant(R.parse("T")), X.constant(R.parse("T+1")));
    CHECK(deg0.degenerate);
    CHECK(deg0.value.is_one());
}

TEST_CASE("resultant agrees with Sylvester determinant") {
    std::mt19937_64 rng(11);
    int compared = 0;
    for (const char* spec : {"2", "3", "4", "5"}) {
        Field F = Field::parse(spec);
        TRing R(F);
        XRing X(R);
        for (int it = 0; it < 50; ++it) {
            std::uniform_int_distribution<int> dd(1, 3);
            XPoly f = random_xpoly(R, dd(rng), 2, rng), g = random_xpoly(R, dd(rng), 2, rng);
            if (f.deg() < 1 || g.deg() < 1) continue;
            CHECK(X.resultant_x(f, g).value == sylvester(R, f, g));
            ++compared;
        }
    }
    CHECK(compared >= 150);
}

TEST_CASE("common root mod P^2 forces P^2 | Res") {
    std::mt19937_64 rng(5);
    Field F(3);
    TRing R(F);
    XRing X(R);
    TPoly P = R.parse("T^2+1");
    TPoly P2 = R.mul(P, P);
    for (int it = 0; it < 30; ++it) {
        TPoly x0 = R.random(3, rng);
        XPoly lin({R.neg(x0), R.one()});  // X - x0
        XPoly a = random_xpoly(R, 2, 2, rng), b = random_xpoly(R, 1, 2, rng);
        if (a.is_zero() || b.is_zero()) continue;
        // f = (X - x0) a + P^2 r, g = (X - x0) b + P^2 s
        XPoly f = X.add(X.mul(lin, a), X.scale(random_xpoly(R, 1, 1, rng), P2));
        XPoly g = X.add(X.mul(lin, b), X.scale(random_xpoly(R, 1, 1, rng), P2));
        if (f.deg() < 1 || g.deg() < 1) continue;
        TPoly res = X.resultant_x(f, g).value;
        if (res.is_zero()) continue;
        CHECK(R.valuation(res, P) >= 2);
    }
}

TEST_CASE("inseparable descent") {
    Field F3(3);
    TRing R(F3);
    XRing X(R);
    auto d1 = X.inseparable_descent(X.parse({"T", "0", "0", "1"}));
    CHECK(d1.m == 1);
    CHECK(d1.h == X.parse({"T", "1"}));
    XPoly sep = X.parse({"T", "0", "1"});
    auto d0 = X.inseparable_descent(sep);
    CHECK(d0.m == 0);
    CHECK(d0.h == sep);
    // X^9 + T^2 X^3 = h(X^3) with h = Y^3 + T^2 Y
    XPoly f({{}, {}, {}, R.parse("T^2"), {}, {}, {}, {}, {}, R.one()});
    auto d = X.inseparable_descent(f);
    CHECK(d.m == 1);
    CHECK(d.h == X.parse({"0", "T^2", "0", "1"}));
    CHECK(X.is_separable(d.h));
    // X^9 + T: m = 2
    XPoly g({R.parse("T"), {}, {}, {}, {}, {}, {}, {}, {}, R.one()});
    auto e = X.inseparable_descent(g);
    CHECK(e.m == 2);
    CHECK(e.h == X.parse({"T", "1"}));
}

TEST_CASE("rational roots examples") {
    Field F3(3);
    TRing R(F3);
    XRing X(R);
    KField K(R);
    auto r1 = X.rational_roots(X.parse({"2*T^2", "0", "1"}));
    REQUIRE(r1.size() == 2);
    CHECK(r1[0] == std::pair{K.from(R.parse("T")), 1});
    CHECK(r1[1] == std::pair{K.from(R.parse("2*T")), 1});

    XPoly lin({R.parse("2*T"), R.one()}), xp1({R.one(), R.one()});
    auto r2 = X.rational_roots(X.mul(X.mul(lin, lin), xp1));
    REQUIRE(r2.size() == 2);
    CHECK(r2[0] == std::pair{K.from(Elem{2}), 1});
    CHECK(r2[1] == std::pair{K.from(R.parse("T")), 2});

    CHECK(X.rational_roots(X.parse({"T", "0", "1"})).empty());
    CHECK_THROWS_AS(X.rational_roots(XPoly{}), std::domain_error);

    // T X - 1 has the non-integral root 1/T; X^3 (X - 1/T) style with zero roots
    auto r3 = X.rational_roots(X.parse({"0", "0", "2", "T"}));
    REQUIRE(r3.size() == 2);
    CHECK(r3[0] == std::pair{K.zero(), 2});
    CHECK(r3[1] == std::pair{K.make(R.one(), R.parse("T")), 1});
}

TEST_CASE("rational roots: planted roots recovered, deflation leaves none") {
    std::mt19937_64 rng(17);
    for (const char* spec : {"2", "3", "4"}) {
        Field F = Field::parse(spec);
        TRing R(F);
        XRing X(R);
        KField K(R);
        for (int it = 0; it < 40; ++it) {
            // Product of (w X - u) factors times a random cofactor.
            XPoly h = X.constant(R.one());
            std::map<KElem, int, std::less<>> planted;
            const int nroots = 1 + static_cast<int>(rng() % 3);
            for (int r = 0; r < nroots; ++r) {
                TPoly u = R.random(2, rng), w = R.random(1, rng);
                if (w.is_zero()) w = R.one();
                h = X.mul(h, XPoly({R.neg(u), w}));
                planted[K.make(u, w)] += 1;
            }
            h = X.mul(h, random_xpoly(R, 2, 1, rng));
            if (h.deg() < 1) continue;
            auto roots = X.rational_roots(h);
            for (const auto& [b, m] : planted) {
                auto pos = std::find_if(roots.begin(), roots.end(), [&](const auto& pr) { return pr.first == b; });
                REQUIRE(pos != roots.end());
                CHECK(pos->second >= m);
            }
            // Multiplicity and deflation check.
            KPoly H = K.lift(h);
            for (const auto& [b, m] : roots) {
                for (int k = 0; k < m; ++k) {
                    auto [qt, rem] = K.synthetic_div(H, b);
                    CHECK(rem.is_zero());
                    H = qt;
                }
                CHECK_FALSE(K.peval(H, b).is_zero());
            }
        }
    }
}

TEST_CASE("K arithmetic") {
    Field F3(3);
    TRing R(F3);
    KField K(R);
    KElem a = K.parse("(T+1)/(T^2+2)"), b = K.parse("T");
    CHECK(a.den == R.parse("T+2"));
    CHECK(a.num.is_one());
    CHECK(K.mul(K.inv(b), b) == K.one());
    CHECK(K.sub(K.add(a, b), b) == a);
    CHECK(K.parse(K.format(a)) == a);
    CHECK(K.make(R.parse("2*T"), R.parse("2*T^2")) == K.make(R.one(), R.parse("T")));
    CHECK_THROWS_AS(K.inv(K.zero()), std::domain_error);
    CHECK_THROWS(K.parse("1/0"));
}

TEST_CASE("rational roots with highly composite coefficients") {
    // Roots whose numerators and denominators have many divisors: divisor
    // enumeration would need thousands of trials here.
    Field F = Field::parse("3");
    TRing R(F);
    XRing X(R);
    KField K(R);
    TPoly u = R.one();
    for (const auto& P : R.enumerate_primes(2)) u = R.mul(u, P);  // all 6 primes of degree <= 2
    const TPoly w = R.pow(R.parse("T^3+2*T+1"), 2);
    const TPoly u2 = R.mul(R.parse("T^2+1"), R.pow(R.parse("T+2"), 3));
    XPoly h = X.constant(R.one());
    for (int i = 0; i < 3; ++i) h = X.mul(h, XPoly({R.neg(u), w}));
    h = X.mul(h, XPoly({R.neg(u2), R.one()}));
    h = X.mul(h, X.parse({"T", "0", "1"}));  // no roots
    h = X.scale(h, R.parse("T^4+T"));
    auto roots = X.rational_roots(h);
    REQUIRE(roots.size() == 2);
    std::map<KElem, int, std::less<>> got(roots.begin(), roots.end());
    CHECK(got.at(K.make(u, w)) == 3);
    CHECK(got.at(K.from(u2)) == 1);
}

#pragma once

// The ring F_q[T]: arithmetic, gcd, irreducibility, factorization,
// enumeration of monic polynomials and primes, valuations.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fflcm/gf.hpp"

namespace fflcm {

/// Degree reported for the zero polynomial (stands for -infinity).
inline constexpr int kZeroDegree = -1;

struct TPoly {
    std::vector<Elem> c;  // constant term first, no trailing zeros

    TPoly() = default;
    explicit TPoly(std::vector<Elem> coeffs) : c(std::move(coeffs)) { trim(); }

    int deg() const { return c.empty() ? kZeroDegree : static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_constant() const { return c.size() <= 1; }
    bool is_one() const { return c.size() == 1 && c[0].is_one(); }
    Elem lead() const { return c.empty() ? Elem{} : c.back(); }
    Elem coeff(std::size_t i) const { return i < c.size() ? c[i] : Elem{}; }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }

    friend bool operator==(const TPoly&, const TPoly&) = default;
};

/// Orders by degree, then lexicographically from the leading coefficient
/// down.  On monic polynomials of a fixed degree this is enumeration order.
bool operator<(const TPoly& a, const TPoly& b);

struct TPolyHash {
    std::size_t operator()(const TPoly& a) const noexcept;
};

struct Factorization {
    Elem unit;
    std::map<TPoly, int> factors;  // monic irreducible -> exponent
};

class TRing {
public:
    explicit TRing(const Field& f) : F_(&f) {}

    const Field& field() const { return *F_; }
    std::uint32_t q() const { return F_->q(); }
    std::uint32_t p() const { return F_->p(); }

    TPoly zero() const { return {}; }
    TPoly one() const { return constant(F_->one()); }
    TPoly constant(Elem c) const { return TPoly({c}); }
    TPoly var() const { return monomial(F_->one(), 1); }
    TPoly monomial(Elem c, int e) const;

    TPoly add(const TPoly& a, const TPoly& b) const;
    TPoly sub(const TPoly& a, const TPoly& b) const;
    TPoly neg(const TPoly& a) const;
    TPoly mul(const TPoly& a, const TPoly& b) const;
    TPoly scale(const TPoly& a, Elem s) const;
    TPoly pow(const TPoly& a, std::uint64_t e) const;

    /// (s, r) with a = s*b + r, deg r < deg b.
    std::pair<TPoly, TPoly> divmod(const TPoly& a, const TPoly& b) const;
    TPoly rem(const TPoly& a, const TPoly& b) const;
    TPoly quo(const TPoly& a, const TPoly& b) const { return divmod(a, b).first; }
    /// Quotient, throwing std::logic_error if b does not divide a.
    TPoly div_exact(const TPoly& a, const TPoly& b) const;
    bool divides(const TPoly& b, const TPoly& a) const { return rem(a, b).is_zero(); }

    TPoly make_monic(const TPoly& a) const;
    /// Monic gcd; gcd(0, 0) = 0.
    TPoly gcd(const TPoly& a, const TPoly& b) const;
    /// g = s*a + t*b with g the monic gcd.
    struct Xgcd {
        TPoly g, s, t;
    };
    Xgcd xgcd(const TPoly& a, const TPoly& b) const;
    /// Inverse of a modulo m; throws std::domain_error if not coprime.
    TPoly inv_mod(const TPoly& a, const TPoly& m) const;

    Elem eval(const TPoly& a, Elem x) const;
    TPoly derivative(const TPoly& a) const;
    /// r with r^p = a, for a in F_q[T^p].
    TPoly pth_root(const TPoly& a) const;

    TPoly mulmod(const TPoly& a, const TPoly& b, const TPoly& m) const { return rem(mul(a, b), m); }
    TPoly powmod(TPoly a, std::uint64_t e, const TPoly& m) const;
    /// a^q mod m.
    TPoly frobenius_mod(const TPoly& a, const TPoly& m) const { return powmod(a, q(), m); }

    /// Rabin's test.  Throws std::domain_error for constants.
    bool is_irreducible(const TPoly& a) const;

    /// Canonical factorization.  Equal-degree splitting draws from a PRNG
    /// seeded with `seed`; the result does not depend on it.
    Factorization factor(const TPoly& a, std::uint64_t seed = 0) const;
    std::vector<std::pair<TPoly, int>> squarefree_decomposition(const TPoly& monic) const;
    std::vector<std::pair<TPoly, int>> distinct_degree(TPoly squarefree_monic) const;
    std::vector<TPoly> equal_degree(const TPoly& g, int r, std::mt19937_64& rng) const;

    TPoly expand(const Factorization& fac) const;
    TPoly radical(const Factorization& fac) const;
    /// Every monic divisor of the factored polynomial.
    std::vector<TPoly> monic_divisors(const Factorization& fac) const;

    /// Exponent of the prime P in a; throws std::domain_error for a = 0.
    int valuation(const TPoly& a, const TPoly& P) const;

    /// q^n, throwing ResourceError past 2^62.
    std::uint64_t count_monic(int n) const;
    /// Monic of degree n whose lower coefficients are the base-q digits of
    /// idx, constant coefficient varying fastest.
    TPoly monic_from_index(int n, std::uint64_t idx) const;
    std::uint64_t monic_index(const TPoly& monic) const;
    /// Polynomial of degree < len with coefficients the base-q digits of idx.
    TPoly from_index(int len, std::uint64_t idx) const;
    std::uint64_t index_of(const TPoly& a) const;

    std::vector<TPoly> enumerate_monic(int n) const;
    std::vector<TPoly> primes_of_degree(int d) const;
    std::vector<TPoly> enumerate_primes(int max_deg) const;

    TPoly random(int max_deg, std::mt19937_64& rng) const;

    TPoly parse(std::string_view text) const;
    std::string format(const TPoly& a) const;

private:
    void sqf_rec(const TPoly& f, int mult, std::vector<std::pair<TPoly, int>>& out) const;
    void edf_rec(const TPoly& g, int r, std::mt19937_64& rng, std::vector<TPoly>& out) const;

    const Field* F_;
};

}  // namespace fflcm

#pragma once

// Arithmetic in F_q, q = p^k, realised as F_p[a]/(modulus).
//
// Elements are stored as their index sum_i c_i p^i over the coordinate
// vector (c_0, ..., c_{k-1}) in the basis 1, a, ..., a^{k-1}.  All operations
// go through precomputed q x q tables, so q is limited to desk scale.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fflcm {

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Elem {
    std::uint16_t v = 0;

    constexpr Elem() = default;
    constexpr explicit Elem(std::uint16_t x) : v(x) {}

    constexpr bool is_zero() const { return v == 0; }
    constexpr bool is_one() const { return v == 1; }

    friend constexpr bool operator==(Elem, Elem) = default;
    friend constexpr auto operator<=>(Elem, Elem) = default;
};

class Field {
public:
    static constexpr std::uint32_t kMaxOrder = 1024;

    /// F_p (k = 1).
    explicit Field(std::uint32_t p);

    /// F_{p^k}.  An empty modulus selects the lexicographically smallest monic
    /// irreducible of degree k (coefficients compared constant term first).
    /// A given modulus lists k+1 coefficients mod p, constant first, monic.
    Field(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus = {});

    /// Field literal: "p" or "p^k", optionally followed by
    /// `modulus="a^2+a+1"` (separated by whitespace or a comma).
    static Field parse(std::string_view spec);

    std::uint32_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    std::uint32_t q() const { return q_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    Elem zero() const { return Elem{0}; }
    Elem one() const { return Elem{1}; }
    /// The generator a of F_p[a]/(modulus); equals the integer 0 when k = 1
    /// is not meaningful, so it throws in that case.
    Elem gen() const;
    Elem from_int(long long n) const;

    Elem add(Elem x, Elem y) const { return Elem{add_[idx(x, y)]}; }
    Elem sub(Elem x, Elem y) const { return Elem{add_[idx(x, Elem{neg_[y.v]})]}; }
    Elem neg(Elem x) const { return Elem{neg_[x.v]}; }
    Elem mul(Elem x, Elem y) const { return Elem{mul_[idx(x, y)]}; }
    Elem inv(Elem x) const;
    Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }
    Elem pow(Elem x, std::uint64_t e) const;

    /// x^(1/p), the inverse of the Frobenius map.
    Elem pth_root(Elem x) const { return Elem{proot_[x.v]}; }

    std::vector<std::uint32_t> coords(Elem x) const;
    Elem from_coords(const std::vector<std::uint32_t>& c) const;
    bool in_prime_field(Elem x) const { return x.v < p_; }

    /// All q elements, in index order.
    std::vector<Elem> elements() const;

    /// Multiplicative order of a nonzero element.
    std::uint32_t order(Elem x) const;

    /// An element of exact multiplicative order m, the first in index order,
    /// or nothing when m does not divide q - 1.
    std::optional<Elem> root_of_unity(std::uint32_t m) const;

    /// "2", "a+1", "2*a^2+a" ...
    std::string format(Elem x) const;

    /// Canonical field literal, e.g. `9` or `3^2 modulus="a^2+1"`.
    std::string spec() const;

    friend bool operator==(const Field& a, const Field& b) {
        return a.p_ == b.p_ && a.k_ == b.k_ && a.modulus_ == b.modulus_;
    }

private:
    std::size_t idx(Elem x, Elem y) const { return std::size_t(x.v) * q_ + y.v; }
    void build_tables();

    std::uint32_t p_ = 0, k_ = 0, q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint16_t> add_, mul_, neg_, inv_, proot_;
};

/// Smallest monic irreducible of degree k over F_p in the order described above.
std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t k);

/// Irreducibility of a monic polynomial over F_p by trial division.
bool is_irreducible_mod_p(const std::vector<std::uint32_t>& poly, std::uint32_t p);

bool is_prime(std::uint64_t n);

}  // namespace fflcm

#pragma once

// The residue fields F_q[T]/P and polynomials over them.

#include <cstdint>
#include <random>
#include <vector>

#include "fflcm/xpoly.hpp"

namespace fflcm {

/// F_q[T]/P for a monic irreducible P; elements are reduced TPolys.
class ResidueField {
public:
    ResidueField(const TRing& R, TPoly P);

    const TRing& ring() const { return R_; }
    const TPoly& modulus() const { return P_; }
    int degree() const { return P_.deg(); }
    /// |P| = q^{deg P}; ResourceError past 2^62.  Root finding does not
    /// need it.
    std::uint64_t size() const;

    TPoly reduce(const TPoly& a) const { return R_.rem(a, P_); }
    TPoly add(const TPoly& a, const TPoly& b) const { return R_.add(a, b); }
    TPoly sub(const TPoly& a, const TPoly& b) const { return R_.sub(a, b); }
    TPoly mul(const TPoly& a, const TPoly& b) const { return R_.mulmod(a, b, P_); }
    TPoly inv(const TPoly& a) const { return R_.inv_mod(a, P_); }
    TPoly pow(const TPoly& a, std::uint64_t e) const { return R_.powmod(a, e, P_); }
    TPoly random(std::mt19937_64& rng) const { return R_.random(degree() - 1, rng); }

private:
    TRing R_;
    TPoly P_;
};

/// Polynomial in X over F_q[T]/P, constant term first, trimmed.
using RPoly = std::vector<TPoly>;

class ResiduePolyRing {
public:
    explicit ResiduePolyRing(const ResidueField& k) : k_(k) {}

    const ResidueField& field() const { return k_; }

    RPoly reduce(const XPoly& f) const;
    RPoly x() const;
    RPoly add(const RPoly& a, const RPoly& b) const;
    RPoly sub(const RPoly& a, const RPoly& b) const;
    RPoly mul(const RPoly& a, const RPoly& b) const;
    RPoly rem(const RPoly& a, const RPoly& m) const;
    RPoly quo(const RPoly& a, const RPoly& m) const;
    RPoly make_monic(const RPoly& a) const;
    RPoly gcd(RPoly a, RPoly b) const;
    RPoly powmod(RPoly base, std::uint64_t e, const RPoly& m) const;
    TPoly eval(const RPoly& a, const TPoly& x) const;
    /// a^{|P|} mod m, by deg P successive q-th powers.
    RPoly frobenius(RPoly a, const RPoly& m) const;

    /// Distinct roots in the residue field, sorted.
    std::vector<TPoly> roots(const RPoly& f, std::uint64_t seed = 0) const;
    /// Rabin's test over the residue field; requires deg >= 1.
    bool is_irreducible(const RPoly& f) const;

private:
    void split_linear(const RPoly& g, std::mt19937_64& rng, std::vector<TPoly>& out) const;

    const ResidueField& k_;
};

}  // namespace fflcm

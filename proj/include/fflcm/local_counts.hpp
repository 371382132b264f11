#pragma once

// Roots of f modulo prime powers P^k: residue-field root finding, the Hensel
// lifting tree with its stabilization shortcuts, and a brute-force oracle.

#include <cstdint>
#include <random>
#include <vector>

#include "fflcm/residue.hpp"

namespace fflcm {

/// Roots of f mod P.  Throws std::domain_error if P divides every
/// coefficient of f.
std::vector<TPoly> roots_mod_prime(const XRing& X, const XPoly& f, const TPoly& P, std::uint64_t seed = 0);

struct RhoOptions {
    /// Always run the full lifting tree and compare it with the shortcuts.
    bool paranoid = false;
    /// Largest k * deg P the lifting tree may reach.
    int max_level_degree = 4096;
    /// Largest number of residues held at one level of the tree.
    std::uint64_t max_nodes = std::uint64_t{1} << 22;
    std::uint64_t seed = 0;
};

/// rho_f(P^j) for j = 1..kmax by the lifting tree alone (any f, no
/// shortcuts).
std::vector<std::uint64_t> lifting_tree_counts(const XRing& X, const XPoly& f, const TPoly& P, int kmax,
                                               const RhoOptions& opts = {});

/// Exact rho_f(P^k).  f must pass the cheap irreducibility necessary
/// conditions (primitive, nonzero resultant); otherwise ValidationError.
std::uint64_t rho(const XRing& X, const XPoly& f, const TPoly& P, int k, const RhoOptions& opts = {});

struct RhoProfile {
    TPoly P;
    std::vector<std::uint64_t> values;  // values[k-1] = rho_f(P^k)
    bool separable = true;
    /// v_P(Res(f, f')) if separable, else v_P(Res(f, df/dT)).
    int mu = 0;
    /// First index from which the listed values stay constant.
    int stabilized_at = 1;
    /// Index from which theory guarantees constancy (2mu+1) or
    /// vanishing (mu+2).
    int guaranteed_from = 1;
    bool invariants_hold = true;
};

RhoProfile rho_profile(const XRing& X, const XPoly& f, const TPoly& P, int kmax, const RhoOptions& opts = {});

/// Exhaustive count over all residues mod P^k; ResourceError if |P|^k > 10^6.
std::uint64_t oracle_rho(const XRing& X, const XPoly& f, const TPoly& P, int k);

/// Root count mod P of the separable h with f = h(X^{p^m}); checked against
/// the count for f itself.
std::uint64_t descent_rho(const XRing& X, const XPoly& f, const TPoly& P);

/// Primes dividing the content of f or the relevant resultant, sorted.
std::vector<TPoly> bad_primes(const XRing& X, const XPoly& f);

/// Res(f, f') for separable f, Res(f, df/dT) otherwise.
TPoly local_resultant(const XRing& X, const XPoly& f);

}  // namespace fflcm

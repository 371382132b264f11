#pragma once

// Deciding irreducibility of f in F_q[T][X] where it can be done cheaply.

#include <string>

#include "fflcm/xpoly.hpp"

namespace fflcm {

enum class Irreducibility { Irreducible, Reducible, Unverified };

std::string to_string(Irreducibility s);

struct IrreducibilityVerdict {
    Irreducibility status = Irreducibility::Unverified;
    std::string reason;
};

/// Exact when deg_X f <= 3, deg_T f <= 1, or f has an X-root in F_q(T);
/// otherwise proves irreducibility via Eisenstein or an irreducible
/// reduction modulo some prime of degree <= max_prime_deg, and reports
/// Unverified when none applies.
IrreducibilityVerdict irreducibility_guard(const XRing& X, const XPoly& f, int max_prime_deg = 4);

}  // namespace fflcm

#pragma once

// Shift symmetries of f, and the special polynomials whose difference
// f(X) - f(Y) splits into linear factors.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "fflcm/xpoly.hpp"

namespace fflcm {

using Rational = boost::rational<std::int64_t>;

/// V_f = {g in F_q[T] : f(X+g) = f(X)}.
struct VSpace {
    std::vector<TPoly> basis;     // F_p-independent
    int v = 0;                    // |V_f| = p^v
    std::vector<TPoly> elements;  // sorted, starts with 0
};

VSpace compute_vf(const XRing& X, const XPoly& f);

/// 1/|V_f|.
Rational c_f(const XRing& X, const XPoly& f);
Rational c_f(const Field& F, const VSpace& V);

/// Structural facts about V_f; each flag is true when the property holds.
struct VfProperties {
    bool bounded_by_degree = false;     // |V_f| <= d
    bool closed = false;                // F_p-linear subspace
    bool power_of_p = false;            // |V_f| = p^v
    bool trivial_when_coprime = false;  // p does not divide d => V_f = {0}
    bool deficient_bound = false;       // f_d not dividing some f_i (0<i<d) => |V_f| <= d-1
    bool all() const {
        return bounded_by_degree && closed && power_of_p && trivial_when_coprime && deficient_bound;
    }
};

VfProperties check_vf_properties(const XRing& X, const XPoly& f, const VSpace& V);

/// Brute-force V_f over all g of degree <= max_deg (cross-validation only).
std::vector<TPoly> vf_brute(const XRing& X, const XPoly& f, int max_deg);

struct LinearFactor {
    int j = 0;  // factor X - zeta^j Y - b
    KElem b;
    int mult = 0;
    friend bool operator==(const LinearFactor&, const LinearFactor&) = default;
};

/// f = f_d * prod_{b in V} (X - b + A)^{m p^{l-v}} + C.
struct SpecialForm {
    TPoly f_d;
    KElem A, C;
    Elem zeta;
    int m = 1, l = 0, v = 0;
    std::vector<KElem> V;  // sorted
    std::vector<LinearFactor> linear_factors;  // sorted by (j, b)
};

enum class NotSpecialReason { None, NoRootOfUnity, DeficientFactorCount, InconsistentMultiplicities };

std::string to_string(NotSpecialReason r);

struct SpecialDetection {
    std::optional<SpecialForm> form;
    NotSpecialReason reason = NotSpecialReason::None;
    /// Set when the linear factors are complete but the normal form cannot be
    /// recovered; this should never happen.
    bool internal_error = false;
    std::string detail;
    /// Every linear factor found, including for non-special f.
    std::vector<LinearFactor> factors;
    int factor_degree = 0;
};

/// Requires deg f >= 2.
SpecialDetection detect_special(const XRing& X, const XPoly& f);

/// Smallest i >= 1 with the i-th Hasse derivative of f nonzero.
int hasse_order(const Field& F, const XPoly& f);

/// All (j, b) with f(zeta^j Y + b) = f(Y), multiplicities included.
std::vector<LinearFactor> linear_difference_factors(const XRing& X, const XPoly& f, Elem zeta, int m);

struct SpecialParams {
    TPoly f_d;
    KElem A, C;
    int m = 1, l = 0, v = 0;
    std::vector<KElem> V;
};

/// Expands the normal form; throws ValidationError for bad parameters or a
/// non-integral result.
XPoly construct_special(const XRing& X, const SpecialParams& params);

/// f_d prod (X - b + A)^{m p^{l-v}} + C == f.
bool verify_reconstruction(const XRing& X, const XPoly& f, const SpecialForm& s);
/// prod over linear factors of (X - zeta^j Y - b)^mult == (f(X) - f(Y))/f_d,
/// compared as polynomials in two variables over F_q(T).
bool verify_factor_product(const XRing& X, const XPoly& f, const SpecialForm& s);

}  // namespace fflcm

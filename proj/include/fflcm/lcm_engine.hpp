#pragma once

// Exhaustive sweep over M_n: prime valuations of the values f(Q), the lcm and
// its radical, collisions, and the derived ratios.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fflcm/symmetry.hpp"

namespace fflcm {

/// Smallest n from which deg f(Q) = dn + deg f_d on all of M_n and every
/// shift class {Q + g : g in V_f} lies inside M_n.
int n0(const XRing& X, const XPoly& f, const VSpace& V);
int n0(const XRing& X, const XPoly& f);

struct PrimeStats {
    std::uint64_t alpha = 0;          // sum of v_P(f(Q))
    int beta = 0;                     // max of v_P(f(Q))
    std::vector<std::uint64_t> hist;  // hist[e-1] = #{Q : v_P(f(Q)) = e}
    std::uint64_t min_class = UINT64_MAX;
    bool multi_class = false;  // support meets two shift classes
};

struct SweepOptions {
    /// Largest q^n accepted.
    std::uint64_t budget = std::uint64_t{1} << 20;
    /// 0: FFLCM_THREADS, else hardware concurrency.
    unsigned threads = 0;
    std::uint64_t seed = 0;
};

struct ValuationTable {
    int n = 0;
    int n0 = 0;
    int d = 0;
    int deg_fd = 0;
    std::uint64_t v_size = 1;  // |V_f|
    std::uint64_t count = 0;   // |M_n|
    std::map<TPoly, PrimeStats> primes;  // ordered by degree, then coefficients
    std::vector<TPoly> zero_values;      // Q with f(Q) = 0
    std::uint64_t value_degree_sum = 0;  // sum of deg f(Q) over nonzero values
    std::uint64_t collisions = 0;        // ordered pairs in distinct classes with equal values
    std::uint64_t within_class_pairs = 0;

    bool defined() const { return zero_values.empty(); }
    bool large(const TPoly& P) const { return P.deg() > n + deg_fd; }
};

/// Worker count from FFLCM_THREADS, else the hardware.
unsigned default_threads();

ValuationTable sweep(const XRing& X, const XPoly& f, int n, const SweepOptions& opts = {});
ValuationTable sweep(const XRing& X, const XPoly& f, const VSpace& V, int n, const SweepOptions& opts = {});

/// deg lcm(f(Q) : Q in M_n) by folding lcm(a, b) = ab/gcd(a, b); nullopt if
/// some value vanishes.
std::optional<std::uint64_t> lcm_oracle(const XRing& X, const XPoly& f, int n, std::uint64_t budget = std::uint64_t{1} << 20);

struct TableTotals {
    std::uint64_t deg_L = 0, deg_ell = 0, deg_Pf = 0, deg_Rf = 0;
    std::uint64_t s_f_support = 0;    // large primes meeting two classes
    std::uint64_t s_f_valuation = 0;  // large primes with alpha != |V_f| beta
};

TableTotals totals(const ValuationTable& t);

/// B_i(P) for i = 1..d+1 by direct scan.  Requires deg P > n + deg f_d and
/// P not a bad prime.
std::vector<std::uint64_t> bi_counts(const XRing& X, const XPoly& f, int n, const TPoly& P);
/// The same counts read off a sweep histogram.
std::vector<std::uint64_t> bi_counts(const ValuationTable& t, const TPoly& P);

/// Exact ratio with a 6-decimal rendering.
struct Ratio {
    Rational value;
    std::string decimal;
};

std::string to_decimal(const Rational& r, int places = 6);
std::string to_string(const Rational& r);

struct SweepReport {
    int n = 0;
    std::uint32_t q = 0;
    int d = 0;
    int n0 = 0;
    Rational c_f;
    bool defined = true;
    TableTotals t;
    std::uint64_t collisions = 0;
    std::optional<Ratio> ratio_conj;   // deg L / (c_f (d-1) n q^n)
    std::optional<Ratio> ratio_lower;  // deg L / ((d-1)/d n q^n)
    std::optional<Ratio> ratio_rad;    // deg ell / deg L
};

SweepReport make_report(const ValuationTable& t, std::uint32_t q, const Rational& c_f);
std::vector<SweepReport> report(const XRing& X, const XPoly& f, int n_lo, int n_hi, const SweepOptions& opts = {});

struct AvgRootsRow {
    int k = 0;
    Rational value;  // sum over deg P = k of rho_f(P) k / q^k
    std::string decimal;
};

std::vector<AvgRootsRow> avg_roots(const XRing& X, const XPoly& f, int kmax, std::uint64_t budget = std::uint64_t{1} << 20);

}  // namespace fflcm

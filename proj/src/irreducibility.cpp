#include "fflcm/irreducibility.hpp"

#include <stdexcept>

#include "fflcm/local_counts.hpp"

namespace fflcm {

std::string to_string(Irreducibility s) {
    switch (s) {
        case Irreducibility::Irreducible: return "irreducible";
        case Irreducibility::Reducible: return "reducible";
        case Irreducibility::Unverified: return "unverified";
    }
    return "unknown";
}

namespace {

IrreducibilityVerdict verdict(Irreducibility s, std::string why) { return {s, std::move(why)}; }

// Coefficients of T^e across the X-powers, as a polynomial in one variable.
TPoly t_slice(const XPoly& f, int e) {
    std::vector<Elem> c;
    for (const auto& fi : f.c) c.push_back(fi.coeff(static_cast<std::size_t>(e)));
    return TPoly(std::move(c));
}

bool eisenstein_at(const TRing& R, const XPoly& f, const TPoly& P) {
    if (R.divides(P, f.lead())) return false;
    for (int i = 0; i < f.deg(); ++i)
        if (!R.divides(P, f.c[i])) return false;
    return !R.divides(R.mul(P, P), f.c[0]);
}

}  // namespace

IrreducibilityVerdict irreducibility_guard(const XRing& X, const XPoly& f, int max_prime_deg) {
    const TRing& R = X.tring();
    const int d = f.deg();
    if (d < 1) throw std::domain_error("irreducibility in X needs deg_X f >= 1");

    const TPoly cont = X.content(f);
    if (!cont.is_one()) return verdict(Irreducibility::Reducible, "content " + R.format(cont) + " is not a unit");
    if (d == 1) return verdict(Irreducibility::Irreducible, "primitive and linear in X");

    const int dt = f.deg_t();
    if (dt == 0) {
        // f in F_q[X]
        return R.is_irreducible(t_slice(f, 0)) ? verdict(Irreducibility::Irreducible, "irreducible in F_q[X]")
                                               : verdict(Irreducibility::Reducible, "reducible in F_q[X]");
    }
    if (dt == 1) {
        // f = a(X) + T b(X) is irreducible iff gcd(a, b) = 1
        const TPoly g = R.gcd(t_slice(f, 0), t_slice(f, 1));
        return g.is_one() ? verdict(Irreducibility::Irreducible, "linear in T with coprime coefficients")
                          : verdict(Irreducibility::Reducible, "linear in T with a common factor in X");
    }

    const auto roots = X.rational_roots(f);
    if (!roots.empty()) return verdict(Irreducibility::Reducible, "has a root in F_q(T)");
    if (d <= 3) return verdict(Irreducibility::Irreducible, "degree <= 3 without roots in F_q(T)");

    if (local_resultant(X, f).is_zero())
        return verdict(Irreducibility::Reducible, X.is_separable(f) ? "repeated factor (Res(f, f') = 0)"
                                                                    : "Res(f, df/dT) = 0");

    if (!f.c[0].is_zero() && f.c[0].deg() > 0)
        for (const auto& [P, e] : R.factor(f.c[0]).factors)
            if (e == 1 && eisenstein_at(R, f, P))
                return verdict(Irreducibility::Irreducible, "Eisenstein at " + R.format(P));

    if (X.is_separable(f))
        for (const auto& P : R.enumerate_primes(max_prime_deg)) {
            if (R.divides(P, f.lead())) continue;
            ResidueField k(R, P);
            ResiduePolyRing RP(k);
            if (RP.is_irreducible(RP.reduce(f)))
                return verdict(Irreducibility::Irreducible, "irreducible modulo " + R.format(P));
        }
    return verdict(Irreducibility::Unverified, "no criterion applied");
}

}  // namespace fflcm

#pragma once

// F_q[T][X] and the small slice of F_q(T) arithmetic needed for root finding
// and the special-polynomial machinery.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fflcm/tpoly.hpp"

namespace fflcm {

/// f = sum_i c[i] X^i with c[i] in F_q[T].  The zero polynomial has no
/// coefficients; otherwise the leading coefficient is nonzero.
struct XPoly {
    std::vector<TPoly> c;

    XPoly() = default;
    explicit XPoly(std::vector<TPoly> coeffs) : c(std::move(coeffs)) { trim(); }

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const TPoly& lead() const { return c.back(); }
    TPoly coeff(std::size_t i) const { return i < c.size() ? c[i] : TPoly{}; }
    /// max_i deg_T c[i]
    int deg_t() const;

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }

    friend bool operator==(const XPoly&, const XPoly&) = default;
};

/// Element num/den of K = F_q(T) in lowest terms with monic denominator.
struct KElem {
    TPoly num;
    TPoly den;

    bool is_zero() const { return num.is_zero(); }
    bool is_integral() const { return den.is_one(); }

    friend bool operator==(const KElem&, const KElem&) = default;
};

/// Total order used for deterministic choices: deg num, deg den, then
/// lexicographic on num and den.
bool operator<(const KElem& a, const KElem& b);

/// Univariate polynomial over K, constant term first.
struct KPoly {
    std::vector<KElem> c;

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    friend bool operator==(const KPoly&, const KPoly&) = default;
};

class KField {
public:
    explicit KField(const TRing& R) : R_(R) {}

    const TRing& ring() const { return R_; }

    KElem make(TPoly num, TPoly den) const;
    KElem from(const TPoly& a) const { return {a, R_.one()}; }
    KElem from(Elem c) const { return from(R_.constant(c)); }
    KElem zero() const { return {TPoly{}, R_.one()}; }
    KElem one() const { return from(R_.one()); }

    KElem add(const KElem& a, const KElem& b) const;
    KElem sub(const KElem& a, const KElem& b) const;
    KElem neg(const KElem& a) const { return {R_.neg(a.num), a.den}; }
    KElem mul(const KElem& a, const KElem& b) const;
    KElem inv(const KElem& a) const;
    KElem div(const KElem& a, const KElem& b) const { return mul(a, inv(b)); }
    KElem pow(const KElem& a, std::uint64_t e) const;

    /// "num" or "(num)/(den)"; parse accepts one top-level '/'.
    std::string format(const KElem& a) const;
    KElem parse(std::string_view text) const;

    KPoly padd(const KPoly& a, const KPoly& b) const;
    KPoly psub(const KPoly& a, const KPoly& b) const;
    KPoly pmul(const KPoly& a, const KPoly& b) const;
    KPoly pscale(const KPoly& a, const KElem& s) const;
    KPoly ppow(const KPoly& a, std::uint64_t e) const;
    KElem peval(const KPoly& a, const KElem& x) const;
    /// a(b(Y)).
    KPoly pcompose(const KPoly& a, const KPoly& b) const;
    /// Quotient and remainder of a by the monic linear X - r.
    std::pair<KPoly, KElem> synthetic_div(const KPoly& a, const KElem& r) const;
    KPoly linear(const KElem& slope, const KElem& offset) const;  // slope*Y + offset
    KPoly lift(const XPoly& f) const;

private:
    TRing R_;
};

struct Resultant {
    TPoly value;
    /// Both inputs constant in X: the value is the empty determinant 1.
    bool degenerate = false;
};

struct Descent {
    XPoly h;
    int m = 0;  // f(X) = h(X^{p^m})
};

class XRing {
public:
    explicit XRing(const TRing& R) : R_(R) {}

    const TRing& tring() const { return R_; }
    const Field& field() const { return R_.field(); }

    XPoly add(const XPoly& a, const XPoly& b) const;
    XPoly sub(const XPoly& a, const XPoly& b) const;
    XPoly mul(const XPoly& a, const XPoly& b) const;
    XPoly scale(const XPoly& a, const TPoly& s) const;
    XPoly constant(const TPoly& c) const { return XPoly({c}); }
    XPoly x() const { return XPoly({TPoly{}, R_.one()}); }

    /// f(Q) by Horner.
    TPoly eval(const XPoly& f, const TPoly& Q) const;
    /// f(Q) mod m, reducing at every Horner step.
    TPoly eval_mod(const XPoly& f, const TPoly& Q, const TPoly& m) const;
    XPoly derivative_x(const XPoly& f) const;
    XPoly derivative_t(const XPoly& f) const;
    bool is_separable(const XPoly& f) const { return !derivative_x(f).is_zero(); }
    /// f(X + g).
    XPoly taylor_shift(const XPoly& f, const TPoly& g) const;
    /// gcd of all coefficients (monic).
    TPoly content(const XPoly& f) const;

    /// Res_X(f, g) by the subresultant polynomial remainder sequence.
    Resultant resultant_x(const XPoly& f, const XPoly& g) const;

    /// f = h(X^{p^m}) with h separable and m maximal.  Requires deg f >= 1.
    Descent inseparable_descent(const XPoly& f) const;

    /// All roots of h in F_q(T) with multiplicities, sorted.
    std::vector<std::pair<KElem, int>> rational_roots(const XPoly& h) const;

    /// JSON array of coefficient literals, index = power of X.
    XPoly parse_json(std::string_view json) const;
    XPoly parse(const std::vector<std::string>& coeffs) const;
    std::vector<std::string> to_strings(const XPoly& f) const;
    /// Human-readable "X^2+T" style rendering.
    std::string format(const XPoly& f) const;

private:
    TRing R_;
};

}  // namespace fflcm

#include "fflcm/symmetry.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fflcm {

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// d = p^l * m with p not dividing m.
std::pair<int, int> split_degree(int d, std::uint32_t p) {
    int l = 0;
    while (d % static_cast<int>(p) == 0) {
        d /= static_cast<int>(p);
        ++l;
    }
    return {l, d};
}

// binom(n, k) mod p by Lucas.
std::uint32_t binom_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
    std::uint32_t r = 1;
    while (n > 0 || k > 0) {
        std::uint64_t a = n % p, b = k % p;
        if (b > a) return 0;
        std::uint64_t c = 1;
        for (std::uint64_t i = 0; i < b; ++i) c = c * (a - i) / (i + 1);
        r = static_cast<std::uint32_t>((r * (c % p)) % p);
        n /= p;
        k /= p;
    }
    return r;
}

// Echelon basis over F_p of coefficient vectors.
class FpEchelon {
public:
    explicit FpEchelon(std::uint32_t p) : p_(p) {}

    // Adds v if independent; returns whether it was.
    bool insert(std::vector<std::uint32_t> v) {
        for (const auto& [piv, row] : rows_) {
            if (piv >= v.size() || v[piv] == 0) continue;
            const std::uint32_t c = v[piv];
            for (std::size_t i = 0; i < row.size() && i < v.size(); ++i) v[i] = (v[i] + p_ - (c * row[i]) % p_) % p_;
        }
        auto it = std::find_if(v.begin(), v.end(), [](std::uint32_t x) { return x != 0; });
        if (it == v.end()) return false;
        const auto piv = static_cast<std::size_t>(it - v.begin());
        const std::uint32_t inv = inverse(v[piv]);
        for (auto& x : v) x = (x * inv) % p_;
        // keep rows reduced at the new pivot
        for (auto& [opiv, row] : rows_) {
            if (piv >= row.size() || row[piv] == 0) continue;
            const std::uint32_t c = row[piv];
            for (std::size_t i = 0; i < row.size() && i < v.size(); ++i) row[i] = (row[i] + p_ - (c * v[i]) % p_) % p_;
        }
        rows_.emplace_back(piv, std::move(v));
        return true;
    }

private:
    std::uint32_t inverse(std::uint32_t a) const {
        for (std::uint32_t x = 1; x < p_; ++x)
            if ((a * x) % p_ == 1) return x;
        throw std::logic_error("no inverse mod p");
    }

    std::uint32_t p_;
    std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>> rows_;
};

std::vector<std::uint32_t> fp_coords(const Field& F, const TPoly& g, int len) {
    std::vector<std::uint32_t> out;
    for (int i = 0; i < len; ++i) {
        auto c = F.coords(g.coeff(static_cast<std::size_t>(i)));
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

XPoly drop_constant(const XPoly& f) {
    XPoly h = f;
    h.c[0] = TPoly{};
    return h;
}

// Bivariate polynomials over K, c[i][j] is the coefficient of X^i Y^j.
using BiPoly = std::vector<std::vector<KElem>>;

BiPoly bi_mul(const KField& K, const BiPoly& a, const BiPoly& b) {
    std::size_t ax = a.size(), bx = b.size();
    std::size_t ay = a.empty() ? 0 : a[0].size(), by = b.empty() ? 0 : b[0].size();
    BiPoly r(ax + bx - 1, std::vector<KElem>(ay + by - 1, K.zero()));
    for (std::size_t i = 0; i < ax; ++i)
        for (std::size_t j = 0; j < ay; ++j) {
            if (a[i][j].is_zero()) continue;
            for (std::size_t k = 0; k < bx; ++k)
                for (std::size_t l = 0; l < by; ++l)
                    if (!b[k][l].is_zero()) r[i + k][j + l] = K.add(r[i + k][j + l], K.mul(a[i][j], b[k][l]));
        }
    return r;
}

}  // namespace

// ------------------------------------------------------------------- V_f

VSpace compute_vf(const XRing& X, const XPoly& f) {
    if (f.deg() < 1) throw std::domain_error("V_f needs deg_X f >= 1");
    const Field& F = X.field();
    const TRing& R = X.tring();

    std::vector<TPoly> members;
    for (const auto& [b, mult] : X.rational_roots(drop_constant(f))) {
        (void)mult;
        if (!b.is_integral()) continue;
        if (X.taylor_shift(f, b.num) == f) members.push_back(b.num);
    }
    std::sort(members.begin(), members.end());

    int len = 1;
    for (const auto& g : members) len = std::max(len, g.deg() + 1);
    VSpace V;
    FpEchelon ech(F.p());
    for (const auto& g : members)
        if (ech.insert(fp_coords(F, g, len))) V.basis.push_back(g);
    V.v = static_cast<int>(V.basis.size());

    std::vector<TPoly> span{R.zero()};
    for (const auto& b : V.basis) {
        std::vector<TPoly> next;
        for (const auto& e : span)
            for (std::uint32_t c = 0; c < F.p(); ++c) next.push_back(R.add(e, R.scale(b, F.from_int(c))));
        span = std::move(next);
    }
    std::sort(span.begin(), span.end());
    if (span != members) throw std::logic_error("shift set of f is not closed under F_p-linear combinations");
    V.elements = std::move(span);
    return V;
}

Rational c_f(const Field& F, const VSpace& V) {
    return Rational(1, static_cast<std::int64_t>(ipow(F.p(), V.v)));
}

Rational c_f(const XRing& X, const XPoly& f) { return c_f(X.field(), compute_vf(X, f)); }

VfProperties check_vf_properties(const XRing& X, const XPoly& f, const VSpace& V) {
    const Field& F = X.field();
    const TRing& R = X.tring();
    const int d = f.deg();
    const auto n = V.elements.size();
    VfProperties P;
    P.bounded_by_degree = n <= static_cast<std::size_t>(d);

    std::set<TPoly> S(V.elements.begin(), V.elements.end());
    P.closed = S.count(R.zero()) == 1;
    for (const auto& a : V.elements) {
        for (const auto& b : V.elements)
            if (!S.count(R.add(a, b))) P.closed = false;
        for (std::uint32_t c = 1; c < F.p(); ++c)
            if (!S.count(R.scale(a, F.from_int(c)))) P.closed = false;
    }
    P.power_of_p = n == ipow(F.p(), V.v);
    P.trivial_when_coprime = (d % static_cast<int>(F.p()) == 0) || n == 1;
    bool some_not_divisible = false;
    for (int i = 1; i < d; ++i)
        if (!R.divides(f.lead(), f.coeff(static_cast<std::size_t>(i)))) some_not_divisible = true;
    P.deficient_bound = !some_not_divisible || n <= static_cast<std::size_t>(d - 1);
    return P;
}

std::vector<TPoly> vf_brute(const XRing& X, const XPoly& f, int max_deg) {
    const TRing& R = X.tring();
    std::vector<TPoly> out;
    const std::uint64_t total = R.count_monic(max_deg + 1);
    for (std::uint64_t i = 0; i < total; ++i) {
        TPoly g = R.from_index(max_deg + 1, i);
        if (X.taylor_shift(f, g) == f) out.push_back(g);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ------------------------------------------------------------ specialness

std::string to_string(NotSpecialReason r) {
    switch (r) {
        case NotSpecialReason::None: return "none";
        case NotSpecialReason::NoRootOfUnity: return "no-root-of-unity";
        case NotSpecialReason::DeficientFactorCount: return "deficient-factor-count";
        case NotSpecialReason::InconsistentMultiplicities: return "inconsistent-multiplicities";
    }
    return "unknown";
}

int hasse_order(const Field& F, const XPoly& f) {
    const int d = f.deg();
    for (int i = 1; i <= d; ++i)
        for (int k = i; k <= d; ++k)
            if (!f.c[k].is_zero() && binom_mod_p(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(i), F.p()) != 0)
                return i;
    throw std::domain_error("hasse_order needs deg_X f >= 1");
}

std::vector<LinearFactor> linear_difference_factors(const XRing& X, const XPoly& f, Elem zeta, int m) {
    const Field& F = X.field();
    KField K(X.tring());
    const KPoly Fk = K.lift(f);
    // Given f(Z) = f(Y) at Z = zeta^j Y + b, the order of X - Z in f(X) - f(Y)
    // is the first nonvanishing Hasse derivative of f, the same for every Z.
    const int mult = hasse_order(F, f);

    std::vector<LinearFactor> out;
    const auto roots = X.rational_roots(drop_constant(f));
    Elem z = F.one();
    for (int j = 0; j < m; ++j, z = F.mul(z, zeta)) {
        for (const auto& [b, rm] : roots) {
            (void)rm;
            if (K.pcompose(Fk, K.linear(K.from(z), b)) == Fk) out.push_back({j, b, mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const LinearFactor& a, const LinearFactor& b) {
        return a.j != b.j ? a.j < b.j : a.b < b.b;
    });
    return out;
}

SpecialDetection detect_special(const XRing& X, const XPoly& f) {
    const int d = f.deg();
    if (d < 2) throw std::domain_error("special detection needs deg_X f >= 2");
    const Field& F = X.field();
    const TRing& R = X.tring();
    KField K(R);
    SpecialDetection out;

    const auto [l, m] = split_degree(d, F.p());
    const auto zeta = F.root_of_unity(static_cast<std::uint32_t>(m));
    if (!zeta) {
        out.reason = NotSpecialReason::NoRootOfUnity;
        out.detail = "no element of order " + std::to_string(m) + " in F_" + std::to_string(F.q());
        return out;
    }

    out.factors = linear_difference_factors(X, f, *zeta, m);
    for (const auto& lf : out.factors) out.factor_degree += lf.mult;
    if (out.factor_degree != d) {
        out.reason = NotSpecialReason::DeficientFactorCount;
        out.detail = "linear factors account for degree " + std::to_string(out.factor_degree) + " of " + std::to_string(d);
        return out;
    }

    auto fail = [&](std::string why) {
        out.reason = NotSpecialReason::InconsistentMultiplicities;
        out.internal_error = true;
        out.detail = std::move(why);
        return out;
    };

    SpecialForm s;
    s.f_d = f.lead();
    s.zeta = *zeta;
    s.m = m;
    s.l = l;
    s.linear_factors = out.factors;
    for (const auto& lf : out.factors)
        if (lf.j == 0) s.V.push_back(lf.b);
    int v = 0;
    while (ipow(F.p(), v) < s.V.size()) ++v;
    if (ipow(F.p(), v) != s.V.size() || v > l) return fail("shift set at j = 0 has size " + std::to_string(s.V.size()));
    s.v = v;
    const int expect = static_cast<int>(ipow(F.p(), l - v));
    for (const auto& lf : out.factors)
        if (lf.mult != expect) return fail("factor multiplicity " + std::to_string(lf.mult) + " != " + std::to_string(expect));

    if (m == 1) {
        s.A = K.zero();
    } else {
        const LinearFactor* last = nullptr;
        for (const auto& lf : out.factors)
            if (lf.j == m - 1) {
                last = &lf;
                break;
            }
        if (!last) return fail("no factor at j = m-1");
        const KElem one_minus = K.sub(K.one(), K.from(F.inv(*zeta)));
        s.A = K.neg(K.div(last->b, one_minus));
    }

    // g(X) = f(X - A); C = g(0) - f_d prod (0 - b)^{m p^{l-v}}
    const KPoly g = K.pcompose(K.lift(f), K.linear(K.one(), K.neg(s.A)));
    const std::uint64_t M = static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(expect);
    KElem prod = K.from(s.f_d);
    for (const auto& b : s.V) prod = K.mul(prod, K.pow(K.neg(b), M));
    s.C = K.sub(g.c.empty() ? K.zero() : g.c[0], prod);

    if (!verify_reconstruction(X, f, s)) return fail("normal form does not reconstruct f");
    out.form = std::move(s);
    return out;
}

bool verify_reconstruction(const XRing& X, const XPoly& f, const SpecialForm& s) {
    const Field& F = X.field();
    KField K(X.tring());
    const std::uint64_t M = static_cast<std::uint64_t>(s.m) * ipow(F.p(), s.l - s.v);
    KPoly P{{K.from(s.f_d)}};
    for (const auto& b : s.V) P = K.pmul(P, K.ppow(K.linear(K.one(), K.sub(s.A, b)), M));
    P = K.padd(P, KPoly{{s.C}});
    return P == K.lift(f);
}

bool verify_factor_product(const XRing& X, const XPoly& f, const SpecialForm& s) {
    const Field& F = X.field();
    KField K(X.tring());
    const int d = f.deg();
    BiPoly prod{{K.one()}};
    for (const auto& lf : s.linear_factors) {
        // X - zeta^j Y - b
        BiPoly lin{{K.neg(lf.b), K.neg(K.from(F.pow(s.zeta, static_cast<std::uint64_t>(lf.j))))}, {K.one(), K.zero()}};
        for (int e = 0; e < lf.mult; ++e) prod = bi_mul(K, prod, lin);
    }
    BiPoly want(static_cast<std::size_t>(d) + 1, std::vector<KElem>(static_cast<std::size_t>(d) + 1, K.zero()));
    const KElem inv_fd = K.inv(K.from(f.lead()));
    for (int i = 1; i <= d; ++i) {
        const KElem c = K.mul(K.from(f.c[i]), inv_fd);
        want[i][0] = K.add(want[i][0], c);
        want[0][i] = K.sub(want[0][i], c);
    }
    // compare on the common rectangle, anything outside must vanish
    const std::size_t nx = std::max(prod.size(), want.size());
    const std::size_t ny = std::max(prod[0].size(), want[0].size());
    auto at = [&](const BiPoly& a, std::size_t i, std::size_t j) {
        return (i < a.size() && j < a[i].size()) ? a[i][j] : K.zero();
    };
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j)
            if (!(at(prod, i, j) == at(want, i, j))) return false;
    return true;
}

XPoly construct_special(const XRing& X, const SpecialParams& P) {
    const Field& F = X.field();
    const TRing& R = X.tring();
    KField K(R);
    if (P.f_d.is_zero()) throw ValidationError("f_d must be nonzero");
    if (P.m < 1 || P.l < 0 || P.v < 0 || P.v > P.l)
        throw ValidationError("need m >= 1 and 0 <= v <= l");
    if (P.m % static_cast<int>(F.p()) == 0) throw ValidationError("p must not divide m");
    if ((F.q() - 1) % static_cast<std::uint32_t>(P.m) != 0)
        throw ValidationError("m = " + std::to_string(P.m) + " does not divide q-1 = " + std::to_string(F.q() - 1));
    const std::uint64_t d = ipow(F.p(), P.l) * static_cast<std::uint64_t>(P.m);
    if (d < 2) throw ValidationError("degree p^l*m must be at least 2");

    std::set<KElem> S(P.V.begin(), P.V.end());
    if (S.size() != P.V.size()) throw ValidationError("V has repeated elements");
    if (P.V.size() != ipow(F.p(), P.v))
        throw ValidationError("|V| = " + std::to_string(P.V.size()) + " but p^v = " + std::to_string(ipow(F.p(), P.v)));
    const Elem zeta = *F.root_of_unity(static_cast<std::uint32_t>(P.m));
    for (const auto& a : P.V) {
        for (const auto& b : P.V)
            if (!S.count(K.add(a, b))) throw ValidationError("V is not closed under addition: " + K.format(a) + " + " + K.format(b));
        if (!S.count(K.mul(K.from(zeta), a))) throw ValidationError("V is not closed under multiplication by zeta: " + K.format(a));
        for (std::uint32_t c = 0; c < F.p(); ++c)
            if (!S.count(K.mul(K.from(F.from_int(c)), a))) throw ValidationError("V is not an F_p-subspace: " + K.format(a));
    }

    const std::uint64_t M = static_cast<std::uint64_t>(P.m) * ipow(F.p(), P.l - P.v);
    KPoly poly{{K.from(P.f_d)}};
    for (const auto& b : P.V) poly = K.pmul(poly, K.ppow(K.linear(K.one(), K.sub(P.A, b)), M));
    poly = K.padd(poly, KPoly{{P.C}});

    std::vector<TPoly> coeffs;
    std::ostringstream bad;
    for (std::size_t i = 0; i < poly.c.size(); ++i) {
        if (!poly.c[i].is_integral()) bad << (bad.tellp() > 0 ? ", " : "") << "X^" << i << ": " << K.format(poly.c[i]);
        coeffs.push_back(poly.c[i].num);
    }
    if (bad.tellp() > 0) throw ValidationError("construction has non-integral coefficients: " + bad.str());
    return XPoly(std::move(coeffs));
}

}  // namespace fflcm

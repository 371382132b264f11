#include "fflcm/xpoly.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "fflcm/residue.hpp"

namespace fflcm {

int XPoly::deg_t() const {
    int d = kZeroDegree;
    for (const auto& x : c) d = std::max(d, x.deg());
    return d;
}

bool operator<(const KElem& a, const KElem& b) {
    if (a.num.deg() != b.num.deg()) return a.num.deg() < b.num.deg();
    if (a.den.deg() != b.den.deg()) return a.den.deg() < b.den.deg();
    if (a.num != b.num) return a.num < b.num;
    return a.den < b.den;
}

// ---------------------------------------------------------------- KField

KElem KField::make(TPoly num, TPoly den) const {
    if (den.is_zero()) throw std::domain_error("zero denominator in F_q(T)");
    if (num.is_zero()) return zero();
    TPoly g = R_.gcd(num, den);
    if (!g.is_one()) {
        num = R_.div_exact(num, g);
        den = R_.div_exact(den, g);
    }
    if (!den.lead().is_one()) {
        Elem il = R_.field().inv(den.lead());
        num = R_.scale(num, il);
        den = R_.scale(den, il);
    }
    return {std::move(num), std::move(den)};
}

KElem KField::add(const KElem& a, const KElem& b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den == b.den) return make(R_.add(a.num, b.num), a.den);
    return make(R_.add(R_.mul(a.num, b.den), R_.mul(b.num, a.den)), R_.mul(a.den, b.den));
}

KElem KField::sub(const KElem& a, const KElem& b) const { return add(a, neg(b)); }

KElem KField::mul(const KElem& a, const KElem& b) const {
    if (a.is_zero() || b.is_zero()) return zero();
    if (a.is_integral() && b.is_integral()) return {R_.mul(a.num, b.num), R_.one()};
    return make(R_.mul(a.num, b.num), R_.mul(a.den, b.den));
}

KElem KField::inv(const KElem& a) const {
    if (a.is_zero()) throw std::domain_error("inversion of zero in F_q(T)");
    return make(a.den, a.num);
}

KElem KField::pow(const KElem& a, std::uint64_t e) const {
    KElem r = one(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

std::string KField::format(const KElem& a) const {
    if (a.is_integral()) return R_.format(a.num);
    return "(" + R_.format(a.num) + ")/(" + R_.format(a.den) + ")";
}

KElem KField::parse(std::string_view text) const {
    int depth = 0;
    std::size_t slash = std::string_view::npos;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == '/' && depth == 0) {
            if (slash != std::string_view::npos)
                throw ValidationError("malformed rational function \"" + std::string(text) + "\": more than one '/'");
            slash = i;
        }
    }
    if (slash == std::string_view::npos) return from(R_.parse(text));
    TPoly num = R_.parse(text.substr(0, slash));
    TPoly den = R_.parse(text.substr(slash + 1));
    if (den.is_zero()) throw ValidationError("zero denominator in \"" + std::string(text) + "\"");
    return make(std::move(num), std::move(den));
}

KPoly KField::padd(const KPoly& a, const KPoly& b) const {
    KPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), zero());
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        if (i < a.c.size() && i < b.c.size())
            r.c[i] = add(a.c[i], b.c[i]);
        else
            r.c[i] = i < a.c.size() ? a.c[i] : b.c[i];
    }
    r.trim();
    return r;
}

KPoly KField::psub(const KPoly& a, const KPoly& b) const {
    KPoly nb = b;
    for (auto& x : nb.c) x = neg(x);
    return padd(a, nb);
}

KPoly KField::pmul(const KPoly& a, const KPoly& b) const {
    if (a.is_zero() || b.is_zero()) return {};
    KPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, zero());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = add(r.c[i + j], mul(a.c[i], b.c[j]));
    }
    r.trim();
    return r;
}

KPoly KField::pscale(const KPoly& a, const KElem& s) const {
    KPoly r = a;
    for (auto& x : r.c) x = mul(x, s);
    r.trim();
    return r;
}

KPoly KField::ppow(const KPoly& a, std::uint64_t e) const {
    KPoly r{{one()}}, b = a;
    while (e) {
        if (e & 1) r = pmul(r, b);
        e >>= 1;
        if (e) b = pmul(b, b);
    }
    return r;
}

KElem KField::peval(const KPoly& a, const KElem& x) const {
    KElem acc = zero();
    for (std::size_t i = a.c.size(); i-- > 0;) acc = add(mul(acc, x), a.c[i]);
    return acc;
}

KPoly KField::pcompose(const KPoly& a, const KPoly& b) const {
    KPoly acc;
    for (std::size_t i = a.c.size(); i-- > 0;) acc = padd(pmul(acc, b), KPoly{{a.c[i]}});
    acc.trim();
    return acc;
}

std::pair<KPoly, KElem> KField::synthetic_div(const KPoly& a, const KElem& r) const {
    if (a.is_zero()) return {KPoly{}, zero()};
    KPoly quot;
    quot.c.assign(a.c.size() - 1, zero());
    KElem carry = zero();
    for (std::size_t i = a.c.size(); i-- > 0;) {
        KElem v = add(a.c[i], mul(carry, r));
        if (i == 0) return {quot, v};
        quot.c[i - 1] = v;
        carry = v;
    }
    return {quot, carry};
}

KPoly KField::linear(const KElem& slope, const KElem& offset) const {
    KPoly r{{offset, slope}};
    r.trim();
    return r;
}

KPoly KField::lift(const XPoly& f) const {
    KPoly r;
    for (const auto& x : f.c) r.c.push_back(from(x));
    r.trim();
    return r;
}

// ----------------------------------------------------------------- XRing

XPoly XRing::add(const XPoly& a, const XPoly& b) const {
    std::vector<TPoly> c(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = R_.add(a.coeff(i), b.coeff(i));
    return XPoly(std::move(c));
}

XPoly XRing::sub(const XPoly& a, const XPoly& b) const {
    std::vector<TPoly> c(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = R_.sub(a.coeff(i), b.coeff(i));
    return XPoly(std::move(c));
}

XPoly XRing::mul(const XPoly& a, const XPoly& b) const {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<TPoly> c(a.c.size() + b.c.size() - 1);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] = R_.add(c[i + j], R_.mul(a.c[i], b.c[j]));
    return XPoly(std::move(c));
}

XPoly XRing::scale(const XPoly& a, const TPoly& s) const {
    std::vector<TPoly> c(a.c.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = R_.mul(a.c[i], s);
    return XPoly(std::move(c));
}

TPoly XRing::eval(const XPoly& f, const TPoly& Q) const {
    TPoly acc;
    for (std::size_t i = f.c.size(); i-- > 0;) acc = R_.add(R_.mul(acc, Q), f.c[i]);
    return acc;
}

TPoly XRing::eval_mod(const XPoly& f, const TPoly& Q, const TPoly& m) const {
    TPoly q = R_.rem(Q, m);
    TPoly acc;
    for (std::size_t i = f.c.size(); i-- > 0;) acc = R_.rem(R_.add(R_.mul(acc, q), f.c[i]), m);
    return acc;
}

XPoly XRing::derivative_x(const XPoly& f) const {
    if (f.c.size() <= 1) return {};
    std::vector<TPoly> c(f.c.size() - 1);
    for (std::size_t i = 1; i < f.c.size(); ++i)
        c[i - 1] = R_.scale(f.c[i], field().from_int(static_cast<long long>(i)));
    return XPoly(std::move(c));
}

XPoly XRing::derivative_t(const XPoly& f) const {
    std::vector<TPoly> c(f.c.size());
    for (std::size_t i = 0; i < f.c.size(); ++i) c[i] = R_.derivative(f.c[i]);
    return XPoly(std::move(c));
}

XPoly XRing::taylor_shift(const XPoly& f, const TPoly& g) const {
    // Horner in X with step acc <- acc*(X + g) + f_i.
    std::vector<TPoly> acc;
    for (std::size_t i = f.c.size(); i-- > 0;) {
        std::vector<TPoly> next(acc.size() + 1);
        for (std::size_t j = 0; j < acc.size(); ++j) {
            next[j + 1] = R_.add(next[j + 1], acc[j]);
            next[j] = R_.add(next[j], R_.mul(acc[j], g));
        }
        next[0] = R_.add(next[0], f.c[i]);
        acc = std::move(next);
    }
    return XPoly(std::move(acc));
}

TPoly XRing::content(const XPoly& f) const {
    TPoly g;
    for (const auto& x : f.c) g = R_.gcd(g, x);
    return g;
}

namespace {

// lc(B)^(deg A - deg B + 1) * A mod B, computed without division.
XPoly pseudo_rem(const TRing& R, XPoly A, const XPoly& B) {
    const int db = B.deg();
    int e = A.deg() - db + 1;
    const TPoly& lb = B.lead();
    while (!A.is_zero() && A.deg() >= db) {
        const TPoly la = A.lead();
        const int shift = A.deg() - db;
        std::vector<TPoly> c(A.c.size());
        for (std::size_t i = 0; i < A.c.size(); ++i) c[i] = R.mul(A.c[i], lb);
        for (int i = 0; i <= db; ++i) c[i + shift] = R.sub(c[i + shift], R.mul(la, B.c[i]));
        A = XPoly(std::move(c));
        --e;
    }
    if (e > 0) {
        TPoly s = R.pow(lb, static_cast<std::uint64_t>(e));
        for (auto& x : A.c) x = R.mul(x, s);
        A.trim();
    }
    return A;
}

}  // namespace

Resultant XRing::resultant_x(const XPoly& f, const XPoly& g) const {
    if (f.is_zero() || g.is_zero()) return {TPoly{}, false};
    if (f.deg() == 0 && g.deg() == 0) return {R_.one(), true};
    if (f.deg() == 0) return {R_.pow(f.c[0], static_cast<std::uint64_t>(g.deg())), false};
    if (g.deg() == 0) return {R_.pow(g.c[0], static_cast<std::uint64_t>(f.deg())), false};

    XPoly A = f, B = g;
    bool negate = false;
    if (A.deg() < B.deg()) {
        std::swap(A, B);
        if ((A.deg() & 1) && (B.deg() & 1)) negate = !negate;
    }
    TPoly gg = R_.one(), h = R_.one();
    for (;;) {
        const int delta = A.deg() - B.deg();
        if ((A.deg() & 1) && (B.deg() & 1)) negate = !negate;
        XPoly Rm = pseudo_rem(R_, A, B);
        if (Rm.is_zero()) return {TPoly{}, false};
        A = std::move(B);
        TPoly divisor = R_.mul(gg, R_.pow(h, static_cast<std::uint64_t>(delta)));
        for (auto& x : Rm.c) x = R_.div_exact(x, divisor);
        B = std::move(Rm);
        gg = A.lead();
        if (delta > 0) {
            h = R_.div_exact(R_.pow(gg, static_cast<std::uint64_t>(delta)),
                             R_.pow(h, static_cast<std::uint64_t>(delta - 1)));
        }
        if (B.deg() == 0) break;
    }
    const int da = A.deg();
    TPoly res = R_.div_exact(R_.pow(B.lead(), static_cast<std::uint64_t>(da)),
                             R_.pow(h, static_cast<std::uint64_t>(da - 1)));
    if (negate) res = R_.neg(res);
    return {res, false};
}

Descent XRing::inseparable_descent(const XPoly& f) const {
    if (f.deg() < 1) throw std::domain_error("inseparable descent needs deg_X f >= 1");
    const std::size_t p = field().p();
    std::size_t step = 1;
    int m = 0;
    for (;;) {
        const std::size_t next = step * p;
        bool ok = true;
        for (std::size_t i = 1; i < f.c.size(); ++i)
            if (!f.c[i].is_zero() && i % next != 0) {
                ok = false;
                break;
            }
        if (!ok) break;
        step = next;
        ++m;
    }
    std::vector<TPoly> h((f.c.size() - 1) / step + 1);
    for (std::size_t j = 0; j < h.size(); ++j) h[j] = f.c[j * step];
    return {XPoly(std::move(h)), m};
}

std::vector<std::pair<KElem, int>> XRing::rational_roots(const XPoly& h) const {
    if (h.is_zero()) throw std::domain_error("root search of the zero polynomial");
    std::vector<std::pair<KElem, int>> out;
    if (h.deg() < 1) return out;
    KField K(R_);

    std::size_t s = 0;
    while (h.c[s].is_zero()) ++s;
    if (s > 0) out.emplace_back(K.zero(), static_cast<int>(s));
    XPoly h1(std::vector<TPoly>(h.c.begin() + static_cast<std::ptrdiff_t>(s), h.c.end()));
    const int d = h1.deg();
    if (d < 1) return out;

    // x = r / l with r an integral root of the monic g(Y) = l^{d-1} h1(Y/l).
    const TPoly& l = h1.lead();
    std::vector<TPoly> g(static_cast<std::size_t>(d) + 1);
    g[static_cast<std::size_t>(d)] = R_.one();
    TPoly lp = R_.one();
    for (int i = d - 1; i >= 0; --i) {
        g[static_cast<std::size_t>(i)] = R_.mul(h1.c[static_cast<std::size_t>(i)], lp);
        lp = R_.mul(lp, l);
    }
    // deg r <= B, so r is its own residue modulo any prime of degree > B.
    int B = 0;
    for (int i = 0; i < d; ++i)
        if (!g[static_cast<std::size_t>(i)].is_zero()) B = std::max(B, g[static_cast<std::size_t>(i)].deg() / (d - i));
    TPoly P;
    for (std::uint64_t idx = 0;; ++idx) {
        P = R_.monic_from_index(B + 1, idx);
        if (R_.is_irreducible(P)) break;
    }
    const ResidueField k(R_, P);
    const ResiduePolyRing RP(k);
    const XPoly gx(g);
    KPoly remaining = K.lift(h1);
    for (const TPoly& r : RP.roots(RP.reduce(gx))) {
        TPoly acc;
        for (int i = d; i >= 0; --i) acc = R_.add(R_.mul(acc, r), g[static_cast<std::size_t>(i)]);
        if (!acc.is_zero()) continue;
        const KElem root = K.make(r, l);
        int mult = 0;
        for (;;) {
            auto [quot, rm] = K.synthetic_div(remaining, root);
            if (!rm.is_zero()) break;
            remaining = std::move(quot);
            ++mult;
        }
        out.emplace_back(root, mult);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

XPoly XRing::parse(const std::vector<std::string>& coeffs) const {
    std::vector<TPoly> c;
    c.reserve(coeffs.size());
    for (const auto& s : coeffs) c.push_back(R_.parse(s));
    XPoly f(std::move(c));
    return f;
}

XPoly XRing::parse_json(std::string_view json) const {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("polynomial is not a JSON array of literals: ") + e.what());
    }
    if (!j.is_array()) throw ValidationError("polynomial must be a JSON array of coefficient literals");
    std::vector<std::string> lits;
    for (const auto& x : j) {
        if (x.is_string())
            lits.push_back(x.get<std::string>());
        else if (x.is_number_integer())
            lits.push_back(std::to_string(x.get<long long>()));
        else
            throw ValidationError("coefficient literal must be a string: " + x.dump());
    }
    return parse(lits);
}

std::vector<std::string> XRing::to_strings(const XPoly& f) const {
    std::vector<std::string> out;
    for (const auto& x : f.c) out.push_back(R_.format(x));
    return out;
}

std::string XRing::format(const XPoly& f) const {
    if (f.is_zero()) return "0";
    std::string out;
    for (std::size_t i = f.c.size(); i-- > 0;) {
        if (f.c[i].is_zero()) continue;
        if (!out.empty()) out += "+";
        std::string cs = R_.format(f.c[i]);
        if (i == 0) {
            out += cs;
            continue;
        }
        if (!f.c[i].is_one()) {
            bool compound = cs.find('+') != std::string::npos;
            out += compound ? "(" + cs + ")*" : cs + "*";
        }
        out += "X";
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

}  // namespace fflcm

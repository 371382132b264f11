#include "fflcm/tpoly.hpp"

#include <algorithm>
#include <stdexcept>

#include "fflcm/detail/expr_parser.hpp"

namespace fflcm {

bool operator<(const TPoly& a, const TPoly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    for (std::size_t i = a.c.size(); i-- > 0;)
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
}

std::size_t TPolyHash::operator()(const TPoly& a) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (Elem e : a.c) {
        h ^= e.v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h ^ a.c.size();
}

TPoly TRing::monomial(Elem c, int e) const {
    if (c.is_zero()) return {};
    std::vector<Elem> v(static_cast<std::size_t>(e) + 1);
    v.back() = c;
    TPoly r;
    r.c = std::move(v);
    return r;
}

TPoly TRing::add(const TPoly& a, const TPoly& b) const {
    const auto& big = a.c.size() >= b.c.size() ? a : b;
    const auto& small = a.c.size() >= b.c.size() ? b : a;
    TPoly r;
    r.c = big.c;
    for (std::size_t i = 0; i < small.c.size(); ++i) r.c[i] = F_->add(r.c[i], small.c[i]);
    r.trim();
    return r;
}

TPoly TRing::neg(const TPoly& a) const {
    TPoly r = a;
    for (auto& x : r.c) x = F_->neg(x);
    return r;
}

TPoly TRing::sub(const TPoly& a, const TPoly& b) const {
    TPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = F_->sub(a.coeff(i), b.coeff(i));
    r.trim();
    return r;
}

TPoly TRing::mul(const TPoly& a, const TPoly& b) const {
    if (a.is_zero() || b.is_zero()) return {};
    TPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Elem{});
    const Field& F = *F_;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        const Elem ai = a.c[i];
        if (ai.is_zero()) continue;
        Elem* out = r.c.data() + i;
        for (std::size_t j = 0; j < b.c.size(); ++j) out[j] = F.add(out[j], F.mul(ai, b.c[j]));
    }
    r.trim();
    return r;
}

TPoly TRing::scale(const TPoly& a, Elem s) const {
    if (s.is_zero()) return {};
    TPoly r = a;
    for (auto& x : r.c) x = F_->mul(x, s);
    return r;
}

TPoly TRing::pow(const TPoly& a, std::uint64_t e) const {
    TPoly r = one(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

std::pair<TPoly, TPoly> TRing::divmod(const TPoly& a, const TPoly& b) const {
    if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
    if (a.deg() < b.deg()) return {TPoly{}, a};
    const Field& F = *F_;
    std::vector<Elem> r = a.c;
    const std::size_t db = b.c.size() - 1;
    const Elem inv_lead = F.inv(b.lead());
    const bool monic = b.lead().is_one();
    std::vector<Elem> quot(r.size() - db);
    for (std::size_t top = r.size(); top-- > db;) {
        Elem c = r[top];
        if (c.is_zero()) continue;
        if (!monic) c = F.mul(c, inv_lead);
        const std::size_t shift = top - db;
        quot[shift] = c;
        const Elem nc = F.neg(c);
        Elem* out = r.data() + shift;
        for (std::size_t i = 0; i < db; ++i) out[i] = F.add(out[i], F.mul(nc, b.c[i]));
        r[top] = Elem{};
    }
    r.resize(db);
    return {TPoly(std::move(quot)), TPoly(std::move(r))};
}

TPoly TRing::rem(const TPoly& a, const TPoly& b) const {
    if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
    if (a.deg() < b.deg()) return a;
    const Field& F = *F_;
    std::vector<Elem> r = a.c;
    const std::size_t db = b.c.size() - 1;
    const Elem inv_lead = F.inv(b.lead());
    const bool monic = b.lead().is_one();
    for (std::size_t top = r.size(); top-- > db;) {
        Elem c = r[top];
        if (c.is_zero()) continue;
        if (!monic) c = F.mul(c, inv_lead);
        const Elem nc = F.neg(c);
        Elem* out = r.data() + (top - db);
        for (std::size_t i = 0; i < db; ++i) out[i] = F.add(out[i], F.mul(nc, b.c[i]));
        r[top] = Elem{};
    }
    r.resize(db);
    return TPoly(std::move(r));
}

TPoly TRing::div_exact(const TPoly& a, const TPoly& b) const {
    auto [s, r] = divmod(a, b);
    if (!r.is_zero()) throw std::logic_error("inexact division in F_q[T]");
    return s;
}

TPoly TRing::make_monic(const TPoly& a) const {
    if (a.is_zero() || a.lead().is_one()) return a;
    return scale(a, F_->inv(a.lead()));
}

TPoly TRing::gcd(const TPoly& a, const TPoly& b) const {
    TPoly x = a, y = b;
    while (!y.is_zero()) {
        TPoly r = rem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return make_monic(x);
}

TRing::Xgcd TRing::xgcd(const TPoly& a, const TPoly& b) const {
    TPoly r0 = a, r1 = b, s0 = one(), s1 = zero(), t0 = zero(), t1 = one();
    while (!r1.is_zero()) {
        auto [quot, r2] = divmod(r0, r1);
        TPoly s2 = sub(s0, mul(quot, s1));
        TPoly t2 = sub(t0, mul(quot, t1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Elem il = F_->inv(r0.lead());
    return {scale(r0, il), scale(s0, il), scale(t0, il)};
}

TPoly TRing::inv_mod(const TPoly& a, const TPoly& m) const {
    auto x = xgcd(rem(a, m), m);
    if (!x.g.is_one()) throw std::domain_error("element is not invertible modulo the given polynomial");
    return rem(x.s, m);
}

Elem TRing::eval(const TPoly& a, Elem x) const {
    Elem acc{};
    for (std::size_t i = a.c.size(); i-- > 0;) acc = F_->add(F_->mul(acc, x), a.c[i]);
    return acc;
}

TPoly TRing::derivative(const TPoly& a) const {
    if (a.c.size() <= 1) return {};
    std::vector<Elem> d(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i) d[i - 1] = F_->mul(F_->from_int(static_cast<long long>(i)), a.c[i]);
    return TPoly(std::move(d));
}

TPoly TRing::pth_root(const TPoly& a) const {
    const std::size_t p = F_->p();
    std::vector<Elem> r(a.c.empty() ? 0 : (a.c.size() - 1) / p + 1);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (i % p == 0)
            r[i / p] = F_->pth_root(a.c[i]);
        else if (!a.c[i].is_zero())
            throw std::logic_error("pth_root: polynomial is not in F_q[T^p]");
    }
    return TPoly(std::move(r));
}

TPoly TRing::powmod(TPoly a, std::uint64_t e, const TPoly& m) const {
    TPoly r = rem(one(), m);
    a = rem(a, m);
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        e >>= 1;
        if (e) a = mulmod(a, a, m);
    }
    return r;
}

bool TRing::is_irreducible(const TPoly& a) const {
    if (a.deg() < 1) throw std::domain_error("irreducibility test of a constant polynomial");
    const TPoly f = make_monic(a);
    const int n = f.deg();
    if (n == 1) return true;
    const TPoly t = var();
    std::vector<TPoly> frob(static_cast<std::size_t>(n) + 1);  // T^{q^i} mod f
    frob[0] = rem(t, f);
    for (int i = 1; i <= n; ++i) frob[i] = frobenius_mod(frob[i - 1], f);
    if (frob[n] != frob[0]) return false;
    for (int r = 2; r <= n; ++r) {
        if (n % r != 0 || !is_prime(static_cast<std::uint64_t>(r))) continue;
        if (!gcd(sub(frob[n / r], t), f).is_one()) return false;
    }
    return true;
}

void TRing::sqf_rec(const TPoly& f, int mult, std::vector<std::pair<TPoly, int>>& out) const {
    if (f.deg() < 1) return;
    TPoly g = derivative(f);
    if (g.is_zero()) {
        sqf_rec(pth_root(f), mult * static_cast<int>(p()), out);
        return;
    }
    TPoly c = gcd(f, g);
    TPoly w = div_exact(f, c);
    int i = 1;
    while (w.deg() > 0) {
        TPoly y = gcd(w, c);
        TPoly z = div_exact(w, y);
        if (z.deg() > 0) out.emplace_back(std::move(z), i * mult);
        ++i;
        w = std::move(y);
        c = div_exact(c, w);
    }
    if (c.deg() > 0) sqf_rec(pth_root(c), mult * static_cast<int>(p()), out);
}

std::vector<std::pair<TPoly, int>> TRing::squarefree_decomposition(const TPoly& monic) const {
    std::vector<std::pair<TPoly, int>> out;
    sqf_rec(make_monic(monic), 1, out);
    return out;
}

std::vector<std::pair<TPoly, int>> TRing::distinct_degree(TPoly f) const {
    std::vector<std::pair<TPoly, int>> out;
    f = make_monic(f);
    const TPoly t = var();
    TPoly h = rem(t, f);
    for (int i = 1; 2 * i <= f.deg(); ++i) {
        h = frobenius_mod(h, f);
        TPoly g = gcd(sub(h, t), f);
        if (g.deg() > 0) {
            f = div_exact(f, g);
            h = rem(h, f);
            out.emplace_back(std::move(g), i);
        }
    }
    if (f.deg() > 0) out.emplace_back(f, f.deg());
    return out;
}

void TRing::edf_rec(const TPoly& g, int r, std::mt19937_64& rng, std::vector<TPoly>& out) const {
    const int n = g.deg();
    if (n == r) {
        out.push_back(g);
        return;
    }
    const Field& F = *F_;
    for (;;) {
        TPoly a = random(n - 1, rng);
        if (a.deg() < 1) continue;
        TPoly b;
        if (F.p() == 2) {
            // Absolute trace to F_2 of a in F_q[T]/(g) componentwise.
            TPoly t = a;
            b = a;
            const int steps = static_cast<int>(F.k()) * r;
            for (int i = 1; i < steps; ++i) {
                t = mulmod(t, t, g);
                b = add(b, t);
            }
        } else {
            // a^{(q^r - 1)/2} = (a^{1 + q + ... + q^{r-1}})^{(q-1)/2}
            TPoly t = a, s = a;
            for (int i = 1; i < r; ++i) {
                t = frobenius_mod(t, g);
                s = mulmod(s, t, g);
            }
            b = sub(powmod(s, (q() - 1) / 2, g), one());
        }
        TPoly d = gcd(b, g);
        if (d.deg() > 0 && d.deg() < n) {
            edf_rec(d, r, rng, out);
            edf_rec(div_exact(g, d), r, rng, out);
            return;
        }
    }
}

std::vector<TPoly> TRing::equal_degree(const TPoly& g, int r, std::mt19937_64& rng) const {
    std::vector<TPoly> out;
    edf_rec(make_monic(g), r, rng, out);
    return out;
}

Factorization TRing::factor(const TPoly& a, std::uint64_t seed) const {
    if (a.is_zero()) throw std::domain_error("factorization of the zero polynomial");
    Factorization fac;
    fac.unit = a.lead();
    if (a.deg() == 0) return fac;
    std::mt19937_64 rng(seed);
    for (auto& [s, mult] : squarefree_decomposition(a)) {
        for (auto& [g, r] : distinct_degree(s)) {
            for (auto& irr : equal_degree(g, r, rng)) fac.factors[irr] += mult;
        }
    }
    return fac;
}

TPoly TRing::expand(const Factorization& fac) const {
    TPoly r = constant(fac.unit);
    for (const auto& [P, e] : fac.factors) r = mul(r, pow(P, static_cast<std::uint64_t>(e)));
    return r;
}

TPoly TRing::radical(const Factorization& fac) const {
    TPoly r = one();
    for (const auto& [P, e] : fac.factors) r = mul(r, P);
    return r;
}

std::vector<TPoly> TRing::monic_divisors(const Factorization& fac) const {
    std::vector<TPoly> divs{one()};
    for (const auto& [P, e] : fac.factors) {
        const std::size_t base = divs.size();
        TPoly pk = one();
        for (int k = 1; k <= e; ++k) {
            pk = mul(pk, P);
            for (std::size_t i = 0; i < base; ++i) divs.push_back(mul(divs[i], pk));
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

int TRing::valuation(const TPoly& a, const TPoly& P) const {
    if (a.is_zero()) throw std::domain_error("valuation of zero is infinite");
    if (P.deg() < 1) throw std::domain_error("valuation at a constant");
    int v = 0;
    TPoly x = a;
    for (;;) {
        auto [s, r] = divmod(x, P);
        if (!r.is_zero()) return v;
        x = std::move(s);
        ++v;
    }
}

std::uint64_t TRing::count_monic(int n) const {
    std::uint64_t c = 1;
    for (int i = 0; i < n; ++i) {
        if (c > (std::uint64_t{1} << 62) / q()) throw ResourceError("q^n overflows the enumeration range");
        c *= q();
    }
    return c;
}

TPoly TRing::from_index(int len, std::uint64_t idx) const {
    std::vector<Elem> c(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) {
        c[i] = Elem{static_cast<std::uint16_t>(idx % q())};
        idx /= q();
    }
    return TPoly(std::move(c));
}

std::uint64_t TRing::index_of(const TPoly& a) const {
    std::uint64_t idx = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) idx = idx * q() + a.c[i].v;
    return idx;
}

TPoly TRing::monic_from_index(int n, std::uint64_t idx) const {
    TPoly r;
    r.c.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i) {
        r.c[i] = Elem{static_cast<std::uint16_t>(idx % q())};
        idx /= q();
    }
    r.c[n] = F_->one();
    return r;
}

std::uint64_t TRing::monic_index(const TPoly& monic) const {
    std::uint64_t idx = 0;
    for (std::size_t i = monic.c.size() - 1; i-- > 0;) idx = idx * q() + monic.c[i].v;
    return idx;
}

std::vector<TPoly> TRing::enumerate_monic(int n) const {
    const std::uint64_t cnt = count_monic(n);
    std::vector<TPoly> out;
    out.reserve(cnt);
    for (std::uint64_t i = 0; i < cnt; ++i) out.push_back(monic_from_index(n, i));
    return out;
}

std::vector<TPoly> TRing::primes_of_degree(int d) const {
    std::vector<TPoly> out;
    const std::uint64_t cnt = count_monic(d);
    for (std::uint64_t i = 0; i < cnt; ++i) {
        TPoly Q = monic_from_index(d, i);
        if (d >= 2 && Q.c[0].is_zero()) continue;
        if (is_irreducible(Q)) out.push_back(std::move(Q));
    }
    return out;
}

std::vector<TPoly> TRing::enumerate_primes(int max_deg) const {
    std::vector<TPoly> out;
    for (int d = 1; d <= max_deg; ++d) {
        auto ps = primes_of_degree(d);
        out.insert(out.end(), ps.begin(), ps.end());
    }
    return out;
}

TPoly TRing::random(int max_deg, std::mt19937_64& rng) const {
    if (max_deg < 0) return {};
    std::uniform_int_distribution<std::uint32_t> dist(0, q() - 1);
    std::vector<Elem> c(static_cast<std::size_t>(max_deg) + 1);
    for (auto& x : c) x = Elem{static_cast<std::uint16_t>(dist(rng))};
    return TPoly(std::move(c));
}

namespace {

struct TPolyOps {
    using Value = TPoly;
    const TRing& R;

    Value from_int(long long n) const { return R.constant(R.field().from_int(n)); }
    std::optional<Value> ident(std::string_view name) const {
        if (name == "T") return R.var();
        if (name == "a") {
            if (R.field().k() == 1) return std::nullopt;
            return R.constant(R.field().gen());
        }
        return std::nullopt;
    }
    Value add(const Value& a, const Value& b) const { return R.add(a, b); }
    Value sub(const Value& a, const Value& b) const { return R.sub(a, b); }
    Value neg(const Value& a) const { return R.neg(a); }
    Value mul(const Value& a, const Value& b) const { return R.mul(a, b); }
    Value pow(const Value& a, unsigned long long e) const {
        if (e > 100000) throw ValidationError("exponent too large in polynomial literal");
        return R.pow(a, e);
    }
};

}  // namespace

TPoly TRing::parse(std::string_view text) const {
    TPolyOps ops{*this};
    return detail::ExprParser<TPolyOps>(text, ops).parse();
}

std::string TRing::format(const TPoly& a) const {
    if (a.is_zero()) return "0";
    const Field& F = *F_;
    std::string out;
    for (std::size_t i = a.c.size(); i-- > 0;) {
        Elem c = a.c[i];
        if (c.is_zero()) continue;
        if (!out.empty()) out += "+";
        std::string cs = F.format(c);
        if (i == 0) {
            out += cs;
            continue;
        }
        if (!c.is_one()) {
            if (cs.find('+') != std::string::npos)
                out += "(" + cs + ")*";
            else
                out += cs + "*";
        }
        out += "T";
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

}  // namespace fflcm

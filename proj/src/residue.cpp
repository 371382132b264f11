#include "fflcm/residue.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fflcm {

namespace {

void rtrim(RPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

int rdeg(const RPoly& a) { return static_cast<int>(a.size()) - 1; }

std::vector<int> prime_divisors(int n) {
    std::vector<int> out;
    for (int r = 2; r * r <= n; ++r)
        if (n % r == 0) {
            out.push_back(r);
            while (n % r == 0) n /= r;
        }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

// ------------------------------------------------------------ F_q[T]/P

ResidueField::ResidueField(const TRing& R, TPoly P) : R_(R), P_(std::move(P)) {
    if (P_.deg() < 1 || !P_.lead().is_one()) throw std::domain_error("residue field needs a monic nonconstant prime");
}

std::uint64_t ResidueField::size() const {
    std::uint64_t s = 1;
    for (int i = 0; i < degree(); ++i) {
        if (s > (std::uint64_t{1} << 62) / R_.q()) throw ResourceError("residue field of size q^" + std::to_string(degree()) + " is too large");
        s *= R_.q();
    }
    return s;
}

// ------------------------------------------------- (F_q[T]/P)[X]

RPoly ResiduePolyRing::reduce(const XPoly& f) const {
    RPoly r;
    for (const auto& c : f.c) r.push_back(k_.reduce(c));
    rtrim(r);
    return r;
}

RPoly ResiduePolyRing::x() const { return {TPoly{}, k_.ring().one()}; }

RPoly ResiduePolyRing::add(const RPoly& a, const RPoly& b) const {
    RPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = k_.add(i < a.size() ? a[i] : TPoly{}, i < b.size() ? b[i] : TPoly{});
    rtrim(r);
    return r;
}

RPoly ResiduePolyRing::sub(const RPoly& a, const RPoly& b) const {
    RPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = k_.sub(i < a.size() ? a[i] : TPoly{}, i < b.size() ? b[i] : TPoly{});
    rtrim(r);
    return r;
}

RPoly ResiduePolyRing::mul(const RPoly& a, const RPoly& b) const {
    if (a.empty() || b.empty()) return {};
    const TRing& R = k_.ring();
    RPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = R.add(r[i + j], R.mul(a[i], b[j]));
    for (auto& c : r) c = k_.reduce(c);
    rtrim(r);
    return r;
}

RPoly ResiduePolyRing::rem(const RPoly& a, const RPoly& m) const {
    if (m.empty()) throw std::domain_error("division by zero polynomial");
    RPoly r = a;
    const int dm = rdeg(m);
    const TPoly il = k_.inv(m.back());
    while (rdeg(r) >= dm) {
        const TPoly c = k_.mul(r.back(), il);
        const std::size_t shift = r.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) r[shift + i] = k_.sub(r[shift + i], k_.mul(c, m[i]));
        rtrim(r);
    }
    return r;
}

RPoly ResiduePolyRing::quo(const RPoly& a, const RPoly& m) const {
    if (m.empty()) throw std::domain_error("division by zero polynomial");
    RPoly r = a;
    const int dm = rdeg(m);
    if (rdeg(r) < dm) return {};
    RPoly qt(static_cast<std::size_t>(rdeg(r) - dm) + 1);
    const TPoly il = k_.inv(m.back());
    while (rdeg(r) >= dm) {
        const TPoly c = k_.mul(r.back(), il);
        const std::size_t shift = r.size() - m.size();
        qt[shift] = c;
        for (std::size_t i = 0; i < m.size(); ++i) r[shift + i] = k_.sub(r[shift + i], k_.mul(c, m[i]));
        rtrim(r);
    }
    rtrim(qt);
    return qt;
}

RPoly ResiduePolyRing::make_monic(const RPoly& a) const {
    if (a.empty()) return a;
    const TPoly il = k_.inv(a.back());
    RPoly r;
    for (const auto& c : a) r.push_back(k_.mul(c, il));
    return r;
}

RPoly ResiduePolyRing::gcd(RPoly a, RPoly b) const {
    while (!b.empty()) {
        RPoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

RPoly ResiduePolyRing::powmod(RPoly base, std::uint64_t e, const RPoly& m) const {
    RPoly r = rem({k_.ring().one()}, m);
    base = rem(base, m);
    while (e) {
        if (e & 1) r = rem(mul(r, base), m);
        e >>= 1;
        if (e) base = rem(mul(base, base), m);
    }
    return r;
}

TPoly ResiduePolyRing::eval(const RPoly& a, const TPoly& x) const {
    TPoly acc;
    for (std::size_t i = a.size(); i-- > 0;) acc = k_.add(k_.mul(acc, x), a[i]);
    return acc;
}

RPoly ResiduePolyRing::frobenius(RPoly a, const RPoly& m) const {
    a = rem(a, m);
    for (int i = 0; i < k_.degree(); ++i) a = powmod(a, k_.ring().q(), m);
    return a;
}

void ResiduePolyRing::split_linear(const RPoly& g, std::mt19937_64& rng, std::vector<TPoly>& out) const {
    if (rdeg(g) < 1) return;
    if (rdeg(g) == 1) {
        const RPoly m = make_monic(g);
        out.push_back(k_.ring().neg(m[0]));
        return;
    }
    const TRing& R = k_.ring();
    const std::uint32_t q = R.q();
    const bool char2 = R.p() == 2;
    int n = 0;  // |P| = 2^n in characteristic 2
    if (char2)
        for (std::uint32_t s = 1; s < q; s <<= 1) n += k_.degree();
    for (;;) {
        const TPoly delta = k_.random(rng);
        RPoly b;
        if (char2) {
            // absolute trace of delta*X
            if (delta.is_zero()) continue;
            RPoly y = rem({TPoly{}, delta}, g);
            RPoly acc = y;
            for (int i = 1; i < n; ++i) {
                y = rem(mul(y, y), g);
                acc = add(acc, y);
            }
            b = acc;
        } else {
            // (X+delta)^{(|P|-1)/2} as a product of q-power conjugates of
            // (X+delta)^{(q-1)/2}
            RPoly c = powmod({delta, R.one()}, (q - 1) / 2, g);
            RPoly acc = c;
            for (int i = 1; i < k_.degree(); ++i) {
                c = powmod(c, q, g);
                acc = rem(mul(acc, c), g);
            }
            b = sub(acc, {R.one()});
        }
        RPoly d = gcd(b, g);
        if (rdeg(d) > 0 && rdeg(d) < rdeg(g)) {
            split_linear(d, rng, out);
            split_linear(quo(g, d), rng, out);
            return;
        }
    }
}

std::vector<TPoly> ResiduePolyRing::roots(const RPoly& f, std::uint64_t seed) const {
    if (f.empty()) throw std::domain_error("roots of the zero polynomial");
    std::vector<TPoly> out;
    if (rdeg(f) < 1) return out;
    const RPoly fm = make_monic(f);
    const RPoly g = gcd(fm, sub(frobenius(x(), fm), x()));
    std::mt19937_64 rng(seed);
    split_linear(g, rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

bool ResiduePolyRing::is_irreducible(const RPoly& f) const {
    const int n = rdeg(f);
    if (n < 1) throw std::domain_error("irreducibility test of a constant polynomial");
    if (n == 1) return true;
    const RPoly fm = make_monic(f);
    std::vector<RPoly> frob{rem(x(), fm)};  // frob[i] = X^{|P|^i} mod f
    for (int i = 1; i <= n; ++i) frob.push_back(frobenius(frob.back(), fm));
    if (frob[static_cast<std::size_t>(n)] != rem(x(), fm)) return false;
    for (int r : prime_divisors(n)) {
        const RPoly g = gcd(fm, sub(frob[static_cast<std::size_t>(n / r)], x()));
        if (rdeg(g) > 0) return false;
    }
    return true;
}

}  // namespace fflcm

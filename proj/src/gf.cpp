#include "fflcm/gf.hpp"

#include <algorithm>
#include <numeric>
#include <regex>

#include "fflcm/detail/expr_parser.hpp"

namespace fflcm {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

using ModPoly = std::vector<std::uint32_t>;  // constant term first, over F_p

void trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly poly_rem(ModPoly a, const ModPoly& b, std::uint32_t p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    std::uint32_t inv_lead = 1;
    for (std::uint32_t x = 1; x < p; ++x)
        if (x * b.back() % p == 1) inv_lead = x;
    while (a.size() >= b.size()) {
        std::uint32_t c = a.back() * inv_lead % p;
        std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) a[shift + i] = (a[shift + i] + (p - c) * b[i]) % p;
        trim(a);
    }
    return a;
}

// Arithmetic on F_p[a] used by the literal parser for moduli.
struct ModPolyOps {
    using Value = ModPoly;
    std::uint32_t p;

    Value from_int(long long n) const {
        Value v{static_cast<std::uint32_t>(((n % p) + p) % p)};
        trim(v);
        return v;
    }
    std::optional<Value> ident(std::string_view name) const {
        if (name == "a") return Value{0, 1};
        return std::nullopt;
    }
    Value add(const Value& x, const Value& y) const {
        Value r(std::max(x.size(), y.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = ((i < x.size() ? x[i] : 0) + (i < y.size() ? y[i] : 0)) % p;
        trim(r);
        return r;
    }
    Value neg(const Value& x) const {
        Value r(x);
        for (auto& c : r) c = (p - c) % p;
        return r;
    }
    Value sub(const Value& x, const Value& y) const { return add(x, neg(y)); }
    Value mul(const Value& x, const Value& y) const {
        if (x.empty() || y.empty()) return {};
        Value r(x.size() + y.size() - 1, 0);
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < y.size(); ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p;
        trim(r);
        return r;
    }
    Value pow(const Value& x, unsigned long long e) const {
        Value r{1};
        for (unsigned long long i = 0; i < e; ++i) r = mul(r, x);
        trim(r);
        return r;
    }
};

}  // namespace

bool is_irreducible_mod_p(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
    ModPoly f = poly;
    trim(f);
    if (f.size() < 2) return false;
    const std::size_t deg = f.size() - 1;
    // Trial division by every monic polynomial of degree 1..deg/2.
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            ModPoly g(d + 1, 0);
            std::uint64_t x = idx;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(x % p);
                x /= p;
            }
            g[d] = 1;
            if (poly_rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t k) {
    // Enumerate (c_0, ..., c_{k-1}) lexicographically with c_0 most significant.
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        ModPoly g(k + 1, 0);
        std::uint64_t x = idx;
        for (std::uint32_t i = 0; i < k; ++i) {
            g[k - 1 - i] = static_cast<std::uint32_t>(x % p);
            x /= p;
        }
        g[k] = 1;
        if (is_irreducible_mod_p(g, p)) return g;
    }
    throw std::logic_error("no irreducible polynomial found");
}

Field::Field(std::uint32_t p) : Field(p, 1, {}) {}

Field::Field(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus) : p_(p), k_(k) {
    if (!is_prime(p)) throw ValidationError("field characteristic " + std::to_string(p) + " is not prime");
    if (k < 1) throw ValidationError("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > kMaxOrder) throw ValidationError("field order exceeds " + std::to_string(kMaxOrder));
    }
    q_ = static_cast<std::uint32_t>(q);
    if (k == 1) {
        modulus_ = {0, 1};
    } else if (modulus.empty()) {
        modulus_ = default_modulus(p, k);
    } else {
        for (auto& c : modulus) c %= p;
        trim(modulus);
        if (modulus.size() != k + 1 || modulus.back() != 1)
            throw ValidationError("modulus must be monic of degree " + std::to_string(k));
        if (!is_irreducible_mod_p(modulus, p)) throw ValidationError("modulus is not irreducible over F_p");
        modulus_ = std::move(modulus);
    }
    build_tables();
}

Field Field::parse(std::string_view spec) {
    static const std::regex re(R"re(^\s*(\d+)\s*(?:\^\s*(\d+))?\s*(?:[,\s]\s*modulus\s*=\s*"?([^"]*)"?)?\s*$)re");
    std::string s(spec);
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw ValidationError("malformed field literal \"" + s + "\"");
    auto p = static_cast<std::uint32_t>(std::stoul(m[1].str()));
    std::uint32_t k = m[2].matched ? static_cast<std::uint32_t>(std::stoul(m[2].str())) : 1;
    if (!is_prime(p)) {
        // Allow "9" as shorthand for "3^2".
        if (m[2].matched) throw ValidationError("field characteristic " + std::to_string(p) + " is not prime");
        std::uint32_t base = 0;
        for (std::uint32_t d = 2; d <= p; ++d)
            if (p % d == 0) {
                base = d;
                break;
            }
        std::uint32_t e = 0, r = p;
        while (r % base == 0) {
            r /= base;
            ++e;
        }
        if (r != 1 || base == 0) throw ValidationError("field order " + std::to_string(p) + " is not a prime power");
        p = base;
        k = e;
    }
    std::vector<std::uint32_t> mod;
    if (m[3].matched && !m[3].str().empty()) {
        if (!is_prime(p)) throw ValidationError("bad characteristic");
        ModPolyOps ops{p};
        mod = detail::ExprParser<ModPolyOps>(m[3].str(), ops).parse();
    }
    return Field(p, k, std::move(mod));
}

void Field::build_tables() {
    const std::size_t qq = std::size_t(q_) * q_;
    add_.assign(qq, 0);
    mul_.assign(qq, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    proot_.assign(q_, 0);

    std::vector<ModPoly> repr(q_);
    for (std::uint32_t x = 0; x < q_; ++x) {
        ModPoly c(k_, 0);
        std::uint32_t t = x;
        for (std::uint32_t i = 0; i < k_; ++i) {
            c[i] = t % p_;
            t /= p_;
        }
        repr[x] = c;
    }
    auto encode = [&](ModPoly c) {
        c.resize(k_, 0);
        std::uint32_t v = 0;
        for (std::uint32_t i = k_; i-- > 0;) v = v * p_ + c[i];
        return static_cast<std::uint16_t>(v);
    };
    ModPolyOps ops{p_};
    for (std::uint32_t x = 0; x < q_; ++x) {
        ModPoly nx(k_);
        for (std::uint32_t i = 0; i < k_; ++i) nx[i] = (p_ - repr[x][i]) % p_;
        neg_[x] = encode(nx);
        for (std::uint32_t y = 0; y < q_; ++y) {
            ModPoly s(k_);
            for (std::uint32_t i = 0; i < k_; ++i) s[i] = (repr[x][i] + repr[y][i]) % p_;
            add_[std::size_t(x) * q_ + y] = encode(s);
            ModPoly a = repr[x], b = repr[y];
            trim(a);
            trim(b);
            ModPoly prod = poly_rem(ops.mul(a, b), modulus_, p_);
            mul_[std::size_t(x) * q_ + y] = encode(prod);
        }
    }
    for (std::uint32_t x = 1; x < q_; ++x)
        for (std::uint32_t y = 1; y < q_; ++y)
            if (mul_[std::size_t(x) * q_ + y] == 1) {
                inv_[x] = static_cast<std::uint16_t>(y);
                break;
            }
    // Frobenius x -> x^p is a bijection; invert it.
    for (std::uint32_t x = 0; x < q_; ++x) proot_[pow(Elem{static_cast<std::uint16_t>(x)}, p_).v] = static_cast<std::uint16_t>(x);
}

Elem Field::gen() const {
    if (k_ == 1) throw ValidationError("field generator 'a' is only available for k > 1");
    return Elem{static_cast<std::uint16_t>(p_)};
}

Elem Field::from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return Elem{static_cast<std::uint16_t>(r)};
}

Elem Field::inv(Elem x) const {
    if (x.is_zero()) throw std::domain_error("inversion of zero in F_" + std::to_string(q_));
    return Elem{inv_[x.v]};
}

Elem Field::pow(Elem x, std::uint64_t e) const {
    Elem r = one();
    while (e) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

std::vector<std::uint32_t> Field::coords(Elem x) const {
    std::vector<std::uint32_t> c(k_);
    std::uint32_t t = x.v;
    for (std::uint32_t i = 0; i < k_; ++i) {
        c[i] = t % p_;
        t /= p_;
    }
    return c;
}

Elem Field::from_coords(const std::vector<std::uint32_t>& c) const {
    std::uint32_t v = 0;
    for (std::size_t i = std::min<std::size_t>(c.size(), k_); i-- > 0;) v = v * p_ + c[i] % p_;
    return Elem{static_cast<std::uint16_t>(v)};
}

std::vector<Elem> Field::elements() const {
    std::vector<Elem> out(q_);
    for (std::uint32_t x = 0; x < q_; ++x) out[x] = Elem{static_cast<std::uint16_t>(x)};
    return out;
}

std::uint32_t Field::order(Elem x) const {
    if (x.is_zero()) throw std::domain_error("zero has no multiplicative order");
    std::uint32_t o = 1;
    Elem y = x;
    while (!y.is_one()) {
        y = mul(y, x);
        ++o;
    }
    return o;
}

std::optional<Elem> Field::root_of_unity(std::uint32_t m) const {
    if (m == 0 || (q_ - 1) % m != 0) return std::nullopt;
    for (std::uint32_t x = 1; x < q_; ++x) {
        Elem e{static_cast<std::uint16_t>(x)};
        if (order(e) == m) return e;
    }
    return std::nullopt;
}

std::string Field::format(Elem x) const {
    if (k_ == 1) return std::to_string(x.v);
    auto c = coords(x);
    std::string out;
    for (std::uint32_t i = k_; i-- > 0;) {
        if (c[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(c[i]);
            continue;
        }
        if (c[i] != 1) out += std::to_string(c[i]) + "*";
        out += "a";
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

std::string Field::spec() const {
    if (k_ == 1) return std::to_string(p_);
    std::string mod;
    for (std::uint32_t i = k_ + 1; i-- > 0;) {
        auto c = modulus_[i];
        if (c == 0) continue;
        if (!mod.empty()) mod += "+";
        if (i == 0) {
            mod += std::to_string(c);
            continue;
        }
        if (c != 1) mod += std::to_string(c) + "*";
        mod += "a";
        if (i > 1) mod += "^" + std::to_string(i);
    }
    return std::to_string(p_) + "^" + std::to_string(k_) + " modulus=\"" + mod + "\"";
}

}  // namespace fflcm

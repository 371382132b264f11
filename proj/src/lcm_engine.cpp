#include "fflcm/lcm_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "fflcm/local_counts.hpp"

namespace fflcm {

// ------------------------------------------------------------------- n0

int n0(const XRing& X, const XPoly& f, const VSpace& V) {
    (void)X;
    const int d = f.deg();
    if (d < 1) throw std::domain_error("n0 needs deg_X f >= 1");
    const int dfd = f.lead().deg();
    int n = 1;
    // deg f_i Q^i < deg f_d Q^d once (d - i) n > deg f_i - deg f_d
    for (int i = 0; i < d; ++i) {
        if (f.c[i].is_zero()) continue;
        const int gap = f.c[i].deg() - dfd;
        if (gap >= 0) n = std::max(n, gap / (d - i) + 1);
    }
    for (const auto& g : V.elements) n = std::max(n, g.deg() + 1);
    return n;
}

int n0(const XRing& X, const XPoly& f) { return n0(X, f, compute_vf(X, f)); }

// ----------------------------------------------------------------- sweep

unsigned default_threads() {
    if (const char* env = std::getenv("FFLCM_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct Partial {
    std::map<TPoly, PrimeStats> primes;
    std::vector<TPoly> zeros;
    std::uint64_t degsum = 0;
    std::unordered_map<TPoly, std::map<std::uint64_t, std::uint64_t>, TPolyHash> values;
};

void merge_stats(PrimeStats& a, const PrimeStats& b) {
    a.alpha += b.alpha;
    a.beta = std::max(a.beta, b.beta);
    if (a.hist.size() < b.hist.size()) a.hist.resize(b.hist.size());
    for (std::size_t i = 0; i < b.hist.size(); ++i) a.hist[i] += b.hist[i];
    if (a.min_class != UINT64_MAX && b.min_class != UINT64_MAX && a.min_class != b.min_class) a.multi_class = true;
    a.multi_class = a.multi_class || b.multi_class;
    a.min_class = std::min(a.min_class, b.min_class);
}

void merge_into(Partial& a, Partial&& b) {
    for (auto& [P, s] : b.primes) merge_stats(a.primes[P], s);
    a.zeros.insert(a.zeros.end(), b.zeros.begin(), b.zeros.end());
    a.degsum += b.degsum;
    for (auto& [v, cls] : b.values) {
        auto& dst = a.values[v];
        for (const auto& [c, k] : cls) dst[c] += k;
    }
}

}  // namespace

ValuationTable sweep(const XRing& X, const XPoly& f, int n, const SweepOptions& opts) {
    return sweep(X, f, compute_vf(X, f), n, opts);
}

ValuationTable sweep(const XRing& X, const XPoly& f, const VSpace& V, int n, const SweepOptions& opts) {
    const TRing& R = X.tring();
    if (f.is_zero() || f.deg() < 1) throw ValidationError("sweep needs deg_X f >= 1");
    if (n < 0) throw ValidationError("n must be nonnegative");
    const std::uint64_t count = R.count_monic(n);
    if (count > opts.budget)
        throw ResourceError("q^n = " + std::to_string(count) + " exceeds the budget " + std::to_string(opts.budget) +
                            "; rerun with --budget " + std::to_string(count) + " or more");

    ValuationTable t;
    t.n = n;
    t.n0 = n0(X, f, V);
    t.d = f.deg();
    t.deg_fd = f.lead().deg();
    t.v_size = V.elements.size();
    t.count = count;

    auto class_of = [&](const TPoly& Q, std::uint64_t idx) {
        std::uint64_t c = idx;
        for (const auto& g : V.elements) {
            TPoly h = R.add(Q, g);
            if (h.deg() == n && h.lead().is_one()) c = std::min(c, R.monic_index(h));
        }
        return c;
    };

    // Fixed chunking, independent of the worker count.
    const std::uint64_t chunk = std::max<std::uint64_t>(1, (count + 63) / 64);
    const std::uint64_t nchunks = (count + chunk - 1) / chunk;
    std::vector<Partial> parts(nchunks);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

    auto worker = [&]() {
        try {
            for (;;) {
                const std::uint64_t ci = next.fetch_add(1);
                if (ci >= nchunks || failed) return;
                Partial& part = parts[ci];
                const std::uint64_t lo = ci * chunk, hi = std::min(count, lo + chunk);
                for (std::uint64_t i = lo; i < hi; ++i) {
                    const TPoly Q = R.monic_from_index(n, i);
                    const TPoly v = X.eval(f, Q);
                    if (v.is_zero()) {
                        part.zeros.push_back(Q);
                        continue;
                    }
                    part.degsum += static_cast<std::uint64_t>(v.deg());
                    const std::uint64_t cls = class_of(Q, i);
                    part.values[v][cls] += 1;
                    if (v.deg() == 0) continue;
                    for (const auto& [P, e] : R.factor(v, opts.seed + i).factors) {
                        PrimeStats& s = part.primes[P];
                        s.alpha += static_cast<std::uint64_t>(e);
                        s.beta = std::max(s.beta, e);
                        if (s.hist.size() < static_cast<std::size_t>(e)) s.hist.resize(static_cast<std::size_t>(e));
                        s.hist[static_cast<std::size_t>(e - 1)] += 1;
                        if (t.large(P)) {
                            if (s.min_class != UINT64_MAX && s.min_class != cls) s.multi_class = true;
                            s.min_class = std::min(s.min_class, cls);
                        }
                    }
                }
            }
        } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
        }
    };

    const unsigned nthreads = static_cast<unsigned>(
        std::min<std::uint64_t>(nchunks, opts.threads ? opts.threads : default_threads()));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    Partial all;
    for (auto& p : parts) merge_into(all, std::move(p));
    t.primes = std::move(all.primes);
    t.zero_values = std::move(all.zeros);
    std::sort(t.zero_values.begin(), t.zero_values.end());
    t.value_degree_sum = all.degsum;
    for (const auto& [v, cls] : all.values) {
        std::uint64_t s = 0, sq = 0;
        for (const auto& [c, k] : cls) {
            s += k;
            sq += k * k;
            t.within_class_pairs += k * (k - 1);
        }
        t.collisions += s * s - sq;
    }
    return t;
}

std::optional<std::uint64_t> lcm_oracle(const XRing& X, const XPoly& f, int n, std::uint64_t budget) {
    const TRing& R = X.tring();
    const std::uint64_t count = R.count_monic(n);
    if (count > budget) throw ResourceError("q^n = " + std::to_string(count) + " exceeds the budget " + std::to_string(budget));
    TPoly L = R.one();
    for (std::uint64_t i = 0; i < count; ++i) {
        const TPoly v = R.make_monic(X.eval(f, R.monic_from_index(n, i)));
        if (v.is_zero()) return std::nullopt;
        if (v.deg() == 0) continue;
        const TPoly g = R.gcd(v, R.rem(L, v));
        L = R.mul(L, R.div_exact(v, g));
    }
    return static_cast<std::uint64_t>(L.deg());
}

TableTotals totals(const ValuationTable& t) {
    TableTotals s;
    const int split = t.n + t.deg_fd;
    for (const auto& [P, st] : t.primes) {
        const auto dp = static_cast<std::uint64_t>(P.deg());
        s.deg_L += static_cast<std::uint64_t>(st.beta) * dp;
        if (st.beta > 0) s.deg_ell += dp;
        s.deg_Pf += st.alpha * dp;
        if (P.deg() <= split) {
            s.deg_Rf += st.alpha * dp;
        } else {
            if (st.multi_class) ++s.s_f_support;
            if (st.alpha != t.v_size * static_cast<std::uint64_t>(st.beta)) ++s.s_f_valuation;
        }
    }
    return s;
}

std::vector<std::uint64_t> bi_counts(const XRing& X, const XPoly& f, int n, const TPoly& P) {
    const TRing& R = X.tring();
    if (P.deg() <= n + f.lead().deg()) throw std::domain_error("B_i needs deg P > n + deg f_d");
    const auto bad = bad_primes(X, f);
    if (std::find(bad.begin(), bad.end(), P) != bad.end()) throw std::domain_error("B_i needs P outside the bad primes");
    const int d = f.deg();
    std::vector<std::uint64_t> B(static_cast<std::size_t>(d) + 1);
    const std::uint64_t count = R.count_monic(n);
    for (std::uint64_t i = 0; i < count; ++i) {
        const TPoly v = X.eval(f, R.monic_from_index(n, i));
        if (v.is_zero()) continue;
        TPoly Pi = P;
        for (int k = 1; k <= d + 1 && R.divides(Pi, v); ++k) {
            B[static_cast<std::size_t>(k - 1)] += 1;
            Pi = R.mul(Pi, P);
        }
    }
    return B;
}

std::vector<std::uint64_t> bi_counts(const ValuationTable& t, const TPoly& P) {
    std::vector<std::uint64_t> B(static_cast<std::size_t>(t.d) + 1);
    auto it = t.primes.find(P);
    if (it == t.primes.end()) return B;
    const auto& h = it->second.hist;
    for (std::size_t i = 0; i < B.size(); ++i)
        for (std::size_t e = i; e < h.size(); ++e) B[i] += h[e];
    return B;
}

// ----------------------------------------------------------------- report

std::string to_string(const Rational& r) {
    return r.denominator() == 1 ? std::to_string(r.numerator())
                                : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_decimal(const Rational& r, int places) {
    __int128 num = r.numerator(), den = r.denominator();
    const bool neg = num < 0;
    if (neg) num = -num;
    __int128 scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    const __int128 scaled = (num * scale * 2 + den) / (2 * den);  // half up
    const auto ip = static_cast<std::uint64_t>(scaled / scale);
    auto fp = static_cast<std::uint64_t>(scaled % scale);
    std::string frac = std::to_string(fp);
    frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
    std::string out = (neg && scaled != 0 ? "-" : "") + std::to_string(ip);
    if (places > 0) out += "." + frac;
    return out;
}

SweepReport make_report(const ValuationTable& t, std::uint32_t q, const Rational& c_f) {
    SweepReport r;
    r.n = t.n;
    r.q = q;
    r.d = t.d;
    r.n0 = t.n0;
    r.c_f = c_f;
    r.defined = t.defined();
    r.t = totals(t);
    r.collisions = t.collisions;
    if (!r.defined) return r;
    const auto nq = static_cast<std::int64_t>(t.n) * static_cast<std::int64_t>(t.count);
    const auto L = static_cast<std::int64_t>(r.t.deg_L);
    auto mk = [](Rational v) { return Ratio{v, to_decimal(v)}; };
    if (t.d >= 2 && nq > 0) {
        r.ratio_conj = mk(Rational(L) / (c_f * Rational(t.d - 1) * Rational(nq)));
        r.ratio_lower = mk(Rational(L) / (Rational(t.d - 1, t.d) * Rational(nq)));
    }
    if (L > 0) r.ratio_rad = mk(Rational(static_cast<std::int64_t>(r.t.deg_ell), L));
    return r;
}

std::vector<SweepReport> report(const XRing& X, const XPoly& f, int n_lo, int n_hi, const SweepOptions& opts) {
    if (n_lo > n_hi) throw ValidationError("empty n range");
    const VSpace V = compute_vf(X, f);
    const Rational cf = c_f(X.field(), V);
    std::vector<SweepReport> out;
    for (int n = n_lo; n <= n_hi; ++n) out.push_back(make_report(sweep(X, f, V, n, opts), X.field().q(), cf));
    return out;
}

std::vector<AvgRootsRow> avg_roots(const XRing& X, const XPoly& f, int kmax, std::uint64_t budget) {
    const TRing& R = X.tring();
    std::vector<AvgRootsRow> out;
    for (int k = 1; k <= kmax; ++k) {
        const std::uint64_t qk = R.count_monic(k);
        if (qk > budget) throw ResourceError("q^k = " + std::to_string(qk) + " exceeds the budget " + std::to_string(budget));
        std::uint64_t sum = 0;
        for (const auto& P : R.primes_of_degree(k)) {
            ResidueField res(R, P);
            ResiduePolyRing RP(res);
            if (RP.reduce(f).empty())
                sum += qk;  // every residue is a root
            else
                sum += RP.roots(RP.reduce(f)).size();
        }
        AvgRootsRow row;
        row.k = k;
        row.value = Rational(static_cast<std::int64_t>(sum) * k, static_cast<std::int64_t>(qk));
        row.decimal = to_decimal(row.value);
        out.push_back(row);
    }
    return out;
}

}  // namespace fflcm

#include "fflcm/local_counts.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fflcm {

// ------------------------------------------------------------ rho

std::vector<TPoly> roots_mod_prime(const XRing& X, const XPoly& f, const TPoly& P, std::uint64_t seed) {
    ResidueField k(X.tring(), P);
    ResiduePolyRing RP(k);
    RPoly fb = RP.reduce(f);
    if (fb.empty()) throw std::domain_error("f vanishes identically modulo " + X.tring().format(P));
    return RP.roots(fb, seed);
}

TPoly local_resultant(const XRing& X, const XPoly& f) {
    if (X.is_separable(f)) return X.resultant_x(f, X.derivative_x(f)).value;
    return X.resultant_x(f, X.derivative_t(f)).value;
}

std::vector<std::uint64_t> lifting_tree_counts(const XRing& X, const XPoly& f, const TPoly& P, int kmax,
                                               const RhoOptions& opts) {
    if (kmax < 1) throw std::domain_error("k must be at least 1");
    if (static_cast<long long>(kmax) * P.deg() > opts.max_level_degree)
        throw ResourceError("lifting to P^" + std::to_string(kmax) + " with deg P = " + std::to_string(P.deg()) +
                            " exceeds the level budget " + std::to_string(opts.max_level_degree));
    const TRing& R = X.tring();
    ResidueField k(R, P);
    const std::uint64_t Psize = k.size();
    const XPoly fp = X.derivative_x(f);

    std::vector<std::uint64_t> counts;
    std::vector<TPoly> level = roots_mod_prime(X, f, P, opts.seed);
    counts.push_back(level.size());
    TPoly Pj = P;  // P^j
    for (int j = 1; j < kmax; ++j) {
        const TPoly Pj1 = R.mul(Pj, P);
        const bool last = j + 1 == kmax;
        std::vector<TPoly> next;
        std::uint64_t count = 0;
        // f(x + t P^j) = f(x) + t P^j f'(x) mod P^{j+1}
        for (const auto& x : level) {
            const TPoly a = R.div_exact(X.eval_mod(f, x, Pj1), Pj);
            const TPoly d = X.eval_mod(fp, x, P);
            if (!d.is_zero()) {
                ++count;
                if (!last) next.push_back(R.add(x, R.mul(k.mul(R.neg(a), k.inv(d)), Pj)));
            } else if (a.is_zero()) {
                count += Psize;
                if (!last) {
                    if (next.size() + Psize > opts.max_nodes)
                        throw ResourceError("lifting tree exceeds " + std::to_string(opts.max_nodes) + " residues");
                    for (std::uint64_t t = 0; t < Psize; ++t) next.push_back(R.add(x, R.mul(R.from_index(P.deg(), t), Pj)));
                }
            }
        }
        counts.push_back(count);
        level = std::move(next);
        Pj = Pj1;
    }
    return counts;
}

namespace {

// Shortcut index: tree levels past it are predicted, and the prediction.
struct Shortcut {
    bool separable;
    int mu;
    int from;  // 2mu+1, or mu+2 for the inseparable case
};

Shortcut shortcut_for(const XRing& X, const XPoly& f, const TPoly& P) {
    const TRing& R = X.tring();
    if (f.deg() < 1) throw ValidationError("f must have positive degree in X");
    if (!X.content(f).is_one()) throw ValidationError("f is not primitive, hence reducible");
    Shortcut s{X.is_separable(f), 0, 1};
    const TPoly res = local_resultant(X, f);
    if (res.is_zero())
        throw ValidationError(s.separable ? "Res(f, f') = 0: f has a repeated factor"
                                          : "Res(f, df/dT) = 0: f is reducible");
    s.mu = R.valuation(res, P);
    s.from = s.separable ? 2 * s.mu + 1 : s.mu + 2;
    return s;
}

}  // namespace

RhoProfile rho_profile(const XRing& X, const XPoly& f, const TPoly& P, int kmax, const RhoOptions& opts) {
    if (kmax < 1) throw std::domain_error("k must be at least 1");
    const Shortcut s = shortcut_for(X, f, P);
    RhoProfile prof;
    prof.P = P;
    prof.separable = s.separable;
    prof.mu = s.mu;
    prof.guaranteed_from = s.from;

    const int depth = opts.paranoid ? kmax : std::min(kmax, s.from);
    std::vector<std::uint64_t> tree = lifting_tree_counts(X, f, P, depth, opts);
    prof.values = tree;
    while (static_cast<int>(prof.values.size()) < kmax)
        prof.values.push_back(s.separable ? prof.values.back() : 0);

    for (int k = s.from; k <= kmax; ++k) {
        const std::uint64_t want = s.separable ? prof.values[static_cast<std::size_t>(s.from - 1)] : 0;
        if (prof.values[static_cast<std::size_t>(k - 1)] != want) prof.invariants_hold = false;
    }
    if (opts.paranoid && !prof.invariants_hold)
        throw std::logic_error("lifting tree disagrees with the stabilization shortcut at P = " + X.tring().format(P));

    prof.stabilized_at = kmax;
    while (prof.stabilized_at > 1 && prof.values[static_cast<std::size_t>(prof.stabilized_at - 2)] == prof.values.back())
        --prof.stabilized_at;
    return prof;
}

std::uint64_t rho(const XRing& X, const XPoly& f, const TPoly& P, int k, const RhoOptions& opts) {
    return rho_profile(X, f, P, k, opts).values.back();
}

std::uint64_t oracle_rho(const XRing& X, const XPoly& f, const TPoly& P, int k) {
    if (k < 1) throw std::domain_error("k must be at least 1");
    const TRing& R = X.tring();
    const int len = k * P.deg();
    std::uint64_t total = 1;
    for (int i = 0; i < len; ++i) {
        total *= R.q();
        if (total > 1000000) throw ResourceError("oracle needs |P|^k <= 10^6");
    }
    const TPoly Pk = R.pow(P, static_cast<std::uint64_t>(k));
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < total; ++i)
        if (X.eval_mod(f, R.from_index(len, i), Pk).is_zero()) ++count;
    return count;
}

std::uint64_t descent_rho(const XRing& X, const XPoly& f, const TPoly& P) {
    const Descent d = X.inseparable_descent(f);
    const auto nh = roots_mod_prime(X, d.h, P).size();
    const auto nf = roots_mod_prime(X, f, P).size();
    if (nh != nf) throw std::logic_error("descended polynomial has a different root count mod " + X.tring().format(P));
    return nh;
}

std::vector<TPoly> bad_primes(const XRing& X, const XPoly& f) {
    const TRing& R = X.tring();
    std::vector<TPoly> out;
    const TPoly cont = X.content(f);
    if (cont.deg() > 0)
        for (const auto& [Q, e] : R.factor(cont).factors) {
            (void)e;
            out.push_back(Q);
        }
    const TPoly res = local_resultant(X, f);
    if (res.is_zero()) throw std::domain_error("resultant vanishes; f is not squarefree over F_q(T)");
    if (res.deg() > 0)
        for (const auto& [Q, e] : R.factor(res).factors) {
            (void)e;
            out.push_back(Q);
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace fflcm

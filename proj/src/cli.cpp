#include "fflcm/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fflcm/acceptance.hpp"
#include "fflcm/irreducibility.hpp"
#include "fflcm/lcm_engine.hpp"
#include "fflcm/local_counts.hpp"

namespace fflcm {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct Rings {
    Field F;
    TRing R;
    XRing X;
    KField K;
    explicit Rings(const ExperimentConfig& c) : F(Field::parse(field_literal(c))), R(F), X(R), K(R) {}
};

XPoly require_f(const ExperimentConfig& c, const XRing& X) {
    if (c.f.empty()) throw ValidationError("--f is required for " + c.command);
    XPoly f = X.parse(c.f);
    if (f.deg() < 1) throw ValidationError("f must have positive degree in X");
    return f;
}

std::vector<std::string> coeffs_from_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception&) {
        throw ValidationError("malformed --f \"" + text + "\": expected a JSON array such as [\"T\",\"0\",\"1\"]");
    }
    if (!j.is_array()) throw ValidationError("malformed --f \"" + text + "\": not an array");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (e.is_string()) out.push_back(e.get<std::string>());
        else if (e.is_number_integer()) out.push_back(std::to_string(e.get<long long>()));
        else throw ValidationError("malformed --f: bad coefficient " + e.dump());
    }
    return out;
}

std::vector<std::string> format_all(const TRing& R, const std::vector<TPoly>& v) {
    std::vector<std::string> out;
    for (const auto& a : v) out.push_back(R.format(a));
    return out;
}

ordered_json ratio_json(const std::optional<Ratio>& r) {
    if (!r) return nullptr;
    return ordered_json{{"exact", to_string(r->value)}, {"decimal", r->decimal}};
}

ordered_json guard(const XRing& X, const XPoly& f, ordered_json& doc, std::ostream& err) {
    const auto g = irreducibility_guard(X, f);
    ordered_json j{{"status", to_string(g.status)}, {"reason", g.reason}};
    if (g.status != Irreducibility::Irreducible) {
        const std::string w = "f is " + to_string(g.status) + " as an element of F_q(T)[X] (" + g.reason +
                              "); results assume irreducibility";
        doc["warning"] = w;
        err << "warning: " << w << "\n";
    }
    return j;
}

NRange range_of(const ExperimentConfig& c) {
    if (c.n_range) return *c.n_range;
    if (c.n) return {*c.n, *c.n};
    throw ValidationError("--n or --n-range is required for " + c.command);
}

// ------------------------------------------------------------------ commands

void cmd_vf(const ExperimentConfig& c, ordered_json& doc) {
    Rings r(c);
    const XPoly f = require_f(c, r.X);
    const VSpace V = compute_vf(r.X, f);
    doc["v"] = V.v;
    doc["c_f"] = to_string(c_f(r.F, V));
    doc["basis"] = format_all(r.R, V.basis);
    doc["elements"] = format_all(r.R, V.elements);
    const auto P = check_vf_properties(r.X, f, V);
    doc["properties"] = {{"bounded_by_degree", P.bounded_by_degree},
                         {"closed", P.closed},
                         {"power_of_p", P.power_of_p},
                         {"trivial_when_coprime", P.trivial_when_coprime},
                         {"deficient_bound", P.deficient_bound}};
    if (c.vf_brute >= 0) {
        const auto brute = vf_brute(r.X, f, c.vf_brute);
        std::vector<TPoly> low;
        for (const auto& g : V.elements)
            if (g.deg() <= c.vf_brute) low.push_back(g);
        std::vector<TPoly> b = brute;
        std::sort(b.begin(), b.end());
        std::sort(low.begin(), low.end());
        doc["brute"] = {{"max_deg", c.vf_brute}, {"elements", format_all(r.R, brute)}, {"agrees", b == low}};
    }
}

ordered_json factors_json(const Rings& r, const std::vector<LinearFactor>& fs) {
    ordered_json a = ordered_json::array();
    for (const auto& x : fs) a.push_back({{"j", x.j}, {"b", r.K.format(x.b)}, {"mult", x.mult}});
    return a;
}

void cmd_special(const ExperimentConfig& c, ordered_json& doc) {
    Rings r(c);
    if (c.action == "construct") {
        SpecialParams P;
        P.f_d = r.R.parse(c.fd);
        P.A = r.K.parse(c.A);
        P.C = r.K.parse(c.C);
        P.m = c.m;
        P.l = c.l;
        P.v = c.v;
        if (c.V.empty()) P.V = {r.K.zero()};
        for (const auto& s : c.V) P.V.push_back(r.K.parse(s));
        std::sort(P.V.begin(), P.V.end());
        const XPoly f = construct_special(r.X, P);
        doc["f"] = r.X.to_strings(f);
        doc["format"] = r.X.format(f);
        return;
    }
    if (c.action != "detect") throw ValidationError("special needs an action: detect or construct");
    const XPoly f = require_f(c, r.X);
    const auto det = detect_special(r.X, f);
    if (det.internal_error) throw std::logic_error("special detection: " + det.detail);
    doc["special"] = det.form.has_value();
    if (det.form) {
        const auto& s = *det.form;
        doc["m"] = s.m;
        doc["l"] = s.l;
        doc["v"] = s.v;
        doc["f_d"] = r.R.format(s.f_d);
        doc["A"] = r.K.format(s.A);
        doc["C"] = r.K.format(s.C);
        doc["zeta"] = r.F.format(s.zeta);
        std::vector<std::string> V;
        for (const auto& b : s.V) V.push_back(r.K.format(b));
        doc["V"] = V;
        doc["factors"] = factors_json(r, s.linear_factors);
        doc["reconstruction_ok"] = verify_reconstruction(r.X, f, s);
        doc["factor_product_ok"] = verify_factor_product(r.X, f, s);
    } else {
        doc["reason"] = to_string(det.reason);
        doc["factors"] = factors_json(r, det.factors);
        doc["factor_degree"] = det.factor_degree;
    }
}

void cmd_rho(const ExperimentConfig& c, ordered_json& doc, std::string& csv, std::ostream& err) {
    Rings r(c);
    const XPoly f = require_f(c, r.X);
    if (c.prime.empty()) throw ValidationError("--prime is required for rho");
    const TPoly P = r.R.parse(c.prime);
    if (P.deg() < 1 || !P.lead().is_one() || !r.R.is_irreducible(P))
        throw ValidationError("--prime " + c.prime + " is not a monic irreducible polynomial");
    doc["irreducibility"] = guard(r.X, f, doc, err);
    RhoOptions o;
    o.paranoid = c.paranoid;
    o.seed = c.seed;
    const auto prof = rho_profile(r.X, f, P, c.kmax, o);
    const auto bad = bad_primes(r.X, f);
    doc["P"] = r.R.format(P);
    doc["bad"] = std::find(bad.begin(), bad.end(), P) != bad.end();
    doc["separable"] = prof.separable;
    doc["mu"] = prof.mu;
    doc["stabilized_at"] = prof.stabilized_at;
    doc["guaranteed_from"] = prof.guaranteed_from;
    doc["invariants_hold"] = prof.invariants_hold;
    doc["values"] = prof.values;
    std::ostringstream s;
    s << "k,rho\n";
    for (std::size_t k = 0; k < prof.values.size(); ++k) s << k + 1 << "," << prof.values[k] << "\n";
    csv = s.str();
}

SweepOptions sweep_options(const ExperimentConfig& c) {
    SweepOptions o;
    o.budget = c.budget;
    o.seed = c.seed;
    return o;
}

void cmd_sweep(const ExperimentConfig& c, ordered_json& doc, std::string& csv, std::ostream& err) {
    Rings r(c);
    const XPoly f = require_f(c, r.X);
    const NRange nr = range_of(c);
    if (nr.lo != nr.hi) throw ValidationError("sweep takes a single n; use report for a range");
    doc["irreducibility"] = guard(r.X, f, doc, err);
    const auto t = sweep(r.X, f, nr.lo, sweep_options(c));
    const auto s = totals(t);
    doc["n"] = t.n;
    doc["q"] = r.F.q();
    doc["d"] = t.d;
    doc["n0"] = t.n0;
    doc["count"] = t.count;
    doc["v_size"] = t.v_size;
    doc["defined"] = t.defined();
    doc["zero_values"] = format_all(r.R, t.zero_values);
    doc["deg_L"] = t.defined() ? ordered_json(s.deg_L) : ordered_json(nullptr);
    doc["deg_ell"] = t.defined() ? ordered_json(s.deg_ell) : ordered_json(nullptr);
    doc["deg_Pf"] = s.deg_Pf;
    doc["deg_Rf"] = s.deg_Rf;
    doc["S_f"] = s.s_f_support;
    doc["S_f_valuation"] = s.s_f_valuation;
    doc["collisions"] = t.collisions;
    doc["within_class_pairs"] = t.within_class_pairs;
    ordered_json primes = ordered_json::array();
    std::ostringstream out;
    out << "P,deg,alpha,beta,large\n";
    for (const auto& [P, st] : t.primes) {
        const std::string name = r.R.format(P);
        primes.push_back({{"P", name},
                          {"deg", P.deg()},
                          {"alpha", st.alpha},
                          {"beta", st.beta},
                          {"large", t.large(P)},
                          {"hist", st.hist}});
        out << '"' << name << "\"," << P.deg() << "," << st.alpha << "," << st.beta << "," << (t.large(P) ? 1 : 0)
            << "\n";
    }
    doc["primes"] = std::move(primes);
    csv = out.str();
}

std::string csv_cell(const std::optional<Ratio>& r) { return r ? r->decimal : ""; }

void cmd_report(const ExperimentConfig& c, ordered_json& doc, std::string& csv, std::ostream& err) {
    Rings r(c);
    const XPoly f = require_f(c, r.X);
    const NRange nr = range_of(c);
    doc["irreducibility"] = guard(r.X, f, doc, err);
    const auto rows = report(r.X, f, nr.lo, nr.hi, sweep_options(c));
    ordered_json a = ordered_json::array();
    std::ostringstream out;
    out << "n,q,d,c_f_num,c_f_den,deg_L,deg_ell,deg_Pf,S_f,collisions,ratio_conj,ratio_lower,ratio_rad\n";
    for (const auto& row : rows) {
        a.push_back({{"n", row.n},
                     {"q", row.q},
                     {"d", row.d},
                     {"n0", row.n0},
                     {"c_f_num", row.c_f.numerator()},
                     {"c_f_den", row.c_f.denominator()},
                     {"defined", row.defined},
                     {"deg_L", row.defined ? ordered_json(row.t.deg_L) : ordered_json(nullptr)},
                     {"deg_ell", row.defined ? ordered_json(row.t.deg_ell) : ordered_json(nullptr)},
                     {"deg_Pf", row.t.deg_Pf},
                     {"S_f", row.t.s_f_support},
                     {"S_f_valuation", row.t.s_f_valuation},
                     {"collisions", row.collisions},
                     {"ratio_conj", ratio_json(row.ratio_conj)},
                     {"ratio_lower", ratio_json(row.ratio_lower)},
                     {"ratio_rad", ratio_json(row.ratio_rad)}});
        out << row.n << "," << row.q << "," << row.d << "," << row.c_f.numerator() << "," << row.c_f.denominator()
            << "," << (row.defined ? std::to_string(row.t.deg_L) : "") << ","
            << (row.defined ? std::to_string(row.t.deg_ell) : "") << "," << row.t.deg_Pf << ","
            << row.t.s_f_support << "," << row.collisions << "," << csv_cell(row.ratio_conj) << ","
            << csv_cell(row.ratio_lower) << "," << csv_cell(row.ratio_rad) << "\n";
    }
    doc["rows"] = std::move(a);
    csv = out.str();
}

void cmd_avgroots(const ExperimentConfig& c, ordered_json& doc, std::string& csv, std::ostream& err) {
    Rings r(c);
    const XPoly f = require_f(c, r.X);
    doc["irreducibility"] = guard(r.X, f, doc, err);
    const auto rows = avg_roots(r.X, f, c.kmax, c.budget);
    ordered_json a = ordered_json::array();
    std::ostringstream out;
    out << "k,value_num,value_den,value\n";
    Rational sum = 0;
    for (const auto& row : rows) {
        sum += row.value;
        a.push_back({{"k", row.k}, {"exact", to_string(row.value)}, {"decimal", row.decimal}});
        out << row.k << "," << row.value.numerator() << "," << row.value.denominator() << "," << row.decimal << "\n";
    }
    doc["rows"] = std::move(a);
    const Rational mean = sum / static_cast<std::int64_t>(rows.size());
    doc["mean"] = {{"exact", to_string(mean)}, {"decimal", to_decimal(mean)}};
    csv = out.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream o(path, std::ios::binary);
    if (!o) throw ValidationError("cannot write " + path);
    o << text;
    if (!o) throw ValidationError("error writing " + path);
}

}  // namespace

ordered_json execute(const ExperimentConfig& cfg, std::string& csv, std::ostream& err) {
    ordered_json doc;
    doc["command"] = cfg.command;
    doc["config"] = to_json(cfg, false);
    if (cfg.command == "vf") cmd_vf(cfg, doc);
    else if (cfg.command == "special") cmd_special(cfg, doc);
    else if (cfg.command == "rho") cmd_rho(cfg, doc, csv, err);
    else if (cfg.command == "sweep") cmd_sweep(cfg, doc, csv, err);
    else if (cfg.command == "report") cmd_report(cfg, doc, csv, err);
    else if (cfg.command == "avgroots") cmd_avgroots(cfg, doc, csv, err);
    else throw ValidationError("unknown command \"" + cfg.command + "\"");
    return doc;
}

namespace {

// Options a subcommand accepts; each remembers how to copy its value into
// the effective configuration when it was given on the command line.
struct Binder {
    ExperimentConfig& flags;
    std::vector<std::pair<CLI::Option*, std::function<void(ExperimentConfig&)>>> copies;

    template <class T>
    void add(CLI::App* app, const std::string& name, T ExperimentConfig::*member, const std::string& help) {
        auto* o = app->add_option(name, flags.*member, help);
        copies.emplace_back(o, [this, member](ExperimentConfig& c) { c.*member = flags.*member; });
    }
    void flag(CLI::App* app, const std::string& name, bool ExperimentConfig::*member, const std::string& help) {
        auto* o = app->add_flag(name, flags.*member, help);
        copies.emplace_back(o, [this, member](ExperimentConfig& c) { c.*member = flags.*member; });
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exhaustive lcm and local root-count experiments for polynomial values over F_q[T]", "fflcm"};
    app.require_subcommand(1);

    ExperimentConfig flags;
    Binder b{flags, {}};
    std::string config_path, f_text, n_range_text;
    std::vector<std::pair<CLI::App*, std::string>> subs;

    auto common = [&](CLI::App* s) {
        s->add_option("--config", config_path, "JSON file with any of the flags below; flags override it");
        b.add(s, "--field", &ExperimentConfig::field, "q, p^k, or \"p^k modulus=...\"");
        b.add(s, "--modulus", &ExperimentConfig::modulus, "defining polynomial of F_q over F_p, in a");
        auto* fo = s->add_option("--f", f_text, "coefficients of f as a JSON array, constant term first");
        b.copies.emplace_back(fo, [&](ExperimentConfig& c) { c.f = coeffs_from_text(f_text); });
        b.add(s, "--seed", &ExperimentConfig::seed, "seed for all randomized steps");
        b.add(s, "--budget", &ExperimentConfig::budget, "largest q^n (or |P|^k) of work accepted");
        b.add(s, "--out", &ExperimentConfig::out, "write JSON here instead of stdout");
        b.add(s, "--csv", &ExperimentConfig::csv, "also write the tabular form as CSV");
    };
    auto sub = [&](const std::string& name, const std::string& help) {
        auto* s = app.add_subcommand(name, help);
        subs.emplace_back(s, name);
        common(s);
        return s;
    };
    auto n_opts = [&](CLI::App* s) {
        auto* no = s->add_option("--n", flags.n, "degree of the monic Q swept");
        b.copies.emplace_back(no, [&](ExperimentConfig& c) { c.n = flags.n; });
        auto* ro = s->add_option("--n-range", n_range_text, "range a..b of n");
        b.copies.emplace_back(ro, [&](ExperimentConfig& c) { c.n_range = parse_n_range(n_range_text); });
    };

    auto* vf = sub("vf", "shift symmetries V_f and c_f");
    b.add(vf, "--vf-brute", &ExperimentConfig::vf_brute, "cross-check by brute force up to this T-degree");

    auto* sp = sub("special", "detect or construct special polynomials");
    b.add(sp, "action", &ExperimentConfig::action, "detect or construct");
    b.add(sp, "--fd", &ExperimentConfig::fd, "construct: leading coefficient");
    b.add(sp, "--A", &ExperimentConfig::A, "construct: shift A");
    b.add(sp, "--C", &ExperimentConfig::C, "construct: constant C");
    b.add(sp, "--m", &ExperimentConfig::m, "construct: order of the root of unity");
    b.add(sp, "--l", &ExperimentConfig::l, "construct: p-power exponent");
    b.add(sp, "--v", &ExperimentConfig::v, "construct: |V| = p^v");
    b.add(sp, "--V", &ExperimentConfig::V, "construct: elements of V");

    auto* rh = sub("rho", "root counts of f modulo P^k");
    b.add(rh, "--prime", &ExperimentConfig::prime, "monic irreducible P");
    b.add(rh, "--kmax", &ExperimentConfig::kmax, "largest k");
    b.flag(rh, "--paranoid", &ExperimentConfig::paranoid, "run the full lifting tree and compare");

    auto* sw = sub("sweep", "valuation table of f(Q) over all monic Q of degree n");
    n_opts(sw);
    auto* rp = sub("report", "lcm degrees and ratios over a range of n");
    n_opts(rp);
    auto* av = sub("avgroots", "average root counts over primes of degree k");
    b.add(av, "--kmax", &ExperimentConfig::kmax, "largest k");
    auto* fx = sub("fixtures", "run the acceptance checks");
    b.add(fx, "--criteria", &ExperimentConfig::criteria, "only these criteria");
    b.flag(fx, "--lock", &ExperimentConfig::lock, "write the trend fixture if it is missing and verified");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitValidation;
    }

    std::string command;
    for (const auto& [s, name] : subs)
        if (s->parsed()) command = name;

    try {
        ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
        for (auto& [o, copy] : b.copies)
            if (o->count() > 0) copy(cfg);
        if (!cfg.command.empty() && cfg.command != command)
            throw ValidationError("config file is for command \"" + cfg.command + "\", not \"" + command + "\"");
        cfg.command = command;
        cfg = canonical(cfg);

        if (command == "fixtures") {
            AcceptanceOptions o;
            o.only = cfg.criteria;
            o.lock = cfg.lock;
            o.progress = &err;
            const auto results = run_acceptance(o);
            out << format_results(results);
            if (!cfg.out.empty()) write_file(cfg.out, results_json(results).dump(2) + "\n");
            const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
            return ok ? kExitOk : kExitFailure;
        }

        std::string csv;
        const auto doc = execute(cfg, csv, err);
        const std::string text = doc.dump(2) + "\n";
        if (cfg.out.empty()) out << text;
        else write_file(cfg.out, text);
        if (!cfg.csv.empty()) {
            if (csv.empty()) throw ValidationError("command " + command + " has no CSV form");
            write_file(cfg.csv, csv);
        }
        return kExitOk;
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << "\n";
        return kExitResource;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace fflcm

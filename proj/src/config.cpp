#include "fflcm/config.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "fflcm/xpoly.hpp"

namespace fflcm {

using nlohmann::json;
using nlohmann::ordered_json;

NRange parse_n_range(const std::string& text) {
    static const std::regex re(R"(^\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw ValidationError("malformed n range \"" + text + "\" (expected a..b)");
    NRange r;
    try {
        r.lo = std::stoi(m[1].str());
        r.hi = m[2].matched ? std::stoi(m[2].str()) : r.lo;
    } catch (const std::out_of_range&) {
        throw ValidationError("n range out of bounds: \"" + text + "\"");
    }
    if (r.lo > r.hi) throw ValidationError("empty n range \"" + text + "\"");
    return r;
}

std::string format_n_range(const NRange& r) { return std::to_string(r.lo) + ".." + std::to_string(r.hi); }

std::string field_literal(const ExperimentConfig& c) {
    if (c.modulus.empty()) return c.field;
    return c.field + " modulus=\"" + c.modulus + "\"";
}

ExperimentConfig canonical(const ExperimentConfig& in) {
    ExperimentConfig c = in;
    const Field F = Field::parse(field_literal(c));
    c.field = std::to_string(F.q());
    c.modulus.clear();
    if (F.k() > 1 && F.modulus() != default_modulus(F.p(), F.k())) {
        const std::string s = F.spec();
        const auto a = s.find('"'), b = s.rfind('"');
        c.modulus = s.substr(a + 1, b - a - 1);
    }
    const TRing R(F);
    const XRing X(R);
    const KField K(R);
    if (!c.f.empty()) c.f = X.to_strings(X.parse(c.f));
    if (!c.prime.empty()) c.prime = R.format(R.parse(c.prime));
    c.fd = R.format(R.parse(c.fd));
    c.A = K.format(K.parse(c.A));
    c.C = K.format(K.parse(c.C));
    std::vector<KElem> vs;
    for (const auto& s : c.V) vs.push_back(K.parse(s));
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    c.V.clear();
    for (const auto& e : vs) c.V.push_back(K.format(e));
    std::sort(c.criteria.begin(), c.criteria.end());
    c.criteria.erase(std::unique(c.criteria.begin(), c.criteria.end()), c.criteria.end());

    if (c.budget == 0) throw ValidationError("budget must be positive");
    if (c.kmax < 1) throw ValidationError("kmax must be at least 1");
    if (c.n && *c.n < 0) throw ValidationError("n must be nonnegative");
    if (c.n_range && (c.n_range->lo < 0 || c.n_range->lo > c.n_range->hi))
        throw ValidationError("bad n range " + format_n_range(*c.n_range));
    return c;
}

ordered_json to_json(const ExperimentConfig& c, bool with_paths) {
    ordered_json j;
    j["command"] = c.command;
    j["action"] = c.action;
    j["field"] = c.field;
    j["modulus"] = c.modulus;
    j["f"] = c.f;
    j["n"] = c.n ? ordered_json(*c.n) : ordered_json(nullptr);
    j["n_range"] = c.n_range ? ordered_json(format_n_range(*c.n_range)) : ordered_json(nullptr);
    j["kmax"] = c.kmax;
    j["prime"] = c.prime;
    j["seed"] = c.seed;
    j["budget"] = c.budget;
    j["paranoid"] = c.paranoid;
    j["vf_brute"] = c.vf_brute;
    j["fd"] = c.fd;
    j["A"] = c.A;
    j["C"] = c.C;
    j["m"] = c.m;
    j["l"] = c.l;
    j["v"] = c.v;
    j["V"] = c.V;
    j["criteria"] = c.criteria;
    j["lock"] = c.lock;
    if (with_paths) {
        j["out"] = c.out;
        j["csv"] = c.csv;
    }
    return j;
}

namespace {

template <class T>
void take(const json& j, const char* key, T& dst) {
    try {
        dst = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config key \"") + key + "\": " + e.what());
    }
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    static const std::set<std::string> known = {"command", "action", "field", "modulus", "f", "n", "n_range",
                                                "kmax", "prime", "seed", "budget", "paranoid", "vf_brute", "fd",
                                                "A", "C", "m", "l", "v", "V", "criteria", "lock", "out", "csv"};
    for (const auto& [k, val] : j.items())
        if (!known.count(k)) throw ValidationError("unknown config key \"" + k + "\"");

    ExperimentConfig c;
    auto str = [&](const char* k, std::string& d) {
        if (j.contains(k)) take(j, k, d);
    };
    str("command", c.command);
    str("action", c.action);
    if (j.contains("field")) {
        // accept 9 as well as "9"
        if (j["field"].is_number_unsigned()) c.field = std::to_string(j["field"].get<unsigned>());
        else take(j, "field", c.field);
    }
    str("modulus", c.modulus);
    if (j.contains("f")) {
        const auto& f = j["f"];
        if (!f.is_array()) throw ValidationError("config key \"f\" must be an array of coefficient literals");
        for (const auto& e : f) {
            if (e.is_string()) c.f.push_back(e.get<std::string>());
            else if (e.is_number_integer()) c.f.push_back(std::to_string(e.get<long long>()));
            else throw ValidationError("config key \"f\": bad coefficient " + e.dump());
        }
    }
    if (j.contains("n") && !j["n"].is_null()) {
        int n = 0;
        take(j, "n", n);
        c.n = n;
    }
    if (j.contains("n_range") && !j["n_range"].is_null()) {
        std::string r;
        take(j, "n_range", r);
        c.n_range = parse_n_range(r);
    }
    if (j.contains("kmax")) take(j, "kmax", c.kmax);
    str("prime", c.prime);
    if (j.contains("seed")) take(j, "seed", c.seed);
    if (j.contains("budget")) take(j, "budget", c.budget);
    if (j.contains("paranoid")) take(j, "paranoid", c.paranoid);
    if (j.contains("vf_brute")) take(j, "vf_brute", c.vf_brute);
    str("fd", c.fd);
    str("A", c.A);
    str("C", c.C);
    if (j.contains("m")) take(j, "m", c.m);
    if (j.contains("l")) take(j, "l", c.l);
    if (j.contains("v")) take(j, "v", c.v);
    if (j.contains("V")) take(j, "V", c.V);
    if (j.contains("criteria")) take(j, "criteria", c.criteria);
    if (j.contains("lock")) take(j, "lock", c.lock);
    str("out", c.out);
    str("csv", c.csv);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError("config file " + path + ": " + e.what());
    }
    return config_from_json(j);
}

}  // namespace fflcm

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fflcm/cli.hpp"
#include "fflcm/irreducibility.hpp"

using namespace fflcm;
using nlohmann::json;

namespace {

struct Out {
    int code;
    std::string out, err;
    json doc() const { return json::parse(out); }
};

Out call(std::vector<std::string> args) {
    std::ostringstream o, e;
    const int code = run(args, o, e);
    return {code, o.str(), e.str()};
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "fflcm_test_cli";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("vf") {
    auto r = call({"vf", "--field", "2", "--f", R"(["T","1","1"])"});
    REQUIRE(r.code == 0);
    auto j = r.doc();
    CHECK(j["v"] == 1);
    CHECK(j["c_f"] == "1/2");
    CHECK(j["basis"] == json::array({"1"}));

    auto b = call({"vf", "--field", "2", "--f", R"(["T","T^2+T","T^2+T+1","0","1"])", "--vf-brute", "2"});
    REQUIRE(b.code == 0);
    CHECK(b.doc()["c_f"] == "1/4");
    CHECK(b.doc()["brute"]["agrees"] == true);
}

TEST_CASE("special detect and construct") {
    auto r = call({"special", "detect", "--field", "3", "--f", R"(["T","2","0","1"])"});
    REQUIRE(r.code == 0);
    auto j = r.doc();
    CHECK(j["special"] == true);
    CHECK(j["m"] == 1);
    CHECK(j["l"] == 1);
    CHECK(j["v"] == 1);
    CHECK(j["reconstruction_ok"] == true);
    CHECK(j["factor_product_ok"] == true);

    auto n = call({"special", "detect", "--field", "2", "--f", R"(["T","0","0","1"])"});
    REQUIRE(n.code == 0);
    CHECK(n.doc()["special"] == false);
    CHECK(n.doc()["reason"] == "no-root-of-unity");

    auto c = call({"special", "construct", "--field", "3", "--m", "2", "--l", "1", "--v", "1", "--A", "1", "--C", "T",
                   "--V", "0", "T", "2*T"});
    REQUIRE(c.code == 0);
    const std::string f = c.doc()["f"].dump();
    auto d = call({"special", "detect", "--field", "3", "--f", f});
    REQUIRE(d.code == 0);
    CHECK(d.doc()["special"] == true);
    CHECK(d.doc()["m"] == 2);
    CHECK(d.doc()["A"] == "1");  // A is determined modulo V
    CHECK(d.doc()["V"] == json::array({"0", "T", "2*T"}));

    // V not closed under addition
    auto bad = call({"special", "construct", "--field", "3", "--l", "1", "--v", "1", "--V", "0", "1", "T"});
    CHECK(bad.code == kExitValidation);
}

TEST_CASE("exit codes and messages") {
    auto lit = call({"sweep", "--field", "3", "--f", R"(["T","0","T^^2"])", "--n", "2"});
    CHECK(lit.code == kExitValidation);
    CHECK(lit.err.find("T^^2") != std::string::npos);

    auto budget = call({"sweep", "--field", "3", "--f", R"(["T","0","1"])", "--n", "9", "--budget", "1000"});
    CHECK(budget.code == kExitResource);
    CHECK(budget.err.find("--budget 19683") != std::string::npos);

    CHECK(call({"sweep", "--field", "3", "--n", "2"}).code == kExitValidation);  // no f
    CHECK(call({"sweep", "--field", "6", "--f", R"(["T","1"])", "--n", "1"}).code == kExitValidation);
    CHECK(call({"frobnicate"}).code == kExitValidation);
    CHECK(call({}).code == kExitValidation);
    CHECK(call({"rho", "--field", "3", "--f", R"(["T","0","1"])", "--prime", "T^2+2"}).code ==
          kExitValidation);  // reducible P
    CHECK(call({"report", "--field", "3", "--f", R"(["T","0","1"])", "--n-range", "5..4"}).code == kExitValidation);
    CHECK(call({"vf", "--help"}).code == 0);
}

TEST_CASE("configuration round trip") {
    ExperimentConfig c;
    c.command = "report";
    c.field = "3^2";
    c.f = {"T+0", "0", "1", "0"};
    c.n_range = NRange{2, 4};
    c.prime = "T + 1";
    c.A = "T^2/T";
    c.V = {"T", "0", "2*T"};
    c.criteria = {3, 1, 3};
    c.seed = 99;
    const ExperimentConfig k = canonical(c);
    CHECK(k.field == "9");
    CHECK(k.f == std::vector<std::string>{"T", "0", "1"});
    CHECK(k.prime == "T+1");
    CHECK(k.A == "T");
    CHECK(k.criteria == std::vector<int>{1, 3});

    const auto j = to_json(k);
    const ExperimentConfig back = config_from_json(json::parse(j.dump()));
    CHECK(back == k);
    CHECK(to_json(back).dump() == j.dump());
    CHECK(canonical(back) == k);

    CHECK_THROWS_AS(config_from_json(json::parse(R"({"feild": "3"})")), ValidationError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"n": "three"})")), ValidationError);
    c.budget = 0;
    CHECK_THROWS_AS(canonical(c), ValidationError);
    CHECK(parse_n_range("4..8") == NRange{4, 8});
    CHECK(parse_n_range("5") == NRange{5, 5});
    CHECK_THROWS_AS(parse_n_range("4-8"), ValidationError);
}

TEST_CASE("config file mirrors flags") {
    const auto cfg = scratch("sweep.json");
    std::ofstream(cfg) << R"({"field": 3, "f": ["T", 0, 1], "n": 3, "seed": 4})";
    auto a = call({"sweep", "--config", cfg.string()});
    auto b = call({"sweep", "--field", "3", "--f", R"(["T","0","1"])", "--n", "3", "--seed", "4"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    // flags override the file
    auto c = call({"sweep", "--config", cfg.string(), "--n", "2"});
    REQUIRE(c.code == 0);
    CHECK(c.doc()["n"] == 2);
    // a config for another command is refused
    std::ofstream(cfg) << R"({"command": "rho", "field": "3"})";
    CHECK(call({"sweep", "--config", cfg.string()}).code == kExitValidation);
}

TEST_CASE("report CSV is a projection of the JSON") {
    const auto csv = scratch("report.csv");
    const auto out = scratch("report.json");
    auto r = call({"report", "--field", "3", "--f", R"(["T","2","0","1"])", "--n-range", "1..5", "--csv", csv.string(),
                   "--out", out.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    const auto rows = parse_csv(slurp(csv));
    const auto j = json::parse(slurp(out));
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == std::vector<std::string>{"n", "q", "d", "c_f_num", "c_f_den", "deg_L", "deg_ell", "deg_Pf", "S_f",
                                              "collisions", "ratio_conj", "ratio_lower", "ratio_rad"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const auto& jr = j["rows"][i - 1];
        REQUIRE(row.size() == 13);
        CHECK(row[0] == jr["n"].dump());
        CHECK(row[1] == jr["q"].dump());
        CHECK(row[2] == jr["d"].dump());
        CHECK(row[3] == jr["c_f_num"].dump());
        CHECK(row[4] == jr["c_f_den"].dump());
        CHECK(row[5] == jr["deg_L"].dump());
        CHECK(row[6] == jr["deg_ell"].dump());
        CHECK(row[7] == jr["deg_Pf"].dump());
        CHECK(row[8] == jr["S_f"].dump());
        CHECK(row[9] == jr["collisions"].dump());
        CHECK(row[10] == jr["ratio_conj"]["decimal"].get<std::string>());
        CHECK(row[11] == jr["ratio_lower"]["decimal"].get<std::string>());
        CHECK(row[12] == jr["ratio_rad"]["decimal"].get<std::string>());
    }
    CHECK(j["rows"][0]["c_f_den"] == 3);
}

TEST_CASE("identical configuration gives identical bytes") {
    const std::vector<std::string> args = {"sweep", "--field", "2", "--f", R"(["T","0","0","1"])", "--n", "7", "--seed",
                                           "3"};
    CHECK(call(args).out == call(args).out);
    const std::vector<std::string> av = {"avgroots", "--field", "4", "--f", R"(["T","1","1"])", "--kmax", "4"};
    CHECK(call(av).out == call(av).out);
}

TEST_CASE("irreducibility guard") {
    Field F = Field::parse("3");
    TRing R(F);
    XRing X(R);
    auto g1 = irreducibility_guard(X, X.parse({"T", "0", "1"}));
    CHECK(g1.status == Irreducibility::Irreducible);
    auto g2 = irreducibility_guard(X, X.parse({"T", "2", "0", "1"}));
    CHECK(g2.status == Irreducibility::Irreducible);
    auto g3 = irreducibility_guard(X, X.parse({"T^2", "2*T", "1"}));  // (X+T)^2
    CHECK(g3.status == Irreducibility::Reducible);

    auto ok = call({"sweep", "--field", "3", "--f", R"(["T","0","1"])", "--n", "2"});
    CHECK(ok.doc()["irreducibility"]["status"] == "irreducible");
    CHECK_FALSE(ok.doc().contains("warning"));
    auto warn = call({"report", "--field", "3", "--f", R"(["T^2","2*T","1"])", "--n", "2"});
    REQUIRE(warn.code == 0);
    CHECK(warn.doc()["irreducibility"]["status"] == "reducible");
    CHECK(warn.doc().contains("warning"));
    CHECK(warn.err.find("warning") != std::string::npos);
}

TEST_CASE("rho and avgroots output") {
    auto r = call({"rho", "--field", "3", "--f", R"(["T","0","0","1"])", "--prime", "T", "--kmax", "4", "--paranoid"});
    REQUIRE(r.code == 0);
    auto j = r.doc();
    CHECK(j["separable"] == false);
    CHECK(j["values"] == json::array({1, 0, 0, 0}));

    auto a = call({"avgroots", "--field", "3", "--f", R"(["T","0","1"])", "--kmax", "2"});
    REQUIRE(a.code == 0);
    CHECK(a.doc()["rows"][0]["exact"] == "1");
    CHECK(a.doc()["rows"][1]["exact"] == "4/9");
    CHECK(a.doc()["mean"]["exact"] == "13/18");
}

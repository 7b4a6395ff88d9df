#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rotorlog/cli.hpp"
#include "support/csv.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "rotorlog");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = rotorlog::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("rotorlog_cli_" + name);
}

}  // namespace

TEST_CASE("solve prints strict JSON and exits 0 when found") {
    for (const char* algo : {"rotor-int", "rotor-real", "naive", "bsgs"}) {
        const auto r = run({"solve", "--p", "373", "--x", "13", "--y", "158", "--algo", algo});
        CHECK(r.code == 0);
        CHECK(r.err.empty());
        const auto doc = nlohmann::json::parse(r.out);
        CHECK(doc["k"] == 5);
        CHECK(doc["found"] == true);
        CHECK(doc["reason"] == "found");
        for (const char* key : {"additions", "subtractions", "comparisons", "outer_steps"})
            CHECK(doc.contains(key));
    }
    const auto doc = nlohmann::json::parse(run({"solve", "--p", "373", "--x", "13", "--y", "158"}).out);
    CHECK(doc["additions"] == 52);
    CHECK(doc["subtractions"] == 23);
    CHECK(doc["outer_steps"] == 4);
}

TEST_CASE("solve exits 1 when there is no solution") {
    const auto r = run({"solve", "--p", "5", "--x", "4", "--y", "3", "--algo", "rotor-int"});
    CHECK(r.code == 1);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["found"] == false);
    CHECK(doc["k"].is_null());
    CHECK(doc["reason"] == "cycle");
}

TEST_CASE("solve usage errors exit 2 and name the flag") {
    auto r = run({"solve", "--p", "5", "--x", "7", "--y", "3"});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(r.err.find("--x") != std::string::npos);

    r = run({"solve", "--p", "5", "--x", "2", "--y", "5"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--y") != std::string::npos);

    r = run({"solve", "--p", "1", "--x", "1", "--y", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--p") != std::string::npos);

    CHECK(run({"solve", "--p", "5", "--x", "-1", "--y", "3"}).code == 2);
    CHECK(run({"solve", "--p", "5", "--x", "2"}).code == 2);
    CHECK(run({"solve", "--p", "5", "--x", "2", "--y", "3", "--algo", "rho"}).code == 2);
    CHECK(run({"solve", "--p", "5", "--x", "2", "--y", "3", "--mode", "fixed:4"}).code == 2);
    CHECK(run({"solve", "--p", "5", "--x", "2", "--y", "3", "--mode", "float64"}).code == 2);
    CHECK(run({"solve", "--p", "5", "--x", "2", "--y", "3", "--algo", "rotor-real", "--tolerance",
               "-1"})
              .code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
}

TEST_CASE("solve in approximate modes") {
    auto r = run({"solve", "--p", "373", "--x", "13", "--y", "158", "--algo", "rotor-real", "--mode",
                  "float64"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["k"] == 5);
    r = run({"solve", "--p", "373", "--x", "13", "--y", "158", "--algo", "rotor-real", "--mode",
             "fixed:8", "--tolerance", "0"});
    CHECK(r.code == 1);
}

TEST_CASE("help goes to stdout and exits 0") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("solve") != std::string::npos);
}

TEST_CASE("verify") {
    auto r = run({"verify", "--p-max", "50"});
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["mismatches"] == 0);
    CHECK(doc["instances"].get<std::uint64_t>() > 1000);

    r = run({"verify", "--p-max", "2"});
    CHECK(r.code == 0);
    doc = nlohmann::json::parse(r.out);
    CHECK(doc["instances"] == 1);

    r = run({"verify", "--p-max", "1000"});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(r.err.find("500") != std::string::npos);
    CHECK(run({"verify", "--p-max", "1"}).code == 2);
}

TEST_CASE("sweep writes CSV and reports fits near 2 for n = p") {
    const auto path = temp_file("sweep.csv");
    const auto r = run({"sweep", "--p-min", "100", "--p-max", "2000", "--samples", "5", "--seed", "7",
                        "--algo", "rotor-int", "--out", path.string()});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["seed"] == 7);
    CHECK(doc["records"] == 1901 * 5);
    CHECK(doc["correct"] == 1901 * 5);
    REQUIRE(doc["fits"].size() == 2);
    CHECK(doc["fits"][0]["n_definition"] == "p");
    const double exponent = doc["fits"][0]["exponent"];
    CHECK(exponent >= 1.7);
    CHECK(exponent <= 2.3);
    CHECK(doc["fits"][1]["n_definition"] == "bits");
    CHECK(doc["bit_growth"]["ratio"].get<double>() > 1);

    const auto csv = slurp(path);
    CHECK(csv.starts_with(
        "p,x,y,k_true,k_found,additions,subtractions,comparisons,outer_steps,wall_ns,correct\n"));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1901 * 5 + 1);
    std::filesystem::remove(path);
}

TEST_CASE("sweep is reproducible and supports JSON") {
    const auto a = temp_file("a.csv");
    const auto b = temp_file("b.csv");
    const std::vector<std::string> common{"sweep", "--p-min", "20", "--p-max", "300", "--samples",
                                          "3", "--seed", "99", "--prime-only"};
    auto args = common;
    args.insert(args.end(), {"--out", a.string()});
    REQUIRE(run(args).code == 0);
    args = common;
    args.insert(args.end(), {"--out", b.string(), "--threads", "2"});
    REQUIRE(run(args).code == 0);
    CHECK(testsupport::without_wall_ns(slurp(a)) == testsupport::without_wall_ns(slurp(b)));

    const auto j = temp_file("sweep.json");
    args = common;
    args.insert(args.end(), {"--out", j.string()});
    REQUIRE(run(args).code == 0);
    const auto doc = nlohmann::json::parse(slurp(j));
    CHECK(doc.is_array());
    for (const auto& p : {a, b, j}) std::filesystem::remove(p);
}

TEST_CASE("sweep argument errors") {
    const auto path = temp_file("x.csv");
    CHECK(run({"sweep", "--p-min", "500", "--p-max", "100", "--out", path.string()}).code == 2);
    CHECK(run({"sweep", "--p-min", "10", "--p-max", "100"}).code == 2);  // --out missing
    CHECK(run({"sweep", "--p-min", "10", "--p-max", "20", "--out", path.string(), "--format", "xml"})
              .code == 2);
    const auto r = run({"sweep", "--p-min", "10", "--p-max", "20", "--out", "/nonexistent-dir/s.csv"});
    CHECK(r.code == 3);
    CHECK(r.err.find("/nonexistent-dir/s.csv") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("precision-scan reports a first failing p for 8 fractional bits") {
    const auto path = temp_file("f.csv");
    const auto r = run({"precision-scan", "--mode", "fixed:8", "--p-max", "10000", "--out",
                        path.string()});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["first_failure_p"].is_number());
    CHECK(doc["first_failure_p"].get<std::uint64_t>() <= 10000);
    CHECK(doc["mode"] == "fixed:8");
    CHECK(doc["seed"] == 1);
    CHECK(slurp(path).starts_with("p,x,y,"));

    CHECK(run({"precision-scan", "--mode", "exact", "--out", path.string()}).code == 2);
    CHECK(run({"precision-scan", "--mode", "float64", "--out", "/nonexistent-dir/f.csv"}).code == 3);
    std::filesystem::remove(path);
}

TEST_CASE("precision-scan full census is deterministic") {
    const auto a = temp_file("scan_a.json");
    const auto b = temp_file("scan_b.json");
    for (const auto& path : {a, b}) {
        const auto r = run({"precision-scan", "--mode", "float64", "--p-max", "120", "--samples", "2",
                            "--seed", "5", "--full", "--out", path.string()});
        REQUIRE(r.code == 0);
    }
    auto da = nlohmann::json::parse(slurp(a));
    auto db = nlohmann::json::parse(slurp(b));
    CHECK(da["first_failure_p"] == db["first_failure_p"]);
    CHECK(da["buckets"] == db["buckets"]);
    CHECK(da["scanned_p_max"] == 120);
    for (auto* d : {&da, &db}) {
        for (auto& rec : (*d)["records"]) rec.erase("wall_ns");
        (*d)["first_failure"].erase("wall_ns");
    }
    CHECK(da == db);
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}

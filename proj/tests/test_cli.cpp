#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lseq/cli.hpp"

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "lseq");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = lseq::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json result(const nlohmann::json& report, const std::string& label) {
    for (const auto& r : report["results"])
        if (r["label"] == label) return r;
    FAIL("missing result " << label);
    return {};
}

void check_report(const Run& r, const std::string& sub) {
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["subcommand"] == sub);
    CHECK(j.contains("inputs"));
    CHECK_FALSE(j["results"].empty());
    CHECK_FALSE(j["provenance"].empty());
    for (const auto& item : j["results"])
        if (item.contains("lo")) CHECK(item["lo"].get<double>() <= item["hi"].get<double>());
}

} // namespace

TEST_CASE("cnj2 report") {
    const auto r = invoke({"cnj2", "--lambda0", "1", "--lambda1", "2"});
    check_report(r, "cnj2");
    const auto j = nlohmann::json::parse(r.out);
    CHECK(result(j, "exact")["value"]["value"].get<double>() == doctest::Approx(1.4472135955).epsilon(1e-10));
    CHECK(result(j, "numeric")["value"]["value"].get<double>() <= 1.4472135955 + 1e-9);
    CHECK(j["inputs"]["grid"] == 512);
    CHECK(j["inputs"]["refine"] == 64);
    CHECK(j["inputs"]["seed"] == 0);
}

TEST_CASE("james-seq csv") {
    const auto r = invoke({"james-seq", "--family", "cesaro", "--p", "inf", "--m", "98", "--csv"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header.rfind("m,value", 0) == 0);
    CHECK(row.rfind("98,1.99,", 0) == 0);
}

TEST_CASE("norm report") {
    const auto r = invoke({"norm", "--family", "cesaro", "--p", "2", "--x", "e0"});
    check_report(r, "norm");
    const auto n = result(nlohmann::json::parse(r.out), "norm");
    CHECK(n["lo"].get<double>() <= 1.2825498301618640);
    CHECK(n["hi"].get<double>() >= 1.2825498301618640);
    CHECK(nlohmann::json::parse(r.out)["inputs"]["width"] == 1e-10);
}

TEST_CASE("every subcommand produces a well-formed report") {
    check_report(invoke({"supnorm", "--x", "0:1,1:1"}), "supnorm");
    check_report(invoke({"luxemburg", "--x", "0:1,3:-2", "--p-prefix", "1.5,3", "--p-tail", "2"}), "luxemburg");
    check_report(invoke({"james2", "--lambda0", "1", "--lambda1", "3", "--p", "1.5", "--grid", "64"}), "james2");
    check_report(invoke({"psi-sup", "--lambda0", "1", "--lambda1", "3"}), "psi-sup");
    check_report(invoke({"jns-seq", "--p", "2", "--n", "3", "--m", "10,100"}), "jns-seq");
    check_report(invoke({"embed-check", "--x", "2:1,5:-3", "--family", "power", "--alpha", "1.5", "--p", "3"}),
                 "embed-check");
    check_report(invoke({"extreme-check", "--x", "0:1,4:2", "--normalize"}), "extreme-check");
    check_report(invoke({"extreme-check", "--x", "0:0.2,4:0.3", "--witness"}), "extreme-check");
    check_report(invoke({"ukk-delta", "--eps", "0.4", "--psup", "2"}), "ukk-delta");
    check_report(invoke({"norm", "--weights", "family=riesz q=[1,2]", "--p", "inf", "--x", "e3"}), "norm");
}

TEST_CASE("psi table as csv") {
    const auto r = invoke({"psi-sup", "--table", "--csv", "--grid", "4"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) ++count;
    CHECK(count == 6);
    CHECK(r.out.rfind("t,psi,psi2,ratio\n0,1,1,1\n", 0) == 0);
}

TEST_CASE("identical arguments give identical output") {
    const std::vector<std::string> args{"james2", "--lambda0", "1", "--lambda1", "2.5", "--p", "3", "--grid", "48",
                                        "--seed", "7"};
    CHECK(invoke(args).out == invoke(args).out);
}

TEST_CASE("exit codes") {
    CHECK(invoke({}).code == 1);
    CHECK(invoke({"frobnicate"}).code == 1);
    CHECK(invoke({"--help"}).code == 0);
    const auto bad_x = invoke({"norm", "--x", "1:abc"});
    CHECK(bad_x.code == 1);
    CHECK_FALSE(bad_x.err.empty());
    CHECK(bad_x.out.empty());
    CHECK(invoke({"norm", "--x", "e0", "--p", "0.5"}).code == 1);
    CHECK(invoke({"norm", "--x", "e0", "--family", "custom", "--values", "1,2"}).code == 1);
    CHECK(invoke({"cnj2", "--lambda0", "2", "--lambda1", "1"}).code == 1);
    CHECK(invoke({"ukk-delta", "--eps", "2", "--psup", "2"}).code == 1);
    const auto diverge = invoke({"norm", "--x", "e0", "--family", "power", "--alpha", "0.5", "--p", "1.5"});
    CHECK(diverge.code == 2);
    CHECK(diverge.err.find("NONCONVERGENT") != std::string::npos);
}

#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "pwla/cli.hpp"
#include "pwla/errors.hpp"
#include "pwla/io.hpp"

using namespace pwla;
using nlohmann::json;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text)
{
    const auto path = std::filesystem::temp_directory_path() / ("pwla_test_" + name + ".json");
    std::ofstream(path) << text;
    return path;
}

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "pwla");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

const std::string kAnnulus = R"({"TL": -2, "DL": 4, "aL": -2, "TR": 1, "DR": 1, "aR": 1, "b": 0})";
const std::string kNoH = R"({"TL": 1, "DL": 1, "aL": -1, "TR": -1, "DR": -1, "aR": 1, "b": 0})";
const std::string kRaw = R"({"AL": [0, 1, -1, 0], "bL": [0, 0], "AR": [1, 2, -1, -1], "bR": [1, 0]})";

}  // namespace

TEST_CASE("parameter files")
{
    const auto raw = io::parse_parameters(kRaw);
    CHECK(raw.params.aR12() == 2);
    CHECK_FALSE(raw.canonical.has_value());

    const auto canon = io::parse_parameters(kAnnulus);
    REQUIRE(canon.canonical.has_value());
    CHECK(canon.canonical->left == HalfSystem::forward(-2, -2, 4));
    CHECK(to_canonical(canon.params) == *canon.canonical);

    CHECK_THROWS_AS(io::parse_parameters("{"), ParseError);
    CHECK_THROWS_AS(io::parse_parameters("[1, 2]"), ParseError);
    CHECK_THROWS_AS(io::parse_parameters(R"({"AL": [0, 1, -1, 0], "bL": [0, 0], "AR": [1, 2, -1, -1]})"), ParseError);
    CHECK_THROWS_AS(io::parse_parameters(R"({"AL": [0, 1, -1], "bL": [0, 0], "AR": [1, 2, -1, -1], "bR": [1, 0]})"),
                    ParseError);
    CHECK_THROWS_AS(io::parse_parameters(R"({"AL": [0, 1, -1, 0], "bL": [0, 0], "AR": [1, 2, -1, -1], "bR": [1, 0], "TL": 1})"),
                    ParseError);
    CHECK_THROWS_AS(io::parse_parameters(R"({"AL": [0, 1, -1, "x"], "bL": [0, 0], "AR": [1, 2, -1, -1], "bR": [1, 0]})"),
                    ParseError);
    CHECK_THROWS_AS(io::parse_parameters(R"({"extra": 1})"), ParseError);
}

TEST_CASE("number formatting")
{
    CHECK(io::format_number(0.1) == "0.1");
    CHECK(io::format_number(-2) == "-2");
    CHECK(io::format_number(1.0 / 0.0) == "inf");
}

TEST_CASE("classify report")
{
    const auto path = write_temp("annulus", kAnnulus);
    const Outcome r = invoke({"-i", path.string()});
    CHECK(r.code == cli::kExitOk);
    const json j = json::parse(r.out);
    CHECK(j["verdict"] == "CrossingPeriodAnnulus");
    CHECK(j["failing_clause"].is_null());
    CHECK(j["records"].size() == 9);

    const Outcome csv = invoke({"-i", path.string(), "--format", "csv"});
    CHECK(csv.out.rfind("field,value,scale,passed\nverdict,CrossingPeriodAnnulus", 0) == 0);
}

TEST_CASE("exit codes")
{
    const auto good = write_temp("good", kAnnulus);
    const auto bad = write_temp("bad", "{\"TL\": 1}");
    const auto noh = write_temp("noh", kNoH);
    CHECK(invoke({"-i", bad.string()}).code == cli::kExitMalformed);
    CHECK(invoke({"-i", "/definitely/not/here.json"}).code == cli::kExitMalformed);
    CHECK(invoke({"-i", good.string(), "-c", "bogus"}).code == cli::kExitMalformed);
    CHECK(invoke({"-i", good.string(), "--tol", "nonsense=1"}).code == cli::kExitMalformed);
    CHECK(invoke({"-i", good.string(), "--tol", "zero=-1"}).code == cli::kExitMalformed);
    CHECK(invoke({"-i", good.string(), "--tol", "1e-10"}).code == cli::kExitOk);
    CHECK(invoke({}).code == cli::kExitMalformed);
    CHECK(invoke({"--help"}).code == cli::kExitOk);

    const Outcome h = invoke({"-i", noh.string(), "-c", "halfmap"});
    CHECK(h.code == cli::kExitPrecondition);
    CHECK(h.err.find("H.right") != std::string::npos);
    CHECK(invoke({"-i", noh.string(), "-c", "displacement"}).code == cli::kExitPrecondition);
    CHECK(invoke({"-i", noh.string()}).code == cli::kExitOk);
    CHECK(invoke({"-i", good.string(), "-c", "portrait", "--y0", "-1"}).code == cli::kExitPrecondition);
}

TEST_CASE("halfmap and displacement tables")
{
    const auto path = write_temp("tables", kAnnulus);
    const Outcome h = invoke({"-i", path.string(), "-c", "halfmap", "--grid", "5", "--format", "csv"});
    CHECK(h.code == 0);
    CHECK(h.out.rfind("y0,yL,yR,dyL,dyR\n", 0) == 0);
    CHECK(std::count(h.out.begin(), h.out.end(), '\n') == 6);

    const Outcome d = invoke({"-i", path.string(), "-c", "displacement", "--grid", "8"});
    CHECK(d.code == 0);
    const json j = json::parse(d.out);
    CHECK(j["empty"] == false);
    CHECK(j["rows"].size() == 8);
    REQUIRE(j["orbits"].size() == 1);
    CHECK(j["orbits"][0]["kind"] == "AnnulusCandidate");
    CHECK(j["mu_b"].is_null());
}

TEST_CASE("empty displacement domain is not an error")
{
    const auto path = write_temp("empty", R"({"TL": 3, "DL": 2, "aL": 1, "TR": 0, "DR": 1, "aR": 1, "b": 10})");
    const Outcome d = invoke({"-i", path.string(), "-c", "displacement"});
    CHECK(d.code == 0);
    CHECK(json::parse(d.out)["empty"] == true);
}

TEST_CASE("portrait")
{
    const auto path = write_temp("portrait", kAnnulus);
    const Outcome p = invoke({"-i", path.string(), "-c", "portrait", "--y0", "15,20", "--grid", "6", "--format", "csv"});
    CHECK(p.code == 0);
    CHECK(p.out.rfind("orbit,t,x,y\n", 0) == 0);
    CHECK(p.out.find("\n1,") != std::string::npos);
}

TEST_CASE("sweeps are reproducible")
{
    const auto path = write_temp("sweep", kRaw);
    const std::vector<std::string> args = {"-i", path.string(), "-c", "sweep", "--grid", "40", "--seed", "7", "--format", "csv"};
    const Outcome a = invoke(args);
    const Outcome b = invoke(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 41);
    auto other = args;
    other[7] = "8";
    CHECK(invoke(other).out != a.out);
}

TEST_CASE("environment overrides")
{
    const auto path = write_temp("env", kAnnulus);
    setenv("PWLA_INPUT", path.string().c_str(), 1);
    setenv("PWLA_FORMAT", "csv", 1);
    const Outcome r = invoke({});
    unsetenv("PWLA_INPUT");
    unsetenv("PWLA_FORMAT");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("field,value", 0) == 0);
}

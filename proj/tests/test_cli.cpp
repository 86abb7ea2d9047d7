#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "intcheb/cli.hpp"

using namespace intcheb;
using namespace intcheb::cli;

TEST_CASE("config round-trips through JSON unchanged") {
    RunConfig cfg = parseArgs({"sweep", "--factors", "z:*,4z-1:*", "--step", "0.01",
                               "--mode", "closedform", "--zetas", "0,1/4"});
    CHECK(cfg.command == "sweep");
    RunConfig back = RunConfig::fromJson(cfg.toJson());
    CHECK(back == cfg);
    CHECK(back.toJson() == cfg.toJson());
}

TEST_CASE("factor aliases resolve to table polynomials with scales") {
    RunConfig cfg = parseArgs({"sweep", "--factors", "z:*,4z-1:*,5z-1:*"});
    REQUIRE(cfg.factors.size() == 3);
    CHECK(cfg.factors[0].poly == "0,1");
    CHECK(cfg.factors[0].scale == 2.0);
    CHECK(cfg.factors[1].poly == "-1,4");
    CHECK(cfg.factors[1].scale == 1.0);
    CHECK(cfg.factors[2].poly == "-1,5");
    CHECK(cfg.factors[2].scale == 2.0);
    CHECK_THROWS_AS(parseArgs({"sweep", "--factors", "bogus:*"}), DomainError);
}

TEST_CASE("explicit coefficient factors via --factor") {
    RunConfig cfg = parseArgs({"leja", "--factor", "0,1:0.5", "--factor", "-1,4:0.1:1",
                               "--leja-n", "50"});
    REQUIRE(cfg.factors.size() == 2);
    CHECK(cfg.factors[0].exponent == "0.5");
    CHECK(cfg.factors[1].poly == "-1,4");
}

TEST_CASE("missing command is a validation error") {
    CHECK_THROWS_AS(parseArgs({}), DomainError);
    CHECK_THROWS_AS(parseArgs({"--bogus"}), DomainError);
}

TEST_CASE("equilibrium command reproduces the hand values") {
    RunConfig cfg = parseArgs({"equilibrium", "--alpha1", "0.25", "--alpha2", "0"});
    Json doc = execute(cfg);
    CHECK(doc["result"]["a"].get<double>() == doctest::Approx(0.0625));
    CHECK(doc["result"]["b"].get<double>() == doctest::Approx(0.25));
    CHECK(doc["result"]["F_w"].get<double>() ==
          doctest::Approx(std::log(4096.0 / 27.0)).epsilon(1e-12));
    CHECK(doc["config"]["command"] == "equilibrium");
}

TEST_CASE("lemniscate command: exact monic case") {
    Json doc = execute(parseArgs({"lemniscate", "--poly", "0,1", "--r", "0.5"}));
    CHECK(doc["result"]["exact"] == true);
    CHECK(doc["result"]["lower"]["value"].get<double>() == 0.5);
}

TEST_CASE("exact command finds the degree-2 optimum") {
    Json doc = execute(parseArgs({"exact", "--domain", "0,1", "--degree", "2"}));
    CHECK(doc["result"]["norm"].get<double>() == 0.25);
    CHECK(doc["result"]["polynomial"] == "0,-1,1");
}

TEST_CASE("bound upper closed form via CLI") {
    Json doc = execute(parseArgs({"bound", "upper", "--factor", "0,1:0.580894",
                                  "--factor", "-1,4:0.09", "--mode", "closedform"}));
    CHECK(doc["result"]["value"].get<double>() == doctest::Approx(0.18043338).epsilon(1e-4));
    CHECK(doc["result"]["unitIntervalBound"].get<double>() ==
          doctest::Approx(std::sqrt(0.18043338)).epsilon(1e-4));
}

TEST_CASE("bound lower rational via CLI with default zetas") {
    Json doc = execute(parseArgs({"bound", "lower", "--method", "rational", "--factor",
                                  "0,1:0.660666", "--factor", "-1,4:0.128", "--mode",
                                  "closedform"}));
    CHECK(doc["result"]["value"].get<double>() == doctest::Approx(0.176056).epsilon(2e-3));
}

TEST_CASE("trigub bound via CLI") {
    Json doc = execute(parseArgs({"bound", "lower", "--method", "trigub", "--trigub-m", "1"}));
    CHECK(doc["result"]["value"].get<double>() == doctest::Approx(0.38196601).epsilon(1e-7));
}

TEST_CASE("leja csv output") {
    const std::string path = "/tmp/intcheb_test_leja.csv";
    Json doc = execute(parseArgs({"leja", "--factor", "0,1:0.5", "--factor", "-1,4:0.1",
                                  "--leja-n", "20", "--grid-density", "5000", "--format", "csv",
                                  "--out", path}));
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "index,point,log_weight,log_product,running_F_w");
    std::remove(path.c_str());
    CHECK(doc["result"]["points"] == 21);
}

TEST_CASE("deterministic output for identical configs") {
    auto once = [] {
        return execute(parseArgs({"sweep", "--factors", "z:*,4z-1:*", "--step", "0.02",
                                  "--mode", "closedform"}))
            .dump();
    };
    CHECK(once() == once());
}

TEST_CASE("config file execution") {
    RunConfig cfg = parseArgs({"equilibrium", "--alpha1", "0.3", "--alpha2", "0.1"});
    const std::string path = "/tmp/intcheb_test_cfg.json";
    {
        std::ofstream out(path);
        out << cfg.toJson().dump();
    }
    RunConfig loaded = parseArgs({"--config", path});
    CHECK(loaded == cfg);
    std::remove(path.c_str());
}

TEST_CASE("exit codes distinguish validation from numerical failures") {
    CHECK(run({"lemniscate", "--poly", "0,1", "--r", "1.5"}) == 2);
    CHECK(run({"nonsense"}) == 2);
    CHECK(run({"lemniscate", "--poly", "0,1", "--r", "0.25"}) == 0);
}

TEST_CASE("sweep rejects pinned exponents, weights reject wildcards") {
    CHECK_THROWS_AS(execute(parseArgs({"sweep", "--factors", "z:0.5,4z-1:*"})), DomainError);
    CHECK_THROWS_AS(execute(parseArgs({"leja", "--factor", "0,1:*", "--leja-n", "10"})),
                    DomainError);
}

TEST_CASE("construct command produces a certified small polynomial") {
    Json doc = execute(parseArgs({"construct", "--domain", "0,1", "--n", "6",
                                  "--grid-density", "20000"}));
    CHECK(doc["result"]["certifiedBound"].get<double>() > 0.0);
    CHECK(doc["result"]["certifiedBound"].get<double>() < 1.0);
    CHECK(doc["result"]["poly"].get<std::string>() != "0");
}

TEST_CASE("region command emits a CSV with the documented columns") {
    const std::string path = "/tmp/intcheb_test_region.csv";
    Json doc = execute(parseArgs({"region", "--factors", "z:*,4z-1:*", "--step", "0.05",
                                  "--m", "0.2", "--mode", "closedform", "--format", "csv",
                                  "--out", path}));
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "z,4z-1,constraint1,constraint2,feasible");
    std::remove(path.c_str());
    CHECK(doc["result"]["anyFeasible"] == true);
}

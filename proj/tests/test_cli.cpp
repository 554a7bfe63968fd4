#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "om/cli.hpp"
#include "om/serialize.hpp"

using namespace om;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli_run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("factor emits the OM tree as JSON") {
    Run r = run({"factor", "-p", "2", "x^2+1"});
    CHECK(r.code == 0);
    ordered_json j = ordered_json::parse(r.out);
    CHECK(j["p"] == 2);
    CHECK(j["certified"] == true);
    REQUIRE(j["leaves"].size() == 1);
    CHECK(j["leaves"][0]["e"] == 2);
    CHECK(j["leaves"][0]["f"] == 1);
}

TEST_CASE("newton over the Gauss chain") {
    Run r = run({"newton", "-p", "2", "--chain", "gauss", "x^2+1"});
    CHECK(r.code == 0);
    ordered_json j = ordered_json::parse(r.out);
    ordered_json want = ordered_json::parse(R"({"vertices":[[0,["0"]],[2,["0"]]]})");
    CHECK(j == want);
}

TEST_CASE("mathematical precondition failures exit with code 2") {
    Run r = run({"factor", "-p", "2", "x^2"});
    CHECK(r.code == 2);
    ordered_json j = ordered_json::parse(r.out);
    CHECK(j["error"] == "om_factor: input not squarefree");
}

TEST_CASE("usage errors exit with code 1") {
    Run r = run({"factor", "-p", "2"}); // missing polynomial
    CHECK(r.code == 1);
    CHECK(!r.err.empty());
    Run r2 = run({"bogus"});
    CHECK(r2.code == 1);
}

TEST_CASE("residual subcommand") {
    Run r = run({"residual", "-p", "2", "x^2+1"});
    CHECK(r.code == 0);
    ordered_json j = ordered_json::parse(r.out);
    CHECK(j["s"] == 0);
    CHECK(j["sprime"] == 2);
    CHECK(j["R"] == "y^2+1");
}

TEST_CASE("chain JSON round-trips byte-identically") {
    // build a depth-1 chain file via the library, then load and re-emit
    Chain c = Chain::gauss(Prime(2)).augment(parse_poly("x^2+x+1"), GroupVec::scalar(Rat(1), 1));
    std::string emitted = chain_to_json(c).dump();
    const char* path = "om_test_chain.json";
    {
        std::ofstream f(path);
        f << emitted << "\n";
    }
    Run r = run({"chain", "--chain", path});
    std::remove(path);
    CHECK(r.code == 0);
    CHECK(r.out == emitted + "\n");
}

TEST_CASE("chain subcommand reports values") {
    Run r = run({"chain", "-p", "2", "--chain", "gauss", "x^2+3"});
    CHECK(r.code == 0);
    ordered_json j = ordered_json::parse(r.out);
    CHECK(j["mu"] == ordered_json::array({"0"}));
}

TEST_CASE("text format renders the polygon") {
    Run r = run({"newton", "-p", "2", "--format", "text", "x^2-2"});
    CHECK(r.code == 0);
    CHECK(r.out.find('*') != std::string::npos);
}

TEST_CASE("factor output is identical across repeated runs") {
    Run a = run({"factor", "-p", "5", "x^4+1", "--seed", "42"});
    Run b = run({"factor", "-p", "5", "x^4+1", "--seed", "42"});
    CHECK(a.out == b.out);
}

TEST_CASE("polynomial JSON array form round-trips") {
    Poly f = parse_poly("x^4+1/3*x-2");
    ordered_json j = poly_to_json(f);
    CHECK(j == ordered_json::array({"-2", "1/3", "0", "0", "1"}));
    CHECK(poly_from_json(j) == f);
}

TEST_CASE("chain files accept coefficient-array keys and reject bad data") {
    auto write_and_run = [](const std::string& body) {
        const char* path = "om_test_chain2.json";
        {
            std::ofstream f(path);
            f << body;
        }
        Run r = run({"chain", "--chain", path});
        std::remove(path);
        return r;
    };
    // array form of phi = x^2+x+1
    Run ok = write_and_run(
        R"({"p":2,"levels":[{"phi":"x","gamma":["0"]},{"phi":["1","1","1"],"gamma":["1"]}]})");
    CHECK(ok.code == 0);
    ordered_json j = ordered_json::parse(ok.out);
    CHECK(j["levels"][1]["phi"] == "x^2+x+1");
    CHECK(j["levels"][1]["e"] == 1);
    CHECK(j["levels"][0]["f"] == 2);

    // stored invariant contradicts the recomputed chain
    Run bad_e = write_and_run(
        R"({"p":2,"levels":[{"phi":"x","gamma":["0"]},{"phi":"x^2+x+1","gamma":["1"],"e":7}]})");
    CHECK(bad_e.code == 2);

    // phi_1 is not a key polynomial for the Gauss valuation
    Run bad_key = write_and_run(
        R"({"p":2,"levels":[{"phi":"x","gamma":["0"]},{"phi":"x^2+1","gamma":["1"]}]})");
    CHECK(bad_key.code == 2);

    // gamma not above mu(phi)
    Run bad_gamma = write_and_run(
        R"({"p":2,"levels":[{"phi":"x","gamma":["0"]},{"phi":"x^2+x+1","gamma":["0"]}]})");
    CHECK(bad_gamma.code == 2);
}

TEST_CASE("selftest runs the embedded suite and exits 0") {
    Run r = run({"selftest"});
    CHECK(r.code == 0);
    CHECK(r.out.find("selftest passed") != std::string::npos);
}

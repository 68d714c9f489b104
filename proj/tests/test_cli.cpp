#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "meu/cli.hpp"

using namespace meu;
using nlohmann::json;

namespace {

struct RunResult {
    int rc;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int rc = run_cli(args, out, err);
    return {rc, out.str(), err.str()};
}

struct EnvGuard {
    EnvGuard(const char* k, const char* v) : key(k) { setenv(k, v, 1); }
    ~EnvGuard() { unsetenv(key); }
    const char* key;
};

}  // namespace

TEST_CASE("parse_args round-trips the documented invocations") {
    auto q = parse_args({"compute", "A8", "1,0,2,3,0,0,1,1", "--method", "all"});
    CHECK(q.command == "compute");
    CHECK(q.type == 'A');
    CHECK(q.rank == 8);
    CHECK(q.comp == std::vector<int>{1, 0, 2, 3, 0, 0, 1, 1});
    CHECK(q.methods == std::vector<std::string>{"all"});
    CHECK(q.mode == "lookup");
    CHECK(q.format == "plain");
    CHECK(q.seed == 1);

    auto e = parse_args({"compute", "e6", "0,1,0,2,3,0"});
    CHECK(e.type == 'E');
    CHECK(e.rank == 6);
    CHECK(e.comp == std::vector<int>{0, 1, 0, 2, 3, 0});
    CHECK(e.methods == std::vector<std::string>{"reduce"});

    CHECK_THROWS_AS(parse_args({"diagrams", "B3", "1,1,1"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_args({"compute", "A3", "1,1"}),
                    std::invalid_argument);  // wrong length
    CHECK_THROWS_AS(parse_args({"compute", "A3", "2,2,2"}),
                    std::invalid_argument);  // wrong sum
    CHECK_THROWS_AS(parse_args({"compute", "Q3", "1,1,1"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_args({"compute", "A", "1"}), std::invalid_argument);
    CHECK_THROWS_AS(parse_args({"compute", "A3", "1,x,1"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_args({"table"}), std::invalid_argument);
}

TEST_CASE("the environment seed beats --seed") {
    auto base = parse_args({"compute", "A3", "1,1,1", "--seed", "5"});
    CHECK(base.seed == 5);
    {
        EnvGuard env("MIXED_EULERIAN_SEED", "99");
        auto q = parse_args({"compute", "A3", "1,1,1", "--seed", "5"});
        CHECK(q.seed == 99);
        auto bare = parse_args({"compute", "A3", "1,1,1"});
        CHECK(bare.seed == 99);
    }
    {
        EnvGuard env("MIXED_EULERIAN_SEED", "7up");
        CHECK_THROWS_AS(parse_args({"compute", "A3", "1,1,1"}),
                        std::invalid_argument);
        CHECK(run({"compute", "A3", "1,1,1"}).rc == 1);
    }
    auto after = parse_args({"compute", "A3", "1,1,1", "--seed", "5"});
    CHECK(after.seed == 5);
}

TEST_CASE("compute prints a bare value for a single method") {
    auto r = run({"compute", "A3", "1,1,1"});
    CHECK(r.rc == 0);
    CHECK(r.out == "6\n");
    CHECK(r.err.empty());
}

TEST_CASE("compute with every applicable method agrees") {
    auto r = run({"compute", "A3", "0,3,0", "--method", "all"});
    CHECK(r.rc == 0);
    CHECK(r.out.find("reduce 4\n") != std::string::npos);
    CHECK(r.out.find("diagrams 4\n") != std::string::npos);
    CHECK(r.out.find("divsym 4\n") != std::string::npos);
    CHECK(r.out.find("weylsum 4\n") != std::string::npos);
    CHECK(r.out.find("quotient 4\n") != std::string::npos);
    CHECK(r.out.find("value 4\n") != std::string::npos);

    auto g = run({"compute", "G2", "0,2", "--method", "all"});
    CHECK(g.rc == 0);
    CHECK(g.out.find("diagrams") == std::string::npos);  // type A only
    CHECK(g.out.find("value 18\n") != std::string::npos);
}

TEST_CASE("compute emits well-formed json with string values") {
    auto r = run({"compute", "E6", "0,1,0,2,3,0", "--format", "json",
                  "--method", "reduce,quotient"});
    REQUIRE(r.rc == 0);
    auto j = json::parse(r.out);
    CHECK(j["type"] == "E");
    CHECK(j["rank"] == 6);
    CHECK(j["composition"] == json::array({0, 1, 0, 2, 3, 0}));
    CHECK(j["value"] == "34992");
    CHECK(j["integer"] == true);
    CHECK(j["methods"]["reduce"] == "34992");
    CHECK(j["methods"]["quotient"] == "34992");

    // byte determinism for a fixed invocation
    auto again = run({"compute", "E6", "0,1,0,2,3,0", "--format", "json",
                      "--method", "reduce,quotient"});
    CHECK(again.out == r.out);
}

TEST_CASE("table lists compositions in ascending lexicographic order") {
    auto g = run({"table", "G2"});
    CHECK(g.rc == 0);
    CHECK(g.out == "0 2  18\n1 1  12\n2 0  6\n");

    auto a = run({"table", "A2"});
    CHECK(a.out == "0 2  1\n1 1  2\n2 0  1\n");

    auto j = json::parse(run({"table", "B2", "--format", "json"}).out);
    REQUIRE(j["entries"].size() == 3);
    CHECK(j["entries"][0]["composition"] == json::array({0, 2}));
    CHECK(j["entries"][0]["value"] == "2");
    CHECK(j["entries"][2]["value"] == "4");
}

TEST_CASE("table cross-checks methods on every row") {
    auto r = run({"table", "A4", "--method", "all"});
    CHECK(r.rc == 0);
    CHECK(r.out.find("0 0 0 4  1\n") == 0);
    CHECK(r.out.find("1 1 1 1  24\n") != std::string::npos);

    auto j = json::parse(
        run({"table", "G2", "--method", "all", "--format", "json"}).out);
    REQUIRE(j["entries"].size() == 3);
    CHECK(j["entries"][0]["value"] == "18");
    CHECK(j["entries"][0]["integer"] == true);
    CHECK(j["entries"][0]["methods"]["reduce"] == "18");
    CHECK(j["entries"][0]["methods"]["weylsum"] == "18");
    CHECK(j["entries"][0]["methods"]["quotient"] == "18");
}

TEST_CASE("diagrams subcommand renders the game") {
    auto r = run({"diagrams", "A3", "0,3,0"});
    CHECK(r.rc == 0);
    CHECK(r.out.find("diagram 1\n") != std::string::npos);
    CHECK(r.out.find("weight 1/3\n") != std::string::npos);
    CHECK(r.out.find("diagrams 2\n") != std::string::npos);
    CHECK(r.out.find("value 4\n") != std::string::npos);

    auto j = json::parse(
        run({"diagrams", "A3", "0,3,0", "--format", "json"}).out);
    CHECK(j["type"] == "A");
    CHECK(j["rank"] == 3);
    CHECK(j["count"] == 2);
    CHECK(j["value"] == "4");
    CHECK(j["diagrams"][0]["weight"] == "1/3");
    CHECK(j["diagrams"][0]["moves"][0]["dir"] == "L");
    CHECK(j["diagrams"][0]["moves"][1]["forced"] == true);
}

TEST_CASE("diagrams svg goes to a file with --out") {
    std::string path = "cli_test_diagram.svg";
    auto r = run({"diagrams", "A8", "1,0,2,3,0,0,1,1", "--render", "svg",
                  "--out", path});
    REQUIRE(r.rc == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str().find("<svg xmlns") == 0);
    CHECK(ss.str().find("R 4/5 forced") != std::string::npos);
    f.close();
    std::remove(path.c_str());
}

TEST_CASE("mtable lists spreading coefficients deterministically") {
    auto r = run({"mtable", "G2"});
    CHECK(r.rc == 0);
    CHECK(r.out ==
          "K={1} J={1,2} i=1 m=1/2\n"
          "K={2} J={1,2} i=2 m=3/2\n");
    auto d = run({"mtable", "G2", "--mode", "derive"});
    CHECK(d.out == r.out);

    auto j = json::parse(run({"mtable", "B3", "--format", "json"}).out);
    bool found = false;
    for (const auto& row : j["rows"])
        if (row["K"] == json::array({1, 2}) && row["J"] == json::array({1, 2, 3}) &&
            row["i"] == 2)
            found = row["m"] == "4/3";
    CHECK(found);
}

TEST_CASE("volume subcommand accepts rational coordinates") {
    CHECK(run({"volume", "3,2,1,0"}).out == "16\n");
    CHECK(run({"volume", "1/2,0,1"}).out == "3/4\n");
    auto j = json::parse(run({"volume", "2,1,0", "--format", "json"}).out);
    CHECK(j["volume"] == "3");
    CHECK(run({"volume", "1,oops"}).rc == 1);
}

TEST_CASE("verify re-derives coefficients and identities") {
    auto r = run({"verify", "B4"});
    CHECK(r.rc == 0);
    CHECK(r.out.find("ok   m K={1} J={1,2} i=1\n") != std::string::npos);
    CHECK(r.out.find("ok   B1 a=1 i=1\n") != std::string::npos);
    CHECK(r.out.find("m-table 20/20, identities 16/16\n") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);

    auto a = run({"verify", "A3"});
    CHECK(a.rc == 0);
    CHECK(a.out.find("m-table 8/8, identities 0/0\n") != std::string::npos);

    auto j = json::parse(run({"verify", "E6", "--format", "json"}).out);
    CHECK(j["all_ok"] == true);
    CHECK(j["identities"].size() == 10);
    CHECK(j["mtable"].size() > 0);
    for (const auto& row : j["mtable"]) CHECK(row["ok"] == true);
}

TEST_CASE("bare verify sweeps every system through rank 8") {
    auto r = run({"verify"});
    CHECK(r.rc == 0);
    CHECK(r.out.find("ok   G2 m-table 2/2, identities 2/2\n") !=
          std::string::npos);
    CHECK(r.out.find("total m-table 2420/2420, identities ") !=
          std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("usage and validation failures exit with code 1") {
    CHECK(run({}).rc != 0);
    CHECK(run({"compute", "A3"}).rc == 1);  // no composition
    CHECK(run({"compute", "Q3", "1,1,1"}).rc == 1);
    CHECK(run({"compute", "A3", "1,1"}).rc == 1);
    CHECK(run({"diagrams", "B3", "1,1,1"}).rc == 1);
    CHECK(run({"compute", "B3", "1,1,1", "--method", "diagrams"}).rc == 1);
    CHECK(run({"compute", "E7", "1,1,1,1,1,1,1", "--method", "weylsum"}).rc == 1);
    CHECK(run({"table", "D3"}).rc == 1);  // D needs rank >= 4
    auto r = run({"compute", "A3", "1,1"});
    CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("help is available and exits cleanly") {
    auto r = run({"--help"});
    CHECK(r.rc == 0);
    CHECK(r.out.find("compute") != std::string::npos);
    CHECK(r.out.find("verify") != std::string::npos);
}

TEST_CASE("raising the cap admits larger orbit sums") {
    // D4 has |W| = 192; a tiny cap must refuse it, a raised one accepts it.
    CHECK(run({"compute", "D4", "1,1,1,1", "--method", "weylsum", "--cap",
               "100"}).rc == 1);
    auto r = run({"compute", "D4", "1,1,1,1", "--method", "weylsum", "--cap",
                  "200"});
    CHECK(r.rc == 0);
    CHECK(r.out == "48\n");  // |W(D4)| / det = 192 / 4
}

TEST_CASE("direct method comparison is exposed for reuse") {
    auto rs = build_root_system('B', 3);
    auto rep = compare_methods(rs, {1, 0, 2}, {"all"}, 7, 1000000, false);
    CHECK(rep.agree);
    CHECK(rep.values.size() == 3);  // reduce, weylsum, quotient
    CHECK(rep.values.at("reduce") == Rat(12));
    CHECK(rep.values.at("weylsum") == Rat(12));
    CHECK(rep.values.at("quotient") == Rat(12));
    CHECK_THROWS_AS(compare_methods(rs, {1, 0, 2}, {"nope"}, 1, 1000000, false),
                    std::invalid_argument);
    auto drep = compare_methods(rs, {1, 0, 2}, {"reduce"}, 1, 1000000, true);
    CHECK(drep.values.at("reduce") == Rat(12));
}

TEST_CASE("run_query executes a hand-built query") {
    Query q;
    q.command = "compute";
    q.type = 'B';
    q.rank = 2;
    q.comp = {1, 1};
    std::ostringstream out, err;
    CHECK(run_query(q, out, err) == 0);
    CHECK(out.str() == "4\n");
}

TEST_CASE("derive mode flows through compute") {
    auto r = run({"compute", "F4", "0,2,2,0", "--mode", "derive"});
    auto l = run({"compute", "F4", "0,2,2,0"});
    CHECK(r.rc == 0);
    CHECK(r.out == l.out);
}

#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "meu/rational.hpp"
#include "meu/rootsys.hpp"

namespace meu {

// Evaluate one composition by each requested route and compare. Known
// methods: reduce, diagrams, divsym, weylsum, quotient; "all" expands to
// every route that applies here (diagrams and divsym need type A, weylsum
// needs |W| <= cap). Explicitly requesting an inapplicable route throws.
struct MethodReport {
    std::map<std::string, Rat> values;  // keyed by method name
    bool agree = true;
};

MethodReport compare_methods(const RootSystem& rs, const std::vector<int>& comp,
                             const std::vector<std::string>& methods,
                             std::uint64_t seed, std::int64_t cap, bool derive);

// One validated invocation. Systems are addressed by letter+rank labels
// ("A8", "e6"); compositions by comma-separated nonnegative integers.
struct Query {
    std::string command;  // compute | table | diagrams | mtable | volume | verify
    char type = 0;
    int rank = 0;
    std::vector<int> comp;
    std::vector<std::string> methods{"reduce"};
    std::string mode = "lookup";    // coefficient source: lookup | derive
    std::string format = "plain";   // plain | json
    std::string render = "ascii";   // diagram rendering: ascii | svg
    std::vector<Rat> weights;       // volume vertex coordinates
    std::uint64_t seed = 1;         // MIXED_EULERIAN_SEED in the environment wins
    std::int64_t cap = 1000000;
    std::string out_path;
};

// Argv-style args without the program name. Usage problems (unknown flags,
// bad labels, composition length mismatches, diagrams outside type A) throw
// std::invalid_argument.
Query parse_args(const std::vector<std::string>& args);

// Executes a validated query. Returns 0 on success, 1 when a verify run
// fails, 2 when the requested methods disagree. Semantic problems (unknown
// method, orbit cap exceeded) throw std::invalid_argument.
int run_query(const Query& q, std::ostream& out, std::ostream& err);

// parse_args + run_query with CLI help and usage reporting on the streams.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace meu

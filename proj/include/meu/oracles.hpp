#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "meu/petring.hpp"
#include "meu/poly.hpp"
#include "meu/rootsys.hpp"

namespace meu {

struct OracleOptions {
    std::uint64_t seed = 1;
    std::int64_t weyl_cap = 1000000;  // largest Weyl group the orbit sum will enumerate
};

// ---- divided symmetrization ----

// <f>_n for homogeneous f in n variables: sum over all permutations of
// f(t_sigma) / prod_{k<n} (t_sigma(k) - t_sigma(k+1)). Degree n-1 is the
// interesting case; lower degrees give 0. Evaluated exactly at two
// independent generic integer points, which must agree.
Rat divided_symmetrization(const Poly& f, int n, const OracleOptions& opt = {});

// <prod_i (t_1 + ... + t_i)^{c_i}>_n for a composition c of n-1 with n-1
// parts: the type A mixed Eulerian number, computed without root systems.
Rat mixed_eulerian_divsym(const std::vector<int>& comp, const OracleOptions& opt = {});

// Volume of the permutohedron with vertex coordinate multiset a:
// <(a_1 t_1 + ... + a_n t_n)^{n-1}>_n / (n-1)!.
Rat permutohedron_volume(const std::vector<Rat>& a, const OracleOptions& opt = {});

// ---- Weyl orbit sum ----

// |W|^{-1}-free orbit formula: for generic u, sum over the W-orbit of u of
// prod_i (v, omega_i)^{c_i} / prod_k (v, alpha_k). Needs |W| <= opt.weyl_cap;
// two independent draws must agree.
Rat mixed_eulerian_weylsum(const RootSystem& rs, const std::vector<int>& comp,
                           const OracleOptions& opt = {});

// ---- quotient ring ----

// Degree-d slice of Q[omega_1..omega_n] / (alpha_i * omega_i : i), presented
// by row-reduced relations over the degree-d monomial columns. Square-free
// monomials sit last in the column order and are never pivotal, so they
// descend to a basis of the slice.
struct QuotientSpace {
    char type = 0;
    int rank = 0;
    int degree = 0;
    std::vector<std::vector<int>> monomials;  // column order: repeated-variable profiles first
    std::map<std::vector<int>, int> column_of;
    // pivot_rows[c]: normalized relation row with leading column c, sorted by
    // column; empty vector means column c has no pivot (a square-free column).
    std::vector<std::vector<std::pair<int, Rat>>> pivot_rows;
    std::int64_t dimension = 0;  // always binomial(rank, degree)
};

// Cached per (type, rank, degree).
const QuotientSpace& quotient_space(const RootSystem& rs, int degree);

// Normal form of a homogeneous degree-d polynomial in the omega variables:
// its square-free representative in the quotient.
SquareFreeClass quotient_reduce(const RootSystem& rs, const Poly& p, int degree);

// Reduce omega^c to square-free form and integrate.
Rat mixed_eulerian_quotient(const RootSystem& rs, const std::vector<int>& comp);

Int quotient_dimension(const RootSystem& rs, int degree);

// ---- stated multiplication identities ----

struct AppendixItem {
    std::string name;
    bool ok = false;
};

struct AppendixReport {
    std::vector<AppendixItem> items;
    bool all_ok = true;
};

// Re-derive every tabulated product rule for this system inside the quotient
// ring and report each line.
AppendixReport verify_appendix(const RootSystem& rs);

}  // namespace meu

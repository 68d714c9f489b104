#pragma once

#include <map>
#include <vector>

#include "meu/mrules.hpp"
#include "meu/rootsys.hpp"

namespace meu {

// Where multiplication coefficients come from: the closed table, or the
// fixed-point rederivation. Both must agree; "derive" exists so that sweeps
// can exercise the derivation end to end.
enum class MSource { lookup, derive };

// Element of the degree-`grade` piece in the square-free monomial basis:
// mask S (popcount == grade) carries the coefficient of prod_{k in S} omega_k.
// Zero coefficients are never stored.
struct SquareFreeClass {
    int grade = 0;
    std::map<Mask, Rat> coeffs;

    bool operator==(const SquareFreeClass& o) const {
        return grade == o.grade && coeffs == o.coeffs;
    }
};

SquareFreeClass unit_class();

// Multiply by omega_i and re-expand in the square-free basis. A term whose
// mask already contains i spreads onto the neighbors of the connected
// component of i; terms with no room left vanish.
SquareFreeClass multiply_omega(const RootSystem& rs, const SquareFreeClass& cls, int i,
                               MSource src = MSource::lookup);

// Integral over the full flag-variety degree: defined only at grade == rank;
// the full-support coefficient times |W| / det(cartan).
Rat integrate(const RootSystem& rs, const SquareFreeClass& cls);

// The composition must have length == rank and sum == rank. Factors are
// multiplied in ascending vertex order.
Rat mixed_eulerian(const RootSystem& rs, const std::vector<int>& comp,
                   MSource src = MSource::lookup);

// Same number from an explicit multiplication order (any permutation of the
// multiset of the composition).
Rat mixed_eulerian_ordered(const RootSystem& rs, const std::vector<int>& letters,
                           MSource src = MSource::lookup);

// prod over connected components C of S of #Red(v_C) / |C|!.
Rat squarefree_factor(const RootSystem& rs, Mask S);

// Structure constants of p_{v_I} * p_{v_K} = sum_S c_S p_{v_S} over subsets,
// obtained by expanding the omega product and rescaling by the square-free
// factors. All values are nonnegative.
std::map<Mask, Rat> peterson_product(const RootSystem& rs, Mask I, Mask K,
                                     MSource src = MSource::lookup);

// Class of an element given by a reduced word: (1/len!) sum over its reduced
// words of the corresponding omega products. Degrees above rank give zero.
SquareFreeClass peterson_class(const RootSystem& rs, const WeylWord& w,
                               MSource src = MSource::lookup);

}  // namespace meu

#pragma once

#include <map>
#include <string>

#include "meu/poly.hpp"
#include "meu/rootsys.hpp"

namespace meu {

// The 19 isomorphism classes of pairs (K, J) with K connected, J = K + {j*}
// connected, that occur inside irreducible diagrams. Names read "shape of K
// inside shape of J"; the two rank-2 multiplicity-3 pairs are split by
// whether K is the short or the long vertex.
enum class PairKind {
    AinA, AinB, BinB, AinC, CinC, AinD, DinD,
    A5inE6, D5inE6, A6inE7, D6inE7, E6inE7,
    A7inE8, D7inE8, E7inE8, B3inF4, C3inF4,
    G2short, G2long,
};

std::string pair_kind_name(PairKind kind);

struct PairType {
    PairKind kind;
    int r;  // rank of J in its reference labeling
    // Diagram vertex -> vertex of the reference diagram of J (1..r, standard
    // numbering for the type of J). j* is included in the map.
    std::map<int, int> relabel;
};

struct Classified {
    PairType pair;
    int i_prime;  // reference label of i
};

// Identify the isomorphism class of (K, J = K + j*) and the position of i in
// the reference labeling. Ties under diagram automorphisms are broken so that
// i_prime is minimal (the coefficient value is automorphism-invariant).
Classified classify_pair(const RootSystem& rs, Mask K, Mask J, int i);

// Closed-form coefficient attached to (kind, r, i_prime); always positive.
Rat m_lookup(const PairType& pair, int i_prime);

// classify + lookup in one step.
Rat m_value(const RootSystem& rs, int i, Mask K, Mask J);

// Restriction of a Schubert class to a torus fixed point, as a polynomial in
// the simple roots: sum over reduced subwords of w that spell v of the product
// of inversion roots at the chosen positions. Computed by a prefix DP over the
// positions of w, never by enumerating subsequences.
struct BilleyEvaluation {
    WeylWord v, w;
    Poly value_poly;  // in variables alpha_1..alpha_n
    Rat value_t;      // coefficient c with value_poly -> c t^len(v) at alpha_i = t
};

BilleyEvaluation billey_restrict(const RootSystem& rs, const WeylWord& v, const WeylWord& w);

// (p_{s_i}(w_J) - p_{s_i}(w_K)) * p_{v_K}(w_J) / p_{v_J}(w_J), a nonnegative
// rational; all three factors are evaluated by the height DP.
Rat c_iKJ(const RootSystem& rs, int i, Mask K, Mask J);

// Coefficient rederived from fixed-point data instead of the closed table:
// (#Red(v_J) / #Red(v_K)) * c_iKJ / |J|.
Rat m_derive(const RootSystem& rs, int i, Mask K, Mask J);

}  // namespace meu

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "meu/rational.hpp"

namespace meu {

// Vertex subsets of the Dynkin diagram as bitmasks: bit i-1 is vertex i.
using Mask = std::uint32_t;

inline Mask bit(int vertex) { return Mask{1} << (vertex - 1); }
inline bool contains(Mask m, int vertex) { return (m >> (vertex - 1)) & 1u; }
inline int popcount(Mask m) { return __builtin_popcount(m); }
inline Mask full_mask(int rank) { return (Mask{1} << rank) - 1; }

// An irreducible crystallographic root system, realized with exact rational
// coordinates in a fixed ambient space. Vertices are numbered 1..rank in the
// standard (Bourbaki) way; all public indices are 1-based.
struct RootSystem {
    char type = 0;  // 'A'..'G'
    int rank = 0;
    int ambient = 0;  // ambient dimension (rank, rank+1, or a fixed 3/8)

    // cartan[i-1][j-1] = (alpha_i, alpha_j^vee) = 2(alpha_i,alpha_j)/(alpha_j,alpha_j)
    std::vector<std::vector<int>> cartan;
    std::vector<std::vector<Rat>> simple_roots;  // ambient coordinates
    std::vector<std::vector<Rat>> fund_weights;  // ambient coordinates, in the root span

    std::string label() const { return std::string(1, type) + std::to_string(rank); }
    bool adjacent(int i, int j) const { return i != j && cartan[i - 1][j - 1] != 0; }
    int edge_multiplicity(int i, int j) const {
        return cartan[i - 1][j - 1] * cartan[j - 1][i - 1];
    }
};

RootSystem build_root_system(char type, int rank);
RootSystem build_root_system(const std::string& label);  // e.g. "E6", "A3"

Int cartan_det(const RootSystem& rs);

struct WeylOrderInfo {
    Int order;
    bool enumerated;  // true when obtained by orbit enumeration, false via product formula
};

// Group order; enumerates the orbit of a regular weight when the closed-form
// order is within cap, otherwise returns the closed form flagged as such.
WeylOrderInfo weyl_order(const RootSystem& rs, std::int64_t cap = 10000000);

// All nonempty connected vertex subsets, ordered by size then by mask value.
std::vector<Mask> connected_subsets(const RootSystem& rs);

// Connected components of an arbitrary vertex subset, ordered by smallest vertex.
std::vector<Mask> connected_components(const RootSystem& rs, Mask subset);

// Component of `subset` containing `vertex` (which must lie in subset).
Mask component_of(const RootSystem& rs, Mask subset, int vertex);

// A word in the simple reflections, letters 1..rank, applied right to left.
struct WeylWord {
    std::vector<int> letters;

    bool operator==(const WeylWord& o) const { return letters == o.letters; }
};

// Exact action of a word on the weight lattice: column j-1 holds the
// coordinates of w(omega_j) in the fundamental-weight basis.
std::vector<std::vector<Int>> word_action_matrix(const RootSystem& rs,
                                                 const std::vector<int>& letters);

// Length of the group element represented by an arbitrary word.
int element_length(const RootSystem& rs, const std::vector<int>& letters);

bool is_reduced(const RootSystem& rs, const std::vector<int>& letters);

// Lexicographically smallest reduced word of the longest element of the
// parabolic subgroup generated by `subset` (which may be disconnected).
WeylWord longest_element(const RootSystem& rs, Mask subset);

// All reduced words of the element represented by `word` (must be reduced),
// generated by closure under braid moves.
std::set<std::vector<int>> reduced_words(const RootSystem& rs, const WeylWord& word);

// Canonical Coxeter element of the parabolic on `subset`: one letter per
// vertex, components in increasing order of smallest vertex, letters within a
// component in the per-type canonical order (ascending, except types E where
// the branch vertex 2 comes after the chain 1,3,4,5,...).
WeylWord v_K(const RootSystem& rs, Mask subset);

// Positive roots in simple-root coordinates (integers), each with its height.
struct PositiveRoot {
    std::vector<int> coords;
    int height;
};
std::vector<PositiveRoot> positive_roots(const RootSystem& rs);

// Heights of the inversion sequence r_t = s_{b_1}...s_{b_{t-1}}(alpha_{b_t})
// along a reduced word; throws if the word is not reduced.
std::vector<Int> inversion_heights(const RootSystem& rs, const std::vector<int>& letters);

// Inversion sequence itself, each root in simple-root coordinates.
std::vector<std::vector<int>> inversion_roots(const RootSystem& rs,
                                              const std::vector<int>& letters);

}  // namespace meu

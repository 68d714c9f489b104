#pragma once

#include <string>
#include <vector>

#include "meu/rational.hpp"

namespace meu {

// Column-filling game computing type A mixed Eulerian numbers. A composition
// of length n-1 summing to n-1 is played on columns 1..n-1: the support is
// shaded first, then each repeated entry extends the shaded run containing it
// by one column on the left or on the right, with a rational weight.
struct DiagramSetup {
    std::vector<int> comp;
    int cols = 0;              // n - 1
    std::vector<int> support;  // distinct entries, ascending
    std::vector<int> extras;   // repeats beyond the first occurrence, weakly increasing
};

DiagramSetup diagram_setup(const std::vector<int>& comp);

struct DiagramRow {
    int marked = 0;    // entry whose run is extended
    int a = 0, b = 0;  // the run [a, b] containing marked before the move
    int added = 0;     // newly shaded column
    bool left = false;
    bool forced = false;  // the other direction fell off the board
    Rat factor;           // (b-marked+1)/(b-a+2) for left, (marked-a+1)/(b-a+2) for right
};

struct Diagram {
    DiagramSetup setup;
    std::vector<DiagramRow> rows;
};

// All completed diagrams in depth-first order, left branch before right.
std::vector<Diagram> enumerate_diagrams(const DiagramSetup& setup);

Rat diagram_weight(const Diagram& d);

// (n-1)! times the total weight of all diagrams; always an integer.
Rat mixed_eulerian_diagrams(const std::vector<int>& comp);

enum class RenderFormat { ascii, svg };

// Deterministic, byte-stable rendering.
std::string render_diagram(const Diagram& d, RenderFormat fmt);

}  // namespace meu

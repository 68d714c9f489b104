#include "meu/diagrams.hpp"

#include <sstream>
#include <stdexcept>

#include "meu/rootsys.hpp"

namespace meu {

DiagramSetup diagram_setup(const std::vector<int>& comp) {
    DiagramSetup s;
    s.comp = comp;
    s.cols = static_cast<int>(comp.size());
    if (s.cols < 1) throw std::invalid_argument("composition must be nonempty");
    int sum = 0;
    for (int i = 1; i <= s.cols; ++i) {
        int c = comp[i - 1];
        if (c < 0) throw std::invalid_argument("composition entries must be nonnegative");
        sum += c;
        if (c >= 1) s.support.push_back(i);
        for (int k = 1; k < c; ++k) s.extras.push_back(i);
    }
    if (sum != s.cols)
        throw std::invalid_argument("composition must sum to its length");
    return s;
}

namespace {

// Maximal shaded run containing column i.
void run_of(Mask shaded, int cols, int i, int& a, int& b) {
    a = i;
    while (a > 1 && contains(shaded, a - 1)) --a;
    b = i;
    while (b < cols && contains(shaded, b + 1)) ++b;
}

void walk(const DiagramSetup& setup, Mask shaded, std::size_t idx,
          std::vector<DiagramRow>& rows, std::vector<Diagram>& out) {
    if (idx == setup.extras.size()) {
        out.push_back({setup, rows});
        return;
    }
    int i = setup.extras[idx];
    int a, b;
    run_of(shaded, setup.cols, i, a, b);
    bool can_left = a > 1;
    bool can_right = b < setup.cols;
    if (!can_left && !can_right)
        throw std::logic_error("run spans the whole board before the game ends");
    if (can_left) {
        rows.push_back({i, a, b, a - 1, true, !can_right,
                        Rat(b - i + 1) / Rat(b - a + 2)});
        walk(setup, shaded | bit(a - 1), idx + 1, rows, out);
        rows.pop_back();
    }
    if (can_right) {
        rows.push_back({i, a, b, b + 1, false, !can_left,
                        Rat(i - a + 1) / Rat(b - a + 2)});
        walk(setup, shaded | bit(b + 1), idx + 1, rows, out);
        rows.pop_back();
    }
}

}  // namespace

std::vector<Diagram> enumerate_diagrams(const DiagramSetup& setup) {
    Mask shaded = 0;
    for (int i : setup.support) shaded |= bit(i);
    std::vector<Diagram> out;
    std::vector<DiagramRow> rows;
    walk(setup, shaded, 0, rows, out);
    return out;
}

Rat diagram_weight(const Diagram& d) {
    Rat w = 1;
    for (const auto& r : d.rows) w *= r.factor;
    return w;
}

Rat mixed_eulerian_diagrams(const std::vector<int>& comp) {
    auto setup = diagram_setup(comp);
    Rat total = 0;
    for (const auto& d : enumerate_diagrams(setup)) total += diagram_weight(d);
    Rat value = Rat(factorial(setup.cols)) * total;
    if (!is_integer(value))
        throw std::logic_error("diagram total times (n-1)! is not an integer");
    return value;
}

namespace {

std::string board_line(Mask shaded, int cols, int marked, int added) {
    std::string s;
    for (int i = 1; i <= cols; ++i) {
        if (i == added)
            s += '+';
        else if (i == marked)
            s += '*';
        else
            s += contains(shaded, i) ? '#' : '.';
    }
    return s;
}

std::string render_ascii(const Diagram& d) {
    std::ostringstream os;
    os << "comp";
    for (int c : d.setup.comp) os << ' ' << c;
    os << '\n';
    Mask shaded = 0;
    for (int i : d.setup.support) shaded |= bit(i);
    os << board_line(shaded, d.setup.cols, 0, 0) << '\n';
    for (const auto& r : d.rows) {
        shaded |= bit(r.added);
        os << board_line(shaded, d.setup.cols, r.marked, r.added) << "  "
           << (r.left ? 'L' : 'R') << ' ' << to_string(r.factor);
        if (r.forced) os << " forced";
        os << '\n';
    }
    os << "weight " << to_string(diagram_weight(d)) << '\n';
    return os.str();
}

std::string render_svg(const Diagram& d) {
    const int cell = 24, pad = 8, gap = 4, text_w = 120;
    int cols = d.setup.cols;
    int nrows = 1 + static_cast<int>(d.rows.size());
    int width = pad * 2 + cols * cell + text_w;
    int height = pad * 2 + nrows * (cell + gap) - gap;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
       << height << "\">\n";
    Mask shaded = 0;
    for (int i : d.setup.support) shaded |= bit(i);
    for (int row = 0; row < nrows; ++row) {
        int marked = 0, added = 0;
        const DiagramRow* r = nullptr;
        if (row > 0) {
            r = &d.rows[row - 1];
            shaded |= bit(r->added);
            marked = r->marked;
            added = r->added;
        }
        int y = pad + row * (cell + gap);
        for (int i = 1; i <= cols; ++i) {
            const char* fill = "#ffffff";
            if (i == added)
                fill = "#86efac";
            else if (i == marked)
                fill = "#fca5a5";
            else if (contains(shaded, i))
                fill = "#cbd5e1";
            os << "<rect x=\"" << pad + (i - 1) * cell << "\" y=\"" << y
               << "\" width=\"" << cell << "\" height=\"" << cell
               << "\" fill=\"" << fill << "\" stroke=\"#334155\"/>\n";
        }
        if (r) {
            os << "<text x=\"" << pad + cols * cell + 8 << "\" y=\""
               << y + cell - 7 << "\" font-family=\"monospace\" font-size=\"14\">"
               << (r->left ? 'L' : 'R') << ' ' << to_string(r->factor)
               << (r->forced ? " forced" : "") << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace

std::string render_diagram(const Diagram& d, RenderFormat fmt) {
    return fmt == RenderFormat::ascii ? render_ascii(d) : render_svg(d);
}

}  // namespace meu

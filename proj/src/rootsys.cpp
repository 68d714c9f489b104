#include "meu/rootsys.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_set>

namespace meu {

namespace {

Rat inner(const std::vector<Rat>& x, const std::vector<Rat>& y) {
    Rat s = 0;
    for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
    return s;
}

std::vector<Rat> basis_vec(int dim, int k, const Rat& v = 1) {
    std::vector<Rat> e(dim, Rat(0));
    e[k] = v;
    return e;
}

// Rows of the inverse of an integer matrix, by Gauss-Jordan over the rationals.
std::vector<std::vector<Rat>> invert(const std::vector<std::vector<int>>& m) {
    int n = static_cast<int>(m.size());
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n, Rat(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
        a[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (a[r][c] != 0) { p = r; break; }
        if (p < 0) throw std::logic_error("singular matrix");
        std::swap(a[c], a[p]);
        Rat lead = a[c][c];
        for (int j = 0; j < 2 * n; ++j) a[c][j] /= lead;
        for (int r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Rat f = a[r][c];
            for (int j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
        }
    }
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
}

std::vector<std::vector<Rat>> simple_roots_for(char type, int rank, int& ambient) {
    std::vector<std::vector<Rat>> al;
    switch (type) {
        case 'A': {
            ambient = rank + 1;
            for (int i = 0; i < rank; ++i) {
                auto v = basis_vec(ambient, i);
                v[i + 1] = -1;
                al.push_back(v);
            }
            break;
        }
        case 'B': {
            ambient = rank;
            for (int i = 0; i + 1 < rank; ++i) {
                auto v = basis_vec(ambient, i);
                v[i + 1] = -1;
                al.push_back(v);
            }
            al.push_back(basis_vec(ambient, rank - 1));
            break;
        }
        case 'C': {
            ambient = rank;
            for (int i = 0; i + 1 < rank; ++i) {
                auto v = basis_vec(ambient, i);
                v[i + 1] = -1;
                al.push_back(v);
            }
            al.push_back(basis_vec(ambient, rank - 1, Rat(2)));
            break;
        }
        case 'D': {
            ambient = rank;
            for (int i = 0; i + 1 < rank; ++i) {
                auto v = basis_vec(ambient, i);
                v[i + 1] = -1;
                al.push_back(v);
            }
            auto v = basis_vec(ambient, rank - 2);
            v[rank - 1] = 1;
            al.push_back(v);
            break;
        }
        case 'E': {
            ambient = 8;
            std::vector<Rat> a1(8, rat(-1, 2));
            a1[0] = rat(1, 2);
            a1[7] = rat(1, 2);
            al.push_back(a1);
            auto a2 = basis_vec(8, 0);
            a2[1] = 1;
            al.push_back(a2);
            for (int k = 0; k < 6; ++k) {
                auto v = basis_vec(8, k + 1);
                v[k] = -1;
                al.push_back(v);
            }
            al.resize(rank);
            break;
        }
        case 'F': {
            ambient = 4;
            {
                auto v = basis_vec(4, 1);
                v[2] = -1;
                al.push_back(v);
            }
            {
                auto v = basis_vec(4, 2);
                v[3] = -1;
                al.push_back(v);
            }
            al.push_back(basis_vec(4, 3));
            al.push_back({rat(1, 2), rat(-1, 2), rat(-1, 2), rat(-1, 2)});
            break;
        }
        case 'G': {
            ambient = 3;
            {
                auto v = basis_vec(3, 0);
                v[1] = -1;
                al.push_back(v);
            }
            al.push_back({Rat(-2), Rat(1), Rat(1)});
            break;
        }
        default:
            throw std::invalid_argument("unknown type");
    }
    return al;
}

void check_rank(char type, int rank) {
    bool ok = false;
    switch (type) {
        case 'A': ok = rank >= 1; break;
        case 'B': ok = rank >= 2; break;
        case 'C': ok = rank >= 2; break;
        case 'D': ok = rank >= 4; break;
        case 'E': ok = rank >= 6 && rank <= 8; break;
        case 'F': ok = rank == 4; break;
        case 'G': ok = rank == 2; break;
        default: ok = false;
    }
    if (!ok)
        throw std::invalid_argument("invalid type/rank: " + std::string(1, type) +
                                    std::to_string(rank));
}

}  // namespace

RootSystem build_root_system(char type, int rank) {
    check_rank(type, rank);
    RootSystem rs;
    rs.type = type;
    rs.rank = rank;
    rs.simple_roots = simple_roots_for(type, rank, rs.ambient);

    rs.cartan.assign(rank, std::vector<int>(rank, 0));
    for (int i = 0; i < rank; ++i) {
        for (int j = 0; j < rank; ++j) {
            Rat c = 2 * inner(rs.simple_roots[i], rs.simple_roots[j]) /
                    inner(rs.simple_roots[j], rs.simple_roots[j]);
            if (!is_integer(c)) throw std::logic_error("non-integral Cartan entry");
            rs.cartan[i][j] = static_cast<int>(c.get_num().get_si());
        }
    }

    // omega rows solve alpha_i = sum_j cartan[i][j] * omega_j inside the root span.
    auto cinv = invert(rs.cartan);
    rs.fund_weights.assign(rank, std::vector<Rat>(rs.ambient, Rat(0)));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            for (int k = 0; k < rs.ambient; ++k)
                rs.fund_weights[i][k] += cinv[i][j] * rs.simple_roots[j][k];

    for (int i = 0; i < rank; ++i) {
        for (int j = 0; j < rank; ++j) {
            Rat c = 2 * inner(rs.fund_weights[i], rs.simple_roots[j]) /
                    inner(rs.simple_roots[j], rs.simple_roots[j]);
            if (c != Rat(i == j ? 1 : 0))
                throw std::logic_error("fundamental weight pairing failed");
        }
    }
    return rs;
}

RootSystem build_root_system(const std::string& label) {
    if (label.size() < 2) throw std::invalid_argument("bad label: " + label);
    char type = static_cast<char>(std::toupper(label[0]));
    int rank = 0;
    try {
        std::size_t pos = 0;
        rank = std::stoi(label.substr(1), &pos);
        if (pos + 1 != label.size()) throw std::invalid_argument("");
    } catch (...) {
        throw std::invalid_argument("bad label: " + label);
    }
    return build_root_system(type, rank);
}

Int cartan_det(const RootSystem& rs) {
    int n = rs.rank;
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = rs.cartan[i][j];
    Rat det = 1;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (a[r][c] != 0) { p = r; break; }
        if (p < 0) return 0;
        if (p != c) {
            std::swap(a[c], a[p]);
            det = -det;
        }
        det *= a[c][c];
        for (int r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            Rat f = a[r][c] / a[c][c];
            for (int j = c; j < n; ++j) a[r][j] -= f * a[c][j];
        }
    }
    if (!is_integer(det)) throw std::logic_error("non-integral Cartan determinant");
    return det.get_num();
}

namespace {

Int closed_form_order(char type, int rank) {
    switch (type) {
        case 'A': return factorial(rank + 1);
        case 'B':
        case 'C': {
            Int r = factorial(rank);
            mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), rank);
            return r;
        }
        case 'D': {
            Int r = factorial(rank);
            mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), rank - 1);
            return r;
        }
        case 'E':
            if (rank == 6) return 51840;
            if (rank == 7) return 2903040;
            return 696729600;
        case 'F': return 1152;
        case 'G': return 12;
    }
    throw std::logic_error("unreachable");
}

std::uint64_t pack_coords(const std::vector<int>& x) {
    std::uint64_t key = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] < -127 || x[j] > 127) throw std::logic_error("orbit coordinate overflow");
        key |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(static_cast<std::int8_t>(x[j])))
               << (8 * j);
    }
    return key;
}

}  // namespace

WeylOrderInfo weyl_order(const RootSystem& rs, std::int64_t cap) {
    static std::mutex mu;
    static std::map<std::pair<char, int>, Int> cache;
    auto key = std::make_pair(rs.type, rs.rank);
    Int closed = closed_form_order(rs.type, rs.rank);
    if (closed > cap) return {closed, false};

    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return {it->second, true};

    // Orbit of the regular weight rho = (1,...,1) in fundamental-weight coordinates.
    int n = rs.rank;
    std::vector<int> rho(n, 1);
    std::size_t count = 0;
    std::unordered_set<std::uint64_t> seen_packed;
    std::set<std::vector<int>> seen_wide;  // fallback when coordinates do not pack
    auto note = [&](const std::vector<int>& x) {
        if (n <= 8) return seen_packed.insert(pack_coords(x)).second;
        return seen_wide.insert(x).second;
    };
    std::vector<std::vector<int>> frontier{rho};
    note(rho);
    ++count;
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& x : frontier) {
            for (int i = 0; i < n; ++i) {
                if (x[i] == 0) throw std::logic_error("rho orbit hit a wall");
                std::vector<int> y = x;
                for (int j = 0; j < n; ++j) y[j] -= x[i] * rs.cartan[i][j];
                if (note(y)) {
                    ++count;
                    next.push_back(std::move(y));
                }
            }
        }
        frontier = std::move(next);
    }
    Int order(static_cast<unsigned long>(count));
    if (order != closed) throw std::logic_error("orbit size disagrees with product formula");
    cache[key] = order;
    return {order, true};
}

std::vector<Mask> connected_components(const RootSystem& rs, Mask subset) {
    std::vector<Mask> comps;
    Mask left = subset;
    while (left) {
        int start = __builtin_ctz(left) + 1;
        Mask comp = bit(start);
        Mask frontier = comp;
        while (frontier) {
            Mask grow = 0;
            for (int i = 1; i <= rs.rank; ++i) {
                if (!contains(frontier, i)) continue;
                for (int j = 1; j <= rs.rank; ++j)
                    if (contains(subset, j) && !contains(comp, j) && rs.adjacent(i, j))
                        grow |= bit(j);
            }
            comp |= grow;
            frontier = grow;
        }
        comps.push_back(comp);
        left &= ~comp;
    }
    return comps;  // already ordered by smallest vertex
}

Mask component_of(const RootSystem& rs, Mask subset, int vertex) {
    if (!contains(subset, vertex)) throw std::invalid_argument("vertex not in subset");
    for (Mask c : connected_components(rs, subset))
        if (contains(c, vertex)) return c;
    throw std::logic_error("unreachable");
}

std::vector<Mask> connected_subsets(const RootSystem& rs) {
    std::vector<Mask> out;
    for (Mask m = 1; m <= full_mask(rs.rank); ++m)
        if (connected_components(rs, m).size() == 1) out.push_back(m);
    std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
        if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
        return a < b;
    });
    return out;
}

namespace {

// Images of the simple roots under the element, in simple-root coordinates.
struct RootAction {
    const RootSystem* rs;
    std::vector<std::vector<int>> img;  // img[j] = w(alpha_{j+1})

    explicit RootAction(const RootSystem& r) : rs(&r) {
        int n = r.rank;
        img.assign(n, std::vector<int>(n, 0));
        for (int j = 0; j < n; ++j) img[j][j] = 1;
    }

    // w := w * s_i
    void right_multiply(int i) {
        int n = rs->rank;
        std::vector<int> col = img[i - 1];
        for (int j = 0; j < n; ++j) {
            int c = rs->cartan[j][i - 1];
            if (c == 0) continue;
            for (int k = 0; k < n; ++k) img[j][k] -= c * col[k];
        }
    }

    // Sign of w(alpha_i): +1 positive, -1 negative.
    int root_sign(int i) const {
        for (int k : img[i - 1]) {
            if (k > 0) return 1;
            if (k < 0) return -1;
        }
        throw std::logic_error("zero image of a simple root");
    }

    bool is_identity() const {
        int n = rs->rank;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (img[j][k] != (j == k)) return false;
        return true;
    }
};

}  // namespace

int element_length(const RootSystem& rs, const std::vector<int>& letters) {
    RootAction act(rs);
    for (int b : letters) {
        if (b < 1 || b > rs.rank) throw std::invalid_argument("letter out of range");
        act.right_multiply(b);
    }
    int len = 0;
    while (true) {
        int desc = 0;
        for (int i = 1; i <= rs.rank; ++i)
            if (act.root_sign(i) < 0) { desc = i; break; }
        if (!desc) break;
        act.right_multiply(desc);
        ++len;
    }
    if (!act.is_identity()) throw std::logic_error("descent stripping failed");
    return len;
}

bool is_reduced(const RootSystem& rs, const std::vector<int>& letters) {
    return element_length(rs, letters) == static_cast<int>(letters.size());
}

std::vector<std::vector<Int>> word_action_matrix(const RootSystem& rs,
                                                 const std::vector<int>& letters) {
    int n = rs.rank;
    // Column j = coordinates of w(omega_j) in the omega basis.
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n, 0));
    for (int j = 0; j < n; ++j) m[j][j] = 1;
    // Apply letters right to left; s_i acts on weight coordinates x by
    // x'_j = x_j - x_i * cartan[i][j].
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        int i = *it;
        for (int col = 0; col < n; ++col) {
            Int xi = m[i - 1][col];
            if (xi == 0) continue;
            for (int j = 0; j < n; ++j) m[j][col] -= xi * rs.cartan[i - 1][j];
        }
    }
    return m;
}

WeylWord longest_element(const RootSystem& rs, Mask subset) {
    if (subset & ~full_mask(rs.rank)) throw std::invalid_argument("subset out of range");
    RootAction act(rs);
    WeylWord w;
    while (true) {
        int pick = 0;
        for (int i = 1; i <= rs.rank; ++i) {
            if (!contains(subset, i)) continue;
            if (act.root_sign(i) > 0) { pick = i; break; }
        }
        if (!pick) break;
        w.letters.push_back(pick);
        act.right_multiply(pick);
    }
    return w;
}

std::set<std::vector<int>> reduced_words(const RootSystem& rs, const WeylWord& word) {
    if (!is_reduced(rs, word.letters)) throw std::invalid_argument("word is not reduced");
    std::set<std::vector<int>> seen{word.letters};
    std::vector<std::vector<int>> frontier{word.letters};
    auto braid_m = [&](int i, int j) {
        switch (rs.edge_multiplicity(i, j)) {
            case 0: return 2;
            case 1: return 3;
            case 2: return 4;
            case 3: return 6;
        }
        throw std::logic_error("bad edge multiplicity");
    };
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& w : frontier) {
            int len = static_cast<int>(w.size());
            for (int p = 0; p < len - 1; ++p) {
                int i = w[p], j = w[p + 1];
                if (i == j) throw std::logic_error("repeated letter in reduced word");
                int m = braid_m(i, j);
                if (p + m > len) continue;
                bool alt = true;
                for (int k = 0; k < m; ++k)
                    if (w[p + k] != (k % 2 ? j : i)) { alt = false; break; }
                if (!alt) continue;
                std::vector<int> v = w;
                for (int k = 0; k < m; ++k) v[p + k] = (k % 2 ? i : j);
                if (seen.insert(v).second) next.push_back(std::move(v));
            }
        }
        frontier = std::move(next);
    }
    return seen;
}

WeylWord v_K(const RootSystem& rs, Mask subset) {
    if (subset & ~full_mask(rs.rank)) throw std::invalid_argument("subset out of range");
    std::vector<int> order;
    if (rs.type == 'E') {
        order = {1, 3, 4, 5, 6, 7, 8};
        order.resize(rs.rank);
        order.push_back(2);
        // vertex 2 commutes with everything here except 4, so placing it last
        // is a valid linear order of each component's diagram
    } else {
        for (int i = 1; i <= rs.rank; ++i) order.push_back(i);
    }
    WeylWord w;
    for (Mask comp : connected_components(rs, subset))
        for (int i : order)
            if (contains(comp, i)) w.letters.push_back(i);
    return w;
}

std::vector<PositiveRoot> positive_roots(const RootSystem& rs) {
    int n = rs.rank;
    std::set<std::vector<int>> pos;
    std::vector<std::vector<int>> frontier;
    for (int i = 0; i < n; ++i) {
        std::vector<int> e(n, 0);
        e[i] = 1;
        pos.insert(e);
        frontier.push_back(e);
    }
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& y : frontier) {
            for (int i = 0; i < n; ++i) {
                // s_i on simple-root coordinates
                std::vector<int> z = y;
                int pair = 0;
                for (int j = 0; j < n; ++j) pair += y[j] * rs.cartan[j][i];
                z[i] -= pair;
                bool nonneg = true;
                for (int v : z)
                    if (v < 0) { nonneg = false; break; }
                if (nonneg && pos.insert(z).second) next.push_back(std::move(z));
            }
        }
        frontier = std::move(next);
    }
    std::vector<PositiveRoot> out;
    for (const auto& y : pos) {
        int h = 0;
        for (int v : y) h += v;
        out.push_back({y, h});
    }
    return out;
}

std::vector<std::vector<int>> inversion_roots(const RootSystem& rs,
                                              const std::vector<int>& letters) {
    RootAction act(rs);
    std::vector<std::vector<int>> roots;
    for (int b : letters) {
        if (b < 1 || b > rs.rank) throw std::invalid_argument("letter out of range");
        if (act.root_sign(b) < 0)
            throw std::invalid_argument("word is not reduced");
        roots.push_back(act.img[b - 1]);
        act.right_multiply(b);
    }
    return roots;
}

std::vector<Int> inversion_heights(const RootSystem& rs, const std::vector<int>& letters) {
    std::vector<Int> hs;
    for (const auto& r : inversion_roots(rs, letters)) {
        Int h = 0;
        for (int v : r) h += v;
        hs.push_back(h);
    }
    return hs;
}

}  // namespace meu

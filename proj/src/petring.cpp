#include "meu/petring.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace meu {

namespace {

Rat cached_m(const RootSystem& rs, int i, Mask K, Mask J, MSource src) {
    static std::mutex mu;
    static std::map<std::tuple<char, int, int, Mask, Mask, int>, Rat> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(rs.type, rs.rank, i, K, J, static_cast<int>(src));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Rat v = src == MSource::lookup ? m_value(rs, i, K, J) : m_derive(rs, i, K, J);
    cache.emplace(key, v);
    return v;
}

void add_coeff(std::map<Mask, Rat>& m, Mask s, const Rat& c) {
    auto it = m.find(s);
    if (it == m.end()) {
        if (c != 0) m.emplace(s, c);
        return;
    }
    it->second += c;
    if (it->second == 0) m.erase(it);
}

}  // namespace

SquareFreeClass unit_class() {
    SquareFreeClass c;
    c.grade = 0;
    c.coeffs[0] = 1;
    return c;
}

SquareFreeClass multiply_omega(const RootSystem& rs, const SquareFreeClass& cls, int i,
                               MSource src) {
    if (i < 1 || i > rs.rank) throw std::invalid_argument("vertex out of range");
    SquareFreeClass out;
    out.grade = cls.grade + 1;
    for (const auto& [S, coef] : cls.coeffs) {
        if (!contains(S, i)) {
            add_coeff(out.coeffs, S | bit(i), coef);
            continue;
        }
        Mask K = component_of(rs, S, i);
        for (int j = 1; j <= rs.rank; ++j) {
            if (contains(S, j)) continue;
            bool adj = false;
            for (int u = 1; u <= rs.rank; ++u)
                if (contains(K, u) && rs.adjacent(u, j)) { adj = true; break; }
            if (!adj) continue;
            add_coeff(out.coeffs, S | bit(j), coef * cached_m(rs, i, K, K | bit(j), src));
        }
    }
    for (const auto& [S, coef] : out.coeffs)
        if (popcount(S) != out.grade)
            throw std::logic_error("square-free expansion produced a wrong grade");
    return out;
}

Rat integrate(const RootSystem& rs, const SquareFreeClass& cls) {
    if (cls.grade != rs.rank)
        throw std::invalid_argument("integral defined only in the top degree");
    auto it = cls.coeffs.find(full_mask(rs.rank));
    if (it == cls.coeffs.end()) return 0;
    return it->second * Rat(weyl_order(rs).order) / Rat(cartan_det(rs));
}

Rat mixed_eulerian_ordered(const RootSystem& rs, const std::vector<int>& letters,
                           MSource src) {
    if (static_cast<int>(letters.size()) != rs.rank)
        throw std::invalid_argument("need exactly rank factors");
    SquareFreeClass c = unit_class();
    for (int i : letters) c = multiply_omega(rs, c, i, src);
    return integrate(rs, c);
}

Rat mixed_eulerian(const RootSystem& rs, const std::vector<int>& comp, MSource src) {
    if (static_cast<int>(comp.size()) != rs.rank)
        throw std::invalid_argument("composition length must equal the rank");
    int sum = 0;
    for (int c : comp) {
        if (c < 0) throw std::invalid_argument("composition entries must be nonnegative");
        sum += c;
    }
    if (sum != rs.rank) throw std::invalid_argument("composition must sum to the rank");
    std::vector<int> letters;
    for (int i = 1; i <= rs.rank; ++i)
        for (int k = 0; k < comp[i - 1]; ++k) letters.push_back(i);
    return mixed_eulerian_ordered(rs, letters, src);
}

Rat squarefree_factor(const RootSystem& rs, Mask S) {
    static std::mutex mu;
    static std::map<std::tuple<char, int, Mask>, Rat> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(rs.type, rs.rank, S);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Rat f = 1;
    for (Mask comp : connected_components(rs, S)) {
        auto words = reduced_words(rs, v_K(rs, comp));
        f *= Rat(static_cast<unsigned long>(words.size())) / Rat(factorial(popcount(comp)));
    }
    cache.emplace(key, f);
    return f;
}

std::map<Mask, Rat> peterson_product(const RootSystem& rs, Mask I, Mask K, MSource src) {
    Mask all = full_mask(rs.rank);
    if ((I & ~all) || (K & ~all)) throw std::invalid_argument("subset out of range");
    SquareFreeClass c;
    c.grade = popcount(I);
    c.coeffs[I] = 1;
    for (int k = 1; k <= rs.rank; ++k)
        if (contains(K, k)) c = multiply_omega(rs, c, k, src);
    Rat scale = squarefree_factor(rs, I) * squarefree_factor(rs, K);
    std::map<Mask, Rat> out;
    for (const auto& [S, lam] : c.coeffs) {
        Rat v = scale * lam / squarefree_factor(rs, S);
        if (v != 0) out[S] = v;
    }
    return out;
}

SquareFreeClass peterson_class(const RootSystem& rs, const WeylWord& w, MSource src) {
    if (!is_reduced(rs, w.letters)) throw std::invalid_argument("word must be reduced");
    int len = static_cast<int>(w.letters.size());
    SquareFreeClass total;
    total.grade = len;
    if (len > rs.rank) return total;
    for (const auto& word : reduced_words(rs, w)) {
        SquareFreeClass c = unit_class();
        for (int i : word) c = multiply_omega(rs, c, i, src);
        for (const auto& [S, v] : c.coeffs) add_coeff(total.coeffs, S, v);
    }
    Rat inv = Rat(1) / Rat(factorial(len));
    for (auto& [S, v] : total.coeffs) v *= inv;
    return total;
}

}  // namespace meu

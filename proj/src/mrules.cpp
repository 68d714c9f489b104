#include "meu/mrules.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace meu {

namespace {

std::vector<int> verts_of(Mask m, int rank) {
    std::vector<int> v;
    for (int i = 1; i <= rank; ++i)
        if (contains(m, i)) v.push_back(i);
    return v;
}

int degree_in(const RootSystem& rs, Mask sub, int v) {
    int d = 0;
    for (int j = 1; j <= rs.rank; ++j)
        if (j != v && contains(sub, j) && rs.adjacent(v, j)) ++d;
    return d;
}

// Vertices of a path-shaped subset ordered from one end to the other.
std::vector<int> chain_order(const RootSystem& rs, Mask sub) {
    auto vs = verts_of(sub, rs.rank);
    if (vs.size() == 1) return vs;
    int end = 0;
    for (int v : vs)
        if (degree_in(rs, sub, v) == 1) { end = v; break; }
    if (!end) throw std::logic_error("subset is not a path");
    std::vector<int> chain{end};
    Mask seen = bit(end);
    while (chain.size() < vs.size()) {
        int next = 0;
        for (int j = 1; j <= rs.rank; ++j)
            if (contains(sub, j) && !contains(seen, j) && rs.adjacent(chain.back(), j)) {
                next = j;
                break;
            }
        if (!next) throw std::logic_error("subset is not a path");
        chain.push_back(next);
        seen |= bit(next);
    }
    return chain;
}

void validate_pair(const RootSystem& rs, Mask K, Mask J, int i) {
    Mask all = full_mask(rs.rank);
    if ((K & ~all) || (J & ~all)) throw std::invalid_argument("subset out of range");
    if ((K & ~J) != 0 || popcount(J) != popcount(K) + 1)
        throw std::invalid_argument("J must be K plus one vertex");
    if (i < 1 || i > rs.rank || !contains(K, i))
        throw std::invalid_argument("i must lie in K");
    if (connected_components(rs, K).size() != 1)
        throw std::invalid_argument("K must be connected");
    if (connected_components(rs, J).size() != 1)
        throw std::invalid_argument("J must be connected");
}

}  // namespace

std::string pair_kind_name(PairKind kind) {
    switch (kind) {
        case PairKind::AinA: return "AinA";
        case PairKind::AinB: return "AinB";
        case PairKind::BinB: return "BinB";
        case PairKind::AinC: return "AinC";
        case PairKind::CinC: return "CinC";
        case PairKind::AinD: return "AinD";
        case PairKind::DinD: return "DinD";
        case PairKind::A5inE6: return "A5inE6";
        case PairKind::D5inE6: return "D5inE6";
        case PairKind::A6inE7: return "A6inE7";
        case PairKind::D6inE7: return "D6inE7";
        case PairKind::E6inE7: return "E6inE7";
        case PairKind::A7inE8: return "A7inE8";
        case PairKind::D7inE8: return "D7inE8";
        case PairKind::E7inE8: return "E7inE8";
        case PairKind::B3inF4: return "B3inF4";
        case PairKind::C3inF4: return "C3inF4";
        case PairKind::G2short: return "G2short";
        case PairKind::G2long: return "G2long";
    }
    throw std::logic_error("unreachable");
}

Classified classify_pair(const RootSystem& rs, Mask K, Mask J, int i) {
    validate_pair(rs, K, J, i);
    int jstar = __builtin_ctz(J & ~K) + 1;
    int r = popcount(J);
    auto vs = verts_of(J, rs.rank);

    int mult3 = 0, mult2 = 0;
    std::pair<int, int> trp{0, 0};
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b) {
            int m = rs.edge_multiplicity(vs[a], vs[b]);
            if (m == 3) { ++mult3; trp = {vs[a], vs[b]}; }
            if (m == 2) ++mult2;
        }

    PairType pt;
    pt.r = r;
    auto finish = [&](PairKind kind) {
        pt.kind = kind;
        int ip = pt.relabel.at(i);
        return Classified{pt, ip};
    };

    if (mult3) {
        // |cartan[p][q]| = 3 marks q as the short vertex
        int shortv, longv;
        if (std::abs(rs.cartan[trp.first - 1][trp.second - 1]) == 3) {
            shortv = trp.second;
            longv = trp.first;
        } else {
            shortv = trp.first;
            longv = trp.second;
        }
        pt.relabel = {{shortv, 1}, {longv, 2}};
        return finish(contains(K, shortv) ? PairKind::G2short : PairKind::G2long);
    }

    if (mult2) {
        auto chain = chain_order(rs, J);
        int e = -1;
        for (std::size_t k = 0; k + 1 < chain.size(); ++k)
            if (rs.edge_multiplicity(chain[k], chain[k + 1]) == 2) {
                e = static_cast<int>(k);
                break;
            }
        bool at_end = (e == 0) || (e == r - 2);
        if (!at_end) {
            if (r != 4) throw std::logic_error("unexpected interior double edge");
            // orient the long pair first: then chain[2], chain[3] are short
            if (std::abs(rs.cartan[chain[1] - 1][chain[2] - 1]) != 2)
                std::reverse(chain.begin(), chain.end());
            for (int k = 0; k < 4; ++k) pt.relabel[chain[k]] = k + 1;
            if (jstar == chain[3]) return finish(PairKind::B3inF4);
            if (jstar == chain[0]) return finish(PairKind::C3inF4);
            throw std::invalid_argument("added vertex must be an end of the chain");
        }
        if (r == 2) {
            if (chain[1] != jstar) std::reverse(chain.begin(), chain.end());
        } else if (e == 0) {
            std::reverse(chain.begin(), chain.end());
        }
        // double edge sits between chain[r-2] and chain[r-1]
        bool last_short = std::abs(rs.cartan[chain[r - 2] - 1][chain[r - 1] - 1]) == 2;
        for (int k = 0; k < r; ++k) pt.relabel[chain[k]] = k + 1;
        if (jstar == chain[r - 1]) return finish(last_short ? PairKind::AinB : PairKind::AinC);
        if (jstar == chain[0]) return finish(last_short ? PairKind::BinB : PairKind::CinC);
        throw std::invalid_argument("added vertex must be an end of the chain");
    }

    // simply laced inside J
    std::vector<int> deg3;
    for (int v : vs) {
        int d = degree_in(rs, J, v);
        if (d > 3) throw std::logic_error("vertex of degree > 3");
        if (d == 3) deg3.push_back(v);
    }
    if (deg3.empty()) {
        auto chain = chain_order(rs, J);
        if (chain.front() == jstar) std::reverse(chain.begin(), chain.end());
        if (chain.back() != jstar)
            throw std::invalid_argument("added vertex must be an end of the chain");
        for (int k = 0; k < r; ++k) pt.relabel[chain[k]] = k + 1;
        return finish(PairKind::AinA);
    }
    if (deg3.size() > 1) throw std::logic_error("two branch vertices");
    int c = deg3[0];

    std::vector<std::vector<int>> arms;  // each ordered from c outward
    for (int nb = 1; nb <= rs.rank; ++nb) {
        if (!contains(J, nb) || !rs.adjacent(c, nb)) continue;
        std::vector<int> arm{nb};
        Mask seen = bit(c) | bit(nb);
        while (true) {
            int next = 0;
            for (int j = 1; j <= rs.rank; ++j)
                if (contains(J, j) && !contains(seen, j) && rs.adjacent(arm.back(), j)) {
                    next = j;
                    break;
                }
            if (!next) break;
            arm.push_back(next);
            seen |= bit(next);
        }
        arms.push_back(arm);
    }
    std::sort(arms.begin(), arms.end(), [](const auto& x, const auto& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    if (arms.size() != 3 || arms[0].size() != 1)
        throw std::logic_error("impossible branch shape");

    auto arm_of = [&](int v) -> int {
        for (int k = 0; k < 3; ++k)
            for (int u : arms[k])
                if (u == v) return k;
        return -1;
    };

    if (arms[1].size() == 1) {
        // D-shaped J: arms (1, 1, L) with r = L + 3
        int ja = arm_of(jstar);
        if (ja < 0 || arms[ja].back() != jstar)
            throw std::invalid_argument("added vertex must be a leaf");
        if (arms[ja].size() == 1) {
            // K is a chain: jstar -> r, c -> r-2, the spare leg -> r-1,
            // the remaining arm -> r-3 .. 1 walking outward
            std::vector<int> other;
            for (int k = 0; k < 3; ++k)
                if (k != ja) other.push_back(k);
            int long_slot, leg_slot;
            if (arms[other[0]].size() > 1) {
                long_slot = other[0];
                leg_slot = other[1];
            } else if (arms[other[1]].size() > 1) {
                long_slot = other[1];
                leg_slot = other[0];
            } else if (arm_of(i) == other[1]) {
                // all three arms are legs; i's arm takes the slot with the
                // smaller reference label (the value is the same either way)
                long_slot = other[1];
                leg_slot = other[0];
            } else {
                long_slot = other[0];
                leg_slot = other[1];
            }
            pt.relabel[jstar] = r;
            pt.relabel[c] = r - 2;
            pt.relabel[arms[leg_slot][0]] = r - 1;
            const auto& la = arms[long_slot];
            for (std::size_t k = 0; k < la.size(); ++k)
                pt.relabel[la[k]] = static_cast<int>(la.size() - k);
            return finish(PairKind::AinD);
        }
        // jstar tips the long arm: K is D-shaped, jstar -> 1
        const auto& la = arms[ja];
        for (std::size_t k = 0; k < la.size(); ++k)
            pt.relabel[la[k]] = static_cast<int>(la.size() - k);
        pt.relabel[c] = r - 2;
        std::vector<int> legs;
        for (int k = 0; k < 3; ++k)
            if (k != ja) legs.push_back(arms[k][0]);
        if (i == legs[1]) std::swap(legs[0], legs[1]);
        pt.relabel[legs[0]] = r - 1;
        pt.relabel[legs[1]] = r;
        return finish(PairKind::DinD);
    }

    // E-shaped J: arms (1, 2, L) with L in {2, 3, 4}
    if (arms[1].size() != 2 || arms[2].size() < 2 || arms[2].size() > 4 || r < 6)
        throw std::logic_error("impossible branch shape");
    int ja = arm_of(jstar);
    if (ja < 0 || arms[ja].back() != jstar)
        throw std::invalid_argument("added vertex must be a leaf");

    PairKind akind = r == 6 ? PairKind::A5inE6 : r == 7 ? PairKind::A6inE7 : PairKind::A7inE8;
    PairKind dkind = r == 6 ? PairKind::D5inE6 : r == 7 ? PairKind::D6inE7 : PairKind::D7inE8;

    if (ja == 0) {
        // jstar is the branch leaf: K is a chain through c
        pt.relabel[jstar] = 2;
        pt.relabel[c] = 4;
        int side13 = 1, side56 = 2;
        if (r == 6 && arm_of(i) == 2) {
            // both chain halves have length 2; keep i on the low-label side
            side13 = 2;
            side56 = 1;
        }
        pt.relabel[arms[side13][0]] = 3;
        pt.relabel[arms[side13][1]] = 1;
        for (std::size_t k = 0; k < arms[side56].size(); ++k)
            pt.relabel[arms[side56][k]] = 5 + static_cast<int>(k);
        return finish(akind);
    }
    if (arms[ja].size() == 2) {
        // jstar tips a length-2 arm: K is D-shaped
        int inner = arms[ja][0];
        int other = ja == 1 ? 2 : 1;
        pt.relabel[c] = 4;
        pt.relabel[arms[0][0]] = 2;
        if (r == 6) {
            pt.relabel[jstar] = 6;
            pt.relabel[inner] = 5;
            pt.relabel[arms[other][0]] = 3;
            pt.relabel[arms[other][1]] = 1;
        } else {
            pt.relabel[jstar] = 1;
            pt.relabel[inner] = 3;
            for (std::size_t k = 0; k < arms[other].size(); ++k)
                pt.relabel[arms[other][k]] = 5 + static_cast<int>(k);
        }
        return finish(dkind);
    }
    // jstar tips the arm of length >= 3: K is E-shaped
    pt.relabel[c] = 4;
    pt.relabel[arms[0][0]] = 2;
    pt.relabel[arms[1][0]] = 3;
    pt.relabel[arms[1][1]] = 1;
    for (std::size_t k = 0; k < arms[2].size(); ++k)
        pt.relabel[arms[2][k]] = 5 + static_cast<int>(k);
    return finish(r == 7 ? PairKind::E6inE7 : PairKind::E7inE8);
}

Rat m_lookup(const PairType& pt, int ip) {
    int r = pt.r;
    auto pick = [&](std::initializer_list<std::pair<int, Rat>> vals) -> Rat {
        for (const auto& [k, v] : vals)
            if (k == ip) return v;
        throw std::invalid_argument("i_prime out of range for pair kind");
    };
    switch (pt.kind) {
        case PairKind::AinA:
            if (ip < 1 || ip > r - 1) break;
            return rat(ip, r);
        case PairKind::AinB:
            if (ip < 1 || ip > r - 1) break;
            return rat(2 * ip, r);
        case PairKind::BinB:
            if (ip < 2 || ip > r) break;
            return ip == r ? rat(1, 2) : Rat(1);
        case PairKind::AinC:
            if (ip < 1 || ip > r - 1) break;
            return rat(ip, r);
        case PairKind::CinC:
            if (ip < 2 || ip > r) break;
            return Rat(1);
        case PairKind::AinD:
            if (ip < 1 || ip > r - 1) break;
            return ip <= r - 2 ? rat(2 * ip, r) : rat(r - 2, r);
        case PairKind::DinD:
            if (ip < 2 || ip > r) break;
            return ip >= r - 1 ? rat(1, 2) : Rat(1);
        case PairKind::A5inE6:
            return pick({{1, rat(1, 2)}, {3, Rat(1)}, {4, rat(3, 2)}, {5, Rat(1)},
                         {6, rat(1, 2)}});
        case PairKind::D5inE6:
            return pick({{1, rat(1, 2)}, {2, rat(3, 4)}, {3, Rat(1)}, {4, rat(3, 2)},
                         {5, rat(5, 4)}});
        case PairKind::A6inE7:
            return pick({{1, rat(4, 7)}, {3, rat(8, 7)}, {4, rat(12, 7)}, {5, rat(9, 7)},
                         {6, rat(6, 7)}, {7, rat(3, 7)}});
        case PairKind::D6inE7:
            return pick({{2, Rat(1)}, {3, rat(3, 2)}, {4, Rat(2)}, {5, rat(3, 2)},
                         {6, Rat(1)}, {7, rat(1, 2)}});
        case PairKind::E6inE7:
            return pick({{1, rat(2, 3)}, {2, Rat(1)}, {3, rat(4, 3)}, {4, Rat(2)},
                         {5, rat(5, 3)}, {6, rat(4, 3)}});
        case PairKind::A7inE8:
            return pick({{1, rat(5, 8)}, {3, rat(5, 4)}, {4, rat(15, 8)}, {5, rat(3, 2)},
                         {6, rat(9, 8)}, {7, rat(3, 4)}, {8, rat(3, 8)}});
        case PairKind::D7inE8:
            return pick({{2, rat(5, 4)}, {3, rat(7, 4)}, {4, rat(5, 2)}, {5, Rat(2)},
                         {6, rat(3, 2)}, {7, Rat(1)}, {8, rat(1, 2)}});
        case PairKind::E7inE8:
            return pick({{1, Rat(1)}, {2, rat(3, 2)}, {3, Rat(2)}, {4, Rat(3)},
                         {5, rat(5, 2)}, {6, Rat(2)}, {7, rat(3, 2)}});
        case PairKind::B3inF4:
            return pick({{1, Rat(1)}, {2, Rat(2)}, {3, rat(3, 2)}});
        case PairKind::C3inF4:
            return pick({{2, rat(3, 2)}, {3, Rat(1)}, {4, rat(1, 2)}});
        case PairKind::G2short:
            return pick({{1, rat(1, 2)}});
        case PairKind::G2long:
            return pick({{2, rat(3, 2)}});
    }
    throw std::invalid_argument("i_prime out of range for pair kind");
}

Rat m_value(const RootSystem& rs, int i, Mask K, Mask J) {
    auto cl = classify_pair(rs, K, J, i);
    return m_lookup(cl.pair, cl.i_prime);
}

namespace {

Rat billey_scalar(const std::set<std::vector<int>>& words, const std::vector<int>& w,
                  const std::vector<Int>& hs) {
    Rat total = 0;
    for (const auto& a : words) {
        int m = static_cast<int>(a.size());
        std::vector<Rat> D(m + 1, Rat(0));
        D[0] = 1;
        for (std::size_t t = 0; t < w.size(); ++t)
            for (int k = m; k >= 1; --k)
                if (a[k - 1] == w[t] && D[k - 1] != 0) D[k] += D[k - 1] * Rat(hs[t]);
        total += D[m];
    }
    return total;
}

}  // namespace

BilleyEvaluation billey_restrict(const RootSystem& rs, const WeylWord& v, const WeylWord& w) {
    if (!is_reduced(rs, v.letters) || !is_reduced(rs, w.letters))
        throw std::invalid_argument("words must be reduced");
    auto roots = inversion_roots(rs, w.letters);
    int n = rs.rank;
    std::vector<Poly> root_lin;
    root_lin.reserve(roots.size());
    for (const auto& rt : roots) {
        std::vector<Rat> cf(n);
        for (int k = 0; k < n; ++k) cf[k] = rt[k];
        root_lin.push_back(Poly::linear(cf));
    }
    auto words = reduced_words(rs, v);
    int m = static_cast<int>(v.letters.size());
    Poly total(n);
    for (const auto& a : words) {
        std::vector<Poly> D(m + 1, Poly(n));
        D[0] = Poly::constant(n, 1);
        for (std::size_t t = 0; t < w.letters.size(); ++t)
            for (int k = m; k >= 1; --k)
                if (a[k - 1] == w.letters[t] && !D[k - 1].is_zero())
                    D[k] += D[k - 1] * root_lin[t];
        total += D[m];
    }
    return BilleyEvaluation{v, w, total, total.content_at_ones()};
}

Rat c_iKJ(const RootSystem& rs, int i, Mask K, Mask J) {
    validate_pair(rs, K, J, i);
    auto wJ = longest_element(rs, J);
    auto wK = longest_element(rs, K);
    auto hsJ = inversion_heights(rs, wJ.letters);
    auto hsK = inversion_heights(rs, wK.letters);
    Rat psiJ = 0, psiK = 0;
    for (std::size_t t = 0; t < wJ.letters.size(); ++t)
        if (wJ.letters[t] == i) psiJ += Rat(hsJ[t]);
    for (std::size_t t = 0; t < wK.letters.size(); ++t)
        if (wK.letters[t] == i) psiK += Rat(hsK[t]);
    Rat pvK = billey_scalar(reduced_words(rs, v_K(rs, K)), wJ.letters, hsJ);
    Rat pvJ = billey_scalar(reduced_words(rs, v_K(rs, J)), wJ.letters, hsJ);
    if (pvJ == 0) throw std::logic_error("vanishing longest-element restriction");
    Rat c = (psiJ - psiK) * pvK / pvJ;
    if (c < 0) throw std::logic_error("negative structure constant");
    return c;
}

Rat m_derive(const RootSystem& rs, int i, Mask K, Mask J) {
    auto redJ = reduced_words(rs, v_K(rs, J)).size();
    auto redK = reduced_words(rs, v_K(rs, K)).size();
    Rat c = c_iKJ(rs, i, K, J);
    return Rat(static_cast<unsigned long>(redJ)) * c /
           (Rat(static_cast<unsigned long>(redK)) * popcount(J));
}

}  // namespace meu

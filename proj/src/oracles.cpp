#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "meu/oracles.hpp"

namespace meu {

namespace {

std::vector<long> draw_distinct(std::mt19937_64& eng, int n) {
    std::uniform_int_distribution<long> dist(1, 1000000);
    std::set<long> used;
    std::vector<long> p;
    while (static_cast<int>(p.size()) < n) {
        long v = dist(eng);
        if (used.insert(v).second) p.push_back(v);
    }
    return p;
}

// Sum over permutations of f(q) / prod (q_k - q_{k+1}) at a fixed point with
// distinct coordinates. D = prod_{i<j} (p_i - p_j) is a common denominator:
// every consecutive-difference product divides it exactly.
Rat divsym_at_point(const std::vector<long>& p,
                    const std::function<Rat(const std::vector<Int>&)>& f) {
    int n = static_cast<int>(p.size());
    Int D = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) D *= Int(p[i]) - Int(p[j]);
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<Int> q(n);
    Rat total = 0;
    Int den, scale;
    do {
        for (int k = 0; k < n; ++k) q[k] = p[idx[k]];
        den = 1;
        for (int k = 0; k + 1 < n; ++k) den *= q[k] - q[k + 1];
        mpz_divexact(scale.get_mpz_t(), D.get_mpz_t(), den.get_mpz_t());
        total += f(q) * Rat(scale);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return total / Rat(D);
}

// Integer-valued fast path: accumulates one big integer numerator.
Rat divsym_at_point_int(const std::vector<long>& p,
                        const std::function<Int(const std::vector<Int>&)>& f) {
    int n = static_cast<int>(p.size());
    Int D = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) D *= Int(p[i]) - Int(p[j]);
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<Int> q(n);
    Int total = 0, den, scale;
    do {
        for (int k = 0; k < n; ++k) q[k] = p[idx[k]];
        den = 1;
        for (int k = 0; k + 1 < n; ++k) den *= q[k] - q[k + 1];
        mpz_divexact(scale.get_mpz_t(), D.get_mpz_t(), den.get_mpz_t());
        total += f(q) * scale;
    } while (std::next_permutation(idx.begin(), idx.end()));
    return Rat(total) / Rat(D);
}

Rat two_point_check(int n, const OracleOptions& opt,
                    const std::function<Rat(const std::vector<long>&)>& eval) {
    std::mt19937_64 eng(opt.seed);
    Rat first = eval(draw_distinct(eng, n));
    Rat second = eval(draw_distinct(eng, n));
    if (first != second)
        throw std::logic_error("symmetrized value depends on the generic point");
    return first;
}

}  // namespace

Rat divided_symmetrization(const Poly& f, int n, const OracleOptions& opt) {
    if (f.nvars() != n)
        throw std::invalid_argument("polynomial must have exactly n variables");
    if (n < 1) throw std::invalid_argument("need at least one variable");
    if (f.is_zero()) return Rat(0);
    int d = f.total_degree();
    if (!f.is_homogeneous(d))
        throw std::invalid_argument("polynomial must be homogeneous");
    if (d > n - 1)
        throw std::invalid_argument("degree must be at most n-1");
    return two_point_check(n, opt, [&](const std::vector<long>& p) {
        return divsym_at_point(p, [&](const std::vector<Int>& q) {
            std::vector<Rat> point(q.begin(), q.end());
            return f.eval(point);
        });
    });
}

Rat mixed_eulerian_divsym(const std::vector<int>& comp, const OracleOptions& opt) {
    int len = static_cast<int>(comp.size());
    if (len < 1) throw std::invalid_argument("composition must be nonempty");
    int sum = 0;
    for (int c : comp) {
        if (c < 0) throw std::invalid_argument("composition entries must be nonnegative");
        sum += c;
    }
    if (sum != len)
        throw std::invalid_argument("composition must sum to its length");
    int n = len + 1;
    return two_point_check(n, opt, [&](const std::vector<long>& p) {
        return divsym_at_point_int(p, [&](const std::vector<Int>& q) {
            Int prefix = 0, result = 1, power;
            for (int i = 0; i < len; ++i) {
                prefix += q[i];
                if (comp[i] == 0) continue;
                mpz_pow_ui(power.get_mpz_t(), prefix.get_mpz_t(),
                           static_cast<unsigned long>(comp[i]));
                result *= power;
            }
            return result;
        });
    });
}

Rat permutohedron_volume(const std::vector<Rat>& a, const OracleOptions& opt) {
    int n = static_cast<int>(a.size());
    if (n < 1) throw std::invalid_argument("need at least one coordinate");
    // The polytope only sees the multiset; the symmetrized formula wants the
    // dominant (weakly decreasing) ordering.
    std::vector<Rat> w = a;
    std::sort(w.begin(), w.end(), [](const Rat& x, const Rat& y) { return x > y; });
    Rat sym = two_point_check(n, opt, [&](const std::vector<long>& p) {
        return divsym_at_point(p, [&](const std::vector<Int>& q) {
            Rat lin = 0;
            for (int i = 0; i < n; ++i) lin += w[i] * Rat(q[i]);
            Rat pw = 1;
            for (int k = 0; k + 1 < n; ++k) pw *= lin;
            return pw;
        });
    });
    return sym / Rat(factorial(n - 1));
}

Rat mixed_eulerian_weylsum(const RootSystem& rs, const std::vector<int>& comp,
                           const OracleOptions& opt) {
    int n = rs.rank;
    if (static_cast<int>(comp.size()) != n)
        throw std::invalid_argument("composition length must equal the rank");
    int sum = 0;
    for (int c : comp) {
        if (c < 0) throw std::invalid_argument("composition entries must be nonnegative");
        sum += c;
    }
    if (sum != n)
        throw std::invalid_argument("composition must sum to the rank");

    Int order = weyl_order(rs, 0).order;
    if (order > Int(opt.weyl_cap)) {
        std::ostringstream os;
        os << "Weyl group order " << to_string(order)
           << " exceeds the orbit cap " << opt.weyl_cap;
        throw std::invalid_argument(os.str());
    }
    std::size_t worder = static_cast<std::size_t>(order.get_ui());

    // Pairing matrices in the weight coordinates u_j = (u, alpha_j^vee),
    // scaled by a common denominator L. Since the composition has exactly n
    // parts counted with multiplicity and the denominator has n root factors,
    // the L`s cancel and the scaled sum equals the unscaled one.
    auto dot = [&](const std::vector<Rat>& x, const std::vector<Rat>& y) {
        Rat s = 0;
        for (std::size_t d = 0; d < x.size(); ++d) s += x[d] * y[d];
        return s;
    };
    std::vector<std::vector<Rat>> gw(n, std::vector<Rat>(n));
    std::vector<std::vector<Rat>> ga(n, std::vector<Rat>(n));
    Int L = 1;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            gw[j][k] = dot(rs.fund_weights[j], rs.fund_weights[k]);
            ga[j][k] = dot(rs.fund_weights[j], rs.simple_roots[k]);
            mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), gw[j][k].get_den().get_mpz_t());
            mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), ga[j][k].get_den().get_mpz_t());
        }
    std::vector<std::vector<long>> igw(n, std::vector<long>(n));
    std::vector<std::vector<long>> iga(n, std::vector<long>(n));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            Rat a = gw[j][k] * Rat(L), b = ga[j][k] * Rat(L);
            if (!is_integer(a) || !is_integer(b))
                throw std::logic_error("pairing matrix failed to clear denominators");
            igw[j][k] = static_cast<long>(a.get_num().get_si());
            iga[j][k] = static_cast<long>(b.get_num().get_si());
        }

    std::mt19937_64 eng(opt.seed);
    std::vector<Rat> values;
    for (int attempt = 0; attempt < 24 && values.size() < 2; ++attempt) {
        auto y = draw_distinct(eng, n);
        std::vector<std::int64_t> start(y.begin(), y.end());
        std::set<std::vector<std::int64_t>> seen;
        std::vector<std::vector<std::int64_t>> frontier{start};
        seen.insert(start);
        Rat total = 0;
        bool degenerate = false;
        Int num, den, power, s;
        while (!frontier.empty() && !degenerate) {
            std::vector<std::vector<std::int64_t>> next;
            for (const auto& u : frontier) {
                num = 1;
                for (int i = 0; i < n && !degenerate; ++i) {
                    std::int64_t acc = 0;
                    for (int j = 0; j < n; ++j) acc += u[j] * igw[j][i];
                    if (comp[i] == 0) continue;
                    s = acc;
                    mpz_pow_ui(power.get_mpz_t(), s.get_mpz_t(),
                               static_cast<unsigned long>(comp[i]));
                    num *= power;
                }
                den = 1;
                for (int k = 0; k < n && !degenerate; ++k) {
                    std::int64_t acc = 0;
                    for (int j = 0; j < n; ++j) acc += u[j] * iga[j][k];
                    if (acc == 0) degenerate = true;
                    den *= Int(acc);
                }
                if (degenerate) break;
                total += Rat(num) / Rat(den);
                for (int i = 0; i < n; ++i) {
                    std::vector<std::int64_t> v = u;
                    std::int64_t ui = u[i];
                    for (int j = 0; j < n; ++j)
                        v[j] -= ui * rs.cartan[i][j];
                    if (seen.insert(v).second) next.push_back(std::move(v));
                }
            }
            frontier = std::move(next);
        }
        if (degenerate || seen.size() != worder) continue;  // non-regular point
        values.push_back(total);
    }
    if (values.size() < 2)
        throw std::logic_error("failed to find two regular points for the orbit sum");
    if (values[0] != values[1])
        throw std::logic_error("orbit sum depends on the generic point");
    return values[0];
}

namespace {

Mask range_mask(int a, int b) {
    Mask m = 0;
    for (int i = a; i <= b; ++i) m |= bit(i);
    return m;
}

struct ItemCheck {
    std::string name;
    Mask base;
    int i;
    std::vector<std::pair<Mask, Rat>> expect;
};

bool run_item(const RootSystem& rs, const ItemCheck& item) {
    std::vector<int> e(rs.rank, 0);
    for (int k = 1; k <= rs.rank; ++k)
        if (contains(item.base, k)) e[k - 1] += 1;
    e[item.i - 1] += 1;
    Poly p(rs.rank);
    p.add_term(e, Rat(1));
    auto got = quotient_reduce(rs, p, popcount(item.base) + 1);

    SquareFreeClass want;
    want.grade = popcount(item.base) + 1;
    for (const auto& [m, c] : item.expect) {
        if (c == 0) continue;
        want.coeffs[m] += c;
        if (want.coeffs[m] == 0) want.coeffs.erase(m);
    }
    return got == want;
}

std::string item_name(const std::string& family, int a, int i) {
    std::ostringstream os;
    os << family << " a=" << a << " i=" << i;
    return os.str();
}

void chain_families(const RootSystem& rs, std::vector<ItemCheck>& items) {
    int n = rs.rank;
    char t = rs.type;
    int amax1 = (t == 'D') ? n - 2 : n - 1;  // base {a..n-1}
    for (int a = 1; a <= amax1; ++a) {
        for (int i = a; i <= n - 1; ++i) {
            ItemCheck it{item_name(std::string(1, t) + "1", a, i),
                         range_mask(a, n - 1), i, {}};
            Rat lower(0), upper(0);
            if (t == 'B') {
                lower = Rat(n - i) / Rat(n - a + 1);
                upper = Rat(2 * (i - a + 1)) / Rat(n - a + 1);
            } else if (t == 'C') {
                lower = Rat(n - i) / Rat(n - a + 1);
                upper = Rat(i - a + 1) / Rat(n - a + 1);
            } else {  // D
                lower = Rat(n - i) / Rat(n - a + 1);
                upper = (i <= n - 2) ? Rat(2 * (i - a + 1)) / Rat(n - a + 1)
                                     : Rat(n - a - 1) / Rat(n - a + 1);
            }
            if (a >= 2) it.expect.emplace_back(range_mask(a - 1, n - 1), lower);
            it.expect.emplace_back(range_mask(a, n), upper);
            items.push_back(std::move(it));
        }
    }
    int amax2 = (t == 'D') ? n - 2 : n;  // base {a..n}
    for (int a = 1; a <= amax2; ++a) {
        for (int i = a; i <= n; ++i) {
            ItemCheck it{item_name(std::string(1, t) + "2", a, i),
                         range_mask(a, n), i, {}};
            Rat coef(1);
            if (t == 'B' && i == n) coef = rat(1, 2);
            if (t == 'D' && i >= n - 1) coef = rat(1, 2);
            if (a >= 2) it.expect.emplace_back(range_mask(a - 1, n), coef);
            items.push_back(std::move(it));
        }
    }
}

void fixed_family(const std::string& family, Mask base, Mask target,
                  const std::vector<std::pair<int, Rat>>& coefs,
                  std::vector<ItemCheck>& items) {
    for (const auto& [i, c] : coefs) {
        std::ostringstream os;
        os << family << " i=" << i;
        items.push_back({os.str(), base, i, {{target, c}}});
    }
}

}  // namespace

AppendixReport verify_appendix(const RootSystem& rs) {
    std::vector<ItemCheck> items;
    int n = rs.rank;
    Mask full = full_mask(n);
    switch (rs.type) {
        case 'A':
            break;  // no tabulated identities beyond the chain rule itself
        case 'B':
        case 'C':
        case 'D':
            chain_families(rs, items);
            break;
        case 'G':
            fixed_family("G2", bit(1), full, {{1, rat(1, 2)}}, items);
            fixed_family("G2", bit(2), full, {{2, rat(3, 2)}}, items);
            break;
        case 'F':
            fixed_family("F4-1", range_mask(1, 3), full,
                         {{1, Rat(1)}, {2, Rat(2)}, {3, rat(3, 2)}}, items);
            fixed_family("F4-2", range_mask(2, 4), full,
                         {{2, rat(3, 2)}, {3, Rat(1)}, {4, rat(1, 2)}}, items);
            break;
        case 'E':
            if (n == 6) {
                fixed_family("E6-1", full ^ bit(2), full,
                             {{1, rat(1, 2)}, {3, Rat(1)}, {4, rat(3, 2)},
                              {5, Rat(1)}, {6, rat(1, 2)}},
                             items);
                fixed_family("E6-2", full ^ bit(6), full,
                             {{1, rat(1, 2)}, {2, rat(3, 4)}, {3, Rat(1)},
                              {4, rat(3, 2)}, {5, rat(5, 4)}},
                             items);
            } else if (n == 7) {
                fixed_family("E7-1", full ^ bit(2), full,
                             {{1, rat(4, 7)}, {3, rat(8, 7)}, {4, rat(12, 7)},
                              {5, rat(9, 7)}, {6, rat(6, 7)}, {7, rat(3, 7)}},
                             items);
                fixed_family("E7-2", full ^ bit(1), full,
                             {{2, Rat(1)}, {3, rat(3, 2)}, {4, Rat(2)},
                              {5, rat(3, 2)}, {6, Rat(1)}, {7, rat(1, 2)}},
                             items);
                fixed_family("E7-3", full ^ bit(7), full,
                             {{1, rat(2, 3)}, {2, Rat(1)}, {3, rat(4, 3)},
                              {4, Rat(2)}, {5, rat(5, 3)}, {6, rat(4, 3)}},
                             items);
            } else {
                fixed_family("E8-1", full ^ bit(2), full,
                             {{1, rat(5, 8)}, {3, rat(5, 4)}, {4, rat(15, 8)},
                              {5, rat(3, 2)}, {6, rat(9, 8)}, {7, rat(3, 4)},
                              {8, rat(3, 8)}},
                             items);
                fixed_family("E8-2", full ^ bit(1), full,
                             {{2, rat(5, 4)}, {3, rat(7, 4)}, {4, rat(5, 2)},
                              {5, Rat(2)}, {6, rat(3, 2)}, {7, Rat(1)},
                              {8, rat(1, 2)}},
                             items);
                fixed_family("E8-3", full ^ bit(8), full,
                             {{1, Rat(1)}, {2, rat(3, 2)}, {3, Rat(2)},
                              {4, Rat(3)}, {5, rat(5, 2)}, {6, Rat(2)},
                              {7, rat(3, 2)}},
                             items);
            }
            break;
        default:
            throw std::logic_error("unknown system type");
    }

    AppendixReport report;
    for (const auto& it : items) {
        bool ok = run_item(rs, it);
        report.items.push_back({it.name, ok});
        if (!ok) report.all_ok = false;
    }
    return report;
}

}  // namespace meu

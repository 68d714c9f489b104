#include <algorithm>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "meu/oracles.hpp"

namespace meu {

namespace {

void gen_monomials(int nvars, int pos, int left, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
    if (pos == nvars) {
        if (left == 0) out.push_back(cur);
        return;
    }
    for (int e = left; e >= 0; --e) {
        cur[pos] = e;
        gen_monomials(nvars, pos + 1, left - e, cur, out);
    }
    cur[pos] = 0;
}

std::vector<int> profile_of(const std::vector<int>& e) {
    std::vector<int> p = e;
    std::sort(p.begin(), p.end(), std::greater<int>());
    return p;
}

bool is_squarefree(const std::vector<int>& e) {
    for (int v : e)
        if (v > 1) return false;
    return true;
}

// Reduce `work` against the existing pivots until its leading column is
// pivot-free, then install it there. Tails only reference larger columns.
void insert_row(QuotientSpace& qs, std::map<int, Rat>& work) {
    while (!work.empty()) {
        auto it = work.begin();
        if (it->second == 0) {
            work.erase(it);
            continue;
        }
        int col = it->first;
        Rat lead = it->second;
        const auto& prow = qs.pivot_rows[col];
        if (prow.empty()) {
            std::vector<std::pair<int, Rat>> row;
            row.reserve(work.size());
            for (const auto& [c, v] : work)
                if (v != 0) row.emplace_back(c, v / lead);
            qs.pivot_rows[col] = std::move(row);
            return;
        }
        work.erase(it);
        for (std::size_t k = 1; k < prow.size(); ++k)
            work[prow[k].first] -= lead * prow[k].second;
    }
}

std::unique_ptr<QuotientSpace> build_space(const RootSystem& rs, int degree) {
    if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
    auto qs = std::make_unique<QuotientSpace>();
    qs->type = rs.type;
    qs->rank = rs.rank;
    qs->degree = degree;

    std::vector<int> cur(rs.rank, 0);
    gen_monomials(rs.rank, 0, degree, cur, qs->monomials);
    // repeated-variable columns first, square-free columns last
    std::sort(qs->monomials.begin(), qs->monomials.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  auto pa = profile_of(a), pb = profile_of(b);
                  if (pa != pb) return pa > pb;
                  return a < b;
              });
    for (int c = 0; c < static_cast<int>(qs->monomials.size()); ++c)
        qs->column_of[qs->monomials[c]] = c;
    qs->pivot_rows.assign(qs->monomials.size(), {});

    if (degree >= 2) {
        std::vector<std::vector<int>> lower;
        std::vector<int> cur2(rs.rank, 0);
        gen_monomials(rs.rank, 0, degree - 2, cur2, lower);
        for (const auto& m : lower) {
            for (int i = 1; i <= rs.rank; ++i) {
                std::map<int, Rat> work;
                for (int j = 1; j <= rs.rank; ++j) {
                    int cij = rs.cartan[i - 1][j - 1];
                    if (cij == 0) continue;
                    std::vector<int> e = m;
                    ++e[i - 1];
                    ++e[j - 1];
                    work[qs->column_of.at(e)] += Rat(cij);
                }
                insert_row(*qs, work);
            }
        }
    }

    std::int64_t pivots = 0;
    for (int c = 0; c < static_cast<int>(qs->monomials.size()); ++c) {
        if (qs->pivot_rows[c].empty()) continue;
        ++pivots;
        if (is_squarefree(qs->monomials[c]))
            throw std::logic_error("a square-free monomial column became pivotal");
    }
    qs->dimension = static_cast<std::int64_t>(qs->monomials.size()) - pivots;
    Int want = binomial(rs.rank, degree);
    if (Int(qs->dimension) != want)
        throw std::logic_error("quotient slice dimension disagrees with binomial(n, d)");
    return qs;
}

}  // namespace

const QuotientSpace& quotient_space(const RootSystem& rs, int degree) {
    static std::mutex mu;
    static std::map<std::tuple<char, int, int>, std::unique_ptr<QuotientSpace>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(rs.type, rs.rank, degree);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, build_space(rs, degree)).first;
    return *it->second;
}

SquareFreeClass quotient_reduce(const RootSystem& rs, const Poly& p, int degree) {
    if (p.nvars() != rs.rank)
        throw std::invalid_argument("polynomial has the wrong number of variables");
    if (!p.is_zero() && !p.is_homogeneous(degree))
        throw std::invalid_argument("polynomial is not homogeneous of the stated degree");
    const auto& qs = quotient_space(rs, degree);

    std::map<int, Rat> work;
    for (const auto& [e, c] : p.terms()) work[qs.column_of.at(e)] += c;

    SquareFreeClass out;
    out.grade = degree;
    while (!work.empty()) {
        auto it = work.begin();
        int col = it->first;
        Rat coef = it->second;
        work.erase(it);
        if (coef == 0) continue;
        const auto& prow = qs.pivot_rows[col];
        if (prow.empty()) {
            const auto& e = qs.monomials[col];
            Mask m = 0;
            for (int i = 1; i <= rs.rank; ++i)
                if (e[i - 1] == 1) m |= bit(i);
            auto [pos, inserted] = out.coeffs.emplace(m, coef);
            if (!inserted) {
                pos->second += coef;
                if (pos->second == 0) out.coeffs.erase(pos);
            }
        } else {
            for (std::size_t k = 1; k < prow.size(); ++k)
                work[prow[k].first] -= coef * prow[k].second;
        }
    }
    return out;
}

Rat mixed_eulerian_quotient(const RootSystem& rs, const std::vector<int>& comp) {
    if (static_cast<int>(comp.size()) != rs.rank)
        throw std::invalid_argument("composition length must equal the rank");
    int sum = 0;
    for (int c : comp) {
        if (c < 0) throw std::invalid_argument("composition entries must be nonnegative");
        sum += c;
    }
    if (sum != rs.rank)
        throw std::invalid_argument("composition must sum to the rank");
    Poly p(rs.rank);
    p.add_term(comp, Rat(1));
    return integrate(rs, quotient_reduce(rs, p, rs.rank));
}

Int quotient_dimension(const RootSystem& rs, int degree) {
    return Int(quotient_space(rs, degree).dimension);
}

}  // namespace meu

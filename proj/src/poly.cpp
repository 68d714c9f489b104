#include "meu/poly.hpp"

#include <stdexcept>

namespace meu {

Poly Poly::constant(int nvars, const Rat& c) {
    Poly p(nvars);
    if (c != 0) p.terms_[std::vector<int>(nvars, 0)] = c;
    return p;
}

Poly Poly::var(int nvars, int idx, const Rat& coef) {
    if (idx < 0 || idx >= nvars) throw std::invalid_argument("variable index out of range");
    Poly p(nvars);
    if (coef != 0) {
        std::vector<int> e(nvars, 0);
        e[idx] = 1;
        p.terms_[e] = coef;
    }
    return p;
}

Poly Poly::linear(const std::vector<Rat>& coefs) {
    Poly p(static_cast<int>(coefs.size()));
    for (std::size_t k = 0; k < coefs.size(); ++k) {
        if (coefs[k] == 0) continue;
        std::vector<int> e(coefs.size(), 0);
        e[k] = 1;
        p.terms_[e] = coefs[k];
    }
    return p;
}

Rat Poly::coeff(const std::vector<int>& expo) const {
    auto it = terms_.find(expo);
    return it == terms_.end() ? Rat(0) : it->second;
}

void Poly::add_term(const std::vector<int>& expo, const Rat& c) {
    if (static_cast<int>(expo.size()) != nvars_)
        throw std::invalid_argument("exponent vector length mismatch");
    auto it = terms_.find(expo);
    if (it == terms_.end()) {
        if (c != 0) terms_[expo] = c;
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Poly& Poly::operator+=(const Poly& o) {
    if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly& Poly::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
}

Poly Poly::operator*(const Rat& c) const {
    Poly r = *this;
    r *= c;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
    Poly r(nvars_);
    std::vector<int> e(nvars_);
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            for (int k = 0; k < nvars_; ++k) e[k] = e1[k] + e2[k];
            r.add_term(e, c1 * c2);
        }
    }
    return r;
}

Poly Poly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative exponent");
    Poly r = constant(nvars_, 1);
    Poly base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

Rat Poly::eval(const std::vector<Rat>& point) const {
    if (static_cast<int>(point.size()) != nvars_)
        throw std::invalid_argument("point length mismatch");
    int maxdeg = 0;
    for (const auto& [e, c] : terms_)
        for (int k = 0; k < nvars_; ++k) maxdeg = std::max(maxdeg, e[k]);
    // power table per variable
    std::vector<std::vector<Rat>> pw(nvars_);
    for (int k = 0; k < nvars_; ++k) {
        pw[k].resize(maxdeg + 1);
        pw[k][0] = 1;
        for (int d = 1; d <= maxdeg; ++d) pw[k][d] = pw[k][d - 1] * point[k];
    }
    Rat s = 0;
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (int k = 0; k < nvars_; ++k)
            if (e[k]) t *= pw[k][e[k]];
        s += t;
    }
    return s;
}

int Poly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int v : e) s += v;
        d = std::max(d, s);
    }
    return d;
}

bool Poly::is_homogeneous(int d) const {
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int v : e) s += v;
        if (s != d) return false;
    }
    return true;
}

Rat Poly::content_at_ones() const {
    Rat s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
}

std::string Poly::str(const std::string& var_prefix) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rat a = c;
        if (first) {
            if (a < 0) { out += "-"; a = -a; }
        } else {
            out += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        first = false;
        std::string mono;
        for (int k = 0; k < nvars_; ++k) {
            if (!e[k]) continue;
            if (!mono.empty()) mono += "*";
            mono += var_prefix + std::to_string(k + 1);
            if (e[k] > 1) mono += "^" + std::to_string(e[k]);
        }
        if (mono.empty()) {
            out += to_string(a);
        } else if (a == 1) {
            out += mono;
        } else {
            out += to_string(a) + "*" + mono;
        }
    }
    return out;
}

}  // namespace meu

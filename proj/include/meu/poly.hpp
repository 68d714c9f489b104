#pragma once

#include <map>
#include <string>
#include <vector>

#include "meu/rational.hpp"

namespace meu {

// Sparse multivariate polynomial with rational coefficients. Exponent vectors
// always have length nvars; zero coefficients are never stored.
class Poly {
  public:
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, const Rat& c);
    static Poly var(int nvars, int idx, const Rat& coef = Rat(1));  // idx is 0-based
    static Poly linear(const std::vector<Rat>& coefs);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, Rat>& terms() const { return terms_; }

    Rat coeff(const std::vector<int>& expo) const;
    void add_term(const std::vector<int>& expo, const Rat& c);

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rat& c);
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& c) const;
    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

    Poly pow(int e) const;
    Rat eval(const std::vector<Rat>& point) const;

    int total_degree() const;  // -1 for the zero polynomial
    bool is_homogeneous(int d) const;

    // Sum of coefficients: for homogeneous p this is c with p(t,...,t) = c t^d.
    Rat content_at_ones() const;

    std::string str(const std::string& var_prefix = "x") const;

  private:
    int nvars_;
    std::map<std::vector<int>, Rat> terms_;
};

}  // namespace meu

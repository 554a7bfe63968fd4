#pragma once

#include <optional>
#include <string>
#include <vector>

#include "om/rat.hpp"

namespace om {

/// The residue characteristic. Primality is checked at construction by a
/// deterministic Miller-Rabin test (valid for all 64-bit inputs).
class Prime {
public:
    explicit Prime(unsigned long p);
    unsigned long value() const { return p_; }
    const Int& z() const { return pz_; }
    bool operator==(const Prime& o) const { return p_ == o.p_; }

private:
    unsigned long p_;
    Int pz_;
};

/// p-adic valuation of a rational; nullopt encodes +infinity (only for 0).
std::optional<Int> vp(const Rat& a, const Prime& p);

/// Image in F_p of a rational with vp(a) = 0, as the least nonnegative
/// representative. Throws if vp(a) != 0.
long residue(const Rat& a, const Prime& p);

/// Dense univariate polynomial over Q, index = degree. Canonical form: no
/// trailing zero coefficient; the zero polynomial is the empty list.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs); // trims trailing zeros
    static Poly constant(const Rat& c);
    static Poly x(); // the monomial x

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long deg() const { return static_cast<long>(c_.size()) - 1; }
    const Rat& operator[](long i) const; // 0 beyond degree
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& lc() const; // leading coefficient, nonzero poly only
    bool is_monic() const { return !is_zero() && lc() == 1; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& s) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }
    /// Total order for use as a map key (degree, then coefficients).
    std::strong_ordering operator<=>(const Poly& o) const;

    Rat eval(const Rat& x) const;
    Poly derivative() const;
    Poly pow(unsigned long n) const;

private:
    std::vector<Rat> c_;
};

/// Euclidean division f = q*g + r with deg r < deg g; g != 0.
std::pair<Poly, Poly> poly_divrem(const Poly& f, const Poly& g);

/// Monic gcd over Q (gcd(0,0) = 0).
Poly poly_gcd(const Poly& f, const Poly& g);

/// Canonical phi-expansion f = sum a_s phi^s with deg a_s < deg phi,
/// computed by repeated euclidean division. phi must be monic, deg >= 1.
std::vector<Poly> phi_expand(const Poly& f, const Poly& phi);

/// Text form: sums of c*x^e terms, e.g. "x^4+2*x^2+4", "1/3*x-2".
std::string poly_str(const Poly& f);

/// Recursive-descent parser for the same grammar; reports the column of the
/// first offending character on failure.
Poly parse_poly(const std::string& text);

} // namespace om

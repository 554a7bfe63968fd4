#include "om/base_field.hpp"

#include <algorithm>
#include <cctype>

namespace om {

namespace {

using u128 = unsigned __int128;

unsigned long mulmod_u64(unsigned long a, unsigned long b, unsigned long m) {
    return static_cast<unsigned long>((u128)a * b % m);
}

unsigned long powmod_u64(unsigned long a, unsigned long e, unsigned long m) {
    unsigned long r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long q : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    unsigned long d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (unsigned long a : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
        unsigned long x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

} // namespace

Prime::Prime(unsigned long p) : p_(p), pz_(static_cast<unsigned long>(p)) {
    if (!is_prime_u64(p)) throw math_error("Prime: " + std::to_string(p) + " is not prime");
}

std::optional<Int> vp(const Rat& a, const Prime& p) {
    if (a == 0) return std::nullopt;
    Int tmp;
    unsigned long vn = mpz_remove(tmp.get_mpz_t(), a.get_num().get_mpz_t(), p.z().get_mpz_t());
    unsigned long vd = mpz_remove(tmp.get_mpz_t(), a.get_den().get_mpz_t(), p.z().get_mpz_t());
    return Int(vn) - Int(vd);
}

long residue(const Rat& a, const Prime& p) {
    auto v = vp(a, p);
    if (!v || *v != 0) throw math_error("residue: vp(a) != 0 for a = " + rat_str(a));
    Int num = a.get_num() % p.z();
    if (num < 0) num += p.z();
    Int den = a.get_den() % p.z();
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.z().get_mpz_t()) == 0)
        throw math_error("residue: denominator not invertible mod p");
    Int r = (num * inv) % p.z();
    return r.get_si();
}

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const Rat& c) { return Poly(std::vector<Rat>{c}); }

Poly Poly::x() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }

const Rat& Poly::operator[](long i) const {
    static const Rat zero(0);
    if (i < 0 || i >= static_cast<long>(c_.size())) return zero;
    return c_[static_cast<size_t>(i)];
}

const Rat& Poly::lc() const {
    if (is_zero()) throw math_error("lc of zero polynomial");
    return c_.back();
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rat> c(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
    return Poly(std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    std::vector<Rat> c(c_);
    for (auto& x : c) x = -x;
    return Poly(std::move(c));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rat> c(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    }
    return Poly(std::move(c));
}

Poly Poly::operator*(const Rat& s) const {
    if (s == 0) return Poly();
    std::vector<Rat> c(c_);
    for (auto& x : c) x *= s;
    return Poly(std::move(c));
}

std::strong_ordering Poly::operator<=>(const Poly& o) const {
    if (c_.size() != o.c_.size())
        return c_.size() < o.c_.size() ? std::strong_ordering::less : std::strong_ordering::greater;
    for (size_t i = c_.size(); i-- > 0;) {
        int c = cmp(c_[i], o.c_[i]);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

Rat Poly::eval(const Rat& x) const {
    Rat r(0);
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rat> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rat(static_cast<unsigned long>(i));
    return Poly(std::move(c));
}

Poly Poly::pow(unsigned long n) const {
    Poly r = Poly::constant(1);
    Poly b = *this;
    while (n) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

std::pair<Poly, Poly> poly_divrem(const Poly& f, const Poly& g) {
    if (g.is_zero()) throw math_error("poly_divrem: division by zero polynomial");
    if (f.deg() < g.deg()) return {Poly(), f};
    std::vector<Rat> rem(f.coeffs());
    std::vector<Rat> quo(static_cast<size_t>(f.deg() - g.deg() + 1), Rat(0));
    const Rat& glc = g.lc();
    for (long i = f.deg(); i >= g.deg(); --i) {
        Rat c = rem[static_cast<size_t>(i)] / glc;
        if (c == 0) continue;
        quo[static_cast<size_t>(i - g.deg())] = c;
        for (long j = 0; j <= g.deg(); ++j) rem[static_cast<size_t>(i - g.deg() + j)] -= c * g[j];
    }
    return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly poly_gcd(const Poly& f, const Poly& g) {
    Poly a = f, b = g;
    while (!b.is_zero()) {
        auto [q, r] = poly_divrem(a, b);
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return a * (Rat(1) / a.lc());
}

std::vector<Poly> phi_expand(const Poly& f, const Poly& phi) {
    if (phi.deg() < 1) throw math_error("phi_expand: phi must be non-constant");
    if (!phi.is_monic()) throw math_error("phi_expand: phi must be monic");
    std::vector<Poly> out;
    Poly cur = f;
    if (cur.is_zero()) return out;
    while (!cur.is_zero()) {
        auto [q, r] = poly_divrem(cur, phi);
        out.push_back(r);
        cur = q;
    }
    return out;
}

std::string poly_str(const Poly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (long i = f.deg(); i >= 0; --i) {
        const Rat& c = f[i];
        if (c == 0) continue;
        const bool first = out.empty();
        Rat a = c;
        if (!first) {
            out += (c > 0) ? "+" : "-";
            if (c < 0) a = -c;
        }
        if (i == 0) {
            out += rat_str(a);
        } else {
            if (a != 1) {
                out += rat_str(a);
                out += "*";
            }
            out += "x";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

namespace {

struct PolyParser {
    const std::string& s;
    size_t pos = 0;

    explicit PolyParser(const std::string& text) : s(text) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw math_error("parse error at column " + std::to_string(pos + 1) + ": " + what);
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }

    bool eat(char c) {
        if (peek(c)) { ++pos; return true; }
        return false;
    }

    Int number() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected a number");
        return Int(s.substr(start, pos - start));
    }

    // term := [rational '*'?]? 'x' ('^' int)?  |  rational
    Poly term() {
        skip_ws();
        bool have_coeff = false;
        Rat coeff(1);
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            Int num = number();
            Int den = 1;
            if (eat('/')) den = number();
            if (den == 0) fail("zero denominator");
            coeff = make_rat(num, den);
            have_coeff = true;
        }
        bool have_x = false;
        unsigned long exp = 0;
        skip_ws();
        if (have_coeff) eat('*');
        skip_ws();
        if (pos < s.size() && s[pos] == 'x') {
            ++pos;
            have_x = true;
            exp = 1;
            if (eat('^')) {
                Int e = number();
                if (e < 0 || e > 100000) fail("exponent out of range");
                exp = e.get_ui();
            }
        }
        if (!have_coeff && !have_x) fail("expected a term");
        std::vector<Rat> c(exp + 1, Rat(0));
        c[exp] = coeff;
        return Poly(std::move(c));
    }

    Poly parse() {
        Poly acc;
        bool neg = false;
        skip_ws();
        if (eat('-')) neg = true;
        else eat('+');
        while (true) {
            Poly t = term();
            acc = neg ? acc - t : acc + t;
            skip_ws();
            if (pos >= s.size()) break;
            if (eat('+')) neg = false;
            else if (eat('-')) neg = true;
            else fail("expected '+', '-' or end of input");
        }
        return acc;
    }
};

} // namespace

Poly parse_poly(const std::string& text) {
    PolyParser p(text);
    return p.parse();
}

} // namespace om

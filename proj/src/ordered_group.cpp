#include "om/ordered_group.hpp"

namespace om {

GroupVec::GroupVec(std::vector<Rat> coords) : c_(std::move(coords)) {
    if (c_.empty()) throw math_error("GroupVec: dimension must be >= 1");
}

GroupVec GroupVec::zero(int k) { return GroupVec(std::vector<Rat>(static_cast<size_t>(k), Rat(0))); }

GroupVec GroupVec::scalar(const Rat& v, int k) {
    std::vector<Rat> c(static_cast<size_t>(k), Rat(0));
    c[0] = v;
    return GroupVec(std::move(c));
}

static void check_dim(const GroupVec& a, const GroupVec& b) {
    if (a.dim() != b.dim()) throw math_error("GroupVec: dimension mismatch");
}

GroupVec GroupVec::operator+(const GroupVec& o) const {
    check_dim(*this, o);
    std::vector<Rat> c(c_);
    for (size_t j = 0; j < c.size(); ++j) c[j] += o.c_[j];
    return GroupVec(std::move(c));
}

GroupVec GroupVec::operator-(const GroupVec& o) const {
    check_dim(*this, o);
    std::vector<Rat> c(c_);
    for (size_t j = 0; j < c.size(); ++j) c[j] -= o.c_[j];
    return GroupVec(std::move(c));
}

GroupVec GroupVec::operator-() const {
    std::vector<Rat> c(c_);
    for (auto& x : c) x = -x;
    return GroupVec(std::move(c));
}

GroupVec GroupVec::operator*(const Rat& s) const {
    std::vector<Rat> c(c_);
    for (auto& x : c) x *= s;
    return GroupVec(std::move(c));
}

bool GroupVec::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool GroupVec::operator==(const GroupVec& o) const {
    return dim() == o.dim() && c_ == o.c_;
}

std::strong_ordering GroupVec::operator<=>(const GroupVec& o) const { return lex_cmp(*this, o); }

std::strong_ordering lex_cmp(const GroupVec& a, const GroupVec& b) {
    check_dim(a, b);
    for (int j = 0; j < a.dim(); ++j) {
        int c = cmp(a[j], b[j]);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

LevelLedger bezout_ledger(const std::vector<Rat>& u, bool allow_zero) {
    const size_t k = u.size();
    if (k == 0) throw math_error("bezout_ledger: empty vector");
    bool all_zero = true;
    for (const auto& x : u)
        if (x != 0) all_zero = false;
    if (all_zero && !allow_zero) throw math_error("bezout_ledger: zero vector");

    LevelLedger lg;
    lg.gamma_coords = u;
    lg.h.resize(k);
    lg.e.resize(k);
    lg.d.resize(k);
    lg.eprime.resize(k);
    lg.ell.resize(k);
    lg.ellprime.resize(k);
    lg.L.resize(k);

    Int prod_e = 1, prod_d = 1;
    for (size_t j = 0; j < k; ++j) {
        lg.h[j] = u[j].get_num();
        lg.e[j] = u[j].get_den(); // canonical: > 0, coprime to numerator
        // eprime_j = e_1..e_{j-1} / (d_1..d_{j-1}); eprime_1 = 1
        lg.eprime[j] = prod_e / prod_d;
        Int g;
        mpz_gcd(g.get_mpz_t(), lg.e[j].get_mpz_t(), lg.eprime[j].get_mpz_t());
        lg.d[j] = g;
        // Solve ell * (h_j * eprime_j) = d_j (mod e_j), 0 <= ell < e_j/d_j.
        // gcd(h_j eprime_j, e_j) = d_j, so divide through by d_j first.
        Int m = lg.e[j] / lg.d[j];
        if (m == 1) {
            lg.ell[j] = 0;
        } else {
            Int a = (lg.h[j] * lg.eprime[j]) / lg.d[j];
            Int am = a % m;
            if (am < 0) am += m;
            Int inv;
            if (mpz_invert(inv.get_mpz_t(), am.get_mpz_t(), m.get_mpz_t()) == 0)
                throw math_error("bezout_ledger: no modular inverse (non-reduced input?)");
            lg.ell[j] = inv % m;
            if (lg.ell[j] < 0) lg.ell[j] += m;
        }
        lg.ellprime[j] = (lg.d[j] - lg.ell[j] * lg.h[j] * lg.eprime[j]) / lg.e[j];
        prod_e *= lg.e[j];
        prod_d *= lg.d[j];
    }
    lg.e_level = prod_e / prod_d;

    lg.Lprime = 1;
    for (size_t j = 0; j < k; ++j) lg.Lprime *= lg.ellprime[j];
    for (size_t j = 0; j < k; ++j) {
        Int v = lg.ell[j];
        for (size_t t = j + 1; t < k; ++t) v *= lg.ellprime[t];
        lg.L[j] = v;
    }
    return lg;
}

Rat L_value(const LevelLedger& lg, const std::vector<Rat>& beta_coords) {
    if (beta_coords.size() != static_cast<size_t>(lg.dim()))
        throw math_error("L_value: dimension mismatch");
    Rat s(0);
    for (size_t j = 0; j < beta_coords.size(); ++j) s += Rat(lg.L[j]) * beta_coords[j];
    return s;
}

Basis::Basis(std::vector<GroupVec> vecs, int level) : vecs_(std::move(vecs)), level_(level) {
    if (vecs_.empty()) throw math_error("Basis: empty");
    const int k = vecs_[0].dim();
    if (static_cast<int>(vecs_.size()) != k) throw math_error("Basis: need k vectors of dimension k");
    for (const auto& v : vecs_)
        if (v.dim() != k) throw math_error("Basis: mixed dimensions");
    if (det() == 0) throw math_error("Basis: singular (vectors not independent)");
}

Basis Basis::standard(int k) {
    std::vector<GroupVec> vs;
    for (int j = 0; j < k; ++j) {
        std::vector<Rat> c(static_cast<size_t>(k), Rat(0));
        c[static_cast<size_t>(j)] = 1;
        vs.emplace_back(std::move(c));
    }
    return Basis(std::move(vs), -1);
}

// Fraction-free-ish Gaussian elimination on the coordinate matrix, columns =
// basis vectors, optionally augmented with a right-hand side.
namespace {

struct Elim {
    std::vector<std::vector<Rat>> m; // k x (k or k+1)
    Rat det{1};
    bool singular = false;
};

Elim eliminate(const Basis& b, const GroupVec* rhs) {
    const int k = b.dim();
    Elim el;
    el.m.assign(static_cast<size_t>(k), std::vector<Rat>(static_cast<size_t>(k + (rhs ? 1 : 0))));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) el.m[static_cast<size_t>(i)][static_cast<size_t>(j)] = b.vec(j)[i];
        if (rhs) el.m[static_cast<size_t>(i)][static_cast<size_t>(k)] = (*rhs)[i];
    }
    for (int col = 0; col < k; ++col) {
        int piv = -1;
        for (int row = col; row < k; ++row)
            if (el.m[static_cast<size_t>(row)][static_cast<size_t>(col)] != 0) { piv = row; break; }
        if (piv < 0) { el.singular = true; el.det = 0; return el; }
        if (piv != col) {
            std::swap(el.m[static_cast<size_t>(piv)], el.m[static_cast<size_t>(col)]);
            el.det = -el.det;
        }
        const Rat p = el.m[static_cast<size_t>(col)][static_cast<size_t>(col)];
        el.det *= p;
        for (int row = 0; row < k; ++row) {
            if (row == col) continue;
            Rat f = el.m[static_cast<size_t>(row)][static_cast<size_t>(col)] / p;
            if (f == 0) continue;
            for (size_t j = static_cast<size_t>(col); j < el.m[static_cast<size_t>(row)].size(); ++j)
                el.m[static_cast<size_t>(row)][j] -= f * el.m[static_cast<size_t>(col)][j];
        }
    }
    return el;
}

} // namespace

Rat Basis::det() const {
    // During construction vecs_ are set before det() is called, so this is safe.
    const int k = dim();
    Elim el;
    el.m.assign(static_cast<size_t>(k), std::vector<Rat>(static_cast<size_t>(k)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) el.m[static_cast<size_t>(i)][static_cast<size_t>(j)] = vecs_[static_cast<size_t>(j)][i];
    el.det = 1;
    for (int col = 0; col < k; ++col) {
        int piv = -1;
        for (int row = col; row < k; ++row)
            if (el.m[static_cast<size_t>(row)][static_cast<size_t>(col)] != 0) { piv = row; break; }
        if (piv < 0) return Rat(0);
        if (piv != col) {
            std::swap(el.m[static_cast<size_t>(piv)], el.m[static_cast<size_t>(col)]);
            el.det = -el.det;
        }
        const Rat p = el.m[static_cast<size_t>(col)][static_cast<size_t>(col)];
        el.det *= p;
        for (int row = col + 1; row < k; ++row) {
            Rat f = el.m[static_cast<size_t>(row)][static_cast<size_t>(col)] / p;
            if (f == 0) continue;
            for (size_t j = static_cast<size_t>(col); j < static_cast<size_t>(k); ++j)
                el.m[static_cast<size_t>(row)][j] -= f * el.m[static_cast<size_t>(col)][j];
        }
    }
    return el.det;
}

std::vector<Rat> Basis::coords_of(const GroupVec& g) const {
    if (g.dim() != dim()) throw math_error("coords_of: dimension mismatch");
    Elim el = eliminate(*this, &g);
    if (el.singular) throw math_error("coords_of: singular basis");
    const int k = dim();
    std::vector<Rat> u(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i)
        u[static_cast<size_t>(i)] =
            el.m[static_cast<size_t>(i)][static_cast<size_t>(k)] / el.m[static_cast<size_t>(i)][static_cast<size_t>(i)];
    return u;
}

bool Basis::contains(const GroupVec& g) const {
    for (const auto& c : coords_of(g))
        if (!is_integer(c)) return false;
    return true;
}

bool Basis::operator==(const Basis& o) const { return level_ == o.level_ && vecs_ == o.vecs_; }

Basis augment_basis(const Basis& b, const LevelLedger& lg) {
    const int k = b.dim();
    if (lg.dim() != k) throw math_error("augment_basis: dimension mismatch");
    std::vector<GroupVec> out;
    out.reserve(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) {
        // Column j of Q: diagonal d_j/e_j, rows m > j carry ell_j eprime_j h_m/e_m.
        GroupVec v = b.vec(j) * make_rat(lg.d[static_cast<size_t>(j)], lg.e[static_cast<size_t>(j)]);
        for (int m = j + 1; m < k; ++m) {
            Rat q = Rat(lg.ell[static_cast<size_t>(j)] * lg.eprime[static_cast<size_t>(j)]) *
                    make_rat(lg.h[static_cast<size_t>(m)], lg.e[static_cast<size_t>(m)]);
            if (q != 0) v = v + b.vec(m) * q;
        }
        out.push_back(std::move(v));
    }
    return Basis(std::move(out), b.level() + 1);
}

bool membership(const Basis& b, const GroupVec& gamma) { return b.contains(gamma); }

} // namespace om

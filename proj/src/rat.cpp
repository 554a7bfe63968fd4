#include "om/rat.hpp"

namespace om {

Int rat_floor(const Rat& q) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return f;
}

std::string int_str(const Int& n) { return n.get_str(); }

std::string rat_str(const Rat& q) {
    if (is_integer(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw math_error("parse_rat: empty string");
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw math_error("parse_rat: bad rational '" + s + "'");
    if (q.get_den() == 0) throw math_error("parse_rat: zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

} // namespace om

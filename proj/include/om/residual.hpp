#pragma once

#include "om/chain.hpp"

namespace om {

/// The gamma_r-component data of f together with its residual polynomial
/// R_r(f) over the top tower level kappa_r.
struct ResidualResult {
    Int s;         // s_r(f): left endpoint abscissa of the component
    Int sprime;    // s'_r(f): right endpoint abscissa
    GroupVec u;    // u_r(f): left endpoint ordinate; u + s*gamma_r = mu(f)
    TowerPoly poly; // R_r(f), with poly(0) != 0
    long d;        // deg(poly) = (sprime - s)/e_r
};

/// Residual polynomial operator. Coefficients are computed by the structural
/// recursion over chain levels (no graded-algebra object is ever formed):
/// at depth 0 the coefficient residual of a is res(a / pi_0^{v(a)}); at
/// depth r > 0 it is eps_{r-1}(a) * R_{r-1}(a)(z_{r-1}). Coefficients whose
/// cloud point lies strictly above the polygon are exactly zero.
ResidualResult residual(const Chain& c, const Poly& f);

/// The coefficient residual above, for deg(a) < m_r (equals the constant
/// R_r(a) of the single-point component of a).
TowerElem coeff_residual(const Chain& c, const Poly& a);

/// eps_i(a) = z_i^(Lprime_i s_i(a) - L_i(u_i(a))) in kappa_{i+1}, 0 <= i < r.
/// Exponent integrality is asserted; a fractional exponent signals an
/// unattainable value (possible only in k > 1 configurations).
TowerElem epsilon(const Chain& c, int i, const Poly& a);

/// R_r(a) of a nonzero constant via the product formula
/// z_{r-1}^(-L_{r-1}(alpha)) ... z_0^(-L_0(alpha)) * res(a/pi_0^alpha),
/// alpha = v(a). An independent route to the recursion for constants.
TowerElem residual_const(const Chain& c, const Rat& a);

/// Inverse of coeff_residual: a polynomial a with deg(a) < m_r, mu(a) = u and
/// coefficient residual xi. The depth-0 canonical lift is the least
/// nonnegative representative times pi_0^v.
Poly lift_element(const Chain& c, const TowerElem& xi, const GroupVec& u);

/// Inverse of the full operator: f with s_r(f) = s, u_r(f) = u, R_r(f) = psi
/// (psi(0) != 0). Monic with top term phi_r^(s + d e_r) when psi is monic and
/// u = d h_r - s... (see lift_key for the normalized use).
Poly lift_poly(const Chain& c, const TowerPoly& psi, const Int& s, const GroupVec& u);

/// Monic key polynomial phi with s_r(phi) = 0, R_r(phi) = psi and
/// deg(phi) = e_r m_r deg(psi), for monic irreducible psi with psi(0) != 0.
Poly lift_key(const Chain& c, const TowerPoly& psi);

} // namespace om

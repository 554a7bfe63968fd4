#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "om/residual.hpp"

namespace om {

/// One leaf of the OM tree: a branch whose residual factor has multiplicity
/// one (or whose key polynomial divides the input exactly). Corresponds to
/// one irreducible factor of the input over Q_p with invariants (e, fdeg).
struct OMLeaf {
    Chain chain;         // the chain whose top level is the side that closed the branch
    GroupVec side_gamma; // gamma of that side
    TowerPoly psi;       // multiplicity-one residual factor ("y" for exact divisors)
    bool exact = false;  // phi divides the input in Q[x]
    Poly phi_approx;     // monic approximation to the p-adic factor
    GroupVec mu_f;       // value of the input under the leaf valuation (quality)
    Int e;               // ramification index of the factor
    long fdeg = 1;       // residual degree of the factor
    int depth = 0;       // chain depth r
};

struct OMTree {
    Poly input;
    Prime p;
    int max_depth;
    std::uint64_t seed;
    std::vector<OMLeaf> leaves;              // canonically ordered
    std::vector<std::string> trace;          // branch events, in discovery order
};

/// Factors a monic squarefree f with p-integral coefficients over Q_p by
/// iterating Newton polygons of phi-expansions and residual factorization:
/// multiplicity-one residual factors close branches, repeated ones are
/// lifted to the next key polynomial (augmenting the chain, or refining it
/// when the degree does not grow). Sides are processed by increasing slope
/// and residual factors in a fixed coefficient order, so the trace is
/// deterministic given (f, p, seed).
OMTree om_factor(const Poly& f, const Prime& p, int max_depth = 32, std::uint64_t seed = 0);

/// Defectless certificate: sum of e*fdeg over the leaves equals deg(f).
bool certify(const OMTree& t);

} // namespace om

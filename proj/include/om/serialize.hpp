#pragma once

#include <json.hpp>

#include "om/factorizer.hpp"

namespace om {

using ordered_json = nlohmann::ordered_json;

/// Canonical polynomial form: array of coefficient strings, index = degree.
ordered_json poly_to_json(const Poly& f);
Poly poly_from_json(const ordered_json& j);

/// {"p":2,"levels":[{"phi":"x^2+x+1","gamma":["1"],"e":1,"f":2,"h":["1"]},...]}
/// ("f" only on levels that have a successor). Round-trips exactly; "phi" is
/// accepted on input either as term text or as the coefficient array.
ordered_json chain_to_json(const Chain& c);

/// Rebuilds a chain by depth-zero construction plus augmentations,
/// re-deriving ledgers and the residue tower; stored e/f/h fields are
/// verified against the recomputed ones.
Chain chain_from_json(const ordered_json& j);

/// {"vertices": [[s, ["u1","u2",...]], ...]}
ordered_json polygon_to_json(const Polygon& n);

ordered_json residual_to_json(const Chain& c, const ResidualResult& rr);

ordered_json leaf_to_json(const OMLeaf& lf);

/// Full tree: {"p":..., "f":"...", "leaves":[...], "certified":true}
ordered_json tree_to_json(const OMTree& t, bool include_trace = false);

/// Serializable per-leaf summary including the chain itself.
ordered_json leaf_report(const OMLeaf& lf);

} // namespace om

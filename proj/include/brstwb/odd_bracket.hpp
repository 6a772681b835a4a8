#pragma once

#include "supoly.hpp"

namespace brstwb {

// Darboux odd bracket over a roster whose pairs couple an even or odd position with a partner
// of opposite parity: (F,G) = sum F d<_dual d>_pos G - F d<_pos d>_dual G.
inline SuPoly odd_bracket(const SuPoly& f, const SuPoly& g) {
    SuPoly out(f.roster() ? f.roster() : g.roster());
    out.adopt(g);
    if (f.is_zero() || g.is_zero()) return out;
    const Roster& r = *out.roster();
    for (const auto& [pos, dual] : r.pairs()) {
        VarKey q = make_key(pos, 0);
        VarKey p = make_key(dual, 0);
        out += derive_right(f, p) * derive_left(g, q);
        out -= derive_right(f, q) * derive_left(g, p);
    }
    return out;
}

} // namespace brstwb

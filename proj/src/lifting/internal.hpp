#pragma once

#include "simpfib/lifting.hpp"

namespace simpfib::detail {

/// Lambda^n_n problems with last edge f, in the orientation of the search;
/// no notes, cap not recorded.
Certificate cartesian_edge_in(LiftingSearch& search, const Simplex& f, int cap);

/// Cocartesian check of an edge of p, given a search over opposite_map(p).
Certificate cocartesian_edge_with(LiftingSearch& opposite_search, const SMap& p, const Simplex& f, int cap);

}  // namespace simpfib::detail

#pragma once

#include <string>

#include "kinetic/phase_space.hpp"

namespace kinetic {

/// Column header of a snapshot, e.g. `x,rho,ux,T,qx,P,E,Ma`.
std::string snapshot_header(int space_dims, int velocity_dims);

/// CSV snapshot: a `# t=<time> scenario=<name>` line, the column header, then one row per
/// cell in storage order (x fastest). Numbers use 17 significant digits.
void write_snapshot(const std::string& path, double time, const std::string& scenario,
                    const SpatialGrid& space, const MomentField& moments);

}  // namespace kinetic

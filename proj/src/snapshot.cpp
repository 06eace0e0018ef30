#include "kinetic/snapshot.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace kinetic {

std::string snapshot_header(int space_dims, int velocity_dims) {
  std::string h = space_dims == 2 ? "x,y,rho" : "x,rho";
  h += velocity_dims == 2 ? ",ux,uy,T,qx,qy" : ",ux,T,qx";
  return h + ",P,E,Ma";
}

void write_snapshot(const std::string& path, double time, const std::string& scenario,
                    const SpatialGrid& space, const MomentField& m) {
  std::FILE* out = std::fopen(path.c_str(), "wb");
  if (!out) throw std::runtime_error("cannot open " + path + ": " + std::strerror(errno));
  const int vd = static_cast<int>(m.u.rows());
  std::fprintf(out, "# t=%.17g scenario=%s\n%s\n", time, scenario.c_str(),
               snapshot_header(space.dims(), vd).c_str());
  for (int iy = 0; iy < space.count(1); ++iy) {
    for (int ix = 0; ix < space.count(0); ++ix) {
      const int c = space.index(ix, iy);
      std::fprintf(out, "%.17g", space.center(0, ix));
      if (space.dims() == 2) std::fprintf(out, ",%.17g", space.center(1, iy));
      std::fprintf(out, ",%.17g", m.rho(c));
      for (int d = 0; d < vd; ++d) std::fprintf(out, ",%.17g", m.u(d, c));
      std::fprintf(out, ",%.17g", m.T(c));
      for (int d = 0; d < vd; ++d) std::fprintf(out, ",%.17g", m.q(d, c));
      std::fprintf(out, ",%.17g,%.17g,%.17g\n", m.P(c), m.E(c), m.Ma(c));
    }
  }
  const bool failed = std::ferror(out) != 0;
  if (std::fclose(out) != 0 || failed) throw std::runtime_error("write failed: " + path);
}

}  // namespace kinetic

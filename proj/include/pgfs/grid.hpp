#ifndef PGFS_GRID_HPP
#define PGFS_GRID_HPP

#include <sstream>

#include "pgfs/errors.hpp"
#include "pgfs/surface.hpp"

namespace pgfs {

/// A rectangular sampling grid: nx nodes across x, nz across z, endpoints
/// included.  Enumeration order is always row-major with x outermost.
struct GridSpec {
    int nx = 101;
    int nz = 101;
    DomainRect rect;

    void validate() const {
        rect.validate();
        if (nx < 2 || nz < 2)
            throw ConstraintError("grid needs nx >= 2 and nz >= 2");
        if (static_cast<long long>(nx) * nz > 10'000'000LL) {
            std::ostringstream os;
            os << "grid " << nx << "x" << nz << " exceeds the 10^7 node guard";
            throw ConstraintError(os.str());
        }
    }

    // Endpoints are returned exactly so boundary nodes never leave the
    // domain by a rounding ulp.
    double x_at(int i) const {
        if (i == 0) return rect.x_min;
        if (i == nx - 1) return rect.x_max;
        return rect.x_min + (rect.x_max - rect.x_min) * i / (nx - 1);
    }
    double z_at(int j) const {
        if (j == 0) return rect.z_min;
        if (j == nz - 1) return rect.z_max;
        return rect.z_min + (rect.z_max - rect.z_min) * j / (nz - 1);
    }
    long long node_count() const {
        return static_cast<long long>(nx) * nz;
    }
};

} // namespace pgfs

#endif // PGFS_GRID_HPP

#ifndef PGFS_MESH_HPP
#define PGFS_MESH_HPP

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "pgfs/curvature.hpp"
#include "pgfs/errors.hpp"
#include "pgfs/grid.hpp"
#include "pgfs/surface.hpp"

namespace pgfs {

/// Shortest round-trip decimal representation (never more than 17
/// significant digits); the basis of byte-deterministic file output.
inline std::string format_double(double v) {
    std::array<char, 32> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

struct MeshVertex {
    double x, y, z;
};

/// A sampled surface patch.  Vertices are in row-major order (x outer, z
/// inner); faces are triangles wound counter-clockwise as seen from +y.
/// Scalar channels hold NaN where a quantity is undefined.
struct SurfaceMesh {
    int nx = 0, nz = 0;
    std::vector<MeshVertex> vertices;
    std::vector<std::array<int, 3>> faces; // 0-based indices
    std::vector<double> gauss;             // per vertex, present if requested
    std::vector<double> mean;              // per vertex, present if requested
    std::vector<CausalClass> d_class;      // sign class of D^2, always present
};

/// Sample the surface over the grid.  With `with_curvature`, K and H are
/// attached per vertex (NaN markers where undefined).
inline SurfaceMesh mesh(const FactorableSurface& s, const GridSpec& grid,
                        bool with_curvature = false) {
    grid.validate();
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();

    SurfaceMesh m;
    m.nx = grid.nx;
    m.nz = grid.nz;
    m.vertices.reserve(static_cast<std::size_t>(grid.node_count()));
    m.d_class.reserve(m.vertices.capacity());
    if (with_curvature) {
        m.gauss.reserve(m.vertices.capacity());
        m.mean.reserve(m.vertices.capacity());
    }

    for (int i = 0; i < grid.nx; ++i) {
        const double x = grid.x_at(i);
        for (int j = 0; j < grid.nz; ++j) {
            const double z = grid.z_at(j);
            SurfaceJet jet;
            try {
                jet = s.partials(x, z);
            } catch (const DomainError& e) {
                std::ostringstream os;
                os << "mesh node (" << i << ", " << j << "): " << e.what();
                throw DomainError(os.str());
            }
            m.vertices.push_back({jet.pos.x1, jet.pos.x2, jet.pos.x3});
            const double d2 = detail::d_squared(jet);
            const CausalClass cls = detail::normal_class_of(d2);
            m.d_class.push_back(cls);
            if (with_curvature) {
                m.gauss.push_back(cls == CausalClass::Lightlike ? nan
                                                                : gauss_closed(jet));
                m.mean.push_back(cls == CausalClass::Spacelike ? mean_closed(jet)
                                                               : nan);
            }
        }
    }

    m.faces.reserve(2u * (grid.nx - 1) * (grid.nz - 1));
    const auto idx = [nz = grid.nz](int i, int j) { return i * nz + j; };
    for (int i = 0; i + 1 < grid.nx; ++i) {
        for (int j = 0; j + 1 < grid.nz; ++j) {
            m.faces.push_back({idx(i, j), idx(i + 1, j + 1), idx(i + 1, j)});
            m.faces.push_back({idx(i, j), idx(i, j + 1), idx(i + 1, j + 1)});
        }
    }
    return m;
}

namespace detail {

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

inline void finish_out(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

} // namespace detail

/// Wavefront OBJ: `v x y z` records then 1-based `f i j k` records.  OBJ has
/// no scalar channel, so curvature goes to the CSV sidecar.
inline void write_obj(const SurfaceMesh& m, const std::string& path) {
    std::ofstream out = detail::open_out(path);
    for (const auto& v : m.vertices)
        out << "v " << format_double(v.x) << ' ' << format_double(v.y) << ' '
            << format_double(v.z) << '\n';
    for (const auto& f : m.faces)
        out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    detail::finish_out(out, path);
}

/// CSV with header x,z,y,K,H,Dclass, one row per vertex in mesh order.
/// Undefined scalars become empty fields; numbers round-trip bit-exactly.
inline void write_csv(const SurfaceMesh& m, const std::string& path) {
    std::ofstream out = detail::open_out(path);
    out << "x,z,y,K,H,Dclass\n";
    for (std::size_t n = 0; n < m.vertices.size(); ++n) {
        const auto& v = m.vertices[n];
        out << format_double(v.x) << ',' << format_double(v.z) << ','
            << format_double(v.y) << ',';
        if (n < m.gauss.size() && !std::isnan(m.gauss[n]))
            out << format_double(m.gauss[n]);
        out << ',';
        if (n < m.mean.size() && !std::isnan(m.mean[n]))
            out << format_double(m.mean[n]);
        out << ',' << to_string(m.d_class[n]) << '\n';
    }
    detail::finish_out(out, path);
}

} // namespace pgfs

#endif // PGFS_MESH_HPP

#ifndef PGFS_PG_VEC_HPP
#define PGFS_PG_VEC_HPP

#include <cmath>
#include <string_view>

namespace pgfs {

/// A vector of the pseudo-Galilean 3-space.  The first component lies in
/// the non-isotropic (absolute) direction; the remaining two span the
/// isotropic plane, which carries a (+,-) signature form.
struct PGVec3 {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    friend constexpr PGVec3 operator+(const PGVec3& a, const PGVec3& b) {
        return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
    }
    friend constexpr PGVec3 operator-(const PGVec3& a, const PGVec3& b) {
        return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
    }
    friend constexpr PGVec3 operator*(double s, const PGVec3& v) {
        return {s * v.x1, s * v.x2, s * v.x3};
    }
    friend constexpr PGVec3 operator/(const PGVec3& v, double s) {
        return {v.x1 / s, v.x2 / s, v.x3 / s};
    }
    friend constexpr bool operator==(const PGVec3&, const PGVec3&) = default;
};

enum class CausalClass { NonIsotropic, Spacelike, Timelike, Lightlike };

constexpr std::string_view to_string(CausalClass c) {
    switch (c) {
        case CausalClass::NonIsotropic: return "non-isotropic";
        case CausalClass::Spacelike:    return "spacelike";
        case CausalClass::Timelike:     return "timelike";
        case CausalClass::Lightlike:    return "lightlike";
    }
    return "?";
}

/// Pseudo-Galilean scalar product.  The metric is discontinuous by
/// construction: the branch test compares x1 against zero exactly, never
/// with a tolerance.
constexpr double pg_dot(const PGVec3& a, const PGVec3& b) {
    if (a.x1 != 0.0 || b.x1 != 0.0) return a.x1 * b.x1;
    return a.x2 * b.x2 - a.x3 * b.x3;
}

inline double pg_norm(const PGVec3& v) {
    return std::sqrt(std::fabs(pg_dot(v, v)));
}

/// Distance between points: the absolute gap along the non-isotropic
/// direction when it is nonzero, the isotropic-plane pseudo-distance
/// otherwise.
inline double pg_distance(const PGVec3& p, const PGVec3& q) {
    if (p.x1 != q.x1) return std::fabs(q.x1 - p.x1);
    const double d2 = q.x2 - p.x2;
    const double d3 = q.x3 - p.x3;
    return std::sqrt(std::fabs(d2 * d2 - d3 * d3));
}

/// Pseudo-Galilean cross product: the formal determinant with basis row
/// (0, -e2, e3) over the two argument rows.  The result is always
/// isotropic (first component exactly zero).
constexpr PGVec3 pg_cross(const PGVec3& a, const PGVec3& b) {
    return {0.0, a.x1 * b.x3 - a.x3 * b.x1, a.x1 * b.x2 - a.x2 * b.x1};
}

/// Causal classification.  Isotropic vectors split by the sign of
/// x2^2 - x3^2; the zero vector counts as lightlike.
constexpr CausalClass classify(const PGVec3& v) {
    if (v.x1 != 0.0) return CausalClass::NonIsotropic;
    const double q = v.x2 * v.x2 - v.x3 * v.x3;
    if (q > 0.0) return CausalClass::Spacelike;
    if (q < 0.0) return CausalClass::Timelike;
    return CausalClass::Lightlike;
}

} // namespace pgfs

#endif // PGFS_PG_VEC_HPP

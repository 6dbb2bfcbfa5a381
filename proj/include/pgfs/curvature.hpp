#ifndef PGFS_CURVATURE_HPP
#define PGFS_CURVATURE_HPP

#include <cmath>
#include <optional>
#include <sstream>

#include "pgfs/errors.hpp"
#include "pgfs/pg_vec.hpp"
#include "pgfs/surface.hpp"

namespace pgfs {

/// Points with |1 - (f g')^2| below this are treated as lightlike-degenerate:
/// division by D^3 amplifies roundoff catastrophically near the cone.
inline constexpr double lightlike_eps = 1e-12;

/// First and second fundamental form coefficients at a point, with the
/// degeneracy function D and the unit (spacelike) normal.  Only produced
/// where D is real and positive.
struct FormBundle {
    double E, F, G;
    double L, M, N;
    double D;
    PGVec3 normal;
};

/// Gaussian and mean curvature from the general formulas
///   K = (L N - M^2) / (E G - F^2),  H = (E N + G L - 2 F M) / (2 |E G - F^2|).
struct GeneralCurvature {
    double K;
    double H;
};

/// Curvature data at a point.  K is defined whenever the normal is not
/// lightlike; H additionally needs a spacelike normal (real D).
struct CurvaturePoint {
    double K;
    std::optional<double> H;
    double omega;
    CausalClass normal_class;
};

namespace detail {

/// Exact product: hi + lo == a * b with no rounding (fma splitting).
inline void two_prod(double a, double b, double& hi, double& lo) {
    hi = a * b;
    lo = std::fma(a, b, -hi);
}

/// The Gaussian-curvature numerator f'^2 g'^2 - f'' f g'' g, evaluated with
/// compensated products.  The two terms cancel exactly for every flat family,
/// and near the cone the quotient amplifies the cancellation by 1/D^4; the
/// compensation keeps the error at the scale of the already-rounded inputs.
inline double gauss_numerator(const SurfaceJet& j) {
    double p_hi, p_lo;
    two_prod(j.f.d1, j.g.d1, p_hi, p_lo); // p = f' g', exactly
    double a_hi, a_lo;
    two_prod(p_hi, p_hi, a_hi, a_lo);
    const double a_rest = 2.0 * p_hi * p_lo + p_lo * p_lo; // p^2 - p_hi^2
    double c_hi, c_lo;
    two_prod(j.f.d2, j.f.v, c_hi, c_lo); // f'' f, exactly
    double d_hi, d_lo;
    two_prod(j.g.d2, j.g.v, d_hi, d_lo); // g'' g, exactly
    double b_hi, b_lo;
    two_prod(c_hi, d_hi, b_hi, b_lo);
    const double b_rest = c_hi * d_lo + c_lo * d_hi + c_lo * d_lo;
    return ((a_hi - b_hi) + (a_lo - b_lo)) + (a_rest - b_rest);
}

inline double fg_prime(const SurfaceJet& j) { return j.f.v * j.g.d1; }

/// D^2 = 1 - (f g')^2, the discriminant of the normal's causal character.
inline double d_squared(const SurfaceJet& j) {
    const double w = fg_prime(j);
    return 1.0 - w * w;
}

inline CausalClass normal_class_of(double d2) {
    if (std::fabs(d2) < lightlike_eps) return CausalClass::Lightlike;
    return d2 < 0.0 ? CausalClass::Timelike : CausalClass::Spacelike;
}

[[noreturn]] inline void throw_lightlike(const SurfaceJet& j) {
    std::ostringstream os;
    os << "lightlike surface normal at (x, z) = (" << j.pos.x1 << ", "
       << j.pos.x3 << "): (f g')^2 = 1, D = 0";
    throw LightlikeNormalError(os.str());
}

[[noreturn]] inline void throw_timelike(const SurfaceJet& j) {
    std::ostringstream os;
    os << "timelike surface normal at (x, z) = (" << j.pos.x1 << ", "
       << j.pos.x3 << "): (f g')^2 > 1, D not real";
    throw TimelikeNormalError(os.str());
}

} // namespace detail

/// Fundamental forms via the metric machinery: E, F, G from pg_dot of the
/// tangents, the normal from pg_cross, L, M, N by projecting the second
/// partials onto the unit normal.  This is the route the general-formula
/// oracle rides; the closed forms below never touch it.
inline FormBundle form_bundle(const SurfaceJet& j) {
    const PGVec3 cross = pg_cross(j.phi_x, j.phi_z); // = (0, 1, f g')
    const double d2 = pg_dot(cross, cross);          // = 1 - (f g')^2
    const CausalClass cls = detail::normal_class_of(d2);
    if (cls == CausalClass::Lightlike) detail::throw_lightlike(j);
    if (cls == CausalClass::Timelike) detail::throw_timelike(j);
    FormBundle b;
    b.E = pg_dot(j.phi_x, j.phi_x);
    b.F = pg_dot(j.phi_x, j.phi_z);
    b.G = pg_dot(j.phi_z, j.phi_z);
    b.D = std::sqrt(d2);
    b.normal = cross / b.D;
    b.L = pg_dot(j.phi_xx, b.normal);
    b.M = pg_dot(j.phi_xz, b.normal);
    b.N = pg_dot(j.phi_zz, b.normal);
    return b;
}

inline FormBundle form_bundle(const FactorableSurface& s, double x, double z) {
    return form_bundle(s.partials(x, z));
}

/// Gaussian curvature in closed form:
///   K = (f'^2 g'^2 - f'' f g'' g) / (1 - (f g')^2)^2.
/// Defined for timelike normals as well (the denominator is a square).
inline double gauss_closed(const SurfaceJet& j) {
    const double d2 = detail::d_squared(j);
    if (detail::normal_class_of(d2) == CausalClass::Lightlike)
        detail::throw_lightlike(j);
    return detail::gauss_numerator(j) / (d2 * d2);
}

inline double gauss_closed(const FactorableSurface& s, double x, double z) {
    return gauss_closed(s.partials(x, z));
}

/// The six-term mean-curvature numerator
///   Omega = (1-a^2) f g'' - f'' g - 2 a f' g'
///         + f^2 f'' g'^2 g + 2 a f' f^2 g'^3 + a^2 f^3 g'^2 g''.
inline double omega(const SurfaceJet& j) {
    const double a = j.shear;
    const double f = j.f.v, f1 = j.f.d1, f2 = j.f.d2;
    const double g = j.g.v, g1 = j.g.d1, g2 = j.g.d2;
    const double f_sq = f * f;
    const double g1_sq = g1 * g1;
    return (1.0 - a * a) * (f * g2) - f2 * g - 2.0 * a * (f1 * g1) +
           f_sq * f2 * g1_sq * g + 2.0 * a * f1 * f_sq * (g1_sq * g1) +
           a * a * (f_sq * f) * g1_sq * g2;
}

inline double omega(const FactorableSurface& s, double x, double z) {
    return omega(s.partials(x, z));
}

/// Mean curvature in closed form: H = Omega / (2 (1 - (f g')^2)^{3/2}).
/// Requires a spacelike normal.
inline double mean_closed(const SurfaceJet& j) {
    const double d2 = detail::d_squared(j);
    const CausalClass cls = detail::normal_class_of(d2);
    if (cls == CausalClass::Lightlike) detail::throw_lightlike(j);
    if (cls == CausalClass::Timelike) detail::throw_timelike(j);
    return omega(j) / (2.0 * d2 * std::sqrt(d2));
}

inline double mean_closed(const FactorableSurface& s, double x, double z) {
    return mean_closed(s.partials(x, z));
}

/// K and H from the general formulas applied to a FormBundle.  Serves as
/// the independent oracle for gauss_closed / mean_closed.
inline GeneralCurvature curvature_general(const FormBundle& b) {
    const double det1 = b.E * b.G - b.F * b.F;
    return {(b.L * b.N - b.M * b.M) / det1,
            (b.E * b.N + b.G * b.L - 2.0 * b.F * b.M) / (2.0 * std::fabs(det1))};
}

inline GeneralCurvature curvature_general(const FactorableSurface& s, double x,
                                          double z) {
    return curvature_general(form_bundle(s.partials(x, z)));
}

/// The pointwise factor relating the two curvatures,
///   A = (D^3 (a^2 f g'' + 2 a f' g' + f'' g) - f g'' D) / (f'' f g'' g - f'^2 g'^2).
/// No normalization is applied to A; callers measure the actual ratio
/// H / (A K) and report it.
inline double relation_factor(const SurfaceJet& j) {
    const double d2 = detail::d_squared(j);
    const CausalClass cls = detail::normal_class_of(d2);
    if (cls == CausalClass::Lightlike) detail::throw_lightlike(j);
    if (cls == CausalClass::Timelike) detail::throw_timelike(j);
    const double a = j.shear;
    const double p = j.f.d1 * j.g.d1;
    const double q = (j.f.d2 * j.f.v) * (j.g.d2 * j.g.v);
    const double den = q - p * p;
    // Structural zeros and pure cancellation both mark a flat point.
    const double scale = std::fabs(q) + std::fabs(p * p);
    if (std::fabs(den) <= 1e-12 * scale) {
        std::ostringstream os;
        os << "curvature-relation denominator vanishes at (x, z) = ("
           << j.pos.x1 << ", " << j.pos.x3 << ") (flat point)";
        throw DegenerateRelationError(os.str());
    }
    const double d = std::sqrt(d2);
    const double shape = a * a * (j.f.v * j.g.d2) + 2.0 * a * (j.f.d1 * j.g.d1) +
                         j.f.d2 * j.g.v;
    return d * (d2 * shape - j.f.v * j.g.d2) / den;
}

inline double relation_factor(const FactorableSurface& s, double x, double z) {
    return relation_factor(s.partials(x, z));
}

/// Point evaluation for grid engines: K wherever the normal is not
/// lightlike, H only where it is spacelike.  Lightlike points throw.
inline CurvaturePoint curvature_point(const SurfaceJet& j) {
    const double d2 = detail::d_squared(j);
    const CausalClass cls = detail::normal_class_of(d2);
    if (cls == CausalClass::Lightlike) detail::throw_lightlike(j);
    CurvaturePoint p;
    p.normal_class = cls;
    p.K = gauss_closed(j);
    p.omega = omega(j);
    if (cls == CausalClass::Spacelike) p.H = mean_closed(j);
    return p;
}

inline CurvaturePoint curvature_point(const FactorableSurface& s, double x,
                                      double z) {
    return curvature_point(s.partials(x, z));
}

} // namespace pgfs

#endif // PGFS_CURVATURE_HPP

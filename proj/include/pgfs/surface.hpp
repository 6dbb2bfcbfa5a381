#ifndef PGFS_SURFACE_HPP
#define PGFS_SURFACE_HPP

#include <sstream>
#include <string>
#include <utility>

#include "pgfs/c2fn.hpp"
#include "pgfs/errors.hpp"
#include "pgfs/pg_vec.hpp"

namespace pgfs {

/// Rectangular parameter domain [x_min, x_max] x [z_min, z_max].
struct DomainRect {
    double x_min = -1.0, x_max = 1.0;
    double z_min = -1.0, z_max = 1.0;

    bool contains(double x, double z) const {
        return x >= x_min && x <= x_max && z >= z_min && z <= z_max;
    }
    void validate() const {
        if (!(x_min < x_max) || !(z_min < z_max))
            throw ConstraintError("domain rectangle must have strictly positive extents");
    }
};

/// Value and first/second derivatives of one factor at a point.
struct Jet2 {
    double v, d1, d2;
};

inline Jet2 jet(const C2Fn& fn, double t) {
    return {fn.eval(t), fn.d1(t), fn.d2(t)};
}

/// All surface partials at a point, as pseudo-Galilean vectors.
struct SurfaceJet {
    PGVec3 pos;
    PGVec3 phi_x, phi_z;
    PGVec3 phi_xx, phi_xz, phi_zz;
    Jet2 f, g;    // factor jets; g differentiated in its own argument v = z + a x
    double shear; // the surface's a
};

/// The affine factorable surface of the second kind:
///   (x, z) -> (x, f(x) * g(z + a x), z).
/// The shear constant a couples x into g's argument; a = 0 gives the plain
/// second-kind factorable surface and is admitted.
class FactorableSurface {
public:
    FactorableSurface(C2Fn f, C2Fn g, double a, DomainRect domain)
        : f_(std::move(f)), g_(std::move(g)), a_(a), domain_(domain) {
        domain_.validate();
        if (!std::isfinite(a_))
            throw ConstraintError("shear constant a must be finite");
        const Interval fv = f_.validity();
        if (!fv.contains_closed(domain_.x_min, domain_.x_max)) {
            std::ostringstream os;
            os << "f = " << f_.describe() << " is not defined on ["
               << domain_.x_min << ", " << domain_.x_max << "]";
            throw ConstraintError(os.str());
        }
        const auto [v_lo, v_hi] = v_range();
        const Interval gv = g_.validity();
        if (!gv.contains_closed(v_lo, v_hi)) {
            std::ostringstream os;
            os << "g = " << g_.describe() << " is not defined on the sheared range ["
               << v_lo << ", " << v_hi << "]";
            throw ConstraintError(os.str());
        }
    }

    const C2Fn& f() const { return f_; }
    const C2Fn& g() const { return g_; }
    double shear() const { return a_; }
    const DomainRect& domain() const { return domain_; }

    /// Range of v = z + a x over the domain rectangle.
    std::pair<double, double> v_range() const {
        const double c1 = domain_.z_min + a_ * domain_.x_min;
        const double c2 = domain_.z_min + a_ * domain_.x_max;
        const double c3 = domain_.z_max + a_ * domain_.x_min;
        const double c4 = domain_.z_max + a_ * domain_.x_max;
        return {std::min({c1, c2, c3, c4}), std::max({c1, c2, c3, c4})};
    }

    void require_in_domain(double x, double z) const {
        if (!domain_.contains(x, z)) {
            std::ostringstream os;
            os << "point (" << x << ", " << z << ") outside domain ["
               << domain_.x_min << ", " << domain_.x_max << "] x ["
               << domain_.z_min << ", " << domain_.z_max << "]";
            throw DomainError(os.str());
        }
    }

    PGVec3 position(double x, double z) const {
        require_in_domain(x, z);
        const double v = z + a_ * x;
        return {x, f_.eval(x) * g_.eval(v), z};
    }

    /// Position plus all first and second partials.  g is differentiated in
    /// its own argument; the chain-rule factors of a appear here and never
    /// inside C2Fn.
    SurfaceJet partials(double x, double z) const {
        require_in_domain(x, z);
        const double v = z + a_ * x;
        const Jet2 F = jet(f_, x);
        const Jet2 G = jet(g_, v);
        SurfaceJet j;
        j.f = F;
        j.g = G;
        j.shear = a_;
        j.pos = {x, F.v * G.v, z};
        j.phi_x = {1.0, F.d1 * G.v + a_ * (F.v * G.d1), 0.0};
        j.phi_z = {0.0, F.v * G.d1, 1.0};
        j.phi_xx = {0.0, F.d2 * G.v + 2.0 * a_ * (F.d1 * G.d1) + a_ * a_ * (F.v * G.d2), 0.0};
        j.phi_xz = {0.0, F.d1 * G.d1 + a_ * (F.v * G.d2), 0.0};
        j.phi_zz = {0.0, F.v * G.d2, 0.0};
        return j;
    }

    std::string describe() const {
        std::ostringstream os;
        os << "y(x,z) = f(x)*g(z + " << a_ << "*x),  f = " << f_.describe()
           << ",  g = " << g_.describe();
        return os.str();
    }

private:
    C2Fn f_, g_;
    double a_;
    DomainRect domain_;
};

} // namespace pgfs

#endif // PGFS_SURFACE_HPP

#ifndef PGFS_C2FN_HPP
#define PGFS_C2FN_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pgfs/errors.hpp"

namespace pgfs {

/// Open interval of the real line, (lo, hi) with infinite defaults.
/// Used to record where a closed-form expression is defined.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double t) const { return t > lo && t < hi; }
    /// Whole closed interval [a, b] lies strictly inside.
    bool contains_closed(double a, double b) const { return a > lo && b < hi; }
    Interval intersect(const Interval& o) const {
        return {std::max(lo, o.lo), std::min(hi, o.hi)};
    }
    bool empty() const { return !(lo < hi); }
};

namespace detail {

struct FnNode {
    virtual ~FnNode() = default;
    virtual double eval(double t) const = 0;
    virtual double d1(double t) const = 0;
    virtual double d2(double t) const = 0;
    virtual Interval validity() const { return {}; }
    virtual void describe(std::ostream& os) const = 0;
};

using FnPtr = std::shared_ptr<const FnNode>;

struct ConstantNode final : FnNode {
    double c;
    explicit ConstantNode(double c_) : c(c_) {}
    double eval(double) const override { return c; }
    double d1(double) const override { return 0.0; }
    double d2(double) const override { return 0.0; }
    void describe(std::ostream& os) const override { os << c; }
};

struct LinearNode final : FnNode {
    double m, b;
    LinearNode(double m_, double b_) : m(m_), b(b_) {}
    double eval(double t) const override { return m * t + b; }
    double d1(double) const override { return m; }
    double d2(double) const override { return 0.0; }
    void describe(std::ostream& os) const override {
        os << "(" << m << "*t + " << b << ")";
    }
};

struct QuadraticNode final : FnNode {
    double p, q, r;
    QuadraticNode(double p_, double q_, double r_) : p(p_), q(q_), r(r_) {}
    double eval(double t) const override { return (p * t + q) * t + r; }
    double d1(double t) const override { return 2.0 * p * t + q; }
    double d2(double) const override { return 2.0 * p; }
    void describe(std::ostream& os) const override {
        os << "(" << p << "*t^2 + " << q << "*t + " << r << ")";
    }
};

struct ExpNode final : FnNode {
    double c, k; // c * e^{k t}
    ExpNode(double c_, double k_) : c(c_), k(k_) {}
    double eval(double t) const override { return c * std::exp(k * t); }
    double d1(double t) const override { return k * eval(t); }
    double d2(double t) const override { return k * d1(t); }
    void describe(std::ostream& os) const override {
        os << c << "*exp(" << k << "*t)";
    }
};

struct TanhNode final : FnNode {
    double s, k, b; // s * tanh(k t + b)
    TanhNode(double s_, double k_, double b_) : s(s_), k(k_), b(b_) {}
    double eval(double t) const override { return s * std::tanh(k * t + b); }
    double d1(double t) const override {
        const double th = std::tanh(k * t + b);
        return s * (k * (1.0 - th * th)); // sech^2 via 1 - tanh^2
    }
    double d2(double t) const override {
        const double th = std::tanh(k * t + b);
        return -2.0 * s * k * k * (1.0 - th * th) * th;
    }
    void describe(std::ostream& os) const override {
        os << s << "*tanh(" << k << "*t + " << b << ")";
    }
};

struct PowerNode final : FnNode {
    double m, b, e; // (m t + b)^e, base required positive
    PowerNode(double m_, double b_, double e_) : m(m_), b(b_), e(e_) {}

    double base(double t) const {
        const double p = m * t + b;
        if (!(p > 0.0)) {
            std::ostringstream os;
            os << "power base " << m << "*t + " << b << " = " << p
               << " not positive at t = " << t;
            throw DomainError(os.str());
        }
        return p;
    }
    double eval(double t) const override { return std::pow(base(t), e); }
    double d1(double t) const override {
        return e * m * std::pow(base(t), e - 1.0);
    }
    double d2(double t) const override {
        return e * (e - 1.0) * m * m * std::pow(base(t), e - 2.0);
    }
    Interval validity() const override {
        if (m > 0.0) return {-b / m, std::numeric_limits<double>::infinity()};
        if (m < 0.0) return {-std::numeric_limits<double>::infinity(), -b / m};
        if (b > 0.0) return {};
        return {std::numeric_limits<double>::infinity(),
                -std::numeric_limits<double>::infinity()}; // empty
    }
    void describe(std::ostream& os) const override {
        os << "(" << m << "*t + " << b << ")^" << e;
    }
};

struct SumNode final : FnNode {
    std::vector<FnPtr> terms;
    explicit SumNode(std::vector<FnPtr> ts) : terms(std::move(ts)) {}
    double eval(double t) const override {
        double s = 0.0;
        for (const auto& f : terms) s += f->eval(t);
        return s;
    }
    double d1(double t) const override {
        double s = 0.0;
        for (const auto& f : terms) s += f->d1(t);
        return s;
    }
    double d2(double t) const override {
        double s = 0.0;
        for (const auto& f : terms) s += f->d2(t);
        return s;
    }
    Interval validity() const override {
        Interval v;
        for (const auto& f : terms) v = v.intersect(f->validity());
        return v;
    }
    void describe(std::ostream& os) const override {
        os << "(";
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (i) os << " + ";
            terms[i]->describe(os);
        }
        os << ")";
    }
};

struct ProductNode final : FnNode {
    FnPtr u, v;
    ProductNode(FnPtr u_, FnPtr v_) : u(std::move(u_)), v(std::move(v_)) {}
    double eval(double t) const override { return u->eval(t) * v->eval(t); }
    double d1(double t) const override {
        return u->d1(t) * v->eval(t) + u->eval(t) * v->d1(t);
    }
    double d2(double t) const override {
        return u->d2(t) * v->eval(t) + 2.0 * u->d1(t) * v->d1(t) +
               u->eval(t) * v->d2(t);
    }
    Interval validity() const override {
        return u->validity().intersect(v->validity());
    }
    void describe(std::ostream& os) const override {
        os << "(";
        u->describe(os);
        os << " * ";
        v->describe(os);
        os << ")";
    }
};

struct ScaleNode final : FnNode {
    double c;
    FnPtr f;
    ScaleNode(double c_, FnPtr f_) : c(c_), f(std::move(f_)) {}
    double eval(double t) const override { return c * f->eval(t); }
    double d1(double t) const override { return c * f->d1(t); }
    double d2(double t) const override { return c * f->d2(t); }
    Interval validity() const override { return f->validity(); }
    void describe(std::ostream& os) const override {
        os << c << "*";
        f->describe(os);
    }
};

} // namespace detail

/// A closed-form scalar function with exact value, first and second
/// derivative at any point of its domain of validity.  Derivatives are
/// structural, never numeric; finite differences exist only as a test
/// oracle (see fd_check).  Immutable and cheap to copy.
class C2Fn {
public:
    C2Fn() : node_(std::make_shared<detail::ConstantNode>(0.0)) {}

    static C2Fn constant(double c) {
        return C2Fn(std::make_shared<detail::ConstantNode>(c));
    }
    static C2Fn linear(double m, double b) {
        return C2Fn(std::make_shared<detail::LinearNode>(m, b));
    }
    static C2Fn quadratic(double p, double q, double r) {
        return C2Fn(std::make_shared<detail::QuadraticNode>(p, q, r));
    }
    /// c * e^{k t}
    static C2Fn exponential(double c, double k) {
        return C2Fn(std::make_shared<detail::ExpNode>(c, k));
    }
    /// s * tanh(k t + b)
    static C2Fn tanh_fn(double s, double k, double b) {
        return C2Fn(std::make_shared<detail::TanhNode>(s, k, b));
    }
    /// (m t + b)^e, defined where the base is positive.
    static C2Fn power(double m, double b, double e) {
        return C2Fn(std::make_shared<detail::PowerNode>(m, b, e));
    }
    static C2Fn sum(std::vector<C2Fn> terms) {
        std::vector<detail::FnPtr> ns;
        ns.reserve(terms.size());
        for (auto& t : terms) ns.push_back(t.node_);
        return C2Fn(std::make_shared<detail::SumNode>(std::move(ns)));
    }
    static C2Fn product(const C2Fn& u, const C2Fn& v) {
        return C2Fn(std::make_shared<detail::ProductNode>(u.node_, v.node_));
    }
    static C2Fn scale(double c, const C2Fn& f) {
        return C2Fn(std::make_shared<detail::ScaleNode>(c, f.node_));
    }

    double eval(double t) const { return finite(node_->eval(t), t); }
    double d1(double t) const { return finite(node_->d1(t), t); }
    double d2(double t) const { return finite(node_->d2(t), t); }

    /// Open interval on which every sub-expression is defined.
    Interval validity() const { return node_->validity(); }

    std::string describe() const {
        std::ostringstream os;
        node_->describe(os);
        return os.str();
    }

private:
    explicit C2Fn(detail::FnPtr n) : node_(std::move(n)) {}

    static double finite(double v, double t) {
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "non-finite value " << v << " at t = " << t;
            throw DomainError(os.str());
        }
        return v;
    }

    detail::FnPtr node_;
};

/// Central finite-difference estimates of the first and second derivative.
/// Test oracle only; the library path is always the structural derivative.
struct FdEstimate {
    double first;
    double second;
};

inline FdEstimate fd_check(const C2Fn& fn, double t, double h) {
    if (!(h > 0.0)) throw DomainError("fd_check requires h > 0");
    const double fp = fn.eval(t + h);
    const double fm = fn.eval(t - h);
    const double f0 = fn.eval(t);
    return {(fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h)};
}

} // namespace pgfs

#endif // PGFS_C2FN_HPP

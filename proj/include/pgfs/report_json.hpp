#ifndef PGFS_REPORT_JSON_HPP
#define PGFS_REPORT_JSON_HPP

#include <string>

#include <json.hpp>

#include "pgfs/curvature.hpp"
#include "pgfs/families.hpp"
#include "pgfs/verify.hpp"

namespace pgfs {

inline nlohmann::json to_json(const GridSpec& g) {
    return {{"nx", g.nx},
            {"nz", g.nz},
            {"domain", {g.rect.x_min, g.rect.x_max, g.rect.z_min, g.rect.z_max}}};
}

inline nlohmann::json to_json(const PointCounts& c) {
    return {{"admissible", c.admissible},
            {"timelike_normal", c.timelike_normal},
            {"lightlike_skipped", c.lightlike_skipped},
            {"domain_skipped", c.domain_skipped},
            {"total", c.total()}};
}

inline nlohmann::json to_json(const ResidualStats& r) {
    if (r.n == 0) return nullptr;
    return {{"count", r.n},
            {"max", r.max},
            {"mean", r.mean()},
            {"argmax", {r.argmax_x, r.argmax_z}}};
}

inline nlohmann::json to_json(const FieldStats& f) {
    if (f.n == 0) return nullptr;
    return {{"count", f.n},
            {"min", f.min},
            {"max", f.max},
            {"mean", f.mean()},
            {"spread", f.spread()}};
}

inline nlohmann::json to_json(const VerificationReport& r) {
    nlohmann::json j{{"family", r.family},
                     {"grid", to_json(r.grid)},
                     {"counts", to_json(r.counts)},
                     {"target", r.target},
                     {"tolerance", r.tolerance},
                     {"residuals", to_json(r.residuals)},
                     {"verdict", std::string(to_string(r.verdict))},
                     {"notes", r.notes}};
    if (r.measured) j["measured"] = to_json(*r.measured);
    if (r.ratio) j["ratio"] = to_json(*r.ratio);
    return j;
}

inline nlohmann::json to_json(const TanhArgumentVariant& v, double K0) {
    return {{"argument", v.argument},
            {"max_K_residual", v.residual.max},
            {"mean_K_residual", v.residual.mean()},
            {"K_field", to_json(v.k_field)},
            {"target_K0", K0}};
}

inline nlohmann::json to_json(const TanhArgumentProbe& p) {
    return {{"probe", "const-k-tanh-argument"},
            {"K0", p.K0},
            {"g0", p.g0},
            {"grid", to_json(p.grid)},
            {"variants", {to_json(p.plain, p.K0), to_json(p.scaled, p.K0)}}};
}

inline nlohmann::json to_json(const FormBundle& b) {
    return {{"E", b.E},
            {"F", b.F},
            {"G", b.G},
            {"L", b.L},
            {"M", b.M},
            {"N", b.N},
            {"D", b.D},
            {"normal", {b.normal.x1, b.normal.x2, b.normal.x3}}};
}

inline nlohmann::json catalog_to_json() {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : catalog()) {
        const ExpectedInvariant inv = build(e.spec, e.domain).expected;
        nlohmann::json consts = nlohmann::json::object();
        for (const auto& [k, v] : list_constants(e.spec)) consts[k] = v;
        out.push_back(
            {{"name", e.name},
             {"surface", e.blurb},
             {"expected",
              {{"kind", std::string(to_string(inv.kind))},
               {"target", inv.target()},
               {"disputed", inv.disputed}}},
             {"constants", consts},
             {"domain", {e.domain.x_min, e.domain.x_max, e.domain.z_min, e.domain.z_max}},
             {"notes", e.notes}});
    }
    return out;
}

} // namespace pgfs

#endif // PGFS_REPORT_JSON_HPP

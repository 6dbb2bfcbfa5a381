#ifndef PGFS_SPEC_JSON_HPP
#define PGFS_SPEC_JSON_HPP

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgfs/c2fn.hpp"
#include "pgfs/errors.hpp"
#include "pgfs/surface.hpp"

namespace pgfs {

// A surface spec document is
//   { "a": real, "f": <fn>, "g": <fn>, "domain": [x_min, x_max, z_min, z_max] }
// where <fn> is one of
//   {"kind":"const","c":..}, {"kind":"linear","m":..,"b":..},
//   {"kind":"quadratic","p":..,"q":..,"r":..}, {"kind":"exp","c":..,"k":..},
//   {"kind":"tanh","s":..,"k":..,"b":..}, {"kind":"power","m":..,"b":..,"e":..},
//   {"kind":"sum","args":[..]}, {"kind":"product","args":[..]},
//   {"kind":"scale","c":..,"args":[<fn>]}.
// Schema failures throw SchemaError carrying the JSON-pointer-style path of
// the offending field.

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j,
                                           const std::string& path,
                                           const std::string& key) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path + "/" + key, "missing field");
    return *it;
}

inline double require_number(const nlohmann::json& j, const std::string& path,
                             const std::string& key) {
    const nlohmann::json& v = require_field(j, path, key);
    if (!v.is_number()) throw SchemaError(path + "/" + key, "expected a number");
    return v.get<double>();
}

} // namespace detail

inline C2Fn parse_fn(const nlohmann::json& j, const std::string& path) {
    const nlohmann::json& kind_node = detail::require_field(j, path, "kind");
    if (!kind_node.is_string())
        throw SchemaError(path + "/kind", "expected a string");
    const std::string kind = kind_node.get<std::string>();

    const auto num = [&](const char* key) {
        return detail::require_number(j, path, key);
    };
    const auto args = [&](std::size_t min_count) {
        const nlohmann::json& a = detail::require_field(j, path, "args");
        if (!a.is_array() || a.size() < min_count)
            throw SchemaError(path + "/args",
                              "expected an array of at least " +
                                  std::to_string(min_count) + " functions");
        std::vector<C2Fn> fns;
        fns.reserve(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            fns.push_back(parse_fn(a[i], path + "/args/" + std::to_string(i)));
        return fns;
    };

    if (kind == "const") return C2Fn::constant(num("c"));
    if (kind == "linear") return C2Fn::linear(num("m"), num("b"));
    if (kind == "quadratic")
        return C2Fn::quadratic(num("p"), num("q"), num("r"));
    if (kind == "exp") return C2Fn::exponential(num("c"), num("k"));
    if (kind == "tanh") return C2Fn::tanh_fn(num("s"), num("k"), num("b"));
    if (kind == "power") return C2Fn::power(num("m"), num("b"), num("e"));
    if (kind == "sum") return C2Fn::sum(args(1));
    if (kind == "product") {
        auto fns = args(2);
        C2Fn acc = fns[0];
        for (std::size_t i = 1; i < fns.size(); ++i)
            acc = C2Fn::product(acc, fns[i]);
        return acc;
    }
    if (kind == "scale") {
        const double c = num("c");
        auto fns = args(1);
        if (fns.size() != 1)
            throw SchemaError(path + "/args", "scale takes exactly one function");
        return C2Fn::scale(c, fns[0]);
    }
    throw SchemaError(path + "/kind", "unknown kind '" + kind + "'");
}

inline FactorableSurface parse_surface_spec(const nlohmann::json& j,
                                            const std::string& path = "") {
    const double a = detail::require_number(j, path, "a");
    C2Fn f = parse_fn(detail::require_field(j, path, "f"), path + "/f");
    C2Fn g = parse_fn(detail::require_field(j, path, "g"), path + "/g");
    const nlohmann::json& dom = detail::require_field(j, path, "domain");
    if (!dom.is_array() || dom.size() != 4)
        throw SchemaError(path + "/domain",
                          "expected [x_min, x_max, z_min, z_max]");
    for (std::size_t i = 0; i < 4; ++i)
        if (!dom[i].is_number())
            throw SchemaError(path + "/domain/" + std::to_string(i),
                              "expected a number");
    DomainRect rect{dom[0].get<double>(), dom[1].get<double>(),
                    dom[2].get<double>(), dom[3].get<double>()};
    try {
        return FactorableSurface(std::move(f), std::move(g), a, rect);
    } catch (const ConstraintError& e) {
        throw SchemaError(path.empty() ? "/" : path, e.what());
    }
}

inline FactorableSurface load_surface_spec(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open '" + file + "' for reading");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("/", std::string("invalid JSON: ") + e.what());
    }
    return parse_surface_spec(j);
}

} // namespace pgfs

#endif // PGFS_SPEC_JSON_HPP

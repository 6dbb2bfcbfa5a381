// pgfs: curvature computation and classification-family verification for
// affine factorable surfaces in pseudo-Galilean 3-space.
//
// Machine-readable output goes to stdout only; diagnostics go to stderr.
// Exit codes: 0 success (including DEGENERATE and DISPUTED-REPORT verdicts),
// 1 a verification FAILed, 2 schema/usage error, 3 domain or degeneracy
// error, 4 I/O error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pgfs/curvature.hpp"
#include "pgfs/families.hpp"
#include "pgfs/grid.hpp"
#include "pgfs/mesh.hpp"
#include "pgfs/report_json.hpp"
#include "pgfs/spec_json.hpp"
#include "pgfs/verify.hpp"

namespace {

using nlohmann::json;

struct GridDims {
    int nx = 101;
    int nz = 101;
};

GridDims parse_grid_dims(const std::string& text) {
    const auto xpos = text.find('x');
    GridDims dims;
    try {
        std::size_t used = 0;
        dims.nx = std::stoi(text.substr(0, xpos), &used);
        if (xpos == std::string::npos || used != xpos)
            throw std::invalid_argument(text);
        dims.nz = std::stoi(text.substr(xpos + 1), &used);
        if (used != text.size() - xpos - 1) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw pgfs::ConstraintError("--grid expects NxM, e.g. 101x101 (got '" +
                                    text + "')");
    }
    return dims;
}

pgfs::DomainRect parse_domain(const std::vector<double>& v) {
    return {v[0], v[1], v[2], v[3]};
}

void apply_sets(pgfs::FamilySpec& spec, const std::vector<std::string>& sets) {
    for (const auto& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw pgfs::ConstraintError("--set expects key=value (got '" + kv +
                                        "')");
        const std::string key = kv.substr(0, eq);
        double value = 0.0;
        try {
            std::size_t used = 0;
            value = std::stod(kv.substr(eq + 1), &used);
            if (used != kv.size() - eq - 1) throw std::invalid_argument(kv);
        } catch (const std::exception&) {
            throw pgfs::ConstraintError("--set " + key +
                                        ": value is not a number");
        }
        pgfs::set_constant(spec, key, value);
    }
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int run_curvature(const std::string& spec_path, double x, double z) {
    const pgfs::FactorableSurface s = pgfs::load_surface_spec(spec_path);
    const pgfs::SurfaceJet jet = s.partials(x, z);
    const double d2 = pgfs::detail::d_squared(jet);
    const pgfs::CausalClass cls = pgfs::detail::normal_class_of(d2);
    if (cls == pgfs::CausalClass::Lightlike)
        throw pgfs::LightlikeNormalError(
            "lightlike normal at the requested point: D = 0, curvatures undefined");

    json out;
    out["E"] = pg_dot(jet.phi_x, jet.phi_x);
    out["F"] = pg_dot(jet.phi_x, jet.phi_z);
    out["G"] = pg_dot(jet.phi_z, jet.phi_z);
    out["K"] = pgfs::gauss_closed(jet);
    out["omega"] = pgfs::omega(jet);
    out["normal_class"] = std::string(to_string(cls));
    if (cls == pgfs::CausalClass::Spacelike) {
        const pgfs::FormBundle b = pgfs::form_bundle(jet);
        out["L"] = b.L;
        out["M"] = b.M;
        out["N"] = b.N;
        out["D"] = b.D;
        out["H"] = pgfs::mean_closed(jet);
    } else {
        out["omitted"] = {
            {"fields", {"L", "M", "N", "D", "H"}},
            {"reason", "normal is timelike: (f g')^2 > 1, D not real"}};
    }
    emit(out);
    return 0;
}

int run_forms(const std::string& spec_path, double x, double z) {
    const pgfs::FactorableSurface s = pgfs::load_surface_spec(spec_path);
    emit(pgfs::to_json(pgfs::form_bundle(s, x, z)));
    return 0;
}

int verdict_exit(const pgfs::VerificationReport& rep) {
    return rep.verdict == pgfs::Verdict::Fail ? 1 : 0;
}

int run_verify_all(const GridDims& dims, std::optional<double> tol) {
    json reports = json::array();
    int rc = 0;
    std::cerr << "family                verdict           max residual\n";
    for (const auto& entry : pgfs::catalog()) {
        pgfs::GridSpec grid{dims.nx, dims.nz, entry.domain};
        const pgfs::VerificationReport rep =
            pgfs::verify_family(entry.spec, grid, tol);
        reports.push_back(pgfs::to_json(rep));
        std::cerr << entry.name << std::string(22 - entry.name.size(), ' ')
                  << to_string(rep.verdict)
                  << std::string(18 - to_string(rep.verdict).size(), ' ')
                  << (rep.residuals.n ? pgfs::format_double(rep.residuals.max)
                                      : std::string("-"))
                  << "\n";
        rc = std::max(rc, verdict_exit(rep));
    }
    emit(reports);
    return rc;
}

int run_verify(const std::string& family, const std::string& spec_path,
               bool all, const GridDims& dims,
               const std::vector<double>& domain_flag,
               std::optional<double> tol, const std::vector<std::string>& sets,
               bool oracle_mode, bool relation_mode) {
    if (all) return run_verify_all(dims, tol);

    if (!spec_path.empty()) {
        const pgfs::FactorableSurface s = pgfs::load_surface_spec(spec_path);
        pgfs::GridSpec grid{dims.nx, dims.nz, s.domain()};
        const pgfs::VerificationReport rep =
            relation_mode ? pgfs::relation_check(s, grid)
                          : pgfs::oracle_compare(s, grid, tol.value_or(1e-9));
        emit(pgfs::to_json(rep));
        return verdict_exit(rep);
    }

    const pgfs::CatalogEntry& entry = pgfs::catalog_entry(family);
    pgfs::FamilySpec spec = entry.spec;
    apply_sets(spec, sets);
    pgfs::DomainRect rect = entry.domain;
    if (!domain_flag.empty()) rect = parse_domain(domain_flag);
    pgfs::GridSpec grid{dims.nx, dims.nz, rect};

    pgfs::VerificationReport rep;
    if (oracle_mode) {
        rep = pgfs::oracle_compare(pgfs::build(spec, rect).surface, grid,
                                   tol.value_or(1e-9), family + "/oracle");
    } else if (relation_mode) {
        rep = pgfs::relation_check(pgfs::build(spec, rect).surface, grid,
                                   family + "/relation");
    } else {
        rep = pgfs::verify_family(spec, grid, tol);
    }
    emit(pgfs::to_json(rep));
    return verdict_exit(rep);
}

int run_catalog() {
    emit(pgfs::catalog_to_json());
    return 0;
}

int run_figures(const std::string& outdir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(outdir, ec);
    if (ec)
        throw pgfs::IoError("cannot create directory '" + outdir +
                            "': " + ec.message());

    const std::vector<std::string> fixture_families = {
        "flat-exp", "min-sqrt-g", "const-k", "const-h-b"};
    json summary = json::object();
    for (std::size_t n = 0; n < fixture_families.size(); ++n) {
        const pgfs::CatalogEntry& entry =
            pgfs::catalog_entry(fixture_families[n]);
        const pgfs::GridSpec grid{51, 51, entry.domain};
        const pgfs::BuiltFamily built = pgfs::build(entry.spec, entry.domain);
        const pgfs::SurfaceMesh m =
            pgfs::mesh(built.surface, grid, /*with_curvature=*/true);
        const std::string stem = "fig" + std::to_string(n + 1);
        const std::string obj_path = (fs::path(outdir) / (stem + ".obj")).string();
        const std::string csv_path = (fs::path(outdir) / (stem + ".csv")).string();
        pgfs::write_obj(m, obj_path);
        pgfs::write_csv(m, csv_path);
        summary[stem] = {{"family", entry.name},
                         {"obj", stem + ".obj"},
                         {"csv", stem + ".csv"},
                         {"report", pgfs::to_json(
                                        pgfs::verify_family(entry.spec, grid))}};
    }
    std::ofstream sf(fs::path(outdir) / "summary.json", std::ios::binary);
    if (!sf) throw pgfs::IoError("cannot write summary.json in '" + outdir + "'");
    sf << summary.dump(2) << "\n";
    if (!sf.flush()) throw pgfs::IoError("write to summary.json failed");
    emit(summary);
    return 0;
}

int run_export_mesh(const std::string& family, const std::string& spec_path,
                    const GridDims& dims, const std::vector<double>& domain_flag,
                    const std::string& obj_path, const std::string& csv_path,
                    bool with_curvature) {
    std::optional<pgfs::FactorableSurface> surface;
    if (!spec_path.empty()) {
        surface = pgfs::load_surface_spec(spec_path);
    } else {
        const pgfs::CatalogEntry& entry = pgfs::catalog_entry(family);
        pgfs::DomainRect rect = entry.domain;
        if (!domain_flag.empty()) rect = parse_domain(domain_flag);
        surface = pgfs::build(entry.spec, rect).surface;
    }
    const pgfs::GridSpec grid{dims.nx, dims.nz, surface->domain()};
    const pgfs::SurfaceMesh m = pgfs::mesh(*surface, grid, with_curvature);
    json out{{"vertices", m.vertices.size()}, {"faces", m.faces.size()}};
    if (!obj_path.empty()) {
        pgfs::write_obj(m, obj_path);
        out["obj"] = obj_path;
    }
    if (!csv_path.empty()) {
        pgfs::write_csv(m, csv_path);
        out["csv"] = csv_path;
    }
    emit(out);
    return 0;
}

int run_typo_probe(double k0, double g0, const GridDims& dims,
                   const std::vector<double>& domain_flag) {
    pgfs::DomainRect rect{-1.0, 1.0, -1.0, 1.0};
    if (!domain_flag.empty()) rect = parse_domain(domain_flag);
    const pgfs::GridSpec grid{dims.nx, dims.nz, rect};
    emit(pgfs::to_json(pgfs::tanh_argument_probe(k0, g0, grid)));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"curvature and classification verification for affine "
                 "factorable surfaces in pseudo-Galilean 3-space"};
    app.require_subcommand(1);
    int rc = 0;

    // curvature
    std::string cv_spec;
    double cv_x = 0.0, cv_z = 0.0;
    auto* cv = app.add_subcommand(
        "curvature", "evaluate K, H, Omega and form coefficients at a point");
    cv->add_option("spec", cv_spec, "surface spec JSON file")->required();
    cv->add_option("--x", cv_x, "x coordinate")->required();
    cv->add_option("--z", cv_z, "z coordinate")->required();
    cv->callback([&] { rc = run_curvature(cv_spec, cv_x, cv_z); });

    // forms
    std::string fm_spec;
    double fm_x = 0.0, fm_z = 0.0;
    auto* fm = app.add_subcommand("forms",
                                  "evaluate the fundamental-form bundle at a point");
    fm->add_option("spec", fm_spec, "surface spec JSON file")->required();
    fm->add_option("--x", fm_x, "x coordinate")->required();
    fm->add_option("--z", fm_z, "z coordinate")->required();
    fm->callback([&] { rc = run_forms(fm_spec, fm_x, fm_z); });

    // verify
    std::string vf_family, vf_spec, vf_grid = "101x101";
    std::vector<double> vf_domain;
    std::vector<std::string> vf_sets;
    double vf_tol = -1.0;
    bool vf_all = false, vf_oracle = false, vf_relation = false;
    auto* vf = app.add_subcommand(
        "verify", "certify a family's curvature invariant on a sampling grid");
    vf->add_option("--family", vf_family, "catalog family name");
    vf->add_option("--spec", vf_spec, "surface spec JSON file");
    vf->add_flag("--all", vf_all, "run the whole catalog");
    vf->add_option("--grid", vf_grid, "grid resolution NxM (default 101x101)");
    vf->add_option("--domain", vf_domain,
                   "override domain (with --family): x_min x_max z_min z_max")
        ->expected(4);
    vf->add_option("--tol", vf_tol, "residual tolerance override");
    vf->add_option("--set", vf_sets, "override a family constant, key=value");
    vf->add_flag("--oracle", vf_oracle,
                 "compare closed-form K, H against the general-formula route");
    vf->add_flag("--relation", vf_relation,
                 "measure the pointwise ratio H/(A K)");
    vf->callback([&] {
        if (static_cast<int>(!vf_family.empty()) +
                static_cast<int>(!vf_spec.empty()) + static_cast<int>(vf_all) !=
            1)
            throw pgfs::ConstraintError(
                "verify needs exactly one of --family, --spec, --all");
        if (vf_all && !vf_domain.empty())
            throw pgfs::ConstraintError(
                "--domain cannot be combined with --all (families keep their "
                "own domains)");
        std::optional<double> tol;
        if (vf_tol >= 0.0) tol = vf_tol;
        rc = run_verify(vf_family, vf_spec, vf_all, parse_grid_dims(vf_grid),
                        vf_domain, tol, vf_sets, vf_oracle, vf_relation);
    });

    // catalog
    auto* cat = app.add_subcommand("catalog",
                                   "list every classification family instance");
    cat->callback([&] { rc = run_catalog(); });

    // figures
    std::string fig_dir;
    auto* fig = app.add_subcommand(
        "figures", "write the four example surfaces as OBJ + CSV with a summary");
    fig->add_option("outdir", fig_dir, "output directory")->required();
    fig->callback([&] { rc = run_figures(fig_dir); });

    // export-mesh
    std::string em_family, em_spec, em_grid = "101x101", em_obj, em_csv;
    std::vector<double> em_domain;
    bool em_curv = false;
    auto* em = app.add_subcommand("export-mesh",
                                  "sample a surface into OBJ and/or CSV");
    em->add_option("--family", em_family, "catalog family name");
    em->add_option("--spec", em_spec, "surface spec JSON file");
    em->add_option("--grid", em_grid, "grid resolution NxM (default 101x101)");
    em->add_option("--domain", em_domain,
                   "override domain (with --family): x_min x_max z_min z_max")
        ->expected(4);
    em->add_option("--obj", em_obj, "output OBJ path");
    em->add_option("--csv", em_csv, "output CSV path");
    em->add_flag("--curvature", em_curv, "attach per-vertex K and H");
    em->callback([&] {
        if (em_family.empty() == em_spec.empty())
            throw pgfs::ConstraintError(
                "export-mesh needs exactly one of --family, --spec");
        if (em_obj.empty() && em_csv.empty())
            throw pgfs::ConstraintError(
                "export-mesh needs at least one of --obj, --csv");
        rc = run_export_mesh(em_family, em_spec, parse_grid_dims(em_grid),
                             em_domain, em_obj, em_csv, em_curv);
    });

    // typo-probe
    double tp_k0 = 1.0, tp_g0 = 2.0;
    std::string tp_grid = "101x101";
    std::vector<double> tp_domain;
    auto* tp = app.add_subcommand(
        "typo-probe",
        "measure K for the two candidate tanh arguments of the constant-K "
        "generator");
    tp->add_option("--k0", tp_k0, "target Gaussian curvature K0 > 0");
    tp->add_option("--g0", tp_g0, "slope constant g0 != 0");
    tp->add_option("--grid", tp_grid, "grid resolution NxM");
    tp->add_option("--domain", tp_domain,
                   "probe domain (default [-1,1]^2): x_min x_max z_min z_max")
        ->expected(4);
    tp->callback([&] {
        rc = run_typo_probe(tp_k0, tp_g0, parse_grid_dims(tp_grid), tp_domain);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const pgfs::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const pgfs::ConstraintError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pgfs::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const pgfs::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const pgfs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return rc;
}

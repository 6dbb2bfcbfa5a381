#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pgfs/families.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

fs::path tmp_dir() {
    const fs::path dir = fs::temp_directory_path() / "pgfs_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string cli_path() {
    const char* env = std::getenv("PGFS_CLI");
    REQUIRE(env != nullptr);
    return env;
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = tmp_dir() / ("out" + std::to_string(counter) + ".txt");
    const fs::path err = tmp_dir() / ("err" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = cli_path() + " " + args + " > " + out.string() +
                            " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, slurp(out), slurp(err)};
}

fs::path write_file(const std::string& name, const std::string& content) {
    const fs::path p = tmp_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

// y = -x^2 + 2x + 1
const char* parabola_spec = R"({
  "a": 1.0,
  "f": {"kind": "quadratic", "p": -1.0, "q": 2.0, "r": 1.0},
  "g": {"kind": "const", "c": 1.0},
  "domain": [-1.0, 1.0, -1.0, 1.0]
})";

// y = (10x + z) tanh x
const char* tanh_spec = R"({
  "a": 10.0,
  "f": {"kind": "tanh", "s": 1.0, "k": 1.0, "b": 0.0},
  "g": {"kind": "linear", "m": 1.0, "b": 0.0},
  "domain": [-1.0, 1.0, -1.0, 1.0]
})";

} // namespace

TEST_CASE("catalog lists every family") {
    const RunResult r = run_cli("catalog");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j.is_array());
    CHECK(j.size() >= 13);
    bool found = false;
    for (const auto& e : j) found |= (e["name"] == "flat-exp");
    CHECK(found);
}

TEST_CASE("curvature of the parabolic example at the origin") {
    const fs::path spec = write_file("parabola.json", parabola_spec);
    const RunResult r = run_cli("curvature " + spec.string() + " --x 0 --z 0");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["E"] == 1.0);
    CHECK(j["F"] == 0.0);
    CHECK(j["K"] == 0.0);
    CHECK(j["H"] == 1.0);
    CHECK(j["D"] == 1.0);
    CHECK(j["normal_class"] == "spacelike");
}

TEST_CASE("curvature of the constant-K example at the origin") {
    const fs::path spec = write_file("tanhspec.json", tanh_spec);
    const RunResult r = run_cli("curvature " + spec.string() + " --x 0 --z 0");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["K"] == 1.0);
    CHECK(j["M"] == 1.0);
    CHECK(j["N"] == 0.0);
}

TEST_CASE("schema errors exit 2 with a field path") {
    const fs::path bad = write_file(
        "bad.json",
        R"({"a": 1.0, "f": {"kind": "sine"}, "g": {"kind": "const", "c": 1}, "domain": [-1,1,-1,1]})");
    const RunResult r = run_cli("curvature " + bad.string() + " --x 0 --z 0");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("/f/kind") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("missing fields report their path") {
    const fs::path bad = write_file(
        "bad2.json",
        R"({"a": 1.0, "f": {"kind": "linear", "m": 1.0}, "g": {"kind": "const", "c": 1}, "domain": [-1,1,-1,1]})");
    const RunResult r = run_cli("forms " + bad.string() + " --x 0 --z 0");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("/f/b") != std::string::npos);
}

TEST_CASE("out-of-domain points exit 3") {
    const fs::path spec = write_file("parabola2.json", parabola_spec);
    const RunResult r = run_cli("curvature " + spec.string() + " --x 5 --z 0");
    CHECK(r.exit_code == 3);
    CHECK(r.out.empty());
}

TEST_CASE("lightlike degeneracy exits 3") {
    const fs::path spec = write_file("light.json", R"({
      "a": 1.0,
      "f": {"kind": "const", "c": 1.0},
      "g": {"kind": "linear", "m": 1.0, "b": 0.0},
      "domain": [-1.0, 1.0, -1.0, 1.0]
    })");
    const RunResult r = run_cli("curvature " + spec.string() + " --x 0 --z 0");
    CHECK(r.exit_code == 3);
    const RunResult rf = run_cli("forms " + spec.string() + " --x 0 --z 0");
    CHECK(rf.exit_code == 3);
}

TEST_CASE("verify a catalog family") {
    const RunResult r = run_cli("verify --family flat-exp");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["verdict"] == "PASS");
    CHECK(j["residuals"]["max"].get<double>() <= 1e-9);
    CHECK(j["grid"]["nx"] == 101);
}

TEST_CASE("verify an unknown family exits 2 and lists names") {
    const RunResult r = run_cli("verify --family not-a-family");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("min-sqrt-g") != std::string::npos);
}

TEST_CASE("degenerate and disputed verdicts still exit 0") {
    const RunResult r1 = run_cli("verify --family min-glin-fconst");
    REQUIRE(r1.exit_code == 0);
    CHECK(json::parse(r1.out)["verdict"] == "DEGENERATE");

    const RunResult r2 = run_cli("verify --family const-h-a");
    REQUIRE(r2.exit_code == 0);
    CHECK(json::parse(r2.out)["verdict"] == "DISPUTED-REPORT");
}

TEST_CASE("a failing residual exits 1") {
    const RunResult r =
        run_cli("verify --family min-flin-glin --set a=1");
    CHECK(r.exit_code == 1);
    CHECK(json::parse(r.out)["verdict"] == "FAIL");
}

TEST_CASE("unknown --set constant exits 2") {
    const RunResult r = run_cli("verify --family const-k --set bogus=1");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("valid constants") != std::string::npos);
}

TEST_CASE("verify --all emits one report per family") {
    const RunResult r = run_cli("verify --all --grid 41x41");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j.is_array());
    CHECK(j.size() == pgfs::catalog().size());
    for (const auto& rep : j) {
        const std::string verdict = rep["verdict"];
        CHECK(verdict != "FAIL");
    }
}

TEST_CASE("verify a free-form spec against the oracle") {
    const fs::path spec = write_file("tanhspec2.json", tanh_spec);
    const RunResult r = run_cli("verify --spec " + spec.string() + " --grid 41x41");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["target"] == "oracle");
    CHECK(j["verdict"] == "PASS");
}

TEST_CASE("relation mode reports the measured ratio") {
    const RunResult r = run_cli("verify --family const-k --relation --grid 21x21");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j.contains("ratio"));
    CHECK(std::fabs(j["ratio"]["mean"].get<double>() - 0.5) <= 1e-9);
    CHECK(j["ratio"]["spread"].get<double>() <= 1e-6);
}

TEST_CASE("typo probe separates the two spellings") {
    const RunResult r = run_cli("typo-probe --k0 1 --g0 2 --grid 41x41");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["variants"].size() == 2);
    CHECK(j["variants"][0]["max_K_residual"].get<double>() <= 1e-9);
    CHECK(j["variants"][1]["max_K_residual"].get<double>() >= 0.1);
}

TEST_CASE("export-mesh writes obj and csv") {
    const fs::path obj = tmp_dir() / "exported.obj";
    const fs::path csv = tmp_dir() / "exported.csv";
    const RunResult r = run_cli("export-mesh --family const-h-b --grid 11x11 --obj " +
                                obj.string() + " --csv " + csv.string() +
                                " --curvature");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["vertices"] == 121);
    CHECK(j["faces"] == 200);
    CHECK(slurp(obj).find("v ") == 0);
    CHECK(slurp(csv).find("x,z,y,K,H,Dclass") == 0);
}

TEST_CASE("figures output is byte-identical across runs") {
    const fs::path d1 = tmp_dir() / "figs1";
    const fs::path d2 = tmp_dir() / "figs2";
    const RunResult r1 = run_cli("figures " + d1.string());
    const RunResult r2 = run_cli("figures " + d2.string());
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    const char* files[] = {"fig1.obj", "fig1.csv", "fig2.obj", "fig2.csv",
                           "fig3.obj", "fig3.csv", "fig4.obj", "fig4.csv",
                           "summary.json"};
    for (const char* f : files) {
        CAPTURE(f);
        const std::string a = slurp(d1 / f);
        REQUIRE(!a.empty());
        CHECK(a == slurp(d2 / f));
    }
    // the summary carries each figure's verified residual
    const json summary = json::parse(slurp(d1 / "summary.json"));
    CHECK(summary["fig2"]["report"]["residuals"]["max"].get<double>() <= 1e-9);
    CHECK(summary["fig3"]["report"]["residuals"]["max"].get<double>() <= 1e-9);
    CHECK(summary["fig1"]["report"]["verdict"] == "PASS");
    CHECK(summary["fig4"]["report"]["verdict"] == "PASS");
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("curvature").exit_code == 2);
    CHECK(run_cli("verify").exit_code == 2);
    CHECK(run_cli("verify --family flat-exp --grid banana").exit_code == 2);
    CHECK(run_cli("no-such-command").exit_code == 2);
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "pgfs/verify.hpp"
#include "support/random_surfaces.hpp"

using namespace pgfs;

namespace {

GridSpec grid_on(const DomainRect& rect, int nx = 41, int nz = 41) {
    return {nx, nz, rect};
}

} // namespace

TEST_CASE("grid guards") {
    CHECK_THROWS_AS((GridSpec{1, 10, {-1, 1, -1, 1}}.validate()), ConstraintError);
    CHECK_THROWS_AS((GridSpec{10, 1, {-1, 1, -1, 1}}.validate()), ConstraintError);
    CHECK_THROWS_AS((GridSpec{4000, 4000, {-1, 1, -1, 1}}.validate()),
                    ConstraintError);
    CHECK_THROWS_AS((GridSpec{10, 10, {1, 1, -1, 1}}.validate()), ConstraintError);
    CHECK_NOTHROW((GridSpec{2, 2, {-1, 1, -1, 1}}.validate()));
}

TEST_CASE("grid nodes hit the rectangle endpoints exactly") {
    const GridSpec g{7, 5, {0.1, 0.3, -2.0, 1.0}};
    CHECK(g.x_at(0) == 0.1);
    CHECK(g.x_at(6) == 0.3);
    CHECK(g.z_at(0) == -2.0);
    CHECK(g.z_at(4) == 1.0);
}

TEST_CASE("flat-exp verifies to PASS on its catalog grid") {
    const auto& e = catalog_entry("flat-exp");
    const VerificationReport rep =
        verify_family(e.spec, {101, 101, e.domain});
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(rep.target == "K_zero");
    CHECK(rep.tolerance == 1e-9);
    CHECK(rep.residuals.max <= 1e-9);
    // most of this domain is on the timelike side; K is still checked there
    CHECK(rep.counts.timelike_normal > rep.counts.admissible);
    CHECK(rep.residuals.n ==
          rep.counts.admissible + rep.counts.timelike_normal);
    CHECK(rep.counts.total() == 101 * 101);
}

TEST_CASE("every catalog verdict matches its family's nature") {
    for (const auto& e : catalog()) {
        CAPTURE(e.name);
        const VerificationReport rep =
            verify_family(e.spec, grid_on(e.domain));
        CHECK(rep.counts.total() == 41 * 41);
        if (e.name == "const-h-a") {
            CHECK(rep.verdict == Verdict::DisputedReport);
        } else if (e.name == "min-glin-fconst") {
            CHECK(rep.verdict == Verdict::Degenerate);
            CHECK(rep.counts.lightlike_skipped == rep.counts.total());
        } else {
            CHECK(rep.verdict == Verdict::Pass);
        }
    }
}

TEST_CASE("disputed family reports the measured field") {
    const auto& e = catalog_entry("const-h-a");
    const VerificationReport rep = verify_family(e.spec, grid_on(e.domain));
    CHECK(rep.verdict == Verdict::DisputedReport);
    REQUIRE(rep.measured.has_value());
    // the built surface is minimal, far from the claimed H0 = 1
    CHECK(std::fabs(rep.measured->mean()) <= 1e-12);
    CHECK(rep.residuals.max == Catch::Approx(1.0));
}

TEST_CASE("a genuinely wrong claim FAILs honestly") {
    MinFLinGLin sheared;
    sheared.a = 1.0; // H = -a f' g' / D != 0
    const VerificationReport rep =
        verify_family(FamilySpec{sheared}, grid_on({-1, 1, -1, 1}));
    CHECK(rep.verdict == Verdict::Fail);
    CHECK(rep.residuals.max > 1e-3);
}

TEST_CASE("refinement keeps analytically-zero residuals at tolerance") {
    const auto& e = catalog_entry("flat-exp");
    const VerificationReport coarse = verify_family(e.spec, {51, 51, e.domain});
    const VerificationReport fine = verify_family(e.spec, {101, 101, e.domain});
    CHECK(coarse.residuals.max <= coarse.tolerance);
    CHECK(fine.residuals.max <= fine.tolerance);
}

TEST_CASE("reports are deterministic") {
    const auto& e = catalog_entry("const-k");
    const VerificationReport a = verify_family(e.spec, grid_on(e.domain));
    const VerificationReport b = verify_family(e.spec, grid_on(e.domain));
    CHECK(a.residuals.max == b.residuals.max);
    CHECK(a.residuals.sum == b.residuals.sum);
    CHECK(a.residuals.argmax_x == b.residuals.argmax_x);
    CHECK(a.residuals.argmax_z == b.residuals.argmax_z);
}

TEST_CASE("oracle comparison") {
    SECTION("catalog surface") {
        const auto& e = catalog_entry("const-k");
        const FactorableSurface s = build(e.spec, e.domain).surface;
        const VerificationReport rep = oracle_compare(s, grid_on(e.domain));
        CHECK(rep.verdict == Verdict::Pass);
        CHECK(rep.residuals.max <= 1e-9);
    }
    SECTION("plane compares zero against zero via the absolute floor") {
        const FactorableSurface plane(C2Fn::constant(1), C2Fn::linear(0, 1),
                                      1.0, {-1, 1, -1, 1});
        const VerificationReport rep = oracle_compare(plane, grid_on({-1, 1, -1, 1}));
        CHECK(rep.verdict == Verdict::Pass);
        CHECK(rep.residuals.max == 0.0);
    }
    SECTION("random clamped surfaces") {
        std::mt19937_64 rng(909);
        for (int i = 0; i < 5; ++i) {
            const FactorableSurface s = pgfs_tests::random_admissible_surface(rng);
            const VerificationReport rep = oracle_compare(s, grid_on(s.domain()));
            CHECK(rep.verdict == Verdict::Pass);
        }
    }
    SECTION("family-generated surfaces with random constants") {
        std::mt19937_64 rng(1234);
        std::uniform_real_distribution<double> u01(0.1, 0.9);
        std::uniform_real_distribution<double> u2(1.1, 3.0);
        for (int i = 0; i < 6; ++i) {
            std::vector<FamilySpec> specs;
            specs.push_back(ConstK{u2(rng), u01(rng) + 0.5, u01(rng), u01(rng),
                                   u2(rng), 1.0});
            specs.push_back(ConstHB{u01(rng) + 0.5, u01(rng) + 0.5, u01(rng),
                                    u2(rng), u01(rng)});
            specs.push_back(MinLinearG{u01(rng) + 0.5, u01(rng) * 0.5,
                                       u2(rng), u01(rng)});
            specs.push_back(FlatExp{u01(rng) + 0.5, u01(rng), u01(rng), u01(rng)});
            for (const auto& spec : specs) {
                CAPTURE(family_name(spec));
                const DomainRect dom{-1, 1, -1, 1};
                const FactorableSurface s = build(spec, dom).surface;
                const VerificationReport rep = oracle_compare(s, grid_on(dom, 21, 21));
                CHECK(rep.verdict == Verdict::Pass);
            }
        }
    }
}

TEST_CASE("relation check measures a constant ratio") {
    const auto& e = catalog_entry("const-k");
    const FactorableSurface s = build(e.spec, e.domain).surface;
    const VerificationReport rep = relation_check(s, grid_on(e.domain));
    CHECK(rep.verdict == Verdict::DisputedReport);
    REQUIRE(rep.ratio.has_value());
    CHECK(rep.ratio->spread() <= 1e-6);
    CHECK(rep.ratio->mean() == Catch::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("relation check on a flat surface degenerates") {
    const FactorableSurface flat(C2Fn::constant(2), C2Fn::tanh_fn(0.2, 1, 0),
                                 1.0, {-1, 1, -1, 1});
    CHECK_THROWS_AS(relation_check(flat, grid_on({-1, 1, -1, 1})),
                    DegenerateRelationError);
}

TEST_CASE("tanh-argument probe") {
    const GridSpec g = grid_on({-1, 1, -1, 1});
    SECTION("the two spellings coincide at g0 = 1") {
        const TanhArgumentProbe p = tanh_argument_probe(4.0, 1.0, g);
        CHECK(p.plain.residual.max == p.scaled.residual.max);
        CHECK(p.plain.k_field.min == p.scaled.k_field.min);
        CHECK(p.plain.k_field.max == p.scaled.k_field.max);
        CHECK(p.plain.residual.max <= 1e-9);
    }
    SECTION("g0 = 2 separates them") {
        const TanhArgumentProbe p = tanh_argument_probe(1.0, 2.0, g);
        CHECK(p.plain.residual.max <= 1e-9);
        CHECK(p.scaled.residual.max >= 0.1);
        // the scaled spelling lands on g0^2 K0 instead
        CHECK(p.scaled.k_field.mean() ==
              Catch::Approx(4.0).epsilon(1e-12));
    }
    SECTION("parameter guards") {
        CHECK_THROWS_AS(tanh_argument_probe(-1.0, 2.0, g), ConstraintError);
        CHECK_THROWS_AS(tanh_argument_probe(1.0, 0.0, g), ConstraintError);
    }
}

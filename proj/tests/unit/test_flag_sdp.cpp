#include <doctest.h>

#include <wturan/colored_graph.hpp>
#include <wturan/embedding_rules.hpp>
#include <wturan/errors.hpp>
#include <wturan/flag_sdp.hpp>

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace wturan;

namespace {

ColoredGraph triangle(int k, int c01, int c02, int c12) {
    ColoredGraph g(3, k);
    g.set_color(0, 1, c01);
    g.set_color(0, 2, c02);
    g.set_color(1, 2, c12);
    return g;
}

Certificate mantel_certificate() {
    Certificate cert;
    cert.lambda = frac(1, 2);
    cert.q = {{{frac(1, 2), frac(-1, 2)}, {frac(-1, 2), frac(1, 2)}}};
    return cert;
}

Rat slack_of(const SdpInstance& inst, const Certificate& cert, int g) {
    Rat s = cert.lambda - inst.objective[g];
    for (size_t b = 0; b < inst.blocks.size(); ++b) {
        auto m = pair_matrix(inst, static_cast<int>(b), g);
        for (size_t i = 0; i < cert.q[b].size(); ++i)
            for (size_t j = 0; j < cert.q[b].size(); ++j) s -= cert.q[b][i][j] * m[i][j];
    }
    return s;
}

}  // namespace

TEST_CASE("density problem validation") {
    DensityProblem p = mantel_problem();
    CHECK_NOTHROW(p.validate());

    SUBCASE("objective must start at zero") {
        p.u[0] = frac(1, 3);
        CHECK_THROWS_AS(p.validate(), std::domain_error);
    }
    SUBCASE("objective size must match the palette") {
        p.u.push_back(Rat(1));
        CHECK_THROWS_AS(p.validate(), std::domain_error);
    }
    SUBCASE("window bounds") {
        p.N = 6;
        CHECK_THROWS_AS(p.validate(), std::domain_error);
        p.N = 2;
        CHECK_THROWS_AS(p.validate(), std::domain_error);
    }
    SUBCASE("forbidden patterns must fit the window") {
        ColoredGraph big(4, 2);
        p.forbidden.push_back(big);
        p.N = 3;
        CHECK_THROWS_AS(p.validate(), std::domain_error);
    }
    SUBCASE("forbidden patterns must fit the palette") {
        p.forbidden.push_back(triangle(3, 3, 3, 3));
        CHECK_THROWS_AS(p.validate(), std::domain_error);
    }
}

TEST_CASE("objective value") {
    const std::vector<Rat> u2{Rat(0), Rat(1)};
    CHECK(obj_value(triangle(2, 1, 1, 1), u2) == 0);
    CHECK(obj_value(triangle(2, 2, 1, 1), u2) == frac(1, 3));
    CHECK(obj_value(triangle(2, 2, 2, 1), u2) == frac(2, 3));

    // the objective coefficients of the rho512 palette
    const std::vector<Rat> u6 = case_problem(CaseId::parse("rho512")).u;
    ColoredGraph mono6(4, 6);
    for (int j = 1; j < 4; ++j)
        for (int i = 0; i < j; ++i) mono6.set_color(i, j, 6);
    CHECK(obj_value(mono6, u6) == 1);
    CHECK(obj_value(ColoredGraph(4, 6), u6) == 0);

    // three pairs of weight class 3 and three of class 2: (3/2 + 3/5)/6
    ColoredGraph mixed(4, 6);
    mixed.set_color(0, 1, 3);
    mixed.set_color(0, 2, 3);
    mixed.set_color(0, 3, 3);
    mixed.set_color(1, 2, 2);
    mixed.set_color(1, 3, 2);
    mixed.set_color(2, 3, 2);
    CHECK(obj_value(mixed, u6) == frac(7, 20));

    SUBCASE("palette overflow is rejected") {
        CHECK_THROWS_AS(obj_value(mono6, u2), std::domain_error);
    }
}

TEST_CASE("mantel instance structure") {
    const SdpInstance inst = build_sdp(mantel_problem());
    CHECK_FALSE(inst.infeasible);

    REQUIRE(inst.graphs.size() == 3);
    CHECK(inst.graphs[0].key() == "3:2:111");
    CHECK(inst.graphs[1].key() == "3:2:112");
    CHECK(inst.graphs[2].key() == "3:2:122");
    CHECK(inst.objective == std::vector<Rat>{Rat(0), frac(1, 3), frac(2, 3)});

    REQUIRE(inst.blocks.size() == 1);
    CHECK(inst.blocks[0].type.order() == 1);
    CHECK(inst.blocks[0].flags == std::vector<std::vector<int>>{{1}, {2}});
}

TEST_CASE("mantel pair matrices") {
    const SdpInstance inst = build_sdp(mantel_problem());

    auto m0 = pair_matrix(inst, 0, 0);
    CHECK(m0[0][0] == 1);
    CHECK(m0[0][1] == 0);
    CHECK(m0[1][0] == 0);
    CHECK(m0[1][1] == 0);

    auto m1 = pair_matrix(inst, 0, 1);
    CHECK(m1[0][0] == frac(1, 3));
    CHECK(m1[0][1] == frac(1, 3));
    CHECK(m1[1][0] == frac(1, 3));
    CHECK(m1[1][1] == 0);

    auto m2 = pair_matrix(inst, 0, 2);
    CHECK(m2[0][0] == 0);
    CHECK(m2[0][1] == frac(1, 3));
    CHECK(m2[1][0] == frac(1, 3));
    CHECK(m2[1][1] == frac(1, 3));
}

TEST_CASE("pair matrices are symmetric with unit total mass when the type always embeds") {
    // single-vertex types embed everywhere, so entries must sum to one
    const SdpInstance inst = build_sdp(mantel_problem());
    REQUIRE(inst.blocks[0].type.order() == 1);
    for (size_t g = 0; g < inst.graphs.size(); ++g) {
        auto m = pair_matrix(inst, 0, static_cast<int>(g));
        Rat total(0);
        for (size_t i = 0; i < m.size(); ++i)
            for (size_t j = 0; j < m.size(); ++j) {
                CHECK(m[i][j] == m[j][i]);
                CHECK(m[i][j] >= 0);
                total += m[i][j];
            }
        CHECK(total == 1);
    }
}

TEST_CASE("two vertex type matrices have mass equal to the type's embedding density") {
    const SdpInstance inst = build_sdp(mantel_problem_n4());
    REQUIRE(inst.blocks.size() == 2);
    CHECK(inst.blocks[0].type.color(0, 1) == 1);
    CHECK(inst.blocks[1].type.color(0, 1) == 2);
    for (size_t g = 0; g < inst.graphs.size(); ++g) {
        for (size_t b = 0; b < 2; ++b) {
            auto m = pair_matrix(inst, static_cast<int>(b), static_cast<int>(g));
            Rat total(0);
            for (const auto& row : m)
                for (const Rat& v : row) total += v;
            // 12 ordered embeddings of the edge type over 6 pairs
            const int count = inst.graphs[g].color_count(static_cast<int>(b) + 1);
            CHECK(total == frac(count, 6));
        }
    }
}

TEST_CASE("mantel on four vertices") {
    const SdpInstance inst = build_sdp(mantel_problem_n4());
    CHECK(inst.graphs.size() == 7);
    REQUIRE(inst.blocks.size() == 2);
    // color-1 edge type extends freely, color-2 type cannot close a mono triangle
    CHECK(inst.blocks[0].flags.size() == 4);
    CHECK(inst.blocks[1].flags.size() == 3);
}

TEST_CASE("mantel certificate verifies at one half") {
    const SdpInstance inst = build_sdp(mantel_problem());
    const Certificate cert = mantel_certificate();

    const VerifyResult res = verify_certificate(inst, cert);
    CHECK(res.ok);
    CHECK(res.reason.empty());

    CHECK(slack_of(inst, cert, 0) == 0);
    CHECK(slack_of(inst, cert, 1) == frac(1, 3));
    CHECK(slack_of(inst, cert, 2) == 0);
}

TEST_CASE("verification failures carry reasons") {
    const SdpInstance inst = build_sdp(mantel_problem());

    SUBCASE("slightly too small a bound names a tight graph") {
        Certificate cert = mantel_certificate();
        cert.lambda -= frac(1, 1000);
        const VerifyResult res = verify_certificate(inst, cert);
        CHECK_FALSE(res.ok);
        CHECK(res.reason.find("graph 0") != std::string::npos);
        CHECK(res.reason.find("3:2:111") != std::string::npos);
        CHECK(res.reason.find("1/1000") != std::string::npos);
    }
    SUBCASE("negative diagonal is rejected as not PSD") {
        Certificate cert = mantel_certificate();
        cert.q[0][1][1] = frac(-1, 4);
        const VerifyResult res = verify_certificate(inst, cert);
        CHECK_FALSE(res.ok);
        CHECK(res.reason.find("not PSD") != std::string::npos);
        CHECK(res.reason.find("negative") != std::string::npos);
        // the elimination exposes the Schur complement -1/4 - 1/2
        CHECK(res.reason.find("-3/4") != std::string::npos);
    }
    SUBCASE("indefinite matrix with zero diagonal is rejected") {
        Certificate cert = mantel_certificate();
        cert.q[0] = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
        const VerifyResult res = verify_certificate(inst, cert);
        CHECK_FALSE(res.ok);
        CHECK(res.reason.find("not PSD") != std::string::npos);
    }
    SUBCASE("asymmetry is reported") {
        Certificate cert = mantel_certificate();
        cert.q[0][0][1] = Rat(0);
        const VerifyResult res = verify_certificate(inst, cert);
        CHECK_FALSE(res.ok);
        CHECK(res.reason.find("symmetric") != std::string::npos);
    }
    SUBCASE("block count mismatch") {
        Certificate cert = mantel_certificate();
        cert.q.clear();
        CHECK_FALSE(verify_certificate(inst, cert).ok);
    }
    SUBCASE("block shape mismatch") {
        Certificate cert = mantel_certificate();
        cert.q[0].pop_back();
        const VerifyResult res = verify_certificate(inst, cert);
        CHECK_FALSE(res.ok);
        CHECK(res.reason.find("shape") != std::string::npos);
    }
    SUBCASE("rank deficient PSD matrices pass") {
        Certificate cert = mantel_certificate();
        cert.lambda = Rat(1);
        cert.q[0] = {{Rat(1), Rat(-1)}, {Rat(-1), Rat(1)}};
        CHECK(verify_certificate(inst, cert).ok);
        cert.q[0] = {{Rat(0), Rat(0)}, {Rat(0), Rat(1)}};
        CHECK(verify_certificate(inst, cert).ok);
        cert.q[0] = {{Rat(0), Rat(0)}, {Rat(0), Rat(0)}};
        CHECK(verify_certificate(inst, cert).ok);
    }
}

TEST_CASE("rounding recovers exact solutions") {
    const SdpInstance inst = build_sdp(mantel_problem());

    SUBCASE("exact input is the identity") {
        const Certificate cert = round_solution(inst, {{{0.5, -0.5}, {-0.5, 0.5}}}, Int(1000));
        CHECK(cert.lambda == frac(1, 2));
        CHECK(cert.q == mantel_certificate().q);
        CHECK(verify_certificate(inst, cert).ok);
    }
    SUBCASE("solver noise is absorbed") {
        const Certificate cert = round_solution(
            inst, {{{0.49999991, -0.50000012}, {-0.50000012, 0.50000003}}}, Int(1000));
        CHECK(cert.lambda == frac(1, 2));
        CHECK(cert.q == mantel_certificate().q);
    }
    SUBCASE("asymmetric input is averaged") {
        const Certificate cert = round_solution(inst, {{{0.5, -0.6}, {-0.4, 0.5}}}, Int(1000));
        CHECK(cert.q == mantel_certificate().q);
    }
    SUBCASE("zero matrices give the trivial bound") {
        const Certificate cert = round_solution(inst, {{{0.0, 0.0}, {0.0, 0.0}}}, Int(1000));
        CHECK(cert.lambda == frac(2, 3));
        CHECK(verify_certificate(inst, cert).ok);
    }
    SUBCASE("indefinite input is repaired to PSD") {
        const Certificate cert = round_solution(inst, {{{0.0, 1.0}, {1.0, 0.0}}}, Int(1000));
        CHECK(verify_certificate(inst, cert).ok);
        // minimal shift for eigenvalues +-1 is 1, found within the bisection grain
        CHECK(cert.q[0][0][0] >= 1);
        CHECK(cert.q[0][0][0] <= Rat(1) + frac(1, 1000000));
    }
    SUBCASE("shape errors are rejected") {
        CHECK_THROWS_AS(round_solution(inst, {}, Int(1000)), std::domain_error);
        CHECK_THROWS_AS(round_solution(inst, {{{0.5}, {0.5}}}, Int(1000)), std::domain_error);
        CHECK_THROWS_AS(round_solution(inst, {{{0.5, -0.5}, {-0.5, 0.5}}}, Int(0)),
                        std::domain_error);
    }
}

TEST_CASE("rounding always yields a verifiable certificate") {
    const SdpInstance inst = build_sdp(mantel_problem_n4());
    std::mt19937 rng(20260814);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<std::vector<double>>> numeric;
        for (const FlagBlock& b : inst.blocks) {
            const size_t d = b.flags.size();
            std::vector<std::vector<double>> m(d, std::vector<double>(d));
            for (size_t i = 0; i < d; ++i)
                for (size_t j = 0; j <= i; ++j) m[i][j] = m[j][i] = dist(rng);
            numeric.push_back(m);
        }
        const Certificate cert = round_solution(inst, numeric, Int(100));
        CHECK(verify_certificate(inst, cert).ok);
    }
}

TEST_CASE("infeasible problems are flagged") {
    DensityProblem p = mantel_problem();
    ColoredGraph e1(2, 2);
    ColoredGraph e2(2, 2);
    e2.set_color(0, 1, 2);
    p.forbidden = {e1, e2};  // no pair can take any color
    const SdpInstance inst = build_sdp(p);
    CHECK(inst.infeasible);
    CHECK(inst.graphs.empty());
}

TEST_CASE("case problems take shape from their discretization") {
    const DensityProblem rho512 = case_problem(CaseId::parse("rho512"));
    CHECK(rho512.N == 4);
    CHECK(rho512.k == 6);
    CHECK(rho512.u == std::vector<Rat>{Rat(0), frac(1, 5), frac(1, 2), frac(3, 5), frac(4, 5), Rat(1)});
    CHECK_NOTHROW(rho512.validate());
    for (const ColoredGraph& f : rho512.forbidden) CHECK(f.order() <= 4);

    const DensityProblem rho614 = case_problem(CaseId::parse("rho614"));
    CHECK(rho614.N == 4);
    CHECK(rho614.k == 7);
    CHECK(rho614.u[6] == 1);

    const DensityProblem rho411 = case_problem(CaseId::parse("rho411"));
    CHECK(rho411.N == 5);
    CHECK(rho411.k == 5);
    CHECK(rho411.u == std::vector<Rat>{Rat(0), frac(1, 4), frac(1, 2), frac(3, 4), Rat(1)});
    // the five vertex patterns stay in this window
    bool has_order5 = false;
    for (const ColoredGraph& f : rho411.forbidden) has_order5 = has_order5 || f.order() == 5;
    CHECK(has_order5);

    const DensityProblem p6 = case_problem(CaseId::parse("p6(10)"));
    CHECK(p6.N == 4);
    CHECK(p6.k == 6);
    CHECK(p6.u[5] == frac(1, 2));
}

TEST_CASE("rho512 instance matches its frozen shape") {
    // shape values cross-checked against an independent brute force over all
    // 2451 canonical 6-colorings of the 4-clique
    const SdpInstance inst = build_sdp(case_problem(CaseId::parse("rho512")));
    CHECK_FALSE(inst.infeasible);
    CHECK(inst.problem.forbidden.size() == 785);
    CHECK(inst.graphs.size() == 1145);
    REQUIRE(inst.blocks.size() == 6);
    std::vector<size_t> dims;
    for (const FlagBlock& b : inst.blocks) {
        CHECK(b.type.order() == 2);
        dims.push_back(b.flags.size());
    }
    CHECK(dims == std::vector<size_t>{36, 36, 31, 28, 26, 21});

    // every admissible graph stays within the trivial objective bounds and
    // none contains a forbidden pattern
    const auto& forbidden = inst.problem.forbidden;
    for (size_t g = 0; g < inst.graphs.size(); ++g) {
        CHECK(inst.objective[g] >= 0);
        CHECK(inst.objective[g] <= 1);
        for (const ColoredGraph& f : forbidden) CHECK_FALSE(contains_colored(inst.graphs[g], f));
    }

    // the sharp construction forces any valid bound to at least 10/19, so
    // the trivial certificate's bound must clear it as well
    Rat max_obj(0);
    for (const Rat& o : inst.objective) max_obj = std::max(max_obj, o);
    CHECK(max_obj >= frac(10, 19));
}

TEST_CASE("shipped solver outputs round to the exact optimum") {
    const std::string dir = WTURAN_FIXTURES;
    {
        const SdpInstance inst = build_sdp(mantel_problem());
        const auto numeric = parse_numeric_solution_file(dir + "/mantel.sol");
        const Certificate cert = round_solution(inst, numeric, Int(1000));
        CHECK(cert.lambda == frac(1, 2));
        CHECK(verify_certificate(inst, cert).ok);
    }
    {
        const SdpInstance inst = build_sdp(mantel_problem_n4());
        const auto numeric = parse_numeric_solution_file(dir + "/mantel4.sol");
        const Certificate cert = round_solution(inst, numeric, Int(100));
        CHECK(cert.lambda == frac(1, 2));
        CHECK(verify_certificate(inst, cert).ok);
    }
}

TEST_CASE("certificate files round trip") {
    Certificate cert = mantel_certificate();
    cert.q.push_back({{Rat(3)}});
    std::ostringstream out;
    write_certificate(out, cert);
    CHECK(out.str() == "lambda 1/2\nblock 0 2\n1/2 -1/2\n-1/2 1/2\nblock 1 1\n3\n");

    std::istringstream in(out.str());
    const Certificate back = parse_certificate(in);
    CHECK(back.lambda == cert.lambda);
    CHECK(back.q == cert.q);

    std::ostringstream out2;
    write_certificate(out2, back);
    CHECK(out2.str() == out.str());
}

TEST_CASE("certificate parse errors") {
    auto expect_fail = [](const std::string& text, const std::string& what) {
        std::istringstream in(text);
        try {
            parse_certificate(in);
            FAIL_CHECK("expected parse_error for: " << text);
        } catch (const parse_error& e) {
            CHECK(std::string(e.what()).find(what) != std::string::npos);
        }
    };
    expect_fail("", "empty");
    expect_fail("block 0 2\n1 0\n0 1\n", "lambda");
    expect_fail("lambda x\n", "bad rational");
    expect_fail("lambda 1/2\nblock 1 2\n", "block ids");
    expect_fail("lambda 1/2\nblock 0 2\n1/2 -1/2\n", "truncated");
    expect_fail("lambda 1/2\nblock 0 2\n1/2\n-1/2 1/2\n", "expected 2 entries");
    expect_fail("lambda 1/2\nblock 0 0\n", "dimension");
}

TEST_CASE("numeric solution files parse") {
    std::istringstream in(
        "# solver output\n"
        "block 0 2\n"
        "0.5 -0.5\n"
        "-0.5 0.51\n"
        "block 1 1\n"
        "1e-3\n");
    const auto blocks = parse_numeric_solution(in);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0][1][1] == doctest::Approx(0.51));
    CHECK(blocks[1][0][0] == doctest::Approx(0.001));

    auto expect_fail = [](const std::string& text, const std::string& what) {
        std::istringstream in2(text);
        try {
            parse_numeric_solution(in2);
            FAIL_CHECK("expected parse_error for: " << text);
        } catch (const parse_error& e) {
            CHECK(std::string(e.what()).find(what) != std::string::npos);
        }
    };
    expect_fail("", "empty");
    expect_fail("block 0 2\n0.5 -0.5\n", "truncated");
    expect_fail("block 0 1\npotato\n", "bad number");
    expect_fail("block 1 1\n0.5\n", "block ids");
}

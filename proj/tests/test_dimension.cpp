#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include <limitdisc/dimension.hpp>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace limitdisc;
using Catch::Approx;

namespace {
GeneratorSet two_fixtures(double g1, double g2) {
    return GeneratorSet({{"A", make_tangent_generator(g1, Complex(1.0, 0.0), Complex(1.0, 0.0))},
                         {"B", make_tangent_generator(g2, Complex(1.0, 0.0), Complex(1.0, 0.0))}});
}
} // namespace

TEST_CASE("minimizing the log power sum", "[dimension]") {
    SECTION("gammas {4, 1/2}: stationary point at s = 1/3") {
        const std::vector<double> gs{4.0, 0.5};
        const auto m = minimize_power_sum(gs);
        CHECK(m.s_star == Approx(1.0 / 3.0).margin(1e-11));
        CHECK(m.log_value / std::log(2.0) == Approx(std::log2(3.0) - 2.0 / 3.0).margin(1e-12));
        // dense scan oracle
        const auto scan = oracles::grid_min_log_power_sum(gs);
        CHECK(std::abs(scan.first - m.s_star) < 2e-6);
        CHECK(std::abs(scan.second - m.log_value) < 1e-11);
    }
    SECTION("reciprocal pairs are symmetric: minimum at s = 0") {
        for (double c : {2.0, 5.0, 10.0}) {
            const std::vector<double> gs{c, 1.0 / c};
            const auto m = minimize_power_sum(gs);
            CHECK(m.s_star == Approx(0.0).margin(1e-11));
            CHECK(m.log_value == Approx(std::log(2.0)).margin(1e-11));
        }
    }
    SECTION("one-sided gammas have no interior minimum") {
        CHECK_THROWS_AS(minimize_power_sum(std::vector<double>{0.5, 0.25}), NoInteriorMinimumError);
        CHECK_THROWS_AS(minimize_power_sum(std::vector<double>{2.0, 4.0}), NoInteriorMinimumError);
    }
    SECTION("convexity witness") {
        auto r = fixtures::rng(83);
        const std::vector<double> gs{3.0, 0.7, 0.4};
        for (int i = 0; i < 200; ++i) {
            const double s1 = fixtures::uniform(r, -2.0, 2.0);
            const double s2 = fixtures::uniform(r, -2.0, 2.0);
            auto q = [&](double s) {
                double acc = 0.0;
                for (double g : gs) acc += std::pow(g, -s);
                return acc;
            };
            CHECK(q(0.5 * (s1 + s2)) <= 0.5 * (q(s1) + q(s2)) + 1e-12);
        }
    }
    SECTION("minimizer optimality") {
        const std::vector<double> gs{4.0, 0.5};
        const auto m = minimize_power_sum(gs);
        CHECK(m.log_value <= detail::log_power_sum(gs, m.s_star + 1e-6) + 1e-15);
        CHECK(m.log_value <= detail::log_power_sum(gs, m.s_star - 1e-6) + 1e-15);
    }
    SECTION("clamping: with all gammas below 1 the grid minimum sits at s = 0") {
        const std::vector<double> gs{0.5, 0.25, 0.8};
        const auto scan = oracles::grid_min_log_power_sum(gs);
        CHECK(scan.first == Approx(0.0).margin(1e-12));
        CHECK(scan.second == Approx(std::log(3.0)).margin(1e-12));
    }
}

TEST_CASE("dimension from the tangency graph", "[dimension]") {
    SECTION("{g,h,k}: log(golden ratio)/log 3") {
        const auto F = fixtures::ghk();
        const auto G = build_tangency_graph(F, 1e-9);
        const auto rep = dimension_spectral(F, G);
        const double expected = (std::log(1.0 + std::sqrt(5.0)) - std::log(2.0)) / std::log(3.0);
        CHECK(rep.value == Approx(expected).margin(1e-9));
        CHECK(rep.method == DimensionMethod::SpectralRadius);
    }
    SECTION("acyclic graphs carry no chains") {
        // two tangent generators whose alphas/betas do not match up
        const GeneratorSet F(
            {{"A", make_tangent_generator(0.5, Complex(1.0, 0.0), Complex(1.0, 0.0))},
             {"B", MobiusMap(Complex(1.0), Complex(0.0), Complex(0.0), Complex(2.0))}});
        auto G = build_tangency_graph(F, 1e-9);
        G.adjacency[0][0] = 0; // break the self-loop to force acyclicity
        const auto rep = dimension_spectral(F, G);
        CHECK(rep.value == Approx(0.0));
    }
    SECTION("single generator: the base-1 metric degenerates") {
        const GeneratorSet F({{"A", make_tangent_generator(0.5, Complex(1.0, 0.0), Complex(1.0, 0.0))}});
        const auto G = build_tangency_graph(F, 1e-9);
        CHECK_THROWS_AS(dimension_spectral(F, G), LogBaseDegenerateError);
    }
    SECTION("tangent gamma >= 1 violates the hypothesis") {
        const auto F = two_fixtures(2.0, 0.5);
        const auto G = build_tangency_graph(F, 1e-9);
        CHECK_THROWS_AS(dimension_spectral(F, G), HypothesisViolatedError);
    }
}

TEST_CASE("dimension over a complete graph", "[dimension]") {
    SECTION("mixed gammas {4, 1/2}: the analytic value log2(3) - 2/3") {
        const auto F = two_fixtures(4.0, 0.5);
        const auto G = build_tangency_graph(F, 1e-9);
        REQUIRE(is_complete(G));
        const auto rep = dimension_complete_graph(F, G);
        CHECK(rep.value == Approx(std::log2(3.0) - 2.0 / 3.0).margin(1e-9));
        REQUIRE(rep.s_star.has_value());
        CHECK(*rep.s_star == Approx(1.0 / 3.0).margin(1e-9));
    }
    SECTION("all gammas >= 1 gives 0, all below 1 gives 1") {
        const auto F0 = two_fixtures(2.0, 1.5);
        CHECK(dimension_complete_graph(F0, build_tangency_graph(F0, 1e-9)).value == Approx(0.0));
        const auto F1 = two_fixtures(0.5, 0.25);
        CHECK(dimension_complete_graph(F1, build_tangency_graph(F1, 1e-9)).value == Approx(1.0));
    }
    SECTION("incomplete graphs are rejected") {
        const auto F = fixtures::ghk();
        CHECK_THROWS_AS(dimension_complete_graph(F, build_tangency_graph(F, 1e-9)),
                        GraphNotCompleteError);
    }
    SECTION("agreement: complete graph with all gammas < 1 also satisfies the spectral route") {
        const auto F = two_fixtures(0.5, 0.25);
        const auto G = build_tangency_graph(F, 1e-9);
        CHECK(dimension_spectral(F, G).value == Approx(1.0).margin(1e-9));
        CHECK(dimension_complete_graph(F, G).value == Approx(1.0));
    }
}

TEST_CASE("general dispatch and upper bounds", "[dimension]") {
    SECTION("defers to the exact regimes when their hypotheses hold") {
        const auto F = fixtures::ghk();
        const auto G = build_tangency_graph(F, 1e-9);
        CHECK(dimension_upper_bound(F, G).method == DimensionMethod::SpectralRadius);
        const auto Fc = two_fixtures(4.0, 0.5);
        CHECK(dimension_upper_bound(Fc, build_tangency_graph(Fc, 1e-9)).method ==
              DimensionMethod::CompleteGraph);
    }
    SECTION("incomplete graph with mixed gammas: min of the two bounds") {
        const GeneratorSet F(
            {{"A", make_tangent_generator(4.0, Complex(1.0, 0.0), Complex(1.0, 0.0))},
             {"B", make_tangent_generator(0.5, Complex(1.0, 0.0), Complex(1.0, 0.0))},
             {"C", make_tangent_generator(0.5, Complex(1.0, 0.0), Complex(-1.0, 0.0))}});
        const auto G = build_tangency_graph(F, 1e-9);
        REQUIRE_FALSE(is_complete(G));
        const auto rep = dimension_upper_bound(F, G);
        CHECK(rep.method == DimensionMethod::UpperBoundOnly);
        // chain bound: the {A,B} block is complete, rho = 2, bound log 2/log 3;
        // series bound is 1 at s = 0, so the chain bound wins
        CHECK(rep.value == Approx(std::log(2.0) / std::log(3.0)).margin(1e-9));
    }
    SECTION("dimension is invariant under reordering the generators") {
        const auto F1 = two_fixtures(4.0, 0.5);
        const auto F2 = two_fixtures(0.5, 4.0);
        const auto v1 = dimension_upper_bound(F1, build_tangency_graph(F1, 1e-9)).value;
        const auto v2 = dimension_upper_bound(F2, build_tangency_graph(F2, 1e-9)).value;
        CHECK(v1 == Approx(v2).margin(1e-12));
    }
}

TEST_CASE("tangent generator fixtures round-trip", "[dimension]") {
    auto check_fixture = [](double gamma, Complex p) {
        const MobiusMap f = make_tangent_generator(gamma, Complex(1.0, 0.0), p);
        const auto d = tangency_data(f);
        REQUIRE(d.tangent);
        CHECK(chordal_metric(d.alpha, ExtComplex(p)) < 1e-9);
        CHECK(chordal_metric(d.beta, ExtComplex(p)) < 1e-9);
        CHECK(*d.gamma == Approx(gamma).epsilon(1e-9));
    };
    check_fixture(0.5, Complex(1.0, 0.0));
    check_fixture(2.0, Complex(1.0, 0.0));
    check_fixture(1.0, Complex(-1.0, 0.0));
    check_fixture(4.0, Complex(0.0, 1.0));
    SECTION("invalid parameters are rejected") {
        CHECK_THROWS_AS(make_tangent_generator(0.5, Complex(-1.0, 0.0), Complex(1.0, 0.0)),
                        ConstructionFailedError);
        CHECK_THROWS_AS(make_tangent_generator(0.5, Complex(1.0, 0.0), Complex(0.5, 0.0)),
                        ConstructionFailedError);
    }
}

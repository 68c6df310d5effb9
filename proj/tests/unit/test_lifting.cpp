#include <catch_amalgamated.hpp>

#include <random>

#include "../support/categories.hpp"
#include "../support/fixtures.hpp"
#include "../support/homotopy_fixture.hpp"
#include "simpfib/lifting.hpp"

using namespace simpfib;

namespace {

SMap terminal_map(const SimplicialSet& x) {
    const SimplicialSet point = standard_simplex(0);
    std::vector<std::vector<Simplex>> images(static_cast<std::size_t>(x.dimension() + 1));
    for (int d = 0; d <= x.dimension(); ++d)
        for (int k = 0; k < x.cell_count(d); ++k)
            images[static_cast<std::size_t>(d)].push_back(Simplex{d, 0, 0, d == 0 ? 0u : (1u << d) - 1});
    return SMap(x, point, images);
}

/// Vertex v of Delta^1 as a map from Delta^0.
SMap vertex_of_interval(int v) {
    const int image[] = {v};
    return map_from_vertices(standard_simplex(0), standard_simplex(1), image);
}

/// Number of composable strings of n non-identity morphisms in a poset.
long long chain_count(const FiniteCategory& p, int n) {
    std::vector<long long> ending(static_cast<std::size_t>(p.object_count()), 1);
    for (int step = 0; step < n; ++step) {
        std::vector<long long> next(ending.size(), 0);
        for (const auto& m : p.morphisms())
            if (m.source != m.target) next[static_cast<std::size_t>(m.target)] += ending[static_cast<std::size_t>(m.source)];
        ending = next;
    }
    long long total = 0;
    for (long long e : ending) total += e;
    return total;
}

}  // namespace

TEST_CASE("identity map lifts a horn to the top cell", "[lifting]") {
    const SimplicialSet d2 = standard_simplex(2);
    const SMap lambda = horn_inclusion(2, 1);
    const auto lift = solve_horn_lift(identity_map(d2), lambda, identity_map(d2));
    REQUIRE(lift);
    REQUIRE((*lift)(standard_simplex(2).at("012")) == d2.at("012"));
}

TEST_CASE("the one-edge circle has no filler for its (2,1)-horn", "[lifting]") {
    const SimplicialSet circle = fixture::polygon(1);
    const SMap p = terminal_map(circle);
    HornProblem problem{2, 1, {circle.at("e0"), std::nullopt, circle.at("e0")}, Simplex{2, 0, 0, 3u}};
    REQUIRE_FALSE(solve_horn_lift(p, problem));
    REQUIRE(horn_fillers(p, problem).empty());
}

TEST_CASE("horn problems are validated face by face", "[lifting]") {
    const SimplicialSet circle = fixture::polygon(1);
    const SMap p = terminal_map(circle);
    HornProblem bad{2, 1, {circle.at("e0"), std::nullopt, circle.at("v0")}, Simplex{2, 0, 0, 3u}};
    REQUIRE_THROWS_WITH(solve_horn_lift(p, bad), Catch::Matchers::ContainsSubstring("d2"));
}

TEST_CASE("inner horns in poset nerves have exactly one filler", "[lifting][nerve]") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 6; ++trial) {
        const FiniteCategory poset = fixture::random_poset(rng, 6, 0.5);
        const SimplicialSet n = nerve(poset);
        LiftingSearch search(identity_map(n));
        long long problems = 0;
        for (int deg = 2; deg <= 3; ++deg)
            for (int i = 1; i < deg; ++i)
                for (const Simplex& sigma : n.simplices(deg))
                    search.for_each_horn(deg, i, sigma, nullptr, [&](const HornProblem& problem) {
                        ++problems;
                        CHECK(search.solutions(problem).size() == 1);
                        return true;
                    });
        CHECK(problems > 0);
    }
}

TEST_CASE("poset nerves have the composable-string cell counts", "[nerve]") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const FiniteCategory poset = fixture::random_poset(rng, 7, 0.4);
        const SimplicialSet n = nerve(poset);
        for (int d = 0; d <= n.dimension() + 1; ++d) CHECK(n.cell_count(d) == chain_count(poset, d));
        CHECK_FALSE(n.truncation());
    }
}

TEST_CASE("inner fibration certificates", "[lifting]") {
    SECTION("identity of a nerve") {
        const SimplicialSet n = nerve(fixture::double_cover_poset());
        for (int cap = 2; cap <= 4; ++cap) CHECK(certify_inner_fibration(identity_map(n), cap).verdict == Verdict::certified);
    }
    SECTION("terminal map of the one-edge circle") {
        const SMap p = terminal_map(fixture::polygon(1));
        const Certificate c = certify_inner_fibration(p, 3);
        REQUIRE(c.verdict == Verdict::refuted);
        REQUIRE(c.witness);
        CHECK(c.witness->kind == Witness::Kind::horn);
        CHECK(c.witness->problem.n == 2);
        CHECK(c.witness->problem.missing == 1);
        CHECK(recheck_witness(p, c));
        const Json j = certificate_json(p, c);
        CHECK(j["witness"]["problem"]["horn"] == Json::array({2, 1}));
    }
    SECTION("maps between nerves") {
        std::mt19937 rng(3);
        for (int trial = 0; trial < 5; ++trial) {
            const FiniteCategory a = fixture::random_poset(rng, 5, 0.5);
            const FiniteCategory b = fixture::random_poset(rng, 4, 0.5);
            const SMap p = nerve_functor(fixture::random_monotone(rng, a, b));
            for (int cap = 2; cap <= 4; ++cap) CHECK(certify_inner_fibration(p, cap).verdict == Verdict::certified);
        }
    }
    SECTION("cap below two is rejected") {
        CHECK_THROWS_AS(certify_inner_fibration(identity_map(standard_simplex(1)), 1), InputError);
    }
}

TEST_CASE("cartesian edges", "[lifting]") {
    const SimplicialSet d2 = standard_simplex(2);
    for (const char* e : {"01", "02", "12"}) CHECK(is_cartesian_edge(identity_map(d2), d2.at(e), 3).verdict == Verdict::certified);
    const SMap cover = nerve_functor(fixture::double_cover_functor());
    for (int k = 0; k < cover.source().cell_count(1); ++k) {
        const Simplex e = cover.source().cell_simplex(1, k);
        CHECK(is_cartesian_edge(cover, e, 3).verdict == Verdict::certified);
        CHECK(is_cocartesian_edge(cover, e, 3).verdict == Verdict::certified);
    }
    CHECK_THROWS_AS(is_cartesian_edge(cover, cover.source().cell_simplex(0, 0), 3), InputError);
}

TEST_CASE("fibration classes of standard examples", "[lifting]") {
    SECTION("product projection") {
        const FiberProduct prod = product(nerve(fixture::c4()), standard_simplex(2));
        const FibrationClass c = certify_fibration_class(prod.second(), 3);
        CHECK(c.inner.verdict == Verdict::certified);
        CHECK(c.cartesian.verdict == Verdict::certified);
        CHECK(c.cocartesian.verdict == Verdict::certified);
    }
    SECTION("double cover") {
        const SMap p = nerve_functor(fixture::double_cover_functor());
        const FibrationClass c = certify_fibration_class(p, default_cap(p));
        CHECK(c.inner.verdict == Verdict::certified);
        CHECK(c.cartesian.verdict == Verdict::certified);
        CHECK(c.cocartesian.verdict == Verdict::certified);
        CHECK(c.cartesian.notes.front().find("every degree") != std::string::npos);
    }
    SECTION("vertex inclusions into the interval") {
        const SMap top = vertex_of_interval(1);
        const FibrationClass c1 = certify_fibration_class(top, 3);
        REQUIRE(c1.cartesian.verdict == Verdict::refuted);
        REQUIRE(c1.cartesian.witness);
        CHECK(c1.cartesian.witness->kind == Witness::Kind::missing_lift);
        CHECK(top.target().name(c1.cartesian.witness->base_edge) == "01");
        CHECK(recheck_witness(top, c1.cartesian));
        CHECK(c1.cocartesian.verdict == Verdict::certified);

        const SMap bottom = vertex_of_interval(0);
        const FibrationClass c0 = certify_fibration_class(bottom, 3);
        CHECK(c0.cartesian.verdict == Verdict::certified);
        REQUIRE(c0.cocartesian.verdict == Verdict::refuted);
        CHECK(c0.cocartesian.witness->cocartesian);
        CHECK(recheck_witness(bottom, c0.cocartesian));
    }
}

TEST_CASE("cartesian and cocartesian verdicts are dual under opposites", "[lifting]") {
    std::vector<SMap> maps = {vertex_of_interval(0), vertex_of_interval(1), terminal_map(fixture::polygon(2)),
                              nerve_functor(fixture::double_cover_functor()),
                              nerve_functor(object_functor(fixture::c4(), "a"))};
    std::mt19937 rng(5);
    for (int k = 0; k < 4; ++k)
        maps.push_back(nerve_functor(fixture::random_monotone(rng, fixture::random_poset(rng, 5, 0.5), fixture::random_poset(rng, 3, 0.6))));
    for (const SMap& p : maps)
        for (int cap = 2; cap <= 4; ++cap) {
            const FibrationClass a = certify_fibration_class(p, cap);
            const FibrationClass b = certify_fibration_class(opposite_map(p), cap);
            CHECK(a.cartesian.verdict == b.cocartesian.verdict);
            CHECK(a.cocartesian.verdict == b.cartesian.verdict);
        }
}

TEST_CASE("last vertex contraction", "[lifting]") {
    SECTION("n = 0") {
        const SMap h = last_vertex_contraction(0);
        CHECK(h.source().cell_count(1) == 1);
        CHECK(h.image(1, 0) == Simplex{1, 0, 0, 1u});
    }
    SECTION("n = 1") {
        const SMap h = last_vertex_contraction(1);
        const FiberProduct prod = product(standard_simplex(1), standard_simplex(1));
        const SimplicialSet& d1 = prod.second().target();
        for (const auto& [i, t, expected] : std::vector<std::tuple<const char*, const char*, const char*>>{
                 {"0", "0", "0"}, {"1", "0", "1"}, {"0", "1", "1"}, {"1", "1", "1"}})
            CHECK(h(prod.pair(d1.at(i), d1.at(t))) == d1.at(expected));
    }
    SECTION("n = 2 restricts to the identity and the constant map") {
        const SMap h = last_vertex_contraction(2);
        const SimplicialSet d2 = standard_simplex(2);
        const SimplicialSet d1 = standard_simplex(1);
        const FiberProduct prod = product(d2, d1);
        for (int d = 0; d <= 2; ++d)
            for (int k = 0; k < d2.cell_count(d); ++k) {
                const Simplex s = d2.cell_simplex(d, k);
                const std::uint32_t all = d == 0 ? 0u : (1u << d) - 1;
                CHECK(h(prod.pair(s, Simplex{d, 0, d1.at("0").cell, all})) == s);
                CHECK(h(prod.pair(s, Simplex{d, 0, d1.at("1").cell, all})) == Simplex{d, 0, d2.at("2").cell, all});
            }
    }
}

TEST_CASE("homotopy lifting", "[lifting][homotopy]") {
    SECTION("I = J returns F0") {
        const SMap p = nerve_functor(fixture::double_cover_functor());
        const SimplicialSet point = standard_simplex(0);
        const FiberProduct cyl = product(point, standard_simplex(1));
        const SimplicialSet& x = p.source();
        const int side_image[] = {x.at("a0").cell, x.at("x0").cell};
        std::vector<int> vertex_images;
        for (int k = 0; k < cyl.set().cell_count(0); ++k) vertex_images.push_back(side_image[cyl.components(0, k).second.cell]);
        const SMap side = map_from_vertices(cyl.set(), x, vertex_images);
        const int bottom_image[] = {x.at("a0").cell};
        const PartialLift f0{map_from_vertices(point, x, bottom_image), side};
        const SMap f = compose(p, side);
        const SMap lift = lift_homotopy(p, identity_map(point), f0, f);
        CHECK(lift == side);
    }
    SECTION("a vertex of the double cover lifts along its unique edge") {
        const SMap p = nerve_functor(fixture::double_cover_functor());
        const SimplicialSet point = standard_simplex(0);
        const SimplicialSet empty;
        const FiberProduct cyl = product(point, standard_simplex(1));
        const SimplicialSet& y = p.target();
        const int path[] = {y.at("a").cell, y.at("x").cell};
        std::vector<int> base;
        for (int k = 0; k < cyl.set().cell_count(0); ++k) base.push_back(path[cyl.components(0, k).second.cell]);
        const SMap f = map_from_vertices(cyl.set(), y, base);
        const int start[] = {p.source().at("a1").cell};
        const PartialLift f0{map_from_vertices(point, p.source(), start), SMap(product(empty, standard_simplex(1)).set(), p.source(), {})};
        const SMap lift = lift_homotopy(p, SMap(empty, point, {}), f0, f);
        CHECK(p.source().cell(lift.image(1, 0)).id == "a1<x1");
        CHECK(audit_homotopy_lift(p, SMap(empty, point, {}), f0, f, lift, 3).passed());
    }
    SECTION("an edge over a product projection") {
        const SimplicialSet nc = nerve(fixture::c4());
        const SimplicialSet d1 = standard_simplex(1);
        const FiberProduct total = product(nc, d1);
        const SMap p = total.second();
        const SMap incl = boundary_inclusion(1);
        const FiberProduct prod_i = product(d1, d1);
        const FiberProduct prod_j = product(incl.source(), d1);
        auto vertex = [&](const char* o, const char* t) { return total.pair(nc.at(o), d1.at(t)).cell; };
        const int bottom[] = {vertex("a", "0"), vertex("x", "0")};
        std::vector<int> side;
        for (int k = 0; k < prod_j.set().cell_count(0); ++k) {
            const auto& [j, t] = prod_j.components(0, k);
            const char* object = incl.source().cell(j).id == "0" ? "a" : "x";
            side.push_back(vertex(object, d1.cell(t).id.c_str()));
        }
        const PartialLift f0{map_from_vertices(d1, total.set(), bottom), map_from_vertices(prod_j.set(), total.set(), side)};
        const SMap f = prod_i.second();
        const SMap lift = lift_homotopy(p, incl, f0, f);
        const LiftAudit audit = audit_homotopy_lift(p, incl, f0, f, lift, 3);
        CHECK(audit.passed());
        // Both prism cells go to the 2-simplices (a,0) -> (a,1) -> (x,1) and (a,0) -> (x,0) -> (x,1).
        REQUIRE(prod_i.set().cell_count(2) == 2);
        std::vector<std::vector<int>> seen;
        for (int k = 0; k < 2; ++k) seen.push_back(total.set().vertices(lift.image(2, k)));
        std::sort(seen.begin(), seen.end());
        std::vector<std::vector<int>> expected = {{vertex("a", "0"), vertex("a", "1"), vertex("x", "1")},
                                                  {vertex("a", "0"), vertex("x", "0"), vertex("x", "1")}};
        std::sort(expected.begin(), expected.end());
        CHECK(seen == expected);
    }
    SECTION("prism over a 2-simplex and its adversarial variant") {
        const fixture::PrismProblem ok = fixture::prism_problem(false);
        const SMap lift = lift_homotopy(ok.p, ok.incl, ok.f0, ok.f);
        CHECK(audit_homotopy_lift(ok.p, ok.incl, ok.f0, ok.f, lift, 4).passed());

        const fixture::PrismProblem bad = fixture::prism_problem(true);
        try {
            (void)lift_homotopy(bad.p, bad.incl, bad.f0, bad.f);
            FAIL("expected a LiftError");
        } catch (const LiftError& e) {
            REQUIRE(e.problem());
            CHECK(e.problem()->n == 2);
            CHECK(e.problem()->missing == 0);
            CHECK_FALSE(solve_horn_lift(bad.p, *e.problem()));
        }
    }
    SECTION("inconsistent data is an input error") {
        const fixture::PrismProblem ok = fixture::prism_problem(false);
        const fixture::PrismProblem bad = fixture::prism_problem(true);
        CHECK_THROWS_AS(lift_homotopy(ok.p, ok.incl, PartialLift{ok.f0.bottom, bad.f0.side}, ok.p), InputError);
    }
}

TEST_CASE("fiber transport on homology", "[lifting][transport]") {
    SECTION("product projection transports by the identity") {
        const FiberProduct prod = product(nerve(fixture::c4()), standard_simplex(1));
        const TransportResult t = transport_homology(prod.second(), standard_simplex(1).at("01"));
        REQUIRE(t.invertible);
        REQUIRE(t.iso);
        for (const auto& m : t.maps) CHECK(m.is_identity());
        CHECK(t.maps.size() == 3);
        CHECK(t.maps[2].matrix.rows() == 0);
        CHECK(t.maps[1].matrix.rows() == 1);
    }
    SECTION("double cover: the loop a -> x <- b -> y <- a swaps the sheets") {
        const SMap p = nerve_functor(fixture::double_cover_functor());
        const SimplicialSet& y = p.target();
        auto forward = [&](const char* e) { return transport_homology(p, y.at(e), Direction::forward).maps.at(0); };
        auto backward = [&](const char* e) { return transport_homology(p, y.at(e), Direction::backward).maps.at(0); };
        const HomologyMap loop = compose(backward("a<y"), compose(forward("b<y"), compose(backward("b<x"), forward("a<x"))));
        REQUIRE(loop.matrix == IntMatrix::from_rows({{0, 1}, {1, 0}}));
        for (const char* e : {"a<x", "a<y", "b<x", "b<y"}) {
            const auto there = forward(e);
            const auto back = backward(e);
            CHECK(compose(back, there).is_identity());
            const auto lifted = transport_by_lifting(p, y.at(e));
            REQUIRE(lifted.size() >= 1);
            CHECK(lifted[0].matrix == there.matrix);
        }
    }
    SECTION("transport along a composite is the product of transports") {
        const FiniteCategory discrete = FiniteCategory::from_poset({"p", "q", "r"}, {});
        const Functor f = Functor::thin(discrete, fixture::interval(2), {0, 1, 2});
        const CommaCategory comma = comma_category(f);
        const SMap p = nerve_functor(comma.to_target);
        const SimplicialSet& y = p.target();
        const auto t01 = transport_homology(p, y.at("0<1"));
        const auto t12 = transport_homology(p, y.at("1<2"));
        const auto t02 = transport_homology(p, y.at("0<2"));
        REQUIRE(t01.invertible);
        REQUIRE(t12.invertible);
        REQUIRE(t02.invertible);
        CHECK(compose(t12.maps[0], t01.maps[0]).matrix == t02.maps[0].matrix);
        CHECK(t02.maps[0].matrix.rows() == 3);
        CHECK(t02.maps[0].matrix.cols() == 1);
        CHECK_FALSE(t02.iso);
        const auto lifted = transport_by_lifting(p, y.at("0<2"));
        CHECK(lifted[0].matrix == t02.maps[0].matrix);
    }
    SECTION("comma projection with an empty fiber") {
        const Functor f = object_functor(fixture::c4(), "a");
        const SMap p = nerve_functor(comma_category(f).to_target);
        const TransportResult t = transport_homology(p, p.target().at("b<x"));
        CHECK(t.source_homology.group(0).rank() == 0);
        CHECK(t.target_homology.group(0).rank() == 1);
        CHECK_FALSE(t.iso);
        const TransportResult back = transport_homology(p, p.target().at("b<x"), Direction::backward);
        CHECK_FALSE(back.invertible);
        CHECK(back.maps.empty());
        CHECK(is_cartesian_edge(opposite_map(p), opposite_simplex(p.source().cell_simplex(1, 0)), 3).verdict ==
              Verdict::certified);
    }
    SECTION("edges only") {
        const SMap p = nerve_functor(fixture::double_cover_functor());
        CHECK_THROWS_AS(transport_homology(p, p.target().at("a")), InputError);
    }
}

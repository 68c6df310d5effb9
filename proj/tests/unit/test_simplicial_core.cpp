#include <catch_amalgamated.hpp>

#include <functional>
#include <set>

#include "simpfib/constructions.hpp"
#include "simpfib/ssx.hpp"

using namespace simpfib;

namespace {

SimplicialSet circle() {
    SimplicialSetBuilder b;
    b.add_cell(0, "v");
    b.add_cell_named(1, "e", {{"", "v"}, {"", "v"}});
    return b.build();
}

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Strictly increasing chains of length k+1 in the grid poset [p] x [q]; these
// are the nondegenerate k-simplices of Delta^p x Delta^q.
long grid_chains(int p, int q, int k) {
    std::function<long(int, int, int)> extend = [&](int i, int j, int left) -> long {
        if (left == 0) return 1;
        long total = 0;
        for (int a = i; a <= p; ++a)
            for (int b = j; b <= q; ++b)
                if (a != i || b != j) total += extend(a, b, left - 1);
        return total;
    };
    long total = 0;
    for (int i = 0; i <= p; ++i)
        for (int j = 0; j <= q; ++j) total += extend(i, j, k);
    return total;
}

void check_degeneracy_identities(const SimplicialSet& x, int max_degree) {
    for (int n = 0; n < max_degree; ++n) {
        for (const Simplex& s : x.simplices(n)) {
            for (int j = 0; j <= n; ++j) {
                const Simplex sj = x.degeneracy(s, j);
                for (int i = 0; i <= n + 1; ++i) {
                    const Simplex lhs = x.face(sj, i);
                    Simplex rhs;
                    if (i < j) rhs = x.degeneracy(x.face(s, i), j - 1);
                    else if (i == j || i == j + 1) rhs = s;
                    else rhs = x.degeneracy(x.face(s, i - 1), j);
                    REQUIRE(lhs == rhs);
                }
            }
            for (int i = 1; i <= n && n >= 2; ++i)
                for (int k = 0; k < i; ++k) REQUIRE(x.face(x.face(s, i), k) == x.face(x.face(s, k), i - 1));
        }
    }
}

}  // namespace

TEST_CASE("degeneracy words round-trip through masks and surjections") {
    REQUIRE(degeneracy::format(degeneracy::from_word({2, 0})) == "2,0");
    REQUIRE(degeneracy::parse("") == 0u);
    REQUIRE(degeneracy::parse("2,0") == 0b101u);
    REQUIRE_THROWS_AS(degeneracy::parse("0,2"), std::invalid_argument);
    REQUIRE_THROWS_AS(degeneracy::parse("1,,0"), std::invalid_argument);
    // s_2 s_0 applied to an edge: [3] -> [1] is 0,0,1,1.
    REQUIRE(degeneracy::surjection(0b101u, 3) == std::vector<int>{0, 0, 1, 1});
    for (std::uint32_t m = 0; m < 64; ++m) REQUIRE(degeneracy::mask_of(degeneracy::surjection(m, 6)) == m);
    REQUIRE(degeneracy::reverse(0b001u, 3) == 0b100u);
}

TEST_CASE("standard simplices have binomial cell counts") {
    REQUIRE(standard_simplex(0).cell_counts() == std::vector<int>{1});
    REQUIRE(standard_simplex(1).cell_counts() == std::vector<int>{2, 1});
    REQUIRE(standard_simplex(2).cell_counts() == std::vector<int>{3, 3, 1});
    for (int n = 0; n <= 6; ++n) {
        const auto counts = standard_simplex(n).cell_counts();
        for (int k = 0; k <= n; ++k) REQUIRE(counts[static_cast<std::size_t>(k)] == binomial(n + 1, k + 1));
    }
    const auto d2 = standard_simplex(2);
    REQUIRE(d2.cell(2, 0).id == "012");
    REQUIRE(d2.name(d2.face(d2.at("012"), 1)) == "02");
}

TEST_CASE("boundaries and horns") {
    REQUIRE(boundary(2).cell_counts() == std::vector<int>{3, 3});
    REQUIRE(horn(2, 1).cell_counts() == std::vector<int>{3, 2});
    REQUIRE(boundary(0).empty());
    REQUIRE(horn(1, 0).cell_counts() == std::vector<int>{1});
    REQUIRE(horn(1, 0).cell(0, 0).id == "0");
    REQUIRE(horn(1, 1).cell(0, 0).id == "1");
    // Lambda^2_1 keeps the faces through vertex 1 only.
    REQUIRE(horn(2, 1).find("01"));
    REQUIRE(horn(2, 1).find("12"));
    REQUIRE_FALSE(horn(2, 1).find("02"));
    REQUIRE(horn(3, 0).cell_counts() == std::vector<int>{4, 6, 3});
    REQUIRE(is_injective(horn_inclusion(3, 2)));
    REQUIRE(is_injective(boundary_inclusion(3)));
    REQUIRE(boundary_inclusion(0).source().empty());
}

TEST_CASE("face and degeneracy arithmetic satisfies the simplicial identities") {
    check_degeneracy_identities(standard_simplex(2), 4);
    check_degeneracy_identities(circle(), 4);
    check_degeneracy_identities(horn(3, 1), 4);
    check_degeneracy_identities(product(circle(), standard_simplex(1)).set(), 4);
}

TEST_CASE("the circle has only degenerate simplices above degree one") {
    const auto c = circle();
    for (const Simplex& s : c.simplices(2)) REQUIRE_FALSE(s.nondegenerate());
    REQUIRE(c.simplices(2).size() == 3);  // s_0 e, s_1 e, s_1 s_0 v
    REQUIRE(c.simplices(3).size() == static_cast<std::size_t>(binomial(3, 2) + binomial(3, 3)));
}

TEST_CASE("products are enumerated by shuffles") {
    const auto d1 = standard_simplex(1);
    REQUIRE(product(d1, d1).set().cell_counts() == std::vector<int>{4, 5, 2});
    REQUIRE(product(standard_simplex(2), d1).set().cell_count(3) == 3);

    for (int p = 0; p <= 4; ++p) {
        for (int q = 0; p + q <= 6; ++q) {
            const auto counts = product(standard_simplex(p), standard_simplex(q)).set().cell_counts();
            REQUIRE(static_cast<int>(counts.size()) == p + q + 1);
            REQUIRE(counts.back() == binomial(p + q, p));
            if (p + q <= 4)
                for (int k = 0; k <= p + q; ++k) REQUIRE(counts[static_cast<std::size_t>(k)] == grid_chains(p, q, k));
        }
    }
}

TEST_CASE("product with a point is the identity up to the projection") {
    for (int n = 0; n <= 3; ++n) {
        const auto prod = product(standard_simplex(n), standard_simplex(0));
        REQUIRE(is_isomorphism(prod.first()));
    }
}

TEST_CASE("products satisfy the universal property on small simplices") {
    const std::vector<std::pair<SimplicialSet, SimplicialSet>> cases = {
        {standard_simplex(1), standard_simplex(2)}, {circle(), standard_simplex(1)}, {circle(), circle()}};
    for (const auto& [x, y] : cases) {
        const auto prod = product(x, y);
        for (int k = 0; k <= 3; ++k) {
            std::set<std::pair<Simplex, Simplex>> seen;
            for (const Simplex& s : prod.set().simplices(k)) {
                auto pr = std::make_pair(prod.first()(s), prod.second()(s));
                REQUIRE(seen.insert(pr).second);
                REQUIRE(prod.pair(pr.first, pr.second) == s);
            }
            REQUIRE(seen.size() == x.simplices(k).size() * y.simplices(k).size());
        }
    }
}

TEST_CASE("semi-simplicial input is rejected by products") {
    SimplicialSetBuilder b(false);
    b.add_cell(0, "a");
    REQUIRE_THROWS_AS(product(b.build(), standard_simplex(1)), InputError);
}

TEST_CASE("pullbacks") {
    const auto d2 = standard_simplex(2);
    const auto id = identity_map(d2);
    const auto pb = pullback(id, id);
    REQUIRE(is_isomorphism(pb.first()));
    REQUIRE(is_isomorphism(pb.second()));
    REQUIRE(compose(id, pb.first()) == compose(id, pb.second()));

    // Fiber of the trivial bundle circle x Delta^1 -> Delta^1 over a vertex.
    const auto prod = product(circle(), standard_simplex(1));
    const auto vertex = classifying_map(standard_simplex(1), standard_simplex(1).at("1"));
    const auto fiber = pullback(vertex, prod.second());
    REQUIRE(fiber.set().cell_counts() == std::vector<int>{1, 1});
    REQUIRE(is_isomorphism(compose(prod.first(), fiber.second())));
    REQUIRE(compose(vertex, fiber.first()) == compose(prod.second(), fiber.second()));

    // Restriction over a vertex is the pullback along that vertex.
    const auto restricted = restrict_over_simplex(prod.second(), standard_simplex(1).at("1"));
    REQUIRE(restricted.set() == fiber.set());
}

TEST_CASE("restriction over a simplex") {
    const auto d1 = standard_simplex(1);
    const auto over_edge = restrict_over_simplex(identity_map(d1), d1.at("01"));
    REQUIRE(is_isomorphism(over_edge.first()));
    REQUIRE(is_isomorphism(over_edge.second()));

    // Over a degenerate simplex of the base.
    const Simplex degenerate = d1.degeneracy(d1.at("0"), 0);
    const auto over_degenerate = restrict_over_simplex(identity_map(d1), degenerate);
    REQUIRE(over_degenerate.set().cell_counts() == std::vector<int>{2, 1});

    // Inclusion of the fiber over the last vertex.
    const auto over_vertex = restrict_over_simplex(identity_map(d1), d1.at("1"));
    const int theta[] = {1};
    const auto incl = fiber_inclusion(over_vertex, over_edge, theta);
    REQUIRE(is_injective(incl));
}

TEST_CASE("opposites") {
    for (int n = 0; n <= 4; ++n) {
        const auto d = standard_simplex(n);
        std::vector<int> flip;
        for (int k = 0; k <= n; ++k) flip.push_back(n - k);
        REQUIRE(is_isomorphism(map_from_vertices(opposite(d), d, flip)));
    }
    const auto prod = product(circle(), standard_simplex(2));
    REQUIRE(opposite(opposite(prod.set())) == prod.set());
    REQUIRE(opposite_map(opposite_map(prod.first())) == prod.first());
    const auto h = horn(3, 1);
    REQUIRE(opposite(opposite(h)) == h);
}

TEST_CASE("skeleta") {
    auto [sk, incl] = skeleton(standard_simplex(2), 1);
    REQUIRE(sk == boundary(2));
    REQUIRE(is_injective(incl));
    const auto d3 = standard_simplex(3);
    REQUIRE(skeleton(d3, 3).first == d3);
    REQUIRE(skeleton(d3, -1).first.empty());
}

TEST_CASE("SSX emission is canonical and round-trips") {
    const std::string expected =
        R"({"kind":"sset","simplicial":true,"cells":{"0":[{"id":"0"},{"id":"1"}],"1":[{"id":"01","faces":[["","1"],["","0"]]}]}})"
        "\n";
    REQUIRE(emit_ssx(standard_simplex(1)) == expected);

    const auto prod = product(circle(), standard_simplex(1));
    for (const SimplicialSet& x : {standard_simplex(3), horn(3, 2), prod.set(), boundary(0)}) {
        const std::string text = emit_ssx(x);
        REQUIRE(std::get<SimplicialSet>(parse_ssx(text)) == x);
        REQUIRE(emit_ssx(parse_sset(text)) == text);
    }
    const std::string map_text = emit_ssx(prod.first());
    REQUIRE(std::get<SMap>(parse_ssx(map_text)) == prod.first());
    REQUIRE(emit_ssx(parse_smap(map_text)) == map_text);
}

TEST_CASE("SSX diagnostics") {
    SECTION("face degree mismatch") {
        const std::string text =
            R"({"kind":"sset","simplicial":true,"cells":{"0":[{"id":"v"}],"1":[{"id":"e","faces":[["","v"],["","v"]]}],)"
            R"("2":[{"id":"t","faces":[["","e"],["","v"],["","e"]]}]}})";
        REQUIRE_THROWS_AS(parse_ssx(text), ValidationError);
    }
    SECTION("simplicial identity violation names the cell") {
        const std::string text =
            R"({"kind":"sset","cells":{"0":[{"id":"a"},{"id":"b"}],"1":[{"id":"e","faces":[["","b"],["","a"]]},)"
            R"({"id":"f","faces":[["","a"],["","b"]]}],"2":[{"id":"t","faces":[["","e"],["","e"],["","e"]]}]}})";
        try {
            parse_ssx(text);
            FAIL("expected a validation error");
        } catch (const ValidationError& e) {
            REQUIRE(std::string(e.what()).find("\"t\"") != std::string::npos);
        }
    }
    SECTION("malformed JSON reports a position") {
        try {
            parse_ssx("{\"kind\":\"sset\",\n\"cells\": [}");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            REQUIRE(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
    SECTION("missing field reports its path") {
        try {
            parse_ssx(R"({"kind":"sset","cells":{"0":[{"name":"a"}]}})");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            REQUIRE(std::string(e.what()).find("/cells/0/0") != std::string::npos);
        }
    }
    SECTION("semi-simplicial faces may not be degenerate") {
        const std::string text =
            R"({"kind":"sset","simplicial":false,"cells":{"0":[{"id":"v"}],"1":[{"id":"e","faces":[["","v"],["","v"]]}],)"
            R"("2":[{"id":"t","faces":[["0","v"],["","e"],["","e"]]}]}})";
        REQUIRE_THROWS_AS(parse_ssx(text), ValidationError);
    }
}

TEST_CASE("maps that do not commute with faces are rejected") {
    const auto d1 = standard_simplex(1);
    // Sends the edge to itself but swaps the endpoints.
    std::vector<std::vector<Simplex>> images = {{d1.at("1"), d1.at("0")}, {d1.at("01")}};
    REQUIRE_THROWS_AS(SMap(d1, d1, images), ValidationError);
}

TEST_CASE("simplices with prescribed vertices") {
    const auto d3 = standard_simplex(3);
    const int seq[] = {0, 0, 2, 3, 3};
    const Simplex s = simplex_with_vertices(d3, 3, seq);
    REQUIRE(d3.name(s) == "s3,0:023");
    REQUIRE(d3.vertices(s) == std::vector<int>{0, 0, 2, 3, 3});
    REQUIRE(d3.parse_name("s3,0:023") == s);
}

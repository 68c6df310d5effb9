// One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "../support/categories.hpp"
#include "../support/homotopy_fixture.hpp"
#include "../support/oracles.hpp"
#include "simpfib/theorem_b.hpp"
#include "simpfib/verify.hpp"

using namespace simpfib;

namespace {

/// Collects failed expectations of one criterion.
struct Check {
    std::vector<std::string> failures;
    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

bool run(int id, const std::string& title, const std::function<void(Check&)>& body) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.expect(seconds < 10.0, "took " + std::to_string(seconds) + " s");
    std::cout << (c.failures.empty() ? "PASS" : "FAIL") << " criterion " << id << ": " << title << "\n";
    for (const auto& f : c.failures) std::cout << "    " << f << "\n";
    return c.failures.empty();
}

/// Library homology against the elimination oracle, and against the expected
/// free ranks when given.
void homology_matches(Check& c, const SimplicialSet& x, const std::string& name, const std::vector<int>& expected) {
    const HomologyProfile h = homology(x);
    const std::vector<int> b = oracle::betti(x);
    std::vector<int> lib;
    for (std::size_t k = 0; k < b.size(); ++k) lib.push_back(h.group(static_cast<int>(k)).betti);
    c.expect(lib == b, name + ": Betti numbers disagree with the oracle");
    c.expect(b == expected, name + ": Betti numbers differ from the expected profile");
    for (int p : {2, 3, 5}) {
        const auto t = oracle::torsion_count(x, p);
        for (std::size_t k = 0; k < t.size(); ++k) {
            int count = 0;
            for (const auto& o : h.group(static_cast<int>(k)).torsion)
                if (o % p == 0) ++count;
            c.expect(count == t[k], name + ": torsion at " + std::to_string(p) + " disagrees in degree " + std::to_string(k));
            c.expect(t[k] == 0, name + ": unexpected torsion");
        }
    }
}

long long chi_oracle(const SimplicialSet& x) {
    long long total = 0;
    for (int d = 0; d <= x.dimension(); ++d) total += (d % 2 == 0 ? 1 : -1) * x.cell_count(d);
    return total;
}

/// 20 random posets with up to 8 elements, and monotone maps out of each.
std::vector<Functor> functor_sample() {
    std::mt19937 rng(20240601);
    std::vector<Functor> out;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + trial % 6;
        const FiniteCategory p = fixture::random_poset(rng, n, 0.45);
        const FiniteCategory q = fixture::random_poset(rng, 2 + trial % 3, 0.6);
        out.push_back(identity_functor(p));
        out.push_back(Functor::thin(p, point_category(), std::vector<int>(static_cast<std::size_t>(n), 0)));
        out.push_back(fixture::random_monotone(rng, p, q));
    }
    return out;
}

struct Process {
    int code = -1;
    std::string out;
};

Process run_tool(const std::string& args) {
    Process r;
    const std::string command = std::string(SIMPFIB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string corpus(const std::string& name) { return std::string(SIMPFIB_CORPUS_DIR) + "/" + name; }

SMap vertex_map(const SimplicialSet& y, const char* id) {
    const int image[] = {y.at(id).cell};
    return map_from_vertices(standard_simplex(0), y, image);
}

const ConsequenceResult* consequence(const VerificationReport& r, const std::string& name) {
    for (const auto& c : r.consequences)
        if (c.name == name) return &c;
    return nullptr;
}

void criterion1(Check& c) {
    long long problems = 0;
    for (const Functor& f : functor_sample()) {
        const SMap p = nerve_functor(f);
        LiftingSearch search(p);
        for (int n = 2; n <= 3; ++n)
            for (int i = 1; i < n; ++i)
                for (const Simplex& sigma : p.target().simplices(n))
                    search.for_each_horn(n, i, sigma, nullptr, [&](const HornProblem& problem) {
                        ++problems;
                        const auto fillers = search.solutions(problem);
                        c.expect(fillers.size() == 1, "inner horn with " + std::to_string(fillers.size()) + " fillers");
                        return true;
                    });
        c.expect(certify_inner_fibration(p, 3).verdict == Verdict::certified, "inner certificate not certified");
    }
    c.expect(problems > 0, "no inner horn problems were generated");
}

void criterion2(Check& c) {
    int fibrations = 0, non_fibrations = 0;
    for (const Functor& f : functor_sample()) {
        const SMap p = nerve_functor(f);
        const bool fib = is_grothendieck_fibration(f);
        const bool opfib = is_grothendieck_opfibration(f);
        (fib ? fibrations : non_fibrations)++;
        for (int cap = 2; cap <= 4; ++cap) {
            const FibrationClass fc = certify_fibration_class(p, cap);
            c.expect((fc.cartesian.verdict == Verdict::certified) == fib, "cartesian verdict disagrees at cap " + std::to_string(cap));
            c.expect((fc.cocartesian.verdict == Verdict::certified) == opfib, "cocartesian verdict disagrees at cap " + std::to_string(cap));
        }
    }
    c.expect(fibrations > 0 && non_fibrations > 0, "sample does not contain both fibrations and non-fibrations");
}

void criterion3(Check& c) {
    const Functor cover = fixture::double_cover_functor();
    const SMap p = nerve_functor(cover);
    const FibrationClass fc = certify_fibration_class(p, default_cap(p));
    c.expect(fc.inner.verdict == Verdict::certified, "inner not certified");
    c.expect(fc.cartesian.verdict == Verdict::certified, "cartesian not certified");
    c.expect(fc.cocartesian.verdict == Verdict::certified, "cocartesian not certified");
    homology_matches(c, p.source(), "total nerve", {1, 1});

    const SimplicialSet& y = p.target();
    const FiniteCategory& e = cover.source();
    for (int v = 0; v < y.cell_count(0); ++v) {
        int sheets = 0;
        for (int o = 0; o < e.object_count(); ++o) sheets += cover.object(o) == cover.target().object_index(y.cell(0, v).id);
        const HomologyProfile h = homology(restrict_over_simplex(p, y.cell_simplex(0, v)).set());
        c.expect(sheets == 2 && h.group(0).betti == 2 && h.group(0).torsion.empty(), "vertex fiber is not Z^2");
    }

    // Sheet permutation from the cover's relations: over c -> c', sheet s of c
    // lies below exactly one sheet of c'. Sheets are numbered in id order.
    auto sheet_map = [&](const std::string& from, const std::string& to) {
        std::array<int, 2> m{-1, -1};
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t)
                if (!e.hom(e.object_index(from + std::to_string(s)), e.object_index(to + std::to_string(t))).empty()) m[s] = t;
        return m;
    };
    auto invert = [](std::array<int, 2> m) {
        std::array<int, 2> r{};
        for (int s = 0; s < 2; ++s) r[m[s]] = s;
        return r;
    };
    auto then = [](std::array<int, 2> f, std::array<int, 2> g) { return std::array<int, 2>{g[f[0]], g[f[1]]}; };
    const auto loop = then(then(then(sheet_map("a", "x"), invert(sheet_map("b", "x"))), sheet_map("b", "y")),
                           invert(sheet_map("a", "y")));
    // Column s of the permutation matrix has its 1 in row loop[s].
    const IntMatrix expected = IntMatrix::from_rows({{loop[0] == 0, loop[1] == 0}, {loop[0] == 1, loop[1] == 1}});
    c.expect(loop == std::array<int, 2>{1, 0}, "covering enumeration does not give the swap");

    auto fwd = [&](const char* edge) { return transport_homology(p, y.at(edge), Direction::forward).maps.at(0); };
    auto bwd = [&](const char* edge) { return transport_homology(p, y.at(edge), Direction::backward).maps.at(0); };
    const HomologyMap around = compose(bwd("a<y"), compose(fwd("b<y"), compose(bwd("b<x"), fwd("a<x"))));
    c.expect(around.matrix == expected, "loop transport is " + around.matrix.to_string());

    const long long cx = euler_characteristic(p.source()).value;
    const long long cy = euler_characteristic(y).value;
    const long long cf = euler_characteristic(restrict_over_simplex(p, y.at("a")).set()).value;
    c.expect(cx == chi_oracle(p.source()) && cy == chi_oracle(y), "Euler characteristic disagrees with cell counts");
    c.expect(cx == 0 && cf == 2 && cy == 0 && cx == cf * cy, "chi(X) = chi(fiber) chi(base) fails");
}

void criterion4(Check& c) {
    const TheoremBReport r = theorem_b_report(identity_functor(fixture::c4()));
    c.expect(r.hypothesis, "hypothesis not satisfied");
    for (const auto& s : r.slices) {
        c.expect(s.contractible, "slice over " + s.object + " is not homology-contractible");
        c.expect(s.matches_fiber, "slice over " + s.object + " differs from the vertex fiber");
    }
    const CommaCategory comma = comma_category(identity_functor(fixture::c4()));
    homology_matches(c, nerve(comma.category), "N(Id/C4)", {1, 1, 0});
    c.expect(r.comma_homology.group(0).betti == 1 && r.comma_homology.group(1).betti == 1 &&
                 r.comma_homology.group(2).trivial(),
             "H(N(Id/C4)) is not (Z, Z)");
    c.expect(r.source_projection_iso, "projection to N(C4) is not a homology isomorphism");
    const InducedHomology to_d = induced_homology(nerve_functor(comma.to_target));
    c.expect(to_d.iso, "projection to N(D) is not a homology isomorphism");
    c.expect(r.verdict == Verdict::certified, "verdict is " + to_string(r.verdict));
}

bool is_edge(const FiniteCategory& d, const std::string& from, const std::string& to) {
    return from != to && !d.hom(d.object_index(from), d.object_index(to)).empty();
}

void criterion5(Check& c) {
    const Functor f = object_functor(fixture::c4(), "a");
    const TheoremBReport r = theorem_b_report(f);
    c.expect(!r.hypothesis, "hypothesis reported as satisfied");
    c.expect(r.verdict == Verdict::refuted, "verdict is " + to_string(r.verdict));
    if (!r.failing_edge) {
        c.expect(false, "no failing edge named");
        return;
    }
    const EdgeTransport& t = *r.failing_edge;
    // Oracle: the slice over d has one object per arrow a -> d.
    const FiniteCategory& d = f.target();
    const auto slice_size = [&](const std::string& o) { return static_cast<int>(d.hom(d.object_index("a"), d.object_index(o)).size()); };
    c.expect(std::min(t.from_components, t.to_components) == 0 && std::max(t.from_components, t.to_components) == 1,
             "witness edge does not compare an empty fiber with a singleton");
    c.expect(slice_size(t.from) == t.from_components && slice_size(t.to) == t.to_components,
             "witness fibers disagree with the hom-set count");
    c.expect(is_edge(d, t.from, t.to), "witness is not an edge of N(C4)");
}

void criterion6(Check& c) {
    const fixture::PrismProblem ok = fixture::prism_problem(false);
    const SMap lift = lift_homotopy(ok.p, ok.incl, ok.f0, ok.f);
    const LiftAudit audit = audit_homotopy_lift(ok.p, ok.incl, ok.f0, ok.f, lift, 4);
    c.expect(audit.commutes, "lift does not commute with p");
    c.expect(audit.extends, "lift does not extend F0");
    c.expect(audit.designated_cocartesian, "designated edges are not cocartesian");

    const fixture::PrismProblem bad = fixture::prism_problem(true);
    try {
        (void)lift_homotopy(bad.p, bad.incl, bad.f0, bad.f);
        c.expect(false, "adversarial fixture produced a lift");
    } catch (const LiftError& e) {
        c.expect(e.problem().has_value(), "LiftError carries no problem");
        if (e.problem()) c.expect(!solve_horn_lift(bad.p, *e.problem()), "stuck problem has a solution");
    }
}

void criterion7(Check& c) {
    for (int n = 0; n <= 5; ++n) {
        std::vector<int> expected(static_cast<std::size_t>(n + 1), 0);
        expected[0] = 1;
        homology_matches(c, standard_simplex(n), "Delta^" + std::to_string(n), expected);
        c.expect(homology(standard_simplex(n)).is_point(), "Delta^" + std::to_string(n) + " is not acyclic");
    }
    for (int n = 2; n <= 5; ++n) {
        std::vector<int> expected(static_cast<std::size_t>(n), 0);
        expected[0] += 1;
        expected[static_cast<std::size_t>(n - 1)] += 1;
        homology_matches(c, boundary(n), "boundary of Delta^" + std::to_string(n), expected);
    }
    homology_matches(c, horn(2, 1), "Lambda^2_1", {1, 0});
    c.expect(homology(horn(2, 1)).is_point(), "Lambda^2_1 is not acyclic");
    for (int p = 0; p <= 5; ++p)
        for (int q = 0; p + q <= 5; ++q) {
            const SimplicialSet x = product(standard_simplex(p), standard_simplex(q)).set();
            const std::string name = "Delta^" + std::to_string(p) + " x Delta^" + std::to_string(q);
            c.expect(chi_oracle(x) == 1, name + ": cell count alternating sum is not 1");
            c.expect(euler_characteristic(x).value == 1, name + ": chi is not 1");
        }
}

void criterion8(Check& c) {
    const SimplicialSet nc = nerve(fixture::c4());
    const SimplicialSet d1 = standard_simplex(1);
    const SMap cover = nerve_functor(fixture::double_cover_functor());

    const VerificationReport first = ltg_check(vertex_map(d1, "0"), product(nc, d1).second(), 4);
    const Json j1 = report_json(first);
    c.expect(first.verdict == Verdict::certified, "example 1 verdict is " + to_string(first.verdict));
    c.expect(j1["details"]["pullback"]["cells"] == Json(nc.cell_counts()), "example 1 pullback is not N(C4)");
    c.expect(j1["details"]["pullback"]["homology"] == homology_json(homology(nc)), "example 1 pullback homology");
    c.expect(oracle::betti(nc) == std::vector<int>{1, 1}, "N(C4) is not (Z, Z)");
    c.expect(j1["details"]["euler"] == Json({{"total", 0}, {"fiber", 0}, {"base", 1}}), "example 1 Euler values");

    const VerificationReport second = ltg_check(vertex_map(cover.target(), "a"), cover, 3);
    const Json j2 = report_json(second);
    c.expect(second.verdict == Verdict::certified, "example 2 verdict is " + to_string(second.verdict));
    c.expect(j2["details"]["pullback"]["cells"] == Json({2}), "example 2 pullback is not two points");
    c.expect(j2["details"]["euler"] == Json({{"total", 0}, {"fiber", 2}, {"base", 0}}), "example 2 Euler values");

    const VerificationReport third = ltg_check(identity_map(cover.target()), cover, 3);
    c.expect(third.verdict == Verdict::certified, "example 3 verdict is " + to_string(third.verdict));
    c.expect(report_json(third)["details"]["pullback"]["cells"] == Json(cover.source().cell_counts()),
             "example 3 pullback is not X");
    for (const auto* r : {&first, &second, &third})
        for (const char* name : {"pullback certified", "vertex fibers", "fiber constancy", "euler"}) {
            const ConsequenceResult* k = consequence(*r, name);
            c.expect(k && k->passed == true, std::string("consequence ") + name + " did not pass");
        }

    const std::vector<std::string> runs = {
        "ltg-check --cospan " + corpus("delta1_vertex0.ssx") + " " + corpus("c4_product.ssx"),
        "ltg-check --cospan " + corpus("c4_vertex_a.ssx") + " " + corpus("double_cover.ssx"),
        "ltg-check --cospan " + corpus("c4_identity.ssx") + " " + corpus("double_cover.ssx"),
    };
    const std::vector<const VerificationReport*> reports = {&first, &second, &third};
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const Process a = run_tool(runs[i] + " --json");
        const Process b = run_tool(runs[i] + " --json");
        c.expect(a.code == 0 && b.code == 0, "example " + std::to_string(i + 1) + " exit code " + std::to_string(a.code));
        c.expect(!a.out.empty() && a.out == b.out, "example " + std::to_string(i + 1) + " --json output is not byte-identical");
        if (!a.out.empty()) {
            Json tool = Json::parse(a.out);
            Json lib = report_json(*reports[i]);
            c.expect(tool["details"] == lib["details"] && tool["consequences"] == lib["consequences"],
                     "example " + std::to_string(i + 1) + " CLI report differs from the library report");
        }
    }
}

}  // namespace

int main() {
    bool ok = true;
    ok &= run(1, "inner-filler uniqueness on random poset nerves", criterion1);
    ok &= run(2, "Grothendieck predicate agrees with the simplicial certificates", criterion2);
    ok &= run(3, "double-cover suite", criterion3);
    ok &= run(4, "Theorem B positive case", criterion4);
    ok &= run(5, "Theorem B negative case", criterion5);
    ok &= run(6, "constructive homotopy lift and its adversarial variant", criterion6);
    ok &= run(7, "homology unit suite", criterion7);
    ok &= run(8, "ltg check suite and deterministic JSON", criterion8);
    return ok ? 0 : 1;
}

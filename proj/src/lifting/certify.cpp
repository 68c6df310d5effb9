#include <algorithm>
#include <sstream>

#include "internal.hpp"

namespace simpfib {

namespace {

std::optional<int> truncation_of(const SMap& p) {
    std::optional<int> t = p.source().truncation();
    if (const auto u = p.target().truncation()) t = t ? std::min(*t, *u) : *u;
    return t;
}

void require_cap(int cap) {
    if (cap < 2) throw InputError("the dimension cap must be at least 2");
}

/// Highest degree whose lifting problems are faithful to the input.
int effective_cap(const SMap& p, int cap) {
    const auto t = truncation_of(p);
    return t ? std::min(cap, *t) : cap;
}

/// Records what "certified" means for this cap and input.
void finish(Certificate& c, const SMap& p, int cap) {
    c.cap = cap;
    const auto t = truncation_of(p);
    if (t && *t < cap) {
        c.notes.push_back("nerve truncated at degree " + std::to_string(*t) + ": lifting problems checked up to degree " +
                          std::to_string(*t) + " only");
        if (c.verdict == Verdict::certified) c.verdict = Verdict::inconclusive;
        return;
    }
    if (c.verdict != Verdict::certified) return;
    if (p.source().is_nerve() && p.target().is_nerve() && !t && cap >= 3)
        c.notes.push_back("source and target are nerves of categories, so lifting problems above degree 3 are uniquely "
                          "solvable and the certificate holds in every degree");
    else
        c.notes.push_back("certified up to degree " + std::to_string(cap));
}

Simplex edge_last(const SimplicialSet& x, const Simplex& s) {
    const int v[] = {s.dim - 1, s.dim};
    return x.apply(s, v);
}

}  // namespace

namespace detail {

Certificate cartesian_edge_in(LiftingSearch& search, const Simplex& f, int cap) {
    const SMap& p = search.map();
    const SimplicialSet& x = search.total();
    const SimplicialSet& y = search.base();
    const Simplex g = p(f);
    Certificate c;
    for (int n = 2; n <= effective_cap(p, cap) && c.verdict == Verdict::certified; ++n) {
        const int pos[] = {n - 2, n - 1};
        auto filter = [&](int j, const Simplex& cand) { return j > n - 2 || x.apply(cand, pos) == f; };
        for (const Simplex& sigma : y.simplices(n)) {
            if (!(edge_last(y, sigma) == g)) continue;
            const bool done = search.for_each_horn(n, n, sigma, filter, [&](const HornProblem& problem) {
                ++c.problems_checked;
                if (search.solve(problem)) return true;
                c.verdict = Verdict::refuted;
                c.witness = Witness{Witness::Kind::horn, problem, f, {}, {}, false};
                return false;
            });
            if (!done) break;
        }
    }
    return c;
}

}  // namespace detail

namespace {

using detail::cartesian_edge_in;

struct EdgeSearch {
    Verdict verdict = Verdict::certified;
    long long problems = 0;
    std::optional<Witness> witness;
};

/// For every nondegenerate edge g of Y and every vertex c over d_0 g, looks
/// for an edge over g ending at c that passes the cartesian check.
EdgeSearch cartesian_lifts_in(LiftingSearch& search, int cap) {
    const SimplicialSet& x = search.total();
    const SimplicialSet& y = search.base();
    EdgeSearch out;
    if (y.dimension() < 1) return out;
    const bool truncated = effective_cap(search.map(), cap) < cap;
    for (int gi : y.id_order(1)) {
        const Simplex g = y.cell_simplex(1, gi);
        const auto& edges = search.fiber(g);
        for (const Simplex& c : search.fiber(y.face(g, 0))) {
            bool found = false;
            bool unsure = false;
            for (const Simplex& e : edges) {
                if (!(x.face(e, 0) == c)) continue;
                const Certificate ce = cartesian_edge_in(search, e, cap);
                out.problems += ce.problems_checked;
                if (ce.verdict != Verdict::certified) continue;
                // Below a truncation a passing edge is only a candidate.
                (truncated ? unsure : found) = true;
                break;
            }
            if (found) continue;
            if (unsure) {
                out.verdict = conjunction(out.verdict, Verdict::inconclusive);
                continue;
            }
            out.verdict = Verdict::refuted;
            out.witness = Witness{Witness::Kind::missing_lift, {}, {}, g, c, false};
            return out;
        }
    }
    return out;
}

Witness flip(Witness w) {
    if (w.kind == Witness::Kind::horn) {
        w.problem = opposite_problem(w.problem);
        if (w.tested_edge) w.tested_edge = opposite_simplex(*w.tested_edge);
    } else {
        w.base_edge = opposite_simplex(w.base_edge);
        w.vertex = opposite_simplex(w.vertex);
        w.cocartesian = !w.cocartesian;
    }
    return w;
}

Certificate lifts_certificate(const SMap& p, const Certificate& inner, LiftingSearch& search, int cap, bool opposite) {
    Certificate c;
    c.problems_checked = inner.problems_checked;
    c.verdict = inner.verdict;
    if (inner.verdict == Verdict::refuted) {
        c.witness = inner.witness;
        c.notes.push_back("not an inner fibration");
    } else {
        const EdgeSearch e = cartesian_lifts_in(search, cap);
        c.problems_checked += e.problems;
        c.verdict = conjunction(c.verdict, e.verdict);
        if (e.witness) c.witness = opposite ? flip(*e.witness) : *e.witness;
    }
    finish(c, p, cap);
    return c;
}

std::string verdict_phrase(const Certificate& c) {
    switch (c.verdict) {
        case Verdict::certified: return "certified up to degree " + std::to_string(c.cap);
        case Verdict::refuted: return "refuted";
        case Verdict::inconclusive: return "inconclusive at cap " + std::to_string(c.cap);
    }
    return "";
}

Json witness_json(const SMap& p, const Witness& w) {
    Json j;
    if (w.kind == Witness::Kind::horn) {
        j["kind"] = "horn";
        j["problem"] = horn_problem_json(p, w.problem);
        if (w.tested_edge) j["tested_edge"] = simplex_to_json(p.source(), *w.tested_edge);
    } else {
        j["kind"] = "missing_lift";
        j["lifts"] = w.cocartesian ? "cocartesian" : "cartesian";
        j["base_edge"] = simplex_to_json(p.target(), w.base_edge);
        j["vertex"] = simplex_to_json(p.source(), w.vertex);
    }
    return j;
}

std::string witness_text(const SMap& p, const Witness& w) {
    if (w.kind == Witness::Kind::horn) {
        std::string s = "no lift for " + horn_problem_text(p, w.problem);
        if (w.tested_edge) s += " (testing edge " + p.source().name(*w.tested_edge) + ")";
        return s;
    }
    return std::string("no ") + (w.cocartesian ? "cocartesian" : "cartesian") + " lift of edge " +
           p.target().name(w.base_edge) + (w.cocartesian ? " starting at " : " ending at ") + p.source().name(w.vertex);
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::certified: return "certified";
        case Verdict::refuted: return "refuted";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "";
}

Verdict conjunction(Verdict a, Verdict b) {
    if (a == Verdict::refuted || b == Verdict::refuted) return Verdict::refuted;
    if (a == Verdict::inconclusive || b == Verdict::inconclusive) return Verdict::inconclusive;
    return Verdict::certified;
}

Json certificate_json(const SMap& p, const Certificate& c) {
    Json j;
    j["verdict"] = to_string(c.verdict);
    j["cap"] = c.cap;
    j["problems_checked"] = c.problems_checked;
    j["witness"] = c.witness ? witness_json(p, *c.witness) : Json();
    j["notes"] = c.notes;
    return j;
}

std::string certificate_text(const SMap& p, const Certificate& c) {
    std::ostringstream out;
    out << verdict_phrase(c) << " (" << c.problems_checked << " lifting problems)";
    if (c.witness) out << "\n  witness: " << witness_text(p, *c.witness);
    for (const auto& note : c.notes) out << "\n  note: " << note;
    return out.str();
}

int default_cap(const SMap& p) { return std::max(p.source().dimension(), p.target().dimension()) + 2; }

Certificate certify_inner_fibration(const SMap& p, int cap) {
    require_cap(cap);
    LiftingSearch search(p);
    Certificate c;
    const SimplicialSet& y = p.target();
    for (int n = 2; n <= effective_cap(p, cap) && c.verdict == Verdict::certified; ++n) {
        for (int i = 1; i < n && c.verdict == Verdict::certified; ++i) {
            for (const Simplex& sigma : y.simplices(n)) {
                const bool done = search.for_each_horn(n, i, sigma, nullptr, [&](const HornProblem& problem) {
                    ++c.problems_checked;
                    if (search.solve(problem)) return true;
                    c.verdict = Verdict::refuted;
                    c.witness = Witness{Witness::Kind::horn, problem, std::nullopt, {}, {}, false};
                    return false;
                });
                if (!done) break;
            }
        }
    }
    finish(c, p, cap);
    return c;
}

Certificate is_cartesian_edge(const SMap& p, const Simplex& f, int cap) {
    require_cap(cap);
    if (f.dim != 1) throw InputError("not an edge: " + p.source().name(f));
    LiftingSearch search(p);
    Certificate c = cartesian_edge_in(search, f, cap);
    finish(c, p, cap);
    return c;
}

Certificate detail::cocartesian_edge_with(LiftingSearch& opposite_search, const SMap& p, const Simplex& f, int cap) {
    Certificate c = cartesian_edge_in(opposite_search, opposite_simplex(f), cap);
    if (c.witness) c.witness = flip(*c.witness);
    finish(c, p, cap);
    return c;
}

Certificate is_cocartesian_edge(const SMap& p, const Simplex& f, int cap) {
    require_cap(cap);
    if (f.dim != 1) throw InputError("not an edge: " + p.source().name(f));
    LiftingSearch search(opposite_map(p));
    return detail::cocartesian_edge_with(search, p, f, cap);
}

FibrationClass certify_fibration_class(const SMap& p, int cap) {
    FibrationClass out;
    out.inner = certify_inner_fibration(p, cap);
    LiftingSearch search(p);
    out.cartesian = lifts_certificate(p, out.inner, search, cap, false);
    LiftingSearch opposite_search(opposite_map(p));
    out.cocartesian = lifts_certificate(p, out.inner, opposite_search, cap, true);
    return out;
}

Json fibration_class_json(const SMap& p, const FibrationClass& c) {
    Json j;
    j["inner"] = certificate_json(p, c.inner);
    j["cartesian"] = certificate_json(p, c.cartesian);
    j["cocartesian"] = certificate_json(p, c.cocartesian);
    return j;
}

bool recheck_witness(const SMap& p, const Certificate& c) {
    if (c.verdict != Verdict::refuted || !c.witness) return false;
    const Witness& w = *c.witness;
    if (w.kind == Witness::Kind::horn) {
        LiftingSearch search(p);
        try {
            search.validate(w.problem);
        } catch (const InputError&) {
            return false;
        }
        return !search.solve(w.problem);
    }
    // Every edge over the base edge at the vertex must fail its own check.
    LiftingSearch search(w.cocartesian ? opposite_map(p) : p);
    const Simplex g = w.cocartesian ? opposite_simplex(w.base_edge) : w.base_edge;
    const Simplex v = w.cocartesian ? opposite_simplex(w.vertex) : w.vertex;
    for (const Simplex& e : search.fiber(g)) {
        if (!(search.total().face(e, 0) == v)) continue;
        if (cartesian_edge_in(search, e, c.cap).verdict != Verdict::refuted) return false;
    }
    return true;
}

}  // namespace simpfib

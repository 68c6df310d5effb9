#include "internal.hpp"

namespace simpfib {

namespace {

/// The k-simplex of Delta^1 constant at a vertex.
Simplex constant_at(const SimplicialSet& d1, const char* vertex, int k) {
    const Simplex v = d1.at(vertex);
    return Simplex{k, 0, v.cell, k == 0 ? 0u : (1u << k) - 1};
}

/// Map given by a rule on nondegenerate cells.
template <class Rule>
SMap cellwise(const SimplicialSet& source, const SimplicialSet& target, Rule rule) {
    std::vector<std::vector<Simplex>> images(static_cast<std::size_t>(source.dimension() + 1));
    for (int d = 0; d <= source.dimension(); ++d)
        for (int k = 0; k < source.cell_count(d); ++k) images[static_cast<std::size_t>(d)].push_back(rule(source.cell_simplex(d, k)));
    return SMap(source, target, std::move(images));
}

/// I -> I x Delta^1 at the given end.
SMap end_inclusion(const FiberProduct& prod, const char* vertex) {
    const SimplicialSet& d1 = prod.second().target();
    return cellwise(prod.first().target(), prod.set(),
                    [&](const Simplex& s) { return prod.pair(s, constant_at(d1, vertex, s.dim)); });
}

/// J x Delta^1 -> I x Delta^1.
SMap side_inclusion(const FiberProduct& prod_j, const FiberProduct& prod_i, const SMap& incl) {
    return cellwise(prod_j.set(), prod_i.set(), [&](const Simplex& s) {
        const auto& [a, b] = prod_j.components(s.cell_dim, s.cell);
        return prod_i.pair(incl(a), b);
    });
}

/// The edge (v,0) -> (v,1) of V x Delta^1.
Simplex vertical_edge(const FiberProduct& prod, int vertex) {
    const SimplicialSet& d1 = prod.second().target();
    return prod.pair(Simplex{1, 0, vertex, 1u}, d1.at("01"));
}

Simplex degenerate(const SimplicialSet& x, const Simplex& cell_image, const Simplex& s) {
    if (s.nondegenerate()) return cell_image;
    const auto op = degeneracy::surjection(s.degen, s.dim);
    return x.apply(cell_image, op);
}

struct Checked {
    FiberProduct prod_i;
    FiberProduct prod_j;
    SMap at_zero;
    SMap side_incl;
};

Checked check_lift_data(const SMap& p, const SMap& incl, const PartialLift& f0, const SMap& f) {
    const SimplicialSet& i_set = incl.target();
    const SimplicialSet& j_set = incl.source();
    const SimplicialSet d1 = standard_simplex(1);
    if (!is_injective(incl)) throw InputError("J -> I must be injective");
    FiberProduct prod_i = product(i_set, d1);
    FiberProduct prod_j = product(j_set, d1);
    if (!(f.source() == prod_i.set()) || !(f.target() == p.target()))
        throw InputError("the base homotopy must be a map I x Delta^1 -> Y");
    if (!(f0.bottom.source() == i_set) || !(f0.bottom.target() == p.source()))
        throw InputError("the bottom of F0 must be a map I -> X");
    if (!(f0.side.source() == prod_j.set()) || !(f0.side.target() == p.source()))
        throw InputError("the side of F0 must be a map J x Delta^1 -> X");
    SMap at_zero = end_inclusion(prod_i, "0");
    SMap side_incl = side_inclusion(prod_j, prod_i, incl);
    if (!(compose(p, f0.bottom) == compose(f, at_zero))) throw InputError("the bottom of F0 does not lie over f");
    if (!(compose(p, f0.side) == compose(f, side_incl))) throw InputError("the side of F0 does not lie over f");
    if (!(compose(f0.side, end_inclusion(prod_j, "0")) == compose(f0.bottom, incl)))
        throw InputError("the bottom and side of F0 disagree on J x {0}");
    return Checked{std::move(prod_i), std::move(prod_j), std::move(at_zero), std::move(side_incl)};
}

}  // namespace

SMap lift_homotopy(const SMap& p, const SMap& incl, const PartialLift& f0, const SMap& f, std::optional<int> cap_opt) {
    const Checked data = check_lift_data(p, incl, f0, f);
    const SimplicialSet& i_set = incl.target();
    const SimplicialSet& j_set = incl.source();
    const SimplicialSet& x = p.source();
    const FiberProduct& prod = data.prod_i;
    const SimplicialSet& cyl = prod.set();
    const SimplicialSet& d1 = prod.second().target();
    const int cap = cap_opt.value_or(std::max(i_set.dimension(), 0) + 2);
    if (cap < 2) throw InputError("the dimension cap must be at least 2");

    LiftingSearch search(p);
    LiftingSearch opposite_search(opposite_map(p));

    // The designated edges of F0 must be cocartesian.
    for (int v = 0; v < (j_set.empty() ? 0 : j_set.cell_count(0)); ++v) {
        const Simplex e = f0.side(vertical_edge(data.prod_j, v));
        const Certificate c = detail::cocartesian_edge_with(opposite_search, p, e, cap);
        if (c.verdict != Verdict::certified) {
            std::optional<HornProblem> stuck;
            if (c.witness && c.witness->kind == Witness::Kind::horn) stuck = c.witness->problem;
            throw LiftError("designated edge " + x.name(e) + " over vertex " + j_set.cell(0, v).id + " of J is " +
                                (c.verdict == Verdict::refuted ? "not p-cocartesian" : "not certified p-cocartesian") +
                                " up to degree " + std::to_string(cap),
                            stuck);
        }
    }

    // Cells of I coming from J.
    std::vector<std::vector<int>> from_j(static_cast<std::size_t>(i_set.dimension() + 1));
    for (int d = 0; d <= i_set.dimension(); ++d) from_j[static_cast<std::size_t>(d)].assign(static_cast<std::size_t>(i_set.cell_count(d)), -1);
    for (int d = 0; d <= j_set.dimension(); ++d)
        for (int k = 0; k < j_set.cell_count(d); ++k) {
            const Simplex s = incl.image(d, k);
            from_j[static_cast<std::size_t>(d)][static_cast<std::size_t>(s.cell)] = k;
        }

    std::vector<std::vector<std::optional<Simplex>>> images(static_cast<std::size_t>(cyl.dimension() + 1));
    for (int d = 0; d <= cyl.dimension(); ++d) images[static_cast<std::size_t>(d)].resize(static_cast<std::size_t>(cyl.cell_count(d)));
    const int zero = d1.at("0").cell;
    for (int d = 0; d <= cyl.dimension(); ++d) {
        for (int k = 0; k < cyl.cell_count(d); ++k) {
            const auto& [a, b] = prod.components(d, k);
            auto& slot = images[static_cast<std::size_t>(d)][static_cast<std::size_t>(k)];
            const int j = from_j[static_cast<std::size_t>(a.cell_dim)][static_cast<std::size_t>(a.cell)];
            if (b.cell_dim == 0 && b.cell == zero) slot = f0.bottom(a);
            else if (j >= 0) slot = f0.side(data.prod_j.pair(Simplex{a.dim, a.cell_dim, j, a.degen}, b));
        }
    }
    auto image_of = [&](const Simplex& s) {
        const auto& slot = images[static_cast<std::size_t>(s.cell_dim)][static_cast<std::size_t>(s.cell)];
        if (!slot) throw std::logic_error("prism face used before it was lifted");
        return degenerate(x, *slot, s);
    };
    auto assign = [&](const Simplex& cell, const Simplex& value) {
        if (!cell.nondegenerate()) throw std::logic_error("prism cell is degenerate");
        images[static_cast<std::size_t>(cell.cell_dim)][static_cast<std::size_t>(cell.cell)] = value;
    };

    const Simplex edge01 = d1.at("01");
    for (int n = 0; n <= i_set.dimension(); ++n) {
        for (int xi : i_set.id_order(n)) {
            if (from_j[static_cast<std::size_t>(n)][static_cast<std::size_t>(xi)] >= 0) continue;
            if (n == 0) {
                // A cocartesian edge starting at the bottom vertex.
                const Simplex e = vertical_edge(prod, xi);
                const Simplex start = image_of(prod.pair(i_set.cell_simplex(0, xi), d1.at("0")));
                const Simplex g = f(e);
                std::optional<Simplex> chosen;
                for (const Simplex& cand : search.fiber(g)) {
                    if (!(x.face(cand, 1) == start)) continue;
                    if (detail::cocartesian_edge_with(opposite_search, p, cand, cap).verdict == Verdict::certified) {
                        chosen = cand;
                        break;
                    }
                }
                if (!chosen)
                    throw LiftError("no p-cocartesian edge over " + p.target().name(g) + " starts at " + x.name(start) +
                                        " (vertex " + i_set.cell(0, xi).id + " of I)",
                                    HornProblem{1, 0, {std::nullopt, start}, g});
                assign(prod.pair(Simplex{1, 0, xi, 1u}, edge01), *chosen);
                assign(prod.pair(i_set.cell_simplex(0, xi), d1.at("1")), x.face(*chosen, 0));
                continue;
            }
            // Prism cells tau_k = (0,0)..(k,0),(k,1)..(n,1) for k = n down to 0.
            const std::uint32_t all = (1u << (n + 1)) - 1;
            for (int k = n; k >= 0; --k) {
                const Simplex a{n + 1, n, xi, 1u << k};
                const Simplex b{n + 1, 1, edge01.cell, all & ~(1u << k)};
                const Simplex tau = prod.pair(a, b);
                HornProblem problem;
                problem.n = n + 1;
                problem.missing = k;
                problem.base = f(tau);
                problem.faces.assign(static_cast<std::size_t>(n) + 2, std::nullopt);
                for (int j = 0; j <= n + 1; ++j)
                    if (j != k) problem.faces[static_cast<std::size_t>(j)] = image_of(cyl.face(tau, j));
                const auto filler = search.solve(problem);
                if (!filler)
                    throw LiftError("no filler for prism cell " + std::to_string(k) + " over cell " + i_set.cell(n, xi).id +
                                        " of I: " + horn_problem_text(p, problem),
                                    problem);
                assign(tau, *filler);
                assign(cyl.face(tau, k), x.face(*filler, k));
            }
        }
    }

    std::vector<std::vector<Simplex>> out(images.size());
    for (std::size_t d = 0; d < images.size(); ++d)
        for (const auto& slot : images[d]) {
            if (!slot) throw std::logic_error("cell of I x Delta^1 left without a lift");
            out[d].push_back(*slot);
        }
    return SMap(cyl, x, std::move(out));
}

LiftAudit audit_homotopy_lift(const SMap& p, const SMap& incl, const PartialLift& f0, const SMap& f, const SMap& lift,
                              int cap) {
    LiftAudit audit;
    const Checked data = check_lift_data(p, incl, f0, f);
    if (!(lift.source() == data.prod_i.set()) || !(lift.target() == p.source())) {
        audit.failures.push_back("the lift is not a map I x Delta^1 -> X");
        return audit;
    }
    audit.commutes = compose(p, lift) == f;
    if (!audit.commutes) audit.failures.push_back("p F differs from f");
    const bool bottom = compose(lift, data.at_zero) == f0.bottom;
    const bool side = compose(lift, data.side_incl) == f0.side;
    audit.extends = bottom && side;
    if (!bottom) audit.failures.push_back("F differs from F0 on I x {0}");
    if (!side) audit.failures.push_back("F differs from F0 on J x Delta^1");

    const SMap op = opposite_map(p);
    audit.designated_cocartesian = true;
    const SimplicialSet& i_set = incl.target();
    for (int v = 0; v < (i_set.empty() ? 0 : i_set.cell_count(0)); ++v) {
        const Simplex e = lift(vertical_edge(data.prod_i, v));
        if (is_cartesian_edge(op, opposite_simplex(e), cap).verdict != Verdict::certified) {
            audit.designated_cocartesian = false;
            audit.failures.push_back("edge over vertex " + i_set.cell(0, v).id + " is not p-cocartesian");
        }
    }
    return audit;
}

SMap last_vertex_contraction(int n) {
    const SimplicialSet delta = standard_simplex(n);
    const FiberProduct prod = product(delta, standard_simplex(1));
    const int one = prod.second().target().at("1").cell;
    std::vector<int> vertex_image;
    for (int k = 0; k < prod.set().cell_count(0); ++k) {
        const auto& [a, b] = prod.components(0, k);
        vertex_image.push_back(b.cell == one ? n : a.cell);
    }
    return map_from_vertices(prod.set(), delta, vertex_image);
}

}  // namespace simpfib

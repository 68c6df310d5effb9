#include "internal.hpp"

namespace simpfib {

namespace {

void pad(HomologyProfile& h, std::size_t degrees) {
    while (h.groups.size() < degrees) {
        HomologyGroup g;
        g.degree = static_cast<int>(h.groups.size());
        h.groups.push_back(std::move(g));
    }
}

Json matrix_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).convert_to<long long>());
        rows.push_back(std::move(row));
    }
    return rows;
}

Json leg_json(const InducedHomology& leg) {
    Json j;
    j["iso"] = leg.iso;
    j["pi0_bijection"] = leg.pi0_bijection;
    j["iso_by_degree"] = leg.iso_by_degree;
    return j;
}

struct Fibers {
    FiberProduct source;
    FiberProduct middle;
    FiberProduct target;
    SMap source_leg;
    SMap target_leg;
};

Fibers fibers_along(const SMap& p, const Simplex& edge) {
    if (edge.dim != 1) throw InputError("transport needs an edge of the base, got " + p.target().name(edge));
    const SimplicialSet& y = p.target();
    FiberProduct source = restrict_over_simplex(p, y.face(edge, 1));
    FiberProduct middle = restrict_over_simplex(p, edge);
    FiberProduct target = restrict_over_simplex(p, y.face(edge, 0));
    const int at_start[] = {0};
    const int at_end[] = {1};
    SMap a = fiber_inclusion(source, middle, at_start);
    SMap b = fiber_inclusion(target, middle, at_end);
    return Fibers{std::move(source), std::move(middle), std::move(target), std::move(a), std::move(b)};
}

}  // namespace

TransportResult transport_homology(const SMap& p, const Simplex& edge, Direction direction) {
    const Fibers fib = fibers_along(p, edge);
    TransportResult t;
    t.edge = edge;
    t.direction = direction;
    t.source_fiber = fib.source.set();
    t.middle_fiber = fib.middle.set();
    t.target_fiber = fib.target.set();
    t.source_homology = homology(t.source_fiber);
    t.middle_homology = homology(t.middle_fiber);
    t.target_homology = homology(t.target_fiber);
    const std::size_t degrees =
        std::max({t.source_homology.groups.size(), t.middle_homology.groups.size(), t.target_homology.groups.size()});
    pad(t.source_homology, degrees);
    pad(t.middle_homology, degrees);
    pad(t.target_homology, degrees);
    t.source_leg = induced_homology(fib.source_leg, t.source_homology, t.middle_homology);
    t.target_leg = induced_homology(fib.target_leg, t.target_homology, t.middle_homology);
    t.valid_below = t.source_leg.valid_below;
    if (t.target_leg.valid_below) t.valid_below = t.valid_below ? std::min(*t.valid_below, *t.target_leg.valid_below) : t.target_leg.valid_below;

    const InducedHomology& wrong = direction == Direction::forward ? t.target_leg : t.source_leg;
    const InducedHomology& right = direction == Direction::forward ? t.source_leg : t.target_leg;
    t.invertible = wrong.iso;
    if (!t.invertible) return t;
    const std::size_t n = std::min(wrong.maps.size(), right.maps.size());
    bool all = true;
    for (std::size_t k = 0; k < n; ++k) {
        const auto inv = inverse(wrong.maps[k]);
        if (!inv) throw std::logic_error("isomorphism without inverse");
        t.maps.push_back(compose(*inv, right.maps[k]));
        t.iso_by_degree.push_back(t.maps.back().is_isomorphism());
        all = all && t.iso_by_degree.back();
    }
    t.iso = all;
    return t;
}

Json transport_json(const SMap& p, const TransportResult& t) {
    const SimplicialSet& y = p.target();
    Json j;
    j["edge"] = simplex_to_json(y, t.edge);
    j["direction"] = t.direction == Direction::forward ? "forward" : "backward";
    j["source_vertex"] = simplex_to_json(y, y.face(t.edge, 1));
    j["target_vertex"] = simplex_to_json(y, y.face(t.edge, 0));
    Json fibers;
    fibers["source"] = homology_json(t.source_homology);
    fibers["middle"] = homology_json(t.middle_homology);
    fibers["target"] = homology_json(t.target_homology);
    j["fibers"] = std::move(fibers);
    Json legs;
    legs["source"] = leg_json(t.source_leg);
    legs["target"] = leg_json(t.target_leg);
    j["legs"] = std::move(legs);
    j["invertible"] = t.invertible;
    Json maps = Json::array();
    for (std::size_t k = 0; k < t.maps.size(); ++k) {
        Json m;
        m["degree"] = k;
        m["matrix"] = matrix_json(t.maps[k].matrix);
        m["iso"] = static_cast<bool>(t.iso_by_degree[k]);
        maps.push_back(std::move(m));
    }
    j["maps"] = std::move(maps);
    j["iso"] = t.iso;
    j["valid_below"] = t.valid_below ? Json(*t.valid_below) : Json();
    return j;
}

std::vector<HomologyMap> transport_by_lifting(const SMap& p, const Simplex& edge, std::optional<int> cap) {
    const Fibers fib = fibers_along(p, edge);
    const SimplicialSet& total = fib.middle.set();
    const SMap& over = fib.middle.first();  // X|_f -> Delta^1
    const SimplicialSet d1 = standard_simplex(1);

    // Base homotopy: (x, t) -> contraction(p(x), t).
    const FiberProduct square = product(d1, d1);
    const SMap contraction = last_vertex_contraction(1);
    const FiberProduct cylinder = product(total, d1);
    std::vector<std::vector<Simplex>> base_images(static_cast<std::size_t>(cylinder.set().dimension() + 1));
    for (int d = 0; d <= cylinder.set().dimension(); ++d)
        for (int k = 0; k < cylinder.set().cell_count(d); ++k) {
            const auto& [a, b] = cylinder.components(d, k);
            base_images[static_cast<std::size_t>(d)].push_back(contraction(square.pair(over(a), b)));
        }
    const SMap base_homotopy(cylinder.set(), d1, std::move(base_images));

    const SimplicialSet nothing;
    const SMap incl(nothing, total, {});
    const SMap side(product(nothing, d1).set(), total, {});
    const SMap lift = lift_homotopy(over, incl, PartialLift{identity_map(total), side}, base_homotopy, cap);

    // The end of the homotopy lands in the fiber over the last vertex.
    std::vector<std::vector<int>> preimage(static_cast<std::size_t>(total.dimension() + 1));
    for (int d = 0; d <= total.dimension(); ++d) preimage[static_cast<std::size_t>(d)].assign(static_cast<std::size_t>(total.cell_count(d)), -1);
    const SimplicialSet& end_fiber = fib.target.set();
    for (int d = 0; d <= end_fiber.dimension(); ++d)
        for (int k = 0; k < end_fiber.cell_count(d); ++k) {
            const Simplex s = fib.target_leg.image(d, k);
            preimage[static_cast<std::size_t>(s.cell_dim)][static_cast<std::size_t>(s.cell)] = k;
        }
    const int one = d1.at("1").cell;
    std::vector<std::vector<Simplex>> retraction(static_cast<std::size_t>(total.dimension() + 1));
    for (int d = 0; d <= total.dimension(); ++d)
        for (int k = 0; k < total.cell_count(d); ++k) {
            const Simplex at_end{d, 0, one, d == 0 ? 0u : (1u << d) - 1};
            const Simplex s = lift(cylinder.pair(total.cell_simplex(d, k), at_end));
            const int pre = preimage[static_cast<std::size_t>(s.cell_dim)][static_cast<std::size_t>(s.cell)];
            if (pre < 0) throw std::logic_error("end of the lifted homotopy leaves the fiber");
            retraction[static_cast<std::size_t>(d)].push_back(Simplex{s.dim, s.cell_dim, pre, s.degen});
        }
    const SMap r(total, end_fiber, std::move(retraction));

    HomologyProfile hs = homology(fib.source.set()), hm = homology(total), ht = homology(end_fiber);
    const std::size_t degrees = std::max({hs.groups.size(), hm.groups.size(), ht.groups.size()});
    pad(hs, degrees);
    pad(hm, degrees);
    pad(ht, degrees);
    const InducedHomology a = induced_homology(fib.source_leg, hs, hm);
    const InducedHomology ra = induced_homology(r, hm, ht);
    std::vector<HomologyMap> out;
    for (std::size_t k = 0; k < std::min(a.maps.size(), ra.maps.size()); ++k) out.push_back(compose(ra.maps[k], a.maps[k]));
    return out;
}

}  // namespace simpfib

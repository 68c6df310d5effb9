#include <sstream>

#include "simpfib/theorem_b.hpp"

namespace simpfib {

SMap arrow_homotopy(const Functor& f, const CommaCategory& comma, int cap) {
    const FiniteCategory& d = f.target();
    const FiniteCategory& fd = comma.category;
    SimplicialSet nd = nerve(d, cap);
    SimplicialSet nc = nerve(fd, cap, nd.truncation());
    const SimplicialSet d1 = standard_simplex(1);
    const int one = d1.at("1").cell;
    const FiberProduct cyl = product(nc, d1);
    auto end_of = [&](int x) { return d.morphism(comma.arrow[static_cast<std::size_t>(x)]).target; };
    auto start_of = [&](int x) { return f.object(comma.to_source.object(x)); };

    std::vector<std::vector<Simplex>> images(static_cast<std::size_t>(cyl.set().dimension() + 1));
    for (int k = 0; k <= cyl.set().dimension(); ++k)
        for (int i = 0; i < cyl.set().cell_count(k); ++i) {
            const auto& [a, b] = cyl.components(k, i);
            const auto objects = nc.vertices(a);
            const auto times = d1.vertices(b);
            const auto string = nerve_string(nc, fd, a);
            std::vector<int> mapped;
            for (int j = 1; j <= k; ++j) {
                const auto [u, w] = comma.components[static_cast<std::size_t>(string[static_cast<std::size_t>(j - 1)])];
                const bool early = times[static_cast<std::size_t>(j - 1)] != one;
                const bool late = times[static_cast<std::size_t>(j)] == one;
                if (early && !late) mapped.push_back(f.morphism(u));
                else if (!early && late) mapped.push_back(w);
                else mapped.push_back(d.compose(w, comma.arrow[static_cast<std::size_t>(objects[static_cast<std::size_t>(j - 1)])]));
            }
            const int x0 = objects.front();
            const int start = times.front() == one ? end_of(x0) : start_of(x0);
            images[static_cast<std::size_t>(k)].push_back(nerve_simplex(nd, d, start, mapped));
        }
    return SMap(cyl.set(), std::move(nd), std::move(images));
}

namespace {

/// The homotopy restricted to one end, compared cell by cell with a map.
bool end_matches(const SMap& h, const FiberProduct& cyl, const SMap& expected, const char* end) {
    const SimplicialSet& d1 = cyl.second().target();
    const Simplex v = d1.at(end);
    const SimplicialSet& x = expected.source();
    for (int k = 0; k <= x.dimension(); ++k)
        for (int i = 0; i < x.cell_count(k); ++i) {
            const Simplex t{k, 0, v.cell, k == 0 ? 0u : (1u << k) - 1};
            if (!(h(cyl.pair(x.cell_simplex(k, i), t)) == expected.image(k, i))) return false;
        }
    return true;
}

Json euler_json(const EulerCheck& e) {
    Json j;
    j["comma"] = e.total;
    j["source"] = e.source;
    j["fiber"] = e.fiber;
    j["base"] = e.base;
    j["holds"] = e.holds;
    return j;
}

Json transport_summary_json(const EdgeTransport& t) {
    Json j;
    j["edge"] = t.edge;
    j["from"] = t.from;
    j["to"] = t.to;
    j["from_components"] = t.from_components;
    j["to_components"] = t.to_components;
    j["invertible"] = t.invertible;
    j["iso"] = t.iso;
    return j;
}

std::string failure_text(const EdgeTransport& t) {
    std::ostringstream out;
    out << "transport along " << t.edge << " (" << t.from << " -> " << t.to << ") compares a fiber with "
        << t.from_components << " component" << (t.from_components == 1 ? "" : "s") << " to one with "
        << t.to_components << " component" << (t.to_components == 1 ? "" : "s");
    if (!t.invertible) out << "; the wrong-way leg is not invertible";
    return out.str();
}

}  // namespace

TheoremBReport theorem_b_report(const Functor& f, int cap) {
    TheoremBReport r;
    r.cap = cap;
    const CommaCategory comma = comma_category(f);
    r.comma_objects = comma.category.object_count();
    r.comma_morphisms = comma.category.morphism_count();

    const SMap to_d = nerve_functor(comma.to_target, cap);
    const SMap to_c = nerve_functor(comma.to_source, cap);
    const SimplicialSet& nfd = to_d.source();
    const SimplicialSet& nd = to_d.target();
    const SimplicialSet& nc = to_c.target();
    for (const auto& t : {nfd.truncation(), nd.truncation(), nc.truncation(), to_c.source().truncation()})
        if (t) r.truncation = r.truncation ? std::min(*r.truncation, *t) : *t;
    if (r.truncation)
        r.notes.push_back("nerves truncated at degree " + std::to_string(*r.truncation) +
                          ": homology is claimed only below that degree");

    r.projection = certify_fibration_class(to_d, default_cap(to_d));

    // Slices and the vertex fibers of N(F/D) -> N(D).
    for (int v : nd.id_order(0)) {
        const int object = f.target().object_index(nd.cell(0, v).id);
        SliceSummary s;
        s.object = nd.cell(0, v).id;
        const Slice sl = slice(f, comma, object);
        s.objects = sl.category.object_count();
        const SimplicialSet ns = nerve(sl.category, cap, nfd.truncation());
        s.homology = homology(ns);
        s.contractible = s.homology.is_point();
        const SimplicialSet fiber = restrict_over_simplex(to_d, nd.cell_simplex(0, v)).set();
        s.matches_fiber = ns.cell_counts() == fiber.cell_counts() && s.homology.same_groups(homology(fiber));
        r.slices.push_back(std::move(s));
    }

    r.hypothesis = true;
    if (nd.dimension() >= 1)
        for (int e : nd.id_order(1)) {
            const Simplex edge = nd.cell_simplex(1, e);
            const TransportResult t = transport_homology(to_d, edge, Direction::forward);
            EdgeTransport et;
            et.edge = nd.cell(1, e).id;
            et.from = nd.name(nd.face(edge, 1));
            et.to = nd.name(nd.face(edge, 0));
            et.from_components = t.source_homology.group(0).rank();
            et.to_components = t.target_homology.group(0).rank();
            et.invertible = t.invertible;
            et.iso = t.iso;
            if (!et.iso && r.hypothesis) {
                r.hypothesis = false;
                r.failing_edge = et;
            }
            r.transports.push_back(std::move(et));
        }

    r.contractible_fibers = true;
    for (int v : nc.id_order(0)) {
        const bool point = homology(restrict_over_simplex(to_c, nc.cell_simplex(0, v)).set()).is_point();
        r.source_fibers.emplace_back(nc.cell(0, v).id, point);
        r.contractible_fibers = r.contractible_fibers && point;
    }

    r.comma_homology = homology(nfd);
    r.source_homology = homology(nc);
    r.target_homology = homology(nd);
    r.source_projection_iso = induced_homology(to_c, r.comma_homology, r.source_homology).iso;

    const Components comps = pi0(nd);
    r.fiber_constancy = true;
    for (int c = 0; c < comps.count; ++c) {
        const SliceSummary* first = nullptr;
        for (std::size_t i = 0; i < r.slices.size(); ++i) {
            const int v = nd.at(r.slices[i].object).cell;
            if (comps.label[static_cast<std::size_t>(v)] != c) continue;
            if (!first) first = &r.slices[i];
            else if (!first->homology.same_groups(r.slices[i].homology)) r.fiber_constancy = false;
        }
    }

    if (!r.truncation && comps.count == 1 && !r.slices.empty()) {
        EulerCheck e;
        e.total = euler_characteristic(nfd).value;
        e.source = euler_characteristic(nc).value;
        e.base = euler_characteristic(nd).value;
        const Slice first = slice(f, comma, f.target().object_index(r.slices.front().object));
        e.fiber = euler_characteristic(nerve(first.category, cap)).value;
        e.holds = e.total == e.fiber * e.base && e.source == e.fiber * e.base;
        r.euler = e;
    } else {
        r.notes.push_back(r.truncation ? "Euler characteristic check skipped: truncated nerves"
                                       : "Euler characteristic check skipped: the base is not connected");
    }

    if (!r.truncation) {
        const SMap h = arrow_homotopy(f, comma, cap);
        const FiberProduct cyl = product(nfd, standard_simplex(1));
        const SMap nf = nerve_functor(f, cap);
        r.homotopy_audit = end_matches(h, cyl, compose(nf, to_c), "0") && end_matches(h, cyl, to_d, "1");
    } else {
        r.notes.push_back("arrow homotopy audit skipped: truncated nerves");
    }

    const bool consequences = r.contractible_fibers && r.source_projection_iso && r.fiber_constancy &&
                              (!r.euler || r.euler->holds) && r.homotopy_audit.value_or(true);
    if (r.projection.cocartesian.verdict == Verdict::refuted || !r.hypothesis) {
        r.verdict = Verdict::refuted;
    } else if (r.truncation || r.projection.cocartesian.verdict == Verdict::inconclusive) {
        r.verdict = Verdict::inconclusive;
    } else {
        r.verdict = consequences ? Verdict::certified : Verdict::refuted;
        if (!consequences) r.notes.push_back("a consequence check failed although the hypothesis holds");
    }
    return r;
}

Json theorem_b_json(const TheoremBReport& r) {
    Json j;
    j["verdict"] = to_string(r.verdict);
    j["qualifier"] = "homological proxy";
    j["cap"] = r.cap;
    j["truncation"] = r.truncation ? Json(*r.truncation) : Json();
    j["comma"] = {{"objects", r.comma_objects}, {"morphisms", r.comma_morphisms}};
    j["projection_cocartesian"] = to_string(r.projection.cocartesian.verdict);
    j["hypothesis"] = r.hypothesis;
    j["failing_edge"] = r.failing_edge ? transport_summary_json(*r.failing_edge) : Json();
    Json slices = Json::array();
    for (const auto& s : r.slices) {
        Json e;
        e["object"] = s.object;
        e["objects"] = s.objects;
        e["homology"] = homology_json(s.homology);
        e["contractible"] = s.contractible;
        e["matches_fiber"] = s.matches_fiber;
        slices.push_back(std::move(e));
    }
    j["slices"] = std::move(slices);
    Json transports = Json::array();
    for (const auto& t : r.transports) transports.push_back(transport_summary_json(t));
    j["transports"] = std::move(transports);
    Json fibers = Json::object();
    for (const auto& [object, point] : r.source_fibers) fibers[object] = point;
    j["source_fibers_contractible"] = std::move(fibers);
    j["contractible_fibers"] = r.contractible_fibers;
    j["homology"] = {{"comma", homology_json(r.comma_homology)},
                     {"source", homology_json(r.source_homology)},
                     {"target", homology_json(r.target_homology)}};
    j["source_projection_iso"] = r.source_projection_iso;
    j["fiber_constancy"] = r.fiber_constancy;
    j["euler"] = r.euler ? euler_json(*r.euler) : Json();
    j["homotopy_audit"] = r.homotopy_audit ? Json(*r.homotopy_audit) : Json();
    j["notes"] = r.notes;
    return j;
}

std::string theorem_b_text(const TheoremBReport& r) {
    std::ostringstream out;
    out << "theorem B: " << to_string(r.verdict) << " (homological proxy)\n";
    out << "  comma category: " << r.comma_objects << " objects, " << r.comma_morphisms << " morphisms\n";
    out << "  projection to D cocartesian: " << to_string(r.projection.cocartesian.verdict) << "\n";
    out << "  hypothesis (transports are homology isomorphisms): " << (r.hypothesis ? "holds" : "fails") << "\n";
    if (r.failing_edge) out << "    witness: " << failure_text(*r.failing_edge) << "\n";
    for (const auto& s : r.slices)
        out << "  slice over " << s.object << ": " << s.objects << " objects, " << homology_text(s.homology)
            << (s.contractible ? ", contractible" : "") << "\n";
    out << "  fibers over C contractible: " << (r.contractible_fibers ? "yes" : "no") << "\n";
    out << "  H(N(F/D)) = " << homology_text(r.comma_homology) << ", H(N(C)) = " << homology_text(r.source_homology)
        << ", projection iso: " << (r.source_projection_iso ? "yes" : "no") << "\n";
    out << "  fiber homology constant on components: " << (r.fiber_constancy ? "yes" : "no") << "\n";
    if (r.euler)
        out << "  Euler: chi(F/D) = " << r.euler->total << ", chi(C) = " << r.euler->source << ", chi(F/d) * chi(D) = "
            << r.euler->fiber << " * " << r.euler->base << (r.euler->holds ? " (holds)" : " (fails)") << "\n";
    if (r.homotopy_audit) out << "  arrow homotopy audit: " << (*r.homotopy_audit ? "passed" : "failed") << "\n";
    for (const auto& n : r.notes) out << "  note: " << n << "\n";
    return out.str();
}

}  // namespace simpfib

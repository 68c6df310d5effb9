#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "simpfib/category.hpp"
#include "simpfib/theorem_b.hpp"
#include "simpfib/verify.hpp"

namespace simpfib {

namespace {

struct Options {
    bool json = false;
    std::optional<int> cap;
};

/// A bare simplicial set X is read as the terminal map X -> Delta^0.
SMap load_map(const std::string& path, std::vector<std::string>& notes) {
    const SsxValue v = parse_ssx(read_file(path));
    if (const auto* m = std::get_if<SMap>(&v)) return *m;
    const SimplicialSet& x = std::get<SimplicialSet>(v);
    notes.push_back(path + " holds a simplicial set; using its map to a point");
    const std::vector<int> zeros(static_cast<std::size_t>(x.empty() ? 0 : x.cell_count(0)), 0);
    return map_from_vertices(x, standard_simplex(0), zeros);
}

Json load_json(const std::string& path) {
    try {
        return Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

/// The witness line of a certificate's text rendering.
std::string witness_line(const std::string& text) {
    const auto at = text.find("witness: ");
    if (at == std::string::npos) return text;
    const auto start = at + 9;
    return text.substr(start, text.find('\n', start) - start);
}

void require_cap(const std::optional<int>& cap) {
    if (cap && *cap < 2) throw InputError("--cap must be at least 2");
}

VerificationReport certify_command(const std::string& path, const Options& o) {
    VerificationReport r;
    r.command = "certify";
    const SMap p = load_map(path, r.notes);
    r.inputs.push_back({"P", fnv1a64(emit_ssx(p))});
    const int cap = o.cap.value_or(default_cap(p));
    r.cap = cap;
    if (p.source().truncation() || p.target().truncation())
        r.truncation = std::min(p.source().truncation().value_or(INT32_MAX), p.target().truncation().value_or(INT32_MAX));
    FibrationClass fc = certify_fibration_class(p, cap);
    Verdict v = conjunction(conjunction(fc.inner.verdict, fc.cartesian.verdict), fc.cocartesian.verdict);
    for (auto [label, cert] : {std::pair{"inner", &fc.inner}, {"cartesian", &fc.cartesian}, {"cocartesian", &fc.cocartesian}}) {
        if (cert->verdict != Verdict::certified && !r.witness && cert->witness)
            r.witness = std::string(label) + ": " + witness_line(certificate_text(p, *cert));
        r.certificates.push_back({label, *cert, certificate_json(p, *cert)});
    }
    // A certified fibration must pass the per-simplex fiber comparison.
    if (v == Verdict::certified) {
        VerificationReport real = realization_fibration_certificate(p, cap);
        r.comparisons = std::move(real.comparisons);
        for (auto& n : real.notes) r.notes.push_back(std::move(n));
        if (real.witness) r.witness = "fiber comparison over " + *real.witness;
        v = real.verdict;
    }
    r.verdict = v;
    return r;
}

VerificationReport fibers_command(const std::string& path, const std::string& id, const Options&) {
    VerificationReport r;
    r.command = "fibers";
    const SMap p = load_map(path, r.notes);
    r.inputs.push_back({"P", fnv1a64(emit_ssx(p))});
    const Simplex sigma = p.target().parse_name(id);
    const FiberProduct fiber = restrict_over_simplex(p, sigma);
    const HomologyProfile h = homology(fiber.set());
    r.truncation = fiber.set().truncation();
    r.details["simplex"] = id;
    r.details["fiber"] = sset_to_json(fiber.set());
    r.details["homology"] = homology_json(h);
    r.details_text = "  fiber over " + id + ": cells " + Json(fiber.set().cell_counts()).dump() + ", homology " +
                     homology_text(h) + "\n";
    if (r.truncation) r.verdict = Verdict::inconclusive;
    return r;
}

VerificationReport transport_command(const std::string& path, const std::string& id, bool backward, const Options&) {
    VerificationReport r;
    r.command = "transport";
    const SMap p = load_map(path, r.notes);
    r.inputs.push_back({"P", fnv1a64(emit_ssx(p))});
    const Simplex edge = p.target().parse_name(id);
    const TransportResult t = transport_homology(p, edge, backward ? Direction::backward : Direction::forward);
    r.truncation = t.valid_below;
    r.details = transport_json(p, t);
    std::string text = "  transport along " + id + (backward ? " (backward)" : " (forward)") + ": ";
    if (!t.invertible) {
        text += "the wrong-way fiber inclusion is not a homology isomorphism\n";
        r.witness = id;
    } else {
        for (std::size_t k = 0; k < t.maps.size(); ++k)
            text += "\n    H_" + std::to_string(k) + ": " + t.maps[k].matrix.to_string() +
                    (t.iso_by_degree[k] ? " (iso)" : " (not iso)");
        text += "\n";
        if (!t.iso) r.witness = id;
    }
    r.details_text = text;
    r.verdict = !t.iso ? Verdict::refuted : t.valid_below ? Verdict::inconclusive : Verdict::certified;
    return r;
}

VerificationReport theorem_b_command(const std::string& path, const Options& o) {
    VerificationReport r;
    r.command = "theorem-b";
    const Functor f = functor_from_json(load_json(path));
    r.inputs.push_back({"F", fnv1a64(functor_to_json(f).dump())});
    const int cap = o.cap.value_or(kDefaultNerveCap);
    const TheoremBReport b = theorem_b_report(f, cap);
    r.cap = cap;
    r.truncation = b.truncation;
    r.details = theorem_b_json(b);
    std::istringstream lines(theorem_b_text(b));
    for (std::string line; std::getline(lines, line);) r.details_text += "  " + line + "\n";
    if (b.failing_edge) r.witness = "edge " + b.failing_edge->edge;
    r.verdict = b.verdict;
    return r;
}

VerificationReport ltg_command(const std::string& fpath, const std::string& ppath, const Options& o) {
    std::vector<std::string> notes;
    const SMap f = load_map(fpath, notes);
    const SMap p = load_map(ppath, notes);
    VerificationReport r = ltg_check(f, p, o.cap.value_or(default_cap(p)));
    r.notes.insert(r.notes.begin(), notes.begin(), notes.end());
    return r;
}

VerificationReport homology_command(const std::string& path, const Options&) {
    VerificationReport r;
    r.command = "homology";
    const SsxValue v = parse_ssx(read_file(path));
    const auto* x = std::get_if<SimplicialSet>(&v);
    if (!x) throw InputError(path + " holds a map; homology expects a simplicial set");
    r.inputs.push_back({"X", fnv1a64(emit_ssx(*x))});
    const HomologyProfile h = homology(*x);
    const EulerCharacteristic chi = euler_characteristic(*x);
    r.truncation = x->truncation();
    r.details["homology"] = homology_json(h);
    r.details["euler"] = chi.truncated ? Json() : Json(chi.value);
    r.details_text = "  H = " + homology_text(h) + "\n";
    if (!chi.truncated) r.details_text += "  chi = " + std::to_string(chi.value) + "\n";
    if (r.truncation) r.verdict = Verdict::inconclusive;
    return r;
}

/// Nerves are constructions: the output records its truncation and the
/// command succeeds either way.
VerificationReport nerve_command(const std::string& path, const Options& o) {
    VerificationReport r;
    r.command = "nerve";
    const Json doc = load_json(path);
    const int cap = o.cap.value_or(kDefaultNerveCap);
    r.cap = cap;
    if (doc.is_object() && doc.value("kind", "") == "functor") {
        const Functor f = functor_from_json(doc);
        r.inputs.push_back({"F", fnv1a64(functor_to_json(f).dump())});
        const SMap n = nerve_functor(f, cap);
        r.truncation = n.target().truncation();
        r.details["nerve"] = smap_to_json(n);
        r.details_text = emit_ssx(n) + "\n";
    } else {
        const FiniteCategory c = category_from_json(doc);
        r.inputs.push_back({"C", fnv1a64(category_to_json(c).dump())});
        const SimplicialSet n = nerve(c, cap);
        r.truncation = n.truncation();
        r.details["nerve"] = sset_to_json(n);
        r.details_text = emit_ssx(n) + "\n";
    }
    if (r.truncation) r.notes.push_back("nerve truncated at degree " + std::to_string(*r.truncation));
    return r;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Verifier for fibrations of simplicial sets and Theorem B for finite categories", "simpfib"};
    app.require_subcommand(1);
    Options o;
    std::string a, b, id;
    bool backward = false;

    auto common = [&](CLI::App* s, bool with_cap) {
        s->add_flag("--json", o.json, "Machine-readable JSON output");
        if (with_cap) s->add_option("--cap", o.cap, "Highest horn or nerve degree examined");
    };
    auto* certify = app.add_subcommand("certify", "Certify inner, cartesian and cocartesian lifting");
    certify->add_option("map", a, "SSX map")->required();
    common(certify, true);
    auto* fibers = app.add_subcommand("fibers", "Fiber over a simplex of the base");
    fibers->add_option("map", a, "SSX map")->required();
    fibers->add_option("--simplex", id, "Simplex of the base")->required();
    common(fibers, false);
    auto* transport = app.add_subcommand("transport", "Fiber transport along an edge of the base");
    transport->add_option("map", a, "SSX map")->required();
    transport->add_option("--edge", id, "Edge of the base")->required();
    transport->add_flag("--backward", backward, "Transport from the target end");
    common(transport, false);
    auto* thm = app.add_subcommand("theorem-b", "Theorem B pipeline for a functor");
    thm->add_option("functor", a, "CAT functor")->required();
    common(thm, true);
    auto* ltg = app.add_subcommand("ltg-check", "Consequences of the homotopy pullback square");
    std::vector<std::string> cospan;
    ltg->add_option("--cospan", cospan, "F.ssx P.ssx")->required()->expected(2);
    common(ltg, true);
    auto* hom = app.add_subcommand("homology", "Integral homology of a simplicial set");
    hom->add_option("object", a, "SSX simplicial set")->required();
    common(hom, false);
    auto* nrv = app.add_subcommand("nerve", "Nerve of a category or functor");
    nrv->add_option("category", a, "CAT category or functor")->required();
    common(nrv, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        require_cap(o.cap);
        VerificationReport r;
        if (certify->parsed()) r = certify_command(a, o);
        else if (fibers->parsed()) r = fibers_command(a, id, o);
        else if (transport->parsed()) r = transport_command(a, id, backward, o);
        else if (thm->parsed()) r = theorem_b_command(a, o);
        else if (ltg->parsed()) r = ltg_command(cospan[0], cospan[1], o);
        else if (hom->parsed()) r = homology_command(a, o);
        else r = nerve_command(a, o);
        std::cout << (o.json ? report_json(r).dump(2) + "\n" : report_text(r));
        return exit_code(r.verdict);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace simpfib

#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>

#include "simpfib/verify.hpp"

namespace simpfib {

std::string fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::certified: return 0;
        case Verdict::refuted: return 1;
        case Verdict::inconclusive: return 2;
    }
    return 2;
}

namespace {

std::optional<int> min_cut(std::optional<int> a, std::optional<int> b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

std::optional<int> truncation_of(const SMap& p) { return min_cut(p.source().truncation(), p.target().truncation()); }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

Json comparison_json(const FiberComparison& c) {
    Json j;
    j["simplex"] = c.simplex;
    j["degree"] = c.degree;
    j["first_vertex"] = c.first_vertex;
    j["last_vertex"] = c.last_vertex;
    j["fiber_homology"] = homology_json(c.fiber);
    j["first_inclusion_iso"] = c.first_iso;
    j["last_inclusion_iso"] = c.last_iso;
    return j;
}

NamedCertificate named(const SMap& p, std::string label, Certificate c) {
    Json j = certificate_json(p, c);
    return NamedCertificate{std::move(label), std::move(c), std::move(j)};
}

std::vector<NamedCertificate> class_certificates(const SMap& p, const std::string& prefix, int cap) {
    FibrationClass fc = certify_fibration_class(p, cap);
    std::vector<NamedCertificate> out;
    out.push_back(named(p, prefix + "inner", std::move(fc.inner)));
    out.push_back(named(p, prefix + "cartesian", std::move(fc.cartesian)));
    out.push_back(named(p, prefix + "cocartesian", std::move(fc.cocartesian)));
    return out;
}

Verdict combined(const std::vector<NamedCertificate>& certs, std::size_t from = 0) {
    Verdict v = Verdict::certified;
    for (std::size_t i = from; i < certs.size(); ++i) v = conjunction(v, certs[i].certificate.verdict);
    return v;
}

InputDigest digest(std::string name, const SMap& f) { return InputDigest{std::move(name), fnv1a64(emit_ssx(f))}; }

}  // namespace

VerificationReport realization_fibration_certificate(const SMap& p, int cap) {
    VerificationReport r;
    r.command = "realization";
    r.inputs.push_back(digest("P", p));
    r.cap = cap;
    r.truncation = truncation_of(p);
    const SimplicialSet& y = p.target();

    for (int d = 0; d <= y.dimension(); ++d) {
        for (int k : y.id_order(d)) {
            const Simplex sigma = y.cell_simplex(d, k);
            const FiberProduct big = restrict_over_simplex(p, sigma);
            FiberComparison c;
            c.simplex = y.cell(d, k).id;
            c.degree = d;
            c.first_vertex = y.name(y.vertex(sigma, 0));
            c.last_vertex = y.name(y.vertex(sigma, d));
            c.fiber = homology(big.set());
            if (d == 0) {
                c.first_iso = c.last_iso = true;
            } else {
                for (const int end : {0, d}) {
                    const FiberProduct small = restrict_over_simplex(p, y.vertex(sigma, end));
                    const int theta[] = {end};
                    const bool iso = induced_homology(fiber_inclusion(small, big, theta), homology(small.set()), c.fiber).iso;
                    (end == 0 ? c.first_iso : c.last_iso) = iso;
                }
            }
            if (!c.passed() && !r.witness) {
                r.witness = c.simplex;
                r.notes.push_back("the fiber over " + c.simplex + " is not homology equivalent to the fiber over its " +
                                  (c.first_iso ? "last" : "first") + " vertex");
            }
            r.comparisons.push_back(std::move(c));
        }
    }

    if (r.witness) r.verdict = Verdict::refuted;
    else if (r.truncation) {
        r.verdict = Verdict::inconclusive;
        r.notes.push_back("input truncated at degree " + std::to_string(*r.truncation) +
                          ": inclusions are only known to be isomorphisms below that degree");
    }
    return r;
}

VerificationReport ltg_check(const SMap& f, const SMap& p, int cap) {
    if (!(f.target() == p.target())) throw InputError("ltg-check needs F and P with the same target");
    VerificationReport r;
    r.command = "ltg-check";
    r.inputs.push_back(digest("F", f));
    r.inputs.push_back(digest("P", p));
    r.cap = cap;
    r.truncation = min_cut(truncation_of(f), truncation_of(p));

    r.certificates = class_certificates(p, "P ", cap);
    const Verdict hyp = combined(r.certificates);
    r.hypotheses_established = hyp == Verdict::certified;
    if (hyp != Verdict::certified) {
        r.notes.push_back("hypotheses not established: P is not certified as a cartesian and cocartesian fibration");
        for (const auto& c : r.certificates)
            if (c.certificate.verdict != Verdict::certified && !r.witness)
                r.witness = c.label + ": " + to_string(c.certificate.verdict);
        r.verdict = hyp;
        return r;
    }

    const FiberProduct pb = pullback(f, p);
    const SMap& p2 = pb.first();
    const SimplicialSet& x = p.source();
    const SimplicialSet& y = p.target();
    const HomologyProfile pb_homology = homology(pb.set());
    r.details["pullback"] = {{"cells", pb.set().cell_counts()}, {"homology", homology_json(pb_homology)}};
    r.details_text = "  pullback: " + std::to_string(pb.set().cell_count(0)) + " vertices, homology " +
                     homology_text(pb_homology) + "\n";

    // (a) the pulled back map is certified.
    auto pulled = class_certificates(p2, "P' ", cap);
    const Verdict pv = combined(pulled);
    r.consequences.push_back({"pullback certified", pv == Verdict::inconclusive ? std::nullopt : std::optional<bool>(pv == Verdict::certified),
                              "P' inner/cartesian/cocartesian: " + to_string(pv)});
    for (auto& c : pulled) r.certificates.push_back(std::move(c));

    // (b) fibers of P' over vertices of Y' against fibers of P.
    {
        bool ok = true;
        std::ostringstream detail;
        const SimplicialSet& yp = f.source();
        const bool point = yp.dimension() == 0 && yp.cell_count(0) == 1;
        for (int v : yp.empty() ? std::vector<int>{} : yp.id_order(0)) {
            const Simplex vert = yp.cell_simplex(0, v);
            const HomologyProfile here =
                point ? pb_homology : homology(restrict_over_simplex(p2, vert).set());
            const HomologyProfile there = homology(restrict_over_simplex(p, f(vert)).set());
            const bool same = here.same_groups(there) && here.components == there.components;
            if (!same) {
                ok = false;
                detail << "fiber over " << yp.cell(0, v).id << " differs from the fiber over " << y.name(f(vert)) << "; ";
            }
        }
        detail << (ok ? "every vertex fiber of the pullback matches" : "mismatch");
        r.consequences.push_back({"vertex fibers", ok, detail.str()});
    }

    // (c) fiber homology constant on path components of Y.
    std::vector<HomologyProfile> fibers;
    for (int v = 0; v < (y.empty() ? 0 : y.cell_count(0)); ++v)
        fibers.push_back(homology(restrict_over_simplex(p, y.cell_simplex(0, v)).set()));
    const Components comps = pi0(y);
    {
        bool ok = true;
        std::map<int, int> first;
        for (int v = 0; v < static_cast<int>(fibers.size()); ++v) {
            const int c = comps.label[static_cast<std::size_t>(v)];
            const auto [it, fresh] = first.emplace(c, v);
            if (!fresh && !fibers[static_cast<std::size_t>(it->second)].same_groups(fibers[static_cast<std::size_t>(v)]))
                ok = false;
        }
        r.consequences.push_back({"fiber constancy", ok,
                                  std::to_string(comps.count) + " component" + (comps.count == 1 ? "" : "s") + " of Y"});
    }

    // (d) Euler characteristics over Q.
    if (comps.count == 1 && !r.truncation) {
        const long long cx = euler_characteristic(x).value;
        const long long cy = euler_characteristic(y).value;
        const long long cf = euler_characteristic(restrict_over_simplex(p, y.cell_simplex(0, 0)).set()).value;
        r.consequences.push_back({"euler", cx == cf * cy,
                                  "chi(X) = " + std::to_string(cx) + ", chi(fiber) * chi(Y) = " + std::to_string(cf) +
                                      " * " + std::to_string(cy)});
        r.details["euler"] = {{"total", cx}, {"fiber", cf}, {"base", cy}};
    } else {
        r.consequences.push_back({"euler", std::nullopt,
                                  r.truncation ? "skipped: truncated input" : "skipped: Y is not connected"});
    }

    Verdict v = Verdict::certified;
    for (const auto& c : r.consequences) {
        if (!c.passed) continue;
        if (!*c.passed) {
            v = Verdict::refuted;
            if (!r.witness) r.witness = c.name + ": " + c.detail;
        }
    }
    if (v == Verdict::certified && (pv == Verdict::inconclusive || r.truncation)) v = Verdict::inconclusive;
    r.verdict = v;
    return r;
}

Json report_json(const VerificationReport& r) {
    Json j;
    j["command"] = r.command;
    j["verdict"] = to_string(r.verdict);
    j["qualifier"] = "homological proxy";
    Json inputs = Json::array();
    for (const auto& i : r.inputs) inputs.push_back({{"name", i.name}, {"fnv1a64", i.fnv1a64}});
    j["inputs"] = std::move(inputs);
    j["cap"] = r.cap ? Json(*r.cap) : Json();
    j["truncation"] = r.truncation ? Json(*r.truncation) : Json();
    Json certs = Json::object();
    for (const auto& c : r.certificates) certs[c.label] = c.json;
    j["certificates"] = std::move(certs);
    if (r.hypotheses_established) j["hypotheses_established"] = *r.hypotheses_established;
    if (!r.comparisons.empty()) {
        Json by_degree = Json::object();
        for (const auto& c : r.comparisons) by_degree[std::to_string(c.degree)].push_back(comparison_json(c));
        j["fiber_comparisons"] = std::move(by_degree);
    }
    Json cons = Json::array();
    for (const auto& c : r.consequences)
        cons.push_back({{"name", c.name}, {"passed", c.passed ? Json(*c.passed) : Json()}, {"detail", c.detail}});
    j["consequences"] = std::move(cons);
    j["details"] = r.details.is_null() ? Json::object() : r.details;
    j["witness"] = r.witness ? Json(*r.witness) : Json();
    j["notes"] = r.notes;
    return j;
}

std::string report_text(const VerificationReport& r) {
    std::ostringstream out;
    out << r.command << ": " << to_string(r.verdict) << " (homological proxy)\n";
    for (const auto& i : r.inputs) out << "  input " << i.name << ": fnv1a64 " << i.fnv1a64 << "\n";
    if (r.cap) out << "  cap: " << *r.cap << "\n";
    if (r.truncation) out << "  truncation: degree " << *r.truncation << "\n";
    for (const auto& c : r.certificates) {
        out << "  " << c.label << ": " << to_string(c.certificate.verdict) << " ("
            << c.certificate.problems_checked << " lifting problems)\n";
    }
    if (r.hypotheses_established) out << "  hypotheses established: " << yes_no(*r.hypotheses_established) << "\n";
    int degree = -1;
    for (const auto& c : r.comparisons) {
        if (c.degree != degree) {
            degree = c.degree;
            out << "  degree " << degree << ":\n";
        }
        out << "    " << c.simplex << ": fiber " << homology_text(c.fiber);
        if (c.degree > 0)
            out << ", from " << c.first_vertex << " " << (c.first_iso ? "iso" : "NOT iso") << ", from " << c.last_vertex
                << " " << (c.last_iso ? "iso" : "NOT iso");
        out << "\n";
    }
    out << r.details_text;
    for (const auto& c : r.consequences)
        out << "  " << c.name << ": " << (c.passed ? (*c.passed ? "passed" : "FAILED") : "skipped") << " (" << c.detail
            << ")\n";
    if (r.witness) out << "  witness: " << *r.witness << "\n";
    for (const auto& n : r.notes) out << "  note: " << n << "\n";
    return out.str();
}

}  // namespace simpfib

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simpfib/category.hpp"
#include "simpfib/homology.hpp"
#include "simpfib/lifting.hpp"

namespace simpfib {

/// Homology of the translation category F/d and of the matching vertex fiber.
struct SliceSummary {
    std::string object;
    int objects = 0;
    HomologyProfile homology;
    bool contractible = false;
    /// N(F/d) and the fiber of N(F/D) -> N(D) over d agree (cell counts and
    /// homology).
    bool matches_fiber = false;
};

/// Forward transport of N(F/D) -> N(D) along one edge of N(D).
struct EdgeTransport {
    std::string edge;
    std::string from;
    std::string to;
    int from_components = 0;
    int to_components = 0;
    bool invertible = false;
    bool iso = false;
};

struct EulerCheck {
    long long total = 0;   // chi(N(F/D))
    long long source = 0;  // chi(N(C))
    long long fiber = 0;   // chi(N(F/d))
    long long base = 0;    // chi(N(D))
    bool holds = false;
};

/**
 * The Theorem B pipeline for F : C -> D. The hypothesis is read off the
 * transports of N(F/D) -> N(D) along edges of N(D). The remaining fields hold
 * the computable consequences that are checked when it holds.
 */
struct TheoremBReport {
    int cap = kDefaultNerveCap;
    std::optional<int> truncation;
    int comma_objects = 0;
    int comma_morphisms = 0;
    FibrationClass projection;
    std::vector<SliceSummary> slices;
    std::vector<EdgeTransport> transports;
    /// Every transport is a homology isomorphism.
    bool hypothesis = false;
    std::optional<EdgeTransport> failing_edge;
    /// Fibers of N(F/D) -> N(C), by object of C.
    std::vector<std::pair<std::string, bool>> source_fibers;
    bool contractible_fibers = false;
    HomologyProfile comma_homology;
    HomologyProfile source_homology;
    HomologyProfile target_homology;
    /// N(F/D) -> N(C) induces an isomorphism on homology.
    bool source_projection_iso = false;
    bool fiber_constancy = false;
    std::optional<EulerCheck> euler;
    /// The arrow homotopy exists and restricts to N(F) N(pr_C) and N(pr_D).
    std::optional<bool> homotopy_audit;
    std::vector<std::string> notes;
    Verdict verdict = Verdict::inconclusive;
};

TheoremBReport theorem_b_report(const Functor& f, int cap = kDefaultNerveCap);
Json theorem_b_json(const TheoremBReport& r);
std::string theorem_b_text(const TheoremBReport& r);

/**
 * The homotopy N(F/D) x Delta^1 -> N(D): (x, 0) goes to F(c), (x, 1) to d,
 * and the edge between them to the arrow phi of x = (c, phi).
 */
SMap arrow_homotopy(const Functor& f, const CommaCategory& comma, int cap = kDefaultNerveCap);

}  // namespace simpfib

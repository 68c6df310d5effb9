#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simpfib/homology.hpp"
#include "simpfib/lifting.hpp"
#include "simpfib/ssx.hpp"

namespace simpfib {

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a64(std::string_view bytes);

/// Digest of an input, taken over its canonical SSX or CAT text.
struct InputDigest {
    std::string name;
    std::string fnv1a64;
};

struct NamedCertificate {
    std::string label;
    Certificate certificate;
    Json json;
};

/// The two fiber inclusions X|_{i(sigma)} -> X|_sigma <- X|_{l(sigma)}.
struct FiberComparison {
    std::string simplex;
    int degree = 0;
    std::string first_vertex;
    std::string last_vertex;
    HomologyProfile fiber;
    bool first_iso = false;
    bool last_iso = false;
    bool passed() const { return first_iso && last_iso; }
};

/// A computable consequence; passed is empty when the check was skipped.
struct ConsequenceResult {
    std::string name;
    std::optional<bool> passed;
    std::string detail;
};

struct VerificationReport {
    std::string command;
    std::vector<InputDigest> inputs;
    std::optional<int> cap;
    std::optional<int> truncation;
    std::vector<NamedCertificate> certificates;
    std::vector<FiberComparison> comparisons;
    /// False when the fibration class of the input could not be certified.
    std::optional<bool> hypotheses_established;
    std::vector<ConsequenceResult> consequences;
    /// Command-specific payload and its text rendering.
    Json details;
    std::string details_text;
    std::optional<std::string> witness;
    std::vector<std::string> notes;
    Verdict verdict = Verdict::certified;
};

Json report_json(const VerificationReport& r);
std::string report_text(const VerificationReport& r);

/// 0 certified, 1 refuted, 2 inconclusive.
int exit_code(Verdict v);

/**
 * Compares, for every nondegenerate simplex sigma of Y, the fiber over sigma
 * with the fibers over its first and last vertex on homology. Certified iff
 * every inclusion is an isomorphism; the first failure is the witness.
 * Truncated inputs give at best inconclusive.
 */
VerificationReport realization_fibration_certificate(const SMap& p, int cap);

/**
 * The pullback square of P : X -> Y along F : Y' -> Y. Certifies P first;
 * the consequence checks run only when that succeeds.
 */
VerificationReport ltg_check(const SMap& f, const SMap& p, int cap);

/// Runs the command line; returns the exit code (3 for input errors).
int cli_main(int argc, const char* const* argv);

}  // namespace simpfib

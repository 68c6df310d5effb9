#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "simpfib/constructions.hpp"
#include "simpfib/homology.hpp"
#include "simpfib/ssx.hpp"

namespace simpfib {

/**
 * A lifting problem against Lambda^n_i -> Delta^n: the horn is given by its
 * faces lambda_j = lambda(d_j) in X (faces[missing] is empty) and the base by
 * an n-simplex sigma of Y.
 */
struct HornProblem {
    int n = 0;
    int missing = 0;
    std::vector<std::optional<Simplex>> faces;
    Simplex base;

    friend bool operator==(const HornProblem&, const HornProblem&) = default;
};

/// The same problem read in X^op over Y^op: Lambda^n_i becomes Lambda^n_{n-i}.
HornProblem opposite_problem(const HornProblem& problem);

Json horn_problem_json(const SMap& p, const HornProblem& problem);
std::string horn_problem_text(const SMap& p, const HornProblem& problem);

/**
 * Horn filling against a fixed map p : X -> Y. Fibers of p are indexed once
 * per degree; candidate fillers are tried in the order (degeneracy word
 * length, word, cell identifier).
 */
class LiftingSearch {
public:
    explicit LiftingSearch(SMap p);

    const SMap& map() const { return p_; }
    const SimplicialSet& total() const { return p_.source(); }
    const SimplicialSet& base() const { return p_.target(); }

    /// Simplices of X over a simplex of Y, in candidate order.
    const std::vector<Simplex>& fiber(const Simplex& base);

    /// Throws InputError naming the first face that is incompatible or does
    /// not lie over the base.
    void validate(const HornProblem& problem) const;
    std::optional<Simplex> solve(const HornProblem& problem);
    std::vector<Simplex> solutions(const HornProblem& problem);

    /// Restricts the candidates for lambda_j (argument j, candidate).
    using FaceFilter = std::function<bool(int, const Simplex&)>;
    /// Visits every horn Lambda^n_i -> X over sigma accepted by the filter, in
    /// lexicographic order of (lambda_0, lambda_1, ...); stops early when
    /// visit returns false. Returns false if stopped.
    bool for_each_horn(int n, int i, const Simplex& sigma, const FaceFilter& filter,
                       const std::function<bool(const HornProblem&)>& visit);

private:
    bool fills(const HornProblem& problem, const Simplex& x) const;

    SMap p_;
    std::vector<std::unordered_map<Simplex, std::vector<Simplex>, SimplexHash>> fibers_;
    std::vector<bool> indexed_;
};

/// Least filler of the problem, if any.
std::optional<Simplex> solve_horn_lift(const SMap& p, const HornProblem& problem);
/// Map form: lambda : Lambda^n_i -> X and sigma : Delta^n -> Y with p lambda =
/// sigma on the horn; returns the classifying map of the least filler.
std::optional<SMap> solve_horn_lift(const SMap& p, const SMap& lambda, const SMap& sigma);
/// Every filler, in candidate order.
std::vector<Simplex> horn_fillers(const SMap& p, const HornProblem& problem);

enum class Verdict { certified, refuted, inconclusive };
std::string to_string(Verdict v);
/// Conjunction: refuted dominates inconclusive, which dominates certified.
Verdict conjunction(Verdict a, Verdict b);

/// Evidence for a refutation.
struct Witness {
    enum class Kind {
        /// A lifting problem without solution.
        horn,
        /// No edge over `base_edge` at `vertex` passes the (co)cartesian check.
        missing_lift,
    };
    Kind kind = Kind::horn;
    HornProblem problem;
    /// The edge of X whose (co)cartesian property failed, for horn witnesses
    /// produced by edge checks.
    std::optional<Simplex> tested_edge;
    Simplex base_edge;
    Simplex vertex;
    /// For missing_lift: cocartesian lifts (starting at vertex) rather than
    /// cartesian ones (ending at vertex).
    bool cocartesian = false;
};

struct Certificate {
    Verdict verdict = Verdict::certified;
    int cap = 0;
    long long problems_checked = 0;
    std::optional<Witness> witness;
    std::vector<std::string> notes;
};

/// {"verdict":..., "cap":..., "problems_checked":..., "witness":..., "notes":[...]}
Json certificate_json(const SMap& p, const Certificate& c);
std::string certificate_text(const SMap& p, const Certificate& c);

/// Re-runs the failing problem named by a refutation; true when it still
/// has no solution.
bool recheck_witness(const SMap& p, const Certificate& c);

/// max(dim X, dim Y) + 2.
int default_cap(const SMap& p);

Certificate certify_inner_fibration(const SMap& p, int cap);
/// Lambda^n_n problems (2 <= n <= cap) whose last edge is f.
Certificate is_cartesian_edge(const SMap& p, const Simplex& f, int cap);
/// Lambda^n_0 problems whose first edge is f, checked through the opposites.
Certificate is_cocartesian_edge(const SMap& p, const Simplex& f, int cap);

struct FibrationClass {
    Certificate inner;
    Certificate cartesian;
    Certificate cocartesian;
};

FibrationClass certify_fibration_class(const SMap& p, int cap);
Json fibration_class_json(const SMap& p, const FibrationClass& c);

/// Raised by lift_homotopy when a required lift is not found within the cap.
class LiftError : public std::runtime_error {
public:
    LiftError(const std::string& what, std::optional<HornProblem> problem)
        : std::runtime_error(what), problem_(std::move(problem)) {}
    /// The lifting problem on which the construction got stuck.
    const std::optional<HornProblem>& problem() const { return problem_; }

private:
    std::optional<HornProblem> problem_;
};

/// The given part of a homotopy lift: F on I x {0} and on J x Delta^1.
struct PartialLift {
    SMap bottom;  // I -> X
    SMap side;    // J x Delta^1 -> X
};

/**
 * Extends F0 to F : I x Delta^1 -> X over f : I x Delta^1 -> Y, sending every
 * edge (i,0) -> (i,1) to a p-cocartesian edge. Cells of I outside J are
 * handled by dimension; each prism Delta^n x Delta^1 is filled through its
 * (n+1)-cells from the one containing the bottom face, one horn each.
 * Throws LiftError (inconclusive) with the stuck problem, and InputError for
 * inconsistent data. The cap bounds every cocartesian-edge check and
 * defaults to dim I + 2.
 */
SMap lift_homotopy(const SMap& p, const SMap& incl, const PartialLift& f0, const SMap& f, std::optional<int> cap = {});

struct LiftAudit {
    bool commutes = false;
    bool extends = false;
    bool designated_cocartesian = false;
    std::vector<std::string> failures;
    bool passed() const { return commutes && extends && designated_cocartesian; }
};

/// Independent re-check of a lift against p, F0 and the designated edges
/// (i,0) -> (i,1), which must be cocartesian.
LiftAudit audit_homotopy_lift(const SMap& p, const SMap& incl, const PartialLift& f0, const SMap& f, const SMap& lift,
                              int cap);

/// The map Delta^n x Delta^1 -> Delta^n with (i,0) -> i and (i,1) -> n.
SMap last_vertex_contraction(int n);

enum class Direction { forward, backward };

/**
 * Fiber transport along an edge f : c -> c' of Y on integral homology. The
 * legs are induced by X|_c -> X|_f <- X|_{c'}; forward composes the inverse
 * of the second leg with the first (c to c'), backward the inverse of the
 * first with the second (c' to c).
 */
struct TransportResult {
    Simplex edge;
    Direction direction = Direction::forward;
    SimplicialSet source_fiber;  // X|_c
    SimplicialSet middle_fiber;  // X|_f
    SimplicialSet target_fiber;  // X|_{c'}
    HomologyProfile source_homology;
    HomologyProfile middle_homology;
    HomologyProfile target_homology;
    InducedHomology source_leg;
    InducedHomology target_leg;
    /// The wrong-way leg is a homology isomorphism and a pi0 bijection.
    bool invertible = false;
    /// Composite per degree; empty when not invertible.
    std::vector<HomologyMap> maps;
    std::vector<bool> iso_by_degree;
    /// The composite is an isomorphism in every claimed degree.
    bool iso = false;
    std::optional<int> valid_below;
};

TransportResult transport_homology(const SMap& p, const Simplex& edge, Direction direction = Direction::forward);
Json transport_json(const SMap& p, const TransportResult& t);

/**
 * Forward transport computed the other way: lift the contraction of X|_f
 * onto its last vertex to a homotopy, read off the retraction
 * r : X|_f -> X|_{c'}, and return r_* composed with the first leg. Requires
 * the restriction to f to be cocartesian; throws LiftError otherwise.
 */
std::vector<HomologyMap> transport_by_lifting(const SMap& p, const Simplex& edge, std::optional<int> cap = {});

}  // namespace simpfib

#pragma once

#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "simpfib/simplicial_set.hpp"

namespace simpfib {

/// The standard n-simplex; the k-cells are the (k+1)-element vertex subsets,
/// named by their digits ("012"), or dot-separated ("3.10.11") once n >= 10.
SimplicialSet standard_simplex(int n);
/// Boundary of the n-simplex (empty for n = 0).
SimplicialSet boundary(int n);
/// Horn Lambda^n_i: the boundary without the i-th face.
SimplicialSet horn(int n, int i);
SMap boundary_inclusion(int n);
SMap horn_inclusion(int n, int i);

/// Identifier of the face of Delta^n spanned by the vertices.
std::string subset_id(int n, std::span<const int> vertices);
/// Simplex of a standard simplex (or one of its subobjects) with the given
/// monotone vertex sequence.
Simplex simplex_with_vertices(const SimplicialSet& delta, int n, std::span<const int> vertices);

/**
 * A sub-object of a product A x B presented by jointly nondegenerate pairs of
 * simplices: products, pullbacks and fibers all take this form. The two
 * projections are kept, and pair() normalises any pair of simplices of equal
 * degree to a simplex of the set.
 */
class FiberProduct {
public:
    const SimplicialSet& set() const { return set_; }
    const SMap& first() const { return first_; }
    const SMap& second() const { return second_; }

    /// Components of a nondegenerate cell.
    const std::pair<Simplex, Simplex>& components(int degree, int index) const;
    /// The simplex (a, b); throws InputError when the pair is not in the set.
    Simplex pair(const Simplex& a, const Simplex& b) const;
    bool contains(const Simplex& a, const Simplex& b) const;

    /// Sub-object of a x b on the pairs accepted by a levelwise predicate
    /// that is closed under faces and degeneracies.
    using PairPredicate = std::function<bool(const Simplex&, const Simplex&)>;
    static FiberProduct of_pairs(const SimplicialSet& a, const SimplicialSet& b, const PairPredicate& accept);

private:
    FiberProduct(SimplicialSet set, SMap first, SMap second, std::vector<std::vector<std::pair<Simplex, Simplex>>> parts);

    SimplicialSet set_;
    SMap first_;
    SMap second_;
    std::vector<std::vector<std::pair<Simplex, Simplex>>> parts_;
    std::vector<std::map<std::pair<Simplex, Simplex>, int>> index_;
};

/// Categorical product via shuffle enumeration. Rejects semi-simplicial input.
FiberProduct product(const SimplicialSet& x, const SimplicialSet& y);
/// Y' x_Y X for f: Y' -> Y and p: X -> Y; first() is the projection to Y'.
FiberProduct pullback(const SMap& f, const SMap& p);

/// The map Delta^n -> Y classifying an n-simplex of Y.
SMap classifying_map(const SimplicialSet& y, const Simplex& sigma);
/// X|_sigma = Delta^n x_Y X; first() is the projection to Delta^n.
FiberProduct restrict_over_simplex(const SMap& p, const Simplex& sigma);
/// The map X|_{sigma theta} -> X|_sigma induced by a monotone theta: [m] -> [n].
SMap fiber_inclusion(const FiberProduct& small, const FiberProduct& big, std::span<const int> theta);

SimplicialSet opposite(const SimplicialSet& x);
SMap opposite_map(const SMap& f);
/// Simplex of X^op corresponding to s (same cell, reversed degeneracies).
Simplex opposite_simplex(const Simplex& s);

/// Sub-object on the cells of degree <= n together with its inclusion.
std::pair<SimplicialSet, SMap> skeleton(const SimplicialSet& y, int n);

/// Builds the map determined by a vertex assignment, for targets in which a
/// simplex is determined by its vertex sequence (nerves of posets, standard
/// simplices and their products). Throws InputError if some image is missing
/// or ambiguous.
SMap map_from_vertices(const SimplicialSet& source, const SimplicialSet& target, std::span<const int> vertex_image);

}  // namespace simpfib

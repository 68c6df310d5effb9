#pragma once

#include <optional>
#include <vector>

#include "simpfib/integer_matrix.hpp"
#include "simpfib/simplicial_set.hpp"
#include "simpfib/ssx.hpp"

namespace simpfib {

/// Normalized chains: one generator per nondegenerate cell (every cell for
/// semi-simplicial input), in cell index order.
struct ChainComplex {
    std::vector<int> ranks;
    /// boundaries[k] : C_k -> C_{k-1}; boundaries[0] has no rows.
    std::vector<IntMatrix> boundaries;

    int top() const { return static_cast<int>(ranks.size()) - 1; }
    int rank(int k) const { return k >= 0 && k <= top() ? ranks[static_cast<std::size_t>(k)] : 0; }
    /// Zero matrix outside the stored range.
    IntMatrix boundary(int k) const;
};

ChainComplex chain_complex(const SimplicialSet& x);

/// Degree-k chain of a single simplex: its cell, or zero when degenerate.
std::vector<Integer> chain_of(const SimplicialSet& x, const Simplex& s);

/// H_k = Z^betti + sum Z/t_i with explicit cycle representatives.
struct HomologyGroup {
    int degree = 0;
    int betti = 0;
    std::vector<Integer> torsion;
    /// Cycles in C_k: the free generators first, then one per torsion summand.
    std::vector<std::vector<Integer>> generators;
    /// Sends a cycle to its coordinates in the generator basis (torsion
    /// coordinates still to be reduced modulo their order).
    IntMatrix coordinates;

    int rank() const { return betti + static_cast<int>(torsion.size()); }
    /// Order of each generator, 0 for free ones.
    std::vector<Integer> orders() const;
    bool trivial() const { return betti == 0 && torsion.empty(); }
    /// Reduced coordinates of the class of a cycle.
    std::vector<Integer> class_of(const std::vector<Integer>& cycle) const;
};

struct HomologyProfile {
    std::vector<HomologyGroup> groups;
    /// Set for truncated nerves: only degrees below this value are claimed.
    std::optional<int> valid_below;
    int components = 0;

    /// Degrees beyond the computed range are zero (or unclaimed when truncated).
    HomologyGroup group(int k) const;
    /// Homology of a point: Z in degree zero, nothing else.
    bool is_point() const;
    /// Same Betti numbers and torsion in every claimed degree.
    bool same_groups(const HomologyProfile& other) const;
};

HomologyProfile homology(const SimplicialSet& x);
HomologyProfile homology(const SimplicialSet& x, const ChainComplex& c);

/// [{"degree":k,"betti":b,"torsion":[...]}, ...]
Json homology_json(const HomologyProfile& h);
/// "(Z, Z, 0)" style summary.
std::string homology_text(const HomologyProfile& h);

/**
 * A homomorphism between finitely generated abelian groups written in
 * generator bases: orders are 0 for free generators, otherwise the torsion
 * order, and entries in torsion rows are reduced modulo that order.
 */
struct HomologyMap {
    IntMatrix matrix;
    std::vector<Integer> source_orders;
    std::vector<Integer> target_orders;

    bool is_isomorphism() const;
    bool is_identity() const;
    static HomologyMap identity(const std::vector<Integer>& orders);
};

/// g after f.
HomologyMap compose(const HomologyMap& g, const HomologyMap& f);
/// Inverse of an isomorphism; none otherwise.
std::optional<HomologyMap> inverse(const HomologyMap& f);

struct InducedHomology {
    /// One map per claimed degree.
    std::vector<HomologyMap> maps;
    std::vector<bool> iso_by_degree;
    bool pi0_bijection = false;
    /// Isomorphism in every claimed degree and a bijection on components.
    bool iso = false;
    std::optional<int> valid_below;
};

InducedHomology induced_homology(const SMap& f);
InducedHomology induced_homology(const SMap& f, const HomologyProfile& source, const HomologyProfile& target);

struct Components {
    int count = 0;
    /// Component of each vertex (by cell index), numbered in order of the
    /// least vertex identifier in each component.
    std::vector<int> label;
    /// Least vertex (cell index) of each component.
    std::vector<int> representative;
};

Components pi0(const SimplicialSet& x);

struct EulerCharacteristic {
    long long value = 0;
    /// Truncated nerves only give a partial sum.
    bool truncated = false;
};

EulerCharacteristic euler_characteristic(const SimplicialSet& x);

}  // namespace simpfib

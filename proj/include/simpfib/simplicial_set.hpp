#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simpfib/errors.hpp"
#include "simpfib/simplex.hpp"

namespace simpfib {

/// A nondegenerate cell: stable identifier plus its faces d_0, ..., d_n.
struct Cell {
    std::string id;
    std::vector<Simplex> faces;

    friend bool operator==(const Cell&, const Cell&) = default;
};

/**
 * Finite simplicial (or semi-simplicial) set presented by its nondegenerate
 * cells. Values are immutable and cheap to copy; copies share storage.
 *
 * All simplices, degenerate or not, are addressed through Simplex values and
 * the face/degeneracy arithmetic below.
 */
class SimplicialSet {
public:
    SimplicialSet();

    bool simplicial() const;
    /// Highest degree carrying a cell; -1 for the empty set.
    int dimension() const;
    bool empty() const { return dimension() < 0; }

    int cell_count(int degree) const;
    std::vector<int> cell_counts() const;
    const std::vector<Cell>& cells(int degree) const;
    const Cell& cell(int degree, int index) const;
    const Cell& cell(const Simplex& s) const { return cell(s.cell_dim, s.cell); }
    Simplex cell_simplex(int degree, int index) const { return Simplex{degree, degree, index, 0}; }

    /// Nondegenerate simplex carrying the identifier, if any.
    std::optional<Simplex> find(std::string_view id) const;
    /// As find(), but throws InputError naming the identifier.
    Simplex at(std::string_view id) const;

    /// Nerves of categories record that they are nerves, and the degree at
    /// which they were truncated when the category has non-identity cycles.
    std::optional<int> truncation() const;
    bool is_nerve() const;

    Simplex face(const Simplex& s, int i) const;
    Simplex degeneracy(const Simplex& s, int j) const;
    /// s composed with the monotone map [k] -> [s.dim] given by its values.
    Simplex apply(const Simplex& s, std::span<const int> op) const;
    Simplex vertex(const Simplex& s, int k) const;
    /// Vertex cell indices of s in order.
    std::vector<int> vertices(const Simplex& s) const;

    /// Every simplex of the degree, ordered by (word length, word, cell id).
    std::vector<Simplex> simplices(int degree) const;
    /// Cell indices of the degree ordered by identifier.
    const std::vector<int>& id_order(int degree) const;

    /// "id" for nondegenerate simplices, "s2,0:id" otherwise.
    std::string name(const Simplex& s) const;
    /// Inverse of name(); throws InputError.
    Simplex parse_name(std::string_view text) const;

    /// Comparison of two simplices in candidate order.
    bool canonical_less(const Simplex& a, const Simplex& b) const;

    bool shares_storage(const SimplicialSet& other) const { return data_ == other.data_; }
    friend bool operator==(const SimplicialSet& a, const SimplicialSet& b);

private:
    friend class SimplicialSetBuilder;
    struct Data;
    std::shared_ptr<const Data> data_;
};

class SimplicialSetBuilder {
public:
    explicit SimplicialSetBuilder(bool simplicial = true);

    /// Adds a nondegenerate cell; faces must reference cells added earlier.
    /// Returns the cell index within its degree.
    int add_cell(int degree, std::string id, std::vector<Simplex> faces = {});
    /// Convenience: faces as (degeneracy word, identifier) pairs.
    int add_cell_named(int degree, std::string id, const std::vector<std::pair<std::string, std::string>>& faces);

    void set_truncation(int degree) { truncation_ = degree; }
    void mark_nerve() { nerve_ = true; }

    /// Validates the face data and simplicial identities.
    SimplicialSet build() const;

private:
    bool simplicial_;
    bool nerve_ = false;
    std::optional<int> truncation_;
    std::vector<std::vector<Cell>> cells_;
};

/**
 * Map of simplicial sets given on nondegenerate cells. The constructor checks
 * that every image has the right degree and that faces commute.
 */
class SMap {
public:
    SMap(SimplicialSet source, SimplicialSet target, std::vector<std::vector<Simplex>> images);

    const SimplicialSet& source() const { return source_; }
    const SimplicialSet& target() const { return target_; }
    const Simplex& image(int degree, int index) const;
    const std::vector<std::vector<Simplex>>& images() const { return images_; }

    Simplex operator()(const Simplex& s) const;

    friend bool operator==(const SMap& a, const SMap& b);

private:
    SimplicialSet source_;
    SimplicialSet target_;
    std::vector<std::vector<Simplex>> images_;
};

SMap identity_map(const SimplicialSet& x);
/// g after f.
SMap compose(const SMap& g, const SMap& f);
/// Bijective on nondegenerate cells in every degree.
bool is_isomorphism(const SMap& f);
/// Injective on simplices (nondegenerate cells go to distinct nondegenerate cells).
bool is_injective(const SMap& f);

}  // namespace simpfib

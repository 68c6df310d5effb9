#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "simpfib/simplicial_set.hpp"
#include "simpfib/ssx.hpp"

namespace simpfib {

struct Morphism {
    std::string id;
    int source = 0;
    int target = 0;
    friend bool operator==(const Morphism&, const Morphism&) = default;
};

/**
 * Finite unital category with an explicit composition table. Construction
 * validates identities, sources and targets of composites, and
 * associativity on every composable triple.
 */
class FiniteCategory {
public:
    FiniteCategory() = default;
    /// composition[g * morphism_count + f] = g o f, or -1 when tgt f != src g.
    FiniteCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms, std::vector<int> identities,
                   std::vector<int> composition);

    /// Poset on the elements generated by the relations a < b. Morphisms are
    /// "id_a" and "a<b", the latter ordered by (a, b) in element order.
    static FiniteCategory from_poset(const std::vector<std::string>& elements,
                                     const std::vector<std::pair<std::string, std::string>>& less);

    int object_count() const { return static_cast<int>(objects_.size()); }
    int morphism_count() const { return static_cast<int>(morphisms_.size()); }
    const std::string& object(int o) const { return objects_[static_cast<std::size_t>(o)]; }
    const Morphism& morphism(int m) const { return morphisms_[static_cast<std::size_t>(m)]; }
    const std::vector<std::string>& objects() const { return objects_; }
    const std::vector<Morphism>& morphisms() const { return morphisms_; }
    int identity(int o) const { return identities_[static_cast<std::size_t>(o)]; }
    bool is_identity(int m) const;
    /// g o f; throws std::invalid_argument when not composable.
    int compose(int g, int f) const;
    /// Morphisms a -> b in morphism order.
    std::vector<int> hom(int a, int b) const;
    /// Throw InputError for unknown identifiers.
    int object_index(std::string_view id) const;
    int morphism_index(std::string_view id) const;
    std::optional<int> find_object(std::string_view id) const;

    /// Some non-identity morphisms form a closed composable chain, so the
    /// nerve has nondegenerate simplices in every degree.
    bool has_cycles() const;
    FiniteCategory opposite() const;

    friend bool operator==(const FiniteCategory&, const FiniteCategory&) = default;

private:
    std::vector<std::string> objects_;
    std::vector<Morphism> morphisms_;
    std::vector<int> identities_;
    std::vector<int> composition_;
};

/// A functor, validated on construction (sources, targets, identities,
/// composition).
class Functor {
public:
    Functor(FiniteCategory source, FiniteCategory target, std::vector<int> object_map, std::vector<int> morphism_map);

    /// Object map only; each morphism goes to the unique morphism between the
    /// image objects (posets and other thin targets).
    static Functor thin(FiniteCategory source, FiniteCategory target, std::vector<int> object_map);

    const FiniteCategory& source() const { return source_; }
    const FiniteCategory& target() const { return target_; }
    int object(int o) const { return objects_[static_cast<std::size_t>(o)]; }
    int morphism(int m) const { return morphisms_[static_cast<std::size_t>(m)]; }
    Functor opposite() const;

    friend bool operator==(const Functor&, const Functor&) = default;

private:
    FiniteCategory source_;
    FiniteCategory target_;
    std::vector<int> objects_;
    std::vector<int> morphisms_;
};

Functor identity_functor(const FiniteCategory& c);
/// The terminal category with one object "*".
FiniteCategory point_category();
/// The functor from the point picking an object.
Functor object_functor(const FiniteCategory& c, std::string_view object);

/// CAT documents: {"kind":"cat","objects":[...],"morphisms":[{"id","src","tgt"}],
/// "identities":{obj:morph},"compose":{"g∘f":h}}. Compositions with an
/// identity may be omitted.
FiniteCategory category_from_json(const Json& j);
Json category_to_json(const FiniteCategory& c);
/// {"kind":"functor","source":CAT,"target":CAT,"objects":{...},"morphisms":{...}};
/// morphisms between objects with a single arrow between their images may be
/// omitted.
Functor functor_from_json(const Json& j);
Json functor_to_json(const Functor& f);

/// Default truncation degree for nerves of categories with cycles.
inline constexpr int kDefaultNerveCap = 4;

/**
 * Nerve: nondegenerate n-cells are strings of n composable non-identity
 * morphisms, identified by their morphism ids joined with ","; vertices carry
 * the object ids. Categories with cycles are truncated at `cap`; `cut` forces
 * a truncation at that degree when the nerve would be higher dimensional.
 */
SimplicialSet nerve(const FiniteCategory& c, int cap = kDefaultNerveCap, std::optional<int> cut = {});
/// N(F) : N(C) -> N(D); N(C) is cut at the truncation of N(D).
SMap nerve_functor(const Functor& f, int cap = kDefaultNerveCap);

/// The simplex of N(C) given by a string of morphisms (identities allowed)
/// starting at an object.
Simplex nerve_simplex(const SimplicialSet& n, const FiniteCategory& c, int start, std::span<const int> string);
/// The morphisms along the spine of a simplex of N(C) (identities included).
std::vector<int> nerve_string(const SimplicialSet& n, const FiniteCategory& c, const Simplex& s);

/**
 * Comma category F/D: objects (c, phi : F(c) -> d) with ids "c/phi";
 * morphisms are pairs (u : c -> c', w : d -> d') with phi' F(u) = w phi.
 */
struct CommaCategory {
    FiniteCategory category;
    Functor to_source;  // F/D -> C
    Functor to_target;  // F/D -> D, the target of the arrow
    /// The arrow phi of each object.
    std::vector<int> arrow;
    /// (u, w) of each morphism.
    std::vector<std::pair<int, int>> components;
};

CommaCategory comma_category(const Functor& f);

/// The translation category F/d: objects of F/D over d and morphisms (u, id_d).
struct Slice {
    FiniteCategory category;
    Functor inclusion;  // into the comma category
};
Slice slice(const Functor& f, const CommaCategory& comma, int d);
FiniteCategory slice(const Functor& f, std::string_view d);

/// f : c -> c' with the unique factorization property against every h and u.
bool is_cartesian_morphism(const Functor& p, int f);
/// Every morphism g : d -> d' and object over d' admit a cartesian lift.
bool is_grothendieck_fibration(const Functor& p);
bool is_grothendieck_opfibration(const Functor& p);

}  // namespace simpfib

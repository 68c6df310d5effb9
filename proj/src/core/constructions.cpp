#include "simpfib/constructions.hpp"

#include <algorithm>
#include <bit>

namespace simpfib {

namespace {

std::vector<int> subset_vertices(std::uint32_t subset) {
    std::vector<int> out;
    for (int v = 0; v < 32; ++v)
        if (subset & (1u << v)) out.push_back(v);
    return out;
}

/// Sub-object of Delta^n on the vertex subsets accepted by `keep` (must be
/// closed under taking nonempty subsets).
SimplicialSet simplex_subobject(int n, const std::function<bool(std::uint32_t)>& keep) {
    if (n < 0 || n >= kMaxDegree) throw InputError("simplex dimension out of range: " + std::to_string(n));
    SimplicialSetBuilder builder;
    std::vector<std::vector<std::uint32_t>> by_size(static_cast<std::size_t>(n) + 2);
    for (std::uint32_t s = 1; s < (1u << (n + 1)); ++s) by_size[static_cast<std::size_t>(std::popcount(s))].push_back(s);
    for (std::size_t size = 1; size < by_size.size(); ++size) {
        auto& bucket = by_size[size];
        // Lexicographic on vertex lists.
        std::sort(bucket.begin(), bucket.end(),
                  [](std::uint32_t a, std::uint32_t b) { return subset_vertices(a) < subset_vertices(b); });
        for (std::uint32_t s : bucket) {
            if (!keep(s)) continue;
            const auto verts = subset_vertices(s);
            std::vector<std::pair<std::string, std::string>> faces;
            if (verts.size() > 1) {
                for (std::size_t i = 0; i < verts.size(); ++i) {
                    auto rest = verts;
                    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
                    faces.emplace_back("", subset_id(n, rest));
                }
            }
            builder.add_cell_named(static_cast<int>(size) - 1, subset_id(n, verts), faces);
        }
    }
    return builder.build();
}

}  // namespace

std::string subset_id(int n, std::span<const int> vertices) {
    std::string out;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
        if (n >= 10 && k > 0) out += '.';
        out += std::to_string(vertices[k]);
    }
    return out;
}

SimplicialSet standard_simplex(int n) {
    return simplex_subobject(n, [](std::uint32_t) { return true; });
}

SimplicialSet boundary(int n) {
    if (n < 0) throw InputError("boundary needs n >= 0");
    const std::uint32_t full = (1u << (n + 1)) - 1;
    return simplex_subobject(n, [full](std::uint32_t s) { return s != full; });
}

SimplicialSet horn(int n, int i) {
    if (n < 1 || i < 0 || i > n) throw InputError("horn needs n >= 1 and 0 <= i <= n");
    const std::uint32_t full = (1u << (n + 1)) - 1;
    const std::uint32_t missing = full & ~(1u << i);
    return simplex_subobject(n, [=](std::uint32_t s) { return s != full && s != missing; });
}

namespace {

SMap subobject_inclusion(const SimplicialSet& sub, int n) {
    std::vector<int> vertex_image;
    for (const Cell& c : sub.cells(0)) vertex_image.push_back(std::stoi(c.id));
    return map_from_vertices(sub, standard_simplex(n), vertex_image);
}

}  // namespace

SMap boundary_inclusion(int n) { return subobject_inclusion(boundary(n), n); }
SMap horn_inclusion(int n, int i) { return subobject_inclusion(horn(n, i), n); }

Simplex simplex_with_vertices(const SimplicialSet& delta, int n, std::span<const int> vertices) {
    if (vertices.empty()) throw std::logic_error("empty vertex sequence");
    std::vector<int> distinct(vertices.begin(), vertices.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const Simplex base = delta.at(subset_id(n, distinct));
    std::uint32_t mask = 0;
    for (std::size_t j = 0; j + 1 < vertices.size(); ++j)
        if (vertices[j] == vertices[j + 1]) mask |= 1u << j;
    return Simplex{static_cast<int>(vertices.size()) - 1, base.cell_dim, base.cell, mask};
}

// ---------------------------------------------------------------------------

FiberProduct::FiberProduct(SimplicialSet set, SMap first, SMap second,
                           std::vector<std::vector<std::pair<Simplex, Simplex>>> parts)
    : set_(std::move(set)), first_(std::move(first)), second_(std::move(second)), parts_(std::move(parts)) {
    index_.resize(parts_.size());
    for (std::size_t d = 0; d < parts_.size(); ++d)
        for (std::size_t k = 0; k < parts_[d].size(); ++k) index_[d].emplace(parts_[d][k], static_cast<int>(k));
}

const std::pair<Simplex, Simplex>& FiberProduct::components(int degree, int index) const {
    return parts_.at(static_cast<std::size_t>(degree)).at(static_cast<std::size_t>(index));
}

namespace {

std::optional<Simplex> lookup_pair(const std::vector<std::map<std::pair<Simplex, Simplex>, int>>& index,
                                   const Simplex& a, const Simplex& b) {
    if (a.dim != b.dim) throw std::logic_error("pair of simplices of different degrees");
    const std::uint32_t common = a.degen & b.degen;
    const int reduced = a.dim - std::popcount(common);
    const Simplex ra{reduced, a.cell_dim, a.cell, degeneracy::collapse(a.degen, common)};
    const Simplex rb{reduced, b.cell_dim, b.cell, degeneracy::collapse(b.degen, common)};
    if (reduced < 0 || static_cast<std::size_t>(reduced) >= index.size()) return std::nullopt;
    const auto& level = index[static_cast<std::size_t>(reduced)];
    auto it = level.find({ra, rb});
    if (it == level.end()) return std::nullopt;
    return Simplex{a.dim, reduced, it->second, common};
}

}  // namespace

Simplex FiberProduct::pair(const Simplex& a, const Simplex& b) const {
    auto s = lookup_pair(index_, a, b);
    if (!s)
        throw InputError("pair (" + first_.target().name(a) + ", " + second_.target().name(b) +
                         ") is not a simplex of the fiber product");
    return *s;
}

bool FiberProduct::contains(const Simplex& a, const Simplex& b) const { return lookup_pair(index_, a, b).has_value(); }

FiberProduct FiberProduct::of_pairs(const SimplicialSet& a, const SimplicialSet& b, const PairPredicate& accept) {
    if (!a.simplicial() || !b.simplicial())
        throw InputError("products and pullbacks are only defined for simplicial (not semi-simplicial) sets");

    const int top = std::max(-1, a.dimension() + b.dimension());
    if (top > kMaxDegree) throw InputError("fiber product dimension exceeds the supported maximum");
    std::vector<std::vector<std::pair<Simplex, Simplex>>> parts(static_cast<std::size_t>(std::max(0, top + 1)));

    for (int p = 0; p <= a.dimension(); ++p) {
        for (int xi = 0; xi < a.cell_count(p); ++xi) {
            for (int q = 0; q <= b.dimension(); ++q) {
                for (int yi = 0; yi < b.cell_count(q); ++yi) {
                    for (int n = std::max(p, q); n <= p + q; ++n) {
                        const auto masks_a = degeneracy::masks(n, n - p);
                        const auto masks_b = degeneracy::masks(n, n - q);
                        for (std::uint32_t ma : masks_a) {
                            for (std::uint32_t mb : masks_b) {
                                if (ma & mb) continue;
                                const Simplex sa{n, p, xi, ma};
                                const Simplex sb{n, q, yi, mb};
                                if (accept(sa, sb)) parts[static_cast<std::size_t>(n)].emplace_back(sa, sb);
                            }
                        }
                    }
                }
            }
        }
    }
    while (!parts.empty() && parts.back().empty()) parts.pop_back();

    std::vector<std::map<std::pair<Simplex, Simplex>, int>> index(parts.size());
    for (std::size_t d = 0; d < parts.size(); ++d)
        for (std::size_t k = 0; k < parts[d].size(); ++k) index[d].emplace(parts[d][k], static_cast<int>(k));

    SimplicialSetBuilder builder;
    std::optional<int> cut = a.truncation();
    if (const auto t = b.truncation()) cut = cut ? std::min(*cut, *t) : *t;
    if (cut) builder.set_truncation(*cut);
    std::vector<std::vector<Simplex>> first_images(parts.size());
    std::vector<std::vector<Simplex>> second_images(parts.size());
    for (std::size_t d = 0; d < parts.size(); ++d) {
        for (const auto& [sa, sb] : parts[d]) {
            std::vector<Simplex> faces;
            if (d > 0) {
                for (int i = 0; i <= static_cast<int>(d); ++i) {
                    auto f = lookup_pair(index, a.face(sa, i), b.face(sb, i));
                    if (!f) throw std::logic_error("fiber product predicate is not closed under faces");
                    faces.push_back(*f);
                }
            }
            builder.add_cell(static_cast<int>(d), "(" + a.name(sa) + "|" + b.name(sb) + ")", std::move(faces));
            first_images[d].push_back(sa);
            second_images[d].push_back(sb);
        }
    }
    SimplicialSet set = builder.build();
    SMap first(set, a, std::move(first_images));
    SMap second(set, b, std::move(second_images));
    return FiberProduct(std::move(set), std::move(first), std::move(second), std::move(parts));
}

FiberProduct product(const SimplicialSet& x, const SimplicialSet& y) {
    return FiberProduct::of_pairs(x, y, [](const Simplex&, const Simplex&) { return true; });
}

FiberProduct pullback(const SMap& f, const SMap& p) {
    if (!(f.target() == p.target())) throw InputError("pullback needs two maps with the same target");
    return FiberProduct::of_pairs(f.source(), p.source(),
                                  [&](const Simplex& a, const Simplex& b) { return f(a) == p(b); });
}

SMap classifying_map(const SimplicialSet& y, const Simplex& sigma) {
    const SimplicialSet delta = standard_simplex(sigma.dim);
    std::vector<std::vector<Simplex>> images(static_cast<std::size_t>(sigma.dim) + 1);
    for (int d = 0; d <= sigma.dim; ++d) {
        for (int k = 0; k < delta.cell_count(d); ++k) {
            const auto verts = delta.vertices(delta.cell_simplex(d, k));
            images[static_cast<std::size_t>(d)].push_back(y.apply(sigma, verts));
        }
    }
    return SMap(delta, y, std::move(images));
}

FiberProduct restrict_over_simplex(const SMap& p, const Simplex& sigma) {
    return pullback(classifying_map(p.target(), sigma), p);
}

SMap fiber_inclusion(const FiberProduct& small, const FiberProduct& big, std::span<const int> theta) {
    const SimplicialSet& small_base = small.first().target();
    const SimplicialSet& big_base = big.first().target();
    const int n = big_base.dimension();
    const SimplicialSet& src = small.set();
    std::vector<std::vector<Simplex>> images(static_cast<std::size_t>(src.dimension() + 1));
    for (int d = 0; d <= src.dimension(); ++d) {
        for (int k = 0; k < src.cell_count(d); ++k) {
            const auto& [a, b] = small.components(d, k);
            auto verts = small_base.vertices(a);
            for (int& v : verts) v = theta[static_cast<std::size_t>(v)];
            images[static_cast<std::size_t>(d)].push_back(big.pair(simplex_with_vertices(big_base, n, verts), b));
        }
    }
    return SMap(src, big.set(), std::move(images));
}

// ---------------------------------------------------------------------------

Simplex opposite_simplex(const Simplex& s) {
    return Simplex{s.dim, s.cell_dim, s.cell, degeneracy::reverse(s.degen, s.dim)};
}

SimplicialSet opposite(const SimplicialSet& x) {
    SimplicialSetBuilder builder(x.simplicial());
    if (x.truncation()) builder.set_truncation(*x.truncation());
    if (x.is_nerve()) builder.mark_nerve();
    for (int d = 0; d <= x.dimension(); ++d) {
        for (const Cell& c : x.cells(d)) {
            std::vector<Simplex> faces;
            for (int i = 0; i <= d && d > 0; ++i) faces.push_back(opposite_simplex(c.faces[static_cast<std::size_t>(d - i)]));
            builder.add_cell(d, c.id, std::move(faces));
        }
    }
    return builder.build();
}

SMap opposite_map(const SMap& f) {
    auto images = f.images();
    for (auto& row : images)
        for (Simplex& s : row) s = opposite_simplex(s);
    return SMap(opposite(f.source()), opposite(f.target()), std::move(images));
}

std::pair<SimplicialSet, SMap> skeleton(const SimplicialSet& y, int n) {
    SimplicialSetBuilder builder(y.simplicial());
    if (y.is_nerve()) builder.mark_nerve();
    if (y.truncation()) builder.set_truncation(std::min(*y.truncation(), n));
    std::vector<std::vector<Simplex>> images;
    for (int d = 0; d <= std::min(n, y.dimension()); ++d) {
        images.emplace_back();
        for (int k = 0; k < y.cell_count(d); ++k) {
            builder.add_cell(d, y.cell(d, k).id, y.cell(d, k).faces);
            images.back().push_back(y.cell_simplex(d, k));
        }
    }
    SimplicialSet sk = builder.build();
    SMap incl(sk, y, std::move(images));
    return {std::move(sk), std::move(incl)};
}

SMap map_from_vertices(const SimplicialSet& source, const SimplicialSet& target, std::span<const int> vertex_image) {
    if (static_cast<int>(vertex_image.size()) != source.cell_count(0))
        throw InputError("vertex assignment has the wrong length");
    std::vector<std::vector<Simplex>> images(static_cast<std::size_t>(source.dimension() + 1));
    for (int d = 0; d <= source.dimension(); ++d) {
        std::map<std::vector<int>, std::optional<Simplex>> by_vertices;
        for (const Simplex& s : target.simplices(d)) {
            auto [it, fresh] = by_vertices.emplace(target.vertices(s), s);
            if (!fresh) it->second.reset();
        }
        for (int k = 0; k < source.cell_count(d); ++k) {
            auto verts = source.vertices(source.cell_simplex(d, k));
            for (int& v : verts) v = vertex_image[static_cast<std::size_t>(v)];
            auto it = by_vertices.find(verts);
            if (it == by_vertices.end())
                throw InputError("no simplex of the target spans the image of cell \"" + source.cell(d, k).id + "\"");
            if (!it->second)
                throw InputError("image of cell \"" + source.cell(d, k).id + "\" is not determined by its vertices");
            images[static_cast<std::size_t>(d)].push_back(*it->second);
        }
    }
    return SMap(source, target, std::move(images));
}

}  // namespace simpfib

#include <map>

#include "simpfib/category.hpp"

namespace simpfib {

namespace {

using String = std::vector<int>;

std::string join_ids(const FiniteCategory& c, const String& s) {
    std::string id;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) id += ',';
        id += c.morphism(s[i]).id;
    }
    return id;
}

/// Splits a string into its non-identity morphisms and the degeneracy mask
/// marking the identities.
std::pair<String, std::uint32_t> strip(const FiniteCategory& c, std::span<const int> s) {
    String kept;
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (c.is_identity(s[i])) mask |= 1u << i;
        else kept.push_back(s[i]);
    }
    return {kept, mask};
}

void require_composable(const FiniteCategory& c, int start, std::span<const int> s) {
    int at = start;
    for (int m : s) {
        if (c.morphism(m).source != at) throw InputError("morphisms " + join_ids(c, String(s.begin(), s.end())) + " do not compose");
        at = c.morphism(m).target;
    }
}

}  // namespace

SimplicialSet nerve(const FiniteCategory& c, int cap, std::optional<int> cut) {
    if (cap < 1) throw InputError("the nerve degree cap must be at least 1");
    std::optional<int> limit;
    if (c.has_cycles()) limit = cap;
    else if (cut) limit = *cut;

    std::vector<std::vector<String>> strings(2);
    for (int m = 0; m < c.morphism_count(); ++m)
        if (!c.is_identity(m)) strings[1].push_back({m});
    std::optional<int> truncation;
    for (std::size_t n = 1; !strings[n].empty(); ++n) {
        if (limit && static_cast<int>(n) >= *limit) {
            // Longer strings exist exactly when some string extends.
            for (const auto& s : strings[n])
                for (int m = 0; m < c.morphism_count() && !truncation; ++m)
                    if (!c.is_identity(m) && c.morphism(m).source == c.morphism(s.back()).target) truncation = *limit;
            break;
        }
        std::vector<String> next;
        for (const auto& s : strings[n])
            for (int m = 0; m < c.morphism_count(); ++m)
                if (!c.is_identity(m) && c.morphism(m).source == c.morphism(s.back()).target) {
                    next.push_back(s);
                    next.back().push_back(m);
                }
        strings.push_back(std::move(next));
    }

    SimplicialSetBuilder builder;
    builder.mark_nerve();
    if (truncation) builder.set_truncation(*truncation);
    for (int o = 0; o < c.object_count(); ++o) builder.add_cell(0, c.object(o));
    std::vector<std::map<String, int>> index(strings.size());
    auto simplex_of = [&](int start, const String& s) {
        const auto [kept, mask] = strip(c, s);
        const int k = static_cast<int>(s.size());
        if (kept.empty()) return Simplex{k, 0, start, mask};
        return Simplex{k, static_cast<int>(kept.size()), index[kept.size()].at(kept), mask};
    };
    for (std::size_t n = 1; n < strings.size(); ++n) {
        for (const auto& s : strings[n]) {
            const int start = c.morphism(s.front()).source;
            std::vector<Simplex> faces;
            if (n == 1) {
                faces = {Simplex{0, 0, c.morphism(s[0]).target, 0}, Simplex{0, 0, start, 0}};
            } else {
                faces.push_back(simplex_of(c.morphism(s[0]).target, String(s.begin() + 1, s.end())));
                for (std::size_t j = 1; j < n; ++j) {
                    String t(s.begin(), s.begin() + static_cast<long>(j) - 1);
                    t.push_back(c.compose(s[j], s[j - 1]));
                    t.insert(t.end(), s.begin() + static_cast<long>(j) + 1, s.end());
                    faces.push_back(simplex_of(start, t));
                }
                faces.push_back(simplex_of(start, String(s.begin(), s.end() - 1)));
            }
            index[n][s] = builder.add_cell(static_cast<int>(n), join_ids(c, s), std::move(faces));
        }
    }
    return builder.build();
}

Simplex nerve_simplex(const SimplicialSet& n, const FiniteCategory& c, int start, std::span<const int> string) {
    require_composable(c, start, string);
    const auto [kept, mask] = strip(c, string);
    const int k = static_cast<int>(string.size());
    if (kept.empty()) {
        const Simplex v = n.at(c.object(start));
        return Simplex{k, 0, v.cell, mask};
    }
    const Simplex cell = n.at(join_ids(c, kept));
    return Simplex{k, cell.cell_dim, cell.cell, mask};
}

std::vector<int> nerve_string(const SimplicialSet& n, const FiniteCategory& c, const Simplex& s) {
    const auto vertices = n.vertices(s);
    std::vector<int> out;
    for (int i = 0; i < s.dim; ++i) {
        const int span[] = {i, i + 1};
        const Simplex e = n.apply(s, span);
        if (e.nondegenerate()) out.push_back(c.morphism_index(n.cell(e).id));
        else out.push_back(c.identity(c.object_index(n.cell(0, vertices[static_cast<std::size_t>(i)]).id)));
    }
    return out;
}

SMap nerve_functor(const Functor& f, int cap) {
    const FiniteCategory& c = f.source();
    const FiniteCategory& d = f.target();
    SimplicialSet target = nerve(d, cap);
    SimplicialSet source = nerve(c, cap, target.truncation());
    std::vector<std::vector<Simplex>> images(static_cast<std::size_t>(source.dimension() + 1));
    for (int o = 0; o < source.cell_count(0); ++o)
        images[0].push_back(target.at(d.object(f.object(c.object_index(source.cell(0, o).id)))));
    for (int k = 1; k <= source.dimension(); ++k)
        for (int i = 0; i < source.cell_count(k); ++i) {
            const Simplex s = source.cell_simplex(k, i);
            std::vector<int> mapped;
            for (int m : nerve_string(source, c, s)) mapped.push_back(f.morphism(m));
            const int start = f.object(c.morphism(nerve_string(source, c, s).front()).source);
            images[static_cast<std::size_t>(k)].push_back(nerve_simplex(target, d, start, mapped));
        }
    return SMap(std::move(source), std::move(target), std::move(images));
}

CommaCategory comma_category(const Functor& f) {
    const FiniteCategory& c = f.source();
    const FiniteCategory& d = f.target();
    std::vector<std::string> objects;
    std::vector<int> source_object, arrow;
    for (int o = 0; o < c.object_count(); ++o)
        for (int phi = 0; phi < d.morphism_count(); ++phi)
            if (d.morphism(phi).source == f.object(o)) {
                objects.push_back(c.object(o) + "/" + d.morphism(phi).id);
                source_object.push_back(o);
                arrow.push_back(phi);
            }
    const int n = static_cast<int>(objects.size());
    auto end_of = [&](int x) { return d.morphism(arrow[static_cast<std::size_t>(x)]).target; };

    std::vector<Morphism> morphisms;
    std::vector<std::pair<int, int>> components;
    std::vector<int> identities(static_cast<std::size_t>(n), -1);
    std::map<std::tuple<int, int, int, int>, int> lookup;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            std::vector<std::pair<int, int>> found;
            for (int u : c.hom(source_object[static_cast<std::size_t>(x)], source_object[static_cast<std::size_t>(y)]))
                for (int w : d.hom(end_of(x), end_of(y)))
                    if (d.compose(arrow[static_cast<std::size_t>(y)], f.morphism(u)) == d.compose(w, arrow[static_cast<std::size_t>(x)]))
                        found.emplace_back(u, w);
            for (const auto& [u, w] : found) {
                const bool identity = x == y && c.is_identity(u) && d.is_identity(w);
                std::string id = identity ? "id_" + objects[static_cast<std::size_t>(x)]
                                          : objects[static_cast<std::size_t>(x)] + ">" + objects[static_cast<std::size_t>(y)];
                if (!identity && found.size() > 1) id += "#" + c.morphism(u).id + "/" + d.morphism(w).id;
                if (identity) identities[static_cast<std::size_t>(x)] = static_cast<int>(morphisms.size());
                lookup[{x, y, u, w}] = static_cast<int>(morphisms.size());
                morphisms.push_back({std::move(id), x, y});
                components.emplace_back(u, w);
            }
        }
    const int m = static_cast<int>(morphisms.size());
    std::vector<int> composition(static_cast<std::size_t>(m * m), -1);
    for (int g = 0; g < m; ++g)
        for (int h = 0; h < m; ++h) {
            if (morphisms[static_cast<std::size_t>(h)].target != morphisms[static_cast<std::size_t>(g)].source) continue;
            const auto [ug, wg] = components[static_cast<std::size_t>(g)];
            const auto [uh, wh] = components[static_cast<std::size_t>(h)];
            composition[static_cast<std::size_t>(g * m + h)] =
                lookup.at({morphisms[static_cast<std::size_t>(h)].source, morphisms[static_cast<std::size_t>(g)].target,
                           c.compose(ug, uh), d.compose(wg, wh)});
        }
    FiniteCategory comma(objects, morphisms, identities, std::move(composition));

    std::vector<int> to_c_obj, to_d_obj, to_c_mor, to_d_mor;
    for (int x = 0; x < n; ++x) {
        to_c_obj.push_back(source_object[static_cast<std::size_t>(x)]);
        to_d_obj.push_back(end_of(x));
    }
    for (const auto& [u, w] : components) {
        to_c_mor.push_back(u);
        to_d_mor.push_back(w);
    }
    Functor to_source(comma, c, std::move(to_c_obj), std::move(to_c_mor));
    Functor to_target(comma, d, std::move(to_d_obj), std::move(to_d_mor));
    return CommaCategory{std::move(comma), std::move(to_source), std::move(to_target), std::move(arrow), std::move(components)};
}

Slice slice(const Functor& f, const CommaCategory& comma, int d) {
    const FiniteCategory& big = comma.category;
    const FiniteCategory& target = f.target();
    std::vector<int> objects_in, new_object(static_cast<std::size_t>(big.object_count()), -1);
    for (int x = 0; x < big.object_count(); ++x)
        if (target.morphism(comma.arrow[static_cast<std::size_t>(x)]).target == d) {
            new_object[static_cast<std::size_t>(x)] = static_cast<int>(objects_in.size());
            objects_in.push_back(x);
        }
    std::vector<int> morphisms_in, new_morphism(static_cast<std::size_t>(big.morphism_count()), -1);
    for (int m = 0; m < big.morphism_count(); ++m)
        if (new_object[static_cast<std::size_t>(big.morphism(m).source)] >= 0 &&
            comma.components[static_cast<std::size_t>(m)].second == target.identity(d)) {
            new_morphism[static_cast<std::size_t>(m)] = static_cast<int>(morphisms_in.size());
            morphisms_in.push_back(m);
        }
    std::vector<std::string> objects;
    std::vector<int> identities;
    for (int x : objects_in) {
        objects.push_back(big.object(x));
        identities.push_back(new_morphism[static_cast<std::size_t>(big.identity(x))]);
    }
    std::vector<Morphism> morphisms;
    for (int m : morphisms_in)
        morphisms.push_back({big.morphism(m).id, new_object[static_cast<std::size_t>(big.morphism(m).source)],
                             new_object[static_cast<std::size_t>(big.morphism(m).target)]});
    const int k = static_cast<int>(morphisms_in.size());
    std::vector<int> composition(static_cast<std::size_t>(k * k), -1);
    for (int g = 0; g < k; ++g)
        for (int h = 0; h < k; ++h)
            if (morphisms[static_cast<std::size_t>(h)].target == morphisms[static_cast<std::size_t>(g)].source)
                composition[static_cast<std::size_t>(g * k + h)] =
                    new_morphism[static_cast<std::size_t>(big.compose(morphisms_in[static_cast<std::size_t>(g)], morphisms_in[static_cast<std::size_t>(h)]))];
    FiniteCategory small(std::move(objects), std::move(morphisms), std::move(identities), std::move(composition));
    Functor inclusion(small, big, std::move(objects_in), std::move(morphisms_in));
    return Slice{std::move(small), std::move(inclusion)};
}

FiniteCategory slice(const Functor& f, std::string_view d) {
    const int object = f.target().object_index(d);
    return slice(f, comma_category(f), object).category;
}

bool is_cartesian_morphism(const Functor& p, int f) {
    const FiniteCategory& c = p.source();
    const FiniteCategory& d = p.target();
    const int src = c.morphism(f).source;
    const int tgt = c.morphism(f).target;
    for (int h = 0; h < c.morphism_count(); ++h) {
        if (c.morphism(h).target != tgt) continue;
        const int other = c.morphism(h).source;
        for (int u : d.hom(p.object(other), p.object(src))) {
            if (d.compose(p.morphism(f), u) != p.morphism(h)) continue;
            int count = 0;
            for (int v : c.hom(other, src))
                if (p.morphism(v) == u && c.compose(f, v) == h) ++count;
            if (count != 1) return false;
        }
    }
    return true;
}

bool is_grothendieck_fibration(const Functor& p) {
    const FiniteCategory& c = p.source();
    const FiniteCategory& d = p.target();
    for (int g = 0; g < d.morphism_count(); ++g)
        for (int end = 0; end < c.object_count(); ++end) {
            if (p.object(end) != d.morphism(g).target) continue;
            bool lifted = false;
            for (int f = 0; f < c.morphism_count() && !lifted; ++f)
                lifted = c.morphism(f).target == end && p.morphism(f) == g && is_cartesian_morphism(p, f);
            if (!lifted) return false;
        }
    return true;
}

bool is_grothendieck_opfibration(const Functor& p) { return is_grothendieck_fibration(p.opposite()); }

}  // namespace simpfib

#include <algorithm>
#include <functional>
#include <map>

#include "simpfib/category.hpp"

namespace simpfib {

namespace {

void require_plain_id(const std::string& id, const char* what) {
    if (id.empty() || id.find_first_of(",:") != std::string::npos)
        throw ValidationError(std::string(what) + " identifier \"" + id + "\" must be nonempty without ',' or ':'");
}

std::string composite_key(const std::string& g, const std::string& f) { return g + "∘" + f; }

}  // namespace

FiniteCategory::FiniteCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                               std::vector<int> identities, std::vector<int> composition)
    : objects_(std::move(objects)), morphisms_(std::move(morphisms)), identities_(std::move(identities)),
      composition_(std::move(composition)) {
    const int n = object_count();
    const int m = morphism_count();
    std::map<std::string, int> seen;
    for (const auto& o : objects_) {
        require_plain_id(o, "object");
        if (!seen.emplace(o, 0).second) throw ValidationError("duplicate object \"" + o + "\"");
    }
    seen.clear();
    for (const auto& f : morphisms_) {
        require_plain_id(f.id, "morphism");
        if (!seen.emplace(f.id, 0).second) throw ValidationError("duplicate morphism \"" + f.id + "\"");
        if (f.source < 0 || f.source >= n || f.target < 0 || f.target >= n)
            throw ValidationError("morphism \"" + f.id + "\" has an unknown endpoint");
    }
    if (static_cast<int>(identities_.size()) != n) throw ValidationError("every object needs an identity");
    for (int o = 0; o < n; ++o) {
        const int e = identity(o);
        if (e < 0 || e >= m || morphism(e).source != o || morphism(e).target != o)
            throw ValidationError("identity of \"" + object(o) + "\" is not an endomorphism of it");
    }
    if (static_cast<int>(composition_.size()) != m * m) throw ValidationError("composition table has the wrong size");
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f) {
            const int h = composition_[static_cast<std::size_t>(g * m + f)];
            const std::string key = composite_key(morphism(g).id, morphism(f).id);
            if (morphism(f).target != morphism(g).source) {
                if (h != -1) throw ValidationError("composite " + key + " of non-composable morphisms");
                continue;
            }
            if (h < 0 || h >= m) throw ValidationError("composite " + key + " is missing");
            if (morphism(h).source != morphism(f).source || morphism(h).target != morphism(g).target)
                throw ValidationError("composite " + key + " has the wrong endpoints");
        }
    for (int f = 0; f < m; ++f) {
        if (compose(identity(morphism(f).target), f) != f || compose(f, identity(morphism(f).source)) != f)
            throw ValidationError("identity law fails for \"" + morphism(f).id + "\"");
    }
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g) {
            if (morphism(f).target != morphism(g).source) continue;
            const int gf = compose(g, f);
            for (int h = 0; h < m; ++h) {
                if (morphism(g).target != morphism(h).source) continue;
                if (compose(h, gf) != compose(compose(h, g), f))
                    throw ValidationError("associativity fails for " + morphism(h).id + ", " + morphism(g).id + ", " +
                                          morphism(f).id);
            }
        }
}

FiniteCategory FiniteCategory::from_poset(const std::vector<std::string>& elements,
                                          const std::vector<std::pair<std::string, std::string>>& less) {
    const int n = static_cast<int>(elements.size());
    auto index = [&](const std::string& e) {
        const auto it = std::find(elements.begin(), elements.end(), e);
        if (it == elements.end()) throw InputError("unknown poset element \"" + e + "\"");
        return static_cast<int>(it - elements.begin());
    };
    std::vector<std::vector<bool>> le(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int i = 0; i < n; ++i) le[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = true;
    for (const auto& [a, b] : less) le[static_cast<std::size_t>(index(a))][static_cast<std::size_t>(index(b))] = true;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (le[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] && le[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)])
                    le[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (le[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] && le[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
                throw ValidationError("the relations make \"" + elements[static_cast<std::size_t>(i)] + "\" and \"" +
                                      elements[static_cast<std::size_t>(j)] + "\" equal");

    std::vector<Morphism> morphisms;
    std::vector<int> identities(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> arrow(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
    for (int i = 0; i < n; ++i) {
        identities[static_cast<std::size_t>(i)] = static_cast<int>(morphisms.size());
        arrow[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = static_cast<int>(morphisms.size());
        morphisms.push_back({"id_" + elements[static_cast<std::size_t>(i)], i, i});
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || !le[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) continue;
            arrow[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = static_cast<int>(morphisms.size());
            morphisms.push_back({elements[static_cast<std::size_t>(i)] + "<" + elements[static_cast<std::size_t>(j)], i, j});
        }
    const int m = static_cast<int>(morphisms.size());
    std::vector<int> composition(static_cast<std::size_t>(m * m), -1);
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f)
            if (morphisms[static_cast<std::size_t>(f)].target == morphisms[static_cast<std::size_t>(g)].source)
                composition[static_cast<std::size_t>(g * m + f)] =
                    arrow[static_cast<std::size_t>(morphisms[static_cast<std::size_t>(f)].source)]
                         [static_cast<std::size_t>(morphisms[static_cast<std::size_t>(g)].target)];
    return FiniteCategory(elements, std::move(morphisms), std::move(identities), std::move(composition));
}

bool FiniteCategory::is_identity(int m) const { return identity(morphism(m).source) == m; }

int FiniteCategory::compose(int g, int f) const {
    const int h = composition_[static_cast<std::size_t>(g * morphism_count() + f)];
    if (h < 0) throw std::invalid_argument("morphisms " + morphism(g).id + " and " + morphism(f).id + " do not compose");
    return h;
}

std::vector<int> FiniteCategory::hom(int a, int b) const {
    std::vector<int> out;
    for (int m = 0; m < morphism_count(); ++m)
        if (morphism(m).source == a && morphism(m).target == b) out.push_back(m);
    return out;
}

std::optional<int> FiniteCategory::find_object(std::string_view id) const {
    for (int o = 0; o < object_count(); ++o)
        if (object(o) == id) return o;
    return std::nullopt;
}

int FiniteCategory::object_index(std::string_view id) const {
    if (const auto o = find_object(id)) return *o;
    throw InputError("no object \"" + std::string(id) + "\"");
}

int FiniteCategory::morphism_index(std::string_view id) const {
    for (int m = 0; m < morphism_count(); ++m)
        if (morphism(m).id == id) return m;
    throw InputError("no morphism \"" + std::string(id) + "\"");
}

bool FiniteCategory::has_cycles() const {
    // Depth-first search for a cycle in the graph of non-identity morphisms.
    const int n = object_count();
    std::vector<int> state(static_cast<std::size_t>(n), 0);
    std::function<bool(int)> visit = [&](int o) {
        state[static_cast<std::size_t>(o)] = 1;
        for (int m = 0; m < morphism_count(); ++m) {
            if (morphism(m).source != o || is_identity(m)) continue;
            const int t = morphism(m).target;
            if (state[static_cast<std::size_t>(t)] == 1) return true;
            if (state[static_cast<std::size_t>(t)] == 0 && visit(t)) return true;
        }
        state[static_cast<std::size_t>(o)] = 2;
        return false;
    };
    for (int o = 0; o < n; ++o)
        if (state[static_cast<std::size_t>(o)] == 0 && visit(o)) return true;
    return false;
}

FiniteCategory FiniteCategory::opposite() const {
    std::vector<Morphism> morphisms;
    for (const auto& f : morphisms_) morphisms.push_back({f.id, f.target, f.source});
    const int m = morphism_count();
    std::vector<int> composition(static_cast<std::size_t>(m * m), -1);
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f) composition[static_cast<std::size_t>(g * m + f)] = composition_[static_cast<std::size_t>(f * m + g)];
    return FiniteCategory(objects_, std::move(morphisms), identities_, std::move(composition));
}

Functor::Functor(FiniteCategory source, FiniteCategory target, std::vector<int> object_map, std::vector<int> morphism_map)
    : source_(std::move(source)), target_(std::move(target)), objects_(std::move(object_map)),
      morphisms_(std::move(morphism_map)) {
    if (static_cast<int>(objects_.size()) != source_.object_count() ||
        static_cast<int>(morphisms_.size()) != source_.morphism_count())
        throw ValidationError("functor must assign every object and morphism");
    for (int o : objects_)
        if (o < 0 || o >= target_.object_count()) throw ValidationError("functor sends an object outside the target");
    for (int f = 0; f < source_.morphism_count(); ++f) {
        const int g = morphism(f);
        const Morphism& mf = source_.morphism(f);
        if (g < 0 || g >= target_.morphism_count()) throw ValidationError("functor sends a morphism outside the target");
        if (target_.morphism(g).source != object(mf.source) || target_.morphism(g).target != object(mf.target))
            throw ValidationError("functor does not preserve the endpoints of \"" + mf.id + "\"");
    }
    for (int o = 0; o < source_.object_count(); ++o)
        if (morphism(source_.identity(o)) != target_.identity(object(o)))
            throw ValidationError("functor does not preserve the identity of \"" + source_.object(o) + "\"");
    for (int g = 0; g < source_.morphism_count(); ++g)
        for (int f = 0; f < source_.morphism_count(); ++f) {
            if (source_.morphism(f).target != source_.morphism(g).source) continue;
            if (morphism(source_.compose(g, f)) != target_.compose(morphism(g), morphism(f)))
                throw ValidationError("functor does not preserve the composite " +
                                      composite_key(source_.morphism(g).id, source_.morphism(f).id));
        }
}

Functor Functor::thin(FiniteCategory source, FiniteCategory target, std::vector<int> object_map) {
    if (static_cast<int>(object_map.size()) != source.object_count()) throw ValidationError("functor must assign every object");
    std::vector<int> morphisms;
    for (const auto& f : source.morphisms()) {
        const auto a = static_cast<std::size_t>(f.source), b = static_cast<std::size_t>(f.target);
        if (object_map[a] < 0 || object_map[a] >= target.object_count() || object_map[b] < 0 ||
            object_map[b] >= target.object_count())
            throw ValidationError("functor sends an object outside the target");
        const auto h = target.hom(object_map[a], object_map[b]);
        if (h.size() != 1)
            throw ValidationError("no unique image for morphism \"" + f.id + "\"");
        morphisms.push_back(h.front());
    }
    return Functor(std::move(source), std::move(target), std::move(object_map), std::move(morphisms));
}

Functor Functor::opposite() const { return Functor(source_.opposite(), target_.opposite(), objects_, morphisms_); }

Functor identity_functor(const FiniteCategory& c) {
    std::vector<int> objects(static_cast<std::size_t>(c.object_count()));
    std::vector<int> morphisms(static_cast<std::size_t>(c.morphism_count()));
    for (int o = 0; o < c.object_count(); ++o) objects[static_cast<std::size_t>(o)] = o;
    for (int m = 0; m < c.morphism_count(); ++m) morphisms[static_cast<std::size_t>(m)] = m;
    return Functor(c, c, std::move(objects), std::move(morphisms));
}

FiniteCategory point_category() { return FiniteCategory::from_poset({"*"}, {}); }

Functor object_functor(const FiniteCategory& c, std::string_view object) {
    const int o = c.object_index(object);
    return Functor(point_category(), c, {o}, {c.identity(o)});
}

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
    return j.at(key);
}

std::string string_at(const Json& j, const std::string& where) {
    if (!j.is_string()) throw ParseError(where + ": expected a string");
    return j.get<std::string>();
}

void require_kind(const Json& j, const char* kind, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    if (string_at(field(j, "kind", where), where + ".kind") != kind)
        throw ParseError(where + ".kind: expected \"" + std::string(kind) + "\"");
}

FiniteCategory category_at(const Json& j, const std::string& where) {
    require_kind(j, "cat", where);
    std::vector<std::string> objects;
    const Json& objs = field(j, "objects", where);
    if (!objs.is_array()) throw ParseError(where + ".objects: expected an array");
    for (std::size_t i = 0; i < objs.size(); ++i) objects.push_back(string_at(objs[i], where + ".objects[" + std::to_string(i) + "]"));
    auto object_of = [&](const std::string& id, const std::string& at) {
        const auto it = std::find(objects.begin(), objects.end(), id);
        if (it == objects.end()) throw ValidationError(at + ": unknown object \"" + id + "\"");
        return static_cast<int>(it - objects.begin());
    };

    std::vector<Morphism> morphisms;
    std::map<std::string, int> by_id;
    const Json& ms = field(j, "morphisms", where);
    if (!ms.is_array()) throw ParseError(where + ".morphisms: expected an array");
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const std::string at = where + ".morphisms[" + std::to_string(i) + "]";
        Morphism m{string_at(field(ms[i], "id", at), at + ".id"), 0, 0};
        m.source = object_of(string_at(field(ms[i], "src", at), at + ".src"), at + ".src");
        m.target = object_of(string_at(field(ms[i], "tgt", at), at + ".tgt"), at + ".tgt");
        by_id.emplace(m.id, static_cast<int>(morphisms.size()));
        morphisms.push_back(std::move(m));
    }
    auto morphism_of = [&](const std::string& id, const std::string& at) {
        const auto it = by_id.find(id);
        if (it == by_id.end()) throw ValidationError(at + ": unknown morphism \"" + id + "\"");
        return it->second;
    };

    std::vector<int> identities(objects.size(), -1);
    const Json& ids = field(j, "identities", where);
    if (!ids.is_object()) throw ParseError(where + ".identities: expected an object");
    for (const auto& [obj, mor] : ids.items()) {
        const std::string at = where + ".identities." + obj;
        identities[static_cast<std::size_t>(object_of(obj, at))] = morphism_of(string_at(mor, at), at);
    }
    for (std::size_t o = 0; o < objects.size(); ++o)
        if (identities[o] < 0) throw ValidationError(where + ".identities: no identity for \"" + objects[o] + "\"");

    const int m = static_cast<int>(morphisms.size());
    std::vector<int> composition(static_cast<std::size_t>(m * m), -1);
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f) {
            if (morphisms[static_cast<std::size_t>(f)].target != morphisms[static_cast<std::size_t>(g)].source) continue;
            if (g == identities[static_cast<std::size_t>(morphisms[static_cast<std::size_t>(g)].source)])
                composition[static_cast<std::size_t>(g * m + f)] = f;
            else if (f == identities[static_cast<std::size_t>(morphisms[static_cast<std::size_t>(f)].source)])
                composition[static_cast<std::size_t>(g * m + f)] = g;
        }
    if (j.contains("compose")) {
        const Json& table = j.at("compose");
        if (!table.is_object()) throw ParseError(where + ".compose: expected an object");
        const std::string sep = "∘";
        for (const auto& [key, value] : table.items()) {
            const std::string at = where + ".compose." + key;
            const auto cut = key.find(sep);
            if (cut == std::string::npos) throw ParseError(at + ": key must have the form \"g∘f\"");
            const int g = morphism_of(key.substr(0, cut), at);
            const int f = morphism_of(key.substr(cut + sep.size()), at);
            if (morphisms[static_cast<std::size_t>(f)].target != morphisms[static_cast<std::size_t>(g)].source)
                throw ValidationError(at + ": morphisms do not compose");
            const int h = morphism_of(string_at(value, at), at);
            int& slot = composition[static_cast<std::size_t>(g * m + f)];
            if (slot >= 0 && slot != h) throw ValidationError(at + ": contradicts an identity law");
            slot = h;
        }
    }
    return FiniteCategory(std::move(objects), std::move(morphisms), std::move(identities), std::move(composition));
}

}  // namespace

FiniteCategory category_from_json(const Json& j) { return category_at(j, "$"); }

Json category_to_json(const FiniteCategory& c) {
    Json j;
    j["kind"] = "cat";
    j["objects"] = c.objects();
    Json ms = Json::array();
    for (const auto& m : c.morphisms()) {
        Json e;
        e["id"] = m.id;
        e["src"] = c.object(m.source);
        e["tgt"] = c.object(m.target);
        ms.push_back(std::move(e));
    }
    j["morphisms"] = std::move(ms);
    Json ids = Json::object();
    for (int o = 0; o < c.object_count(); ++o) ids[c.object(o)] = c.morphism(c.identity(o)).id;
    j["identities"] = std::move(ids);
    Json table = Json::object();
    for (int g = 0; g < c.morphism_count(); ++g)
        for (int f = 0; f < c.morphism_count(); ++f) {
            if (c.morphism(f).target != c.morphism(g).source || c.is_identity(g) || c.is_identity(f)) continue;
            table[composite_key(c.morphism(g).id, c.morphism(f).id)] = c.morphism(c.compose(g, f)).id;
        }
    j["compose"] = std::move(table);
    return j;
}

Functor functor_from_json(const Json& j) {
    require_kind(j, "functor", "$");
    FiniteCategory source = category_at(field(j, "source", "$"), "$.source");
    FiniteCategory target = category_at(field(j, "target", "$"), "$.target");
    const Json& objs = field(j, "objects", "$");
    if (!objs.is_object()) throw ParseError("$.objects: expected an object");
    std::vector<int> objects(static_cast<std::size_t>(source.object_count()), -1);
    for (const auto& [a, b] : objs.items()) {
        const auto o = source.find_object(a);
        if (!o) throw ValidationError("$.objects: unknown source object \"" + a + "\"");
        const auto t = target.find_object(string_at(b, "$.objects." + a));
        if (!t) throw ValidationError("$.objects." + a + ": unknown target object");
        objects[static_cast<std::size_t>(*o)] = *t;
    }
    for (int o = 0; o < source.object_count(); ++o)
        if (objects[static_cast<std::size_t>(o)] < 0) throw ValidationError("$.objects: no image for \"" + source.object(o) + "\"");
    std::vector<int> morphisms(static_cast<std::size_t>(source.morphism_count()), -1);
    if (j.contains("morphisms")) {
        const Json& ms = j.at("morphisms");
        if (!ms.is_object()) throw ParseError("$.morphisms: expected an object");
        for (const auto& [a, b] : ms.items()) {
            int f = -1;
            for (int k = 0; k < source.morphism_count(); ++k)
                if (source.morphism(k).id == a) f = k;
            if (f < 0) throw ValidationError("$.morphisms: unknown source morphism \"" + a + "\"");
            const std::string id = string_at(b, "$.morphisms." + a);
            int g = -1;
            for (int k = 0; k < target.morphism_count(); ++k)
                if (target.morphism(k).id == id) g = k;
            if (g < 0) throw ValidationError("$.morphisms." + a + ": unknown target morphism \"" + id + "\"");
            morphisms[static_cast<std::size_t>(f)] = g;
        }
    }
    for (int f = 0; f < source.morphism_count(); ++f) {
        if (morphisms[static_cast<std::size_t>(f)] >= 0) continue;
        const auto h = target.hom(objects[static_cast<std::size_t>(source.morphism(f).source)],
                                  objects[static_cast<std::size_t>(source.morphism(f).target)]);
        if (source.is_identity(f))
            morphisms[static_cast<std::size_t>(f)] = target.identity(objects[static_cast<std::size_t>(source.morphism(f).source)]);
        else if (h.size() == 1)
            morphisms[static_cast<std::size_t>(f)] = h.front();
        else
            throw ValidationError("$.morphisms: no image for \"" + source.morphism(f).id + "\"");
    }
    return Functor(std::move(source), std::move(target), std::move(objects), std::move(morphisms));
}

Json functor_to_json(const Functor& f) {
    Json j;
    j["kind"] = "functor";
    j["source"] = category_to_json(f.source());
    j["target"] = category_to_json(f.target());
    Json objs = Json::object();
    for (int o = 0; o < f.source().object_count(); ++o) objs[f.source().object(o)] = f.target().object(f.object(o));
    j["objects"] = std::move(objs);
    Json ms = Json::object();
    for (int m = 0; m < f.source().morphism_count(); ++m) ms[f.source().morphism(m).id] = f.target().morphism(f.morphism(m)).id;
    j["morphisms"] = std::move(ms);
    return j;
}

}  // namespace simpfib

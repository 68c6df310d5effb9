#include "simpfib/ssx.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

namespace simpfib {

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
    throw ParseError((path.empty() ? std::string("/") : path) + ": " + what);
}

const Json& require(const Json& doc, const char* key, const std::string& path) {
    if (!doc.is_object()) field_error(path, "expected an object");
    auto it = doc.find(key);
    if (it == doc.end()) field_error(path, std::string("missing field \"") + key + "\"");
    return *it;
}

void require_kind(const Json& doc, const char* kind, const std::string& path) {
    const Json& k = require(doc, "kind", path);
    if (!k.is_string() || k.get<std::string>() != kind)
        field_error(path + "/kind", std::string("expected \"") + kind + "\"");
}

int parse_degree_key(const std::string& key, const std::string& path) {
    if (key.empty() || key.size() > 2 || !std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; }))
        field_error(path, "degree key \"" + key + "\" is not a non-negative integer");
    const int d = std::stoi(key);
    if (d > kMaxDegree) field_error(path, "degree " + key + " exceeds the supported maximum");
    return d;
}

std::pair<std::string, std::string> face_pair(const Json& face, const std::string& path) {
    if (!face.is_array() || face.size() != 2 || !face[0].is_string() || !face[1].is_string())
        field_error(path, "expected a [degeneracy-word, cell-id] pair of strings");
    return {face[0].get<std::string>(), face[1].get<std::string>()};
}

Simplex simplex_from_json(const SimplicialSet& x, const Json& j, const std::string& path) {
    auto [word, id] = face_pair(j, path);
    std::uint32_t mask = 0;
    try {
        mask = degeneracy::parse(word);
    } catch (const std::invalid_argument& e) {
        field_error(path, e.what());
    }
    auto base = x.find(id);
    if (!base) throw ValidationError(path + ": \"" + id + "\" is not a cell of the target");
    const int dim = base->dim + std::popcount(mask);
    if ((mask >> dim) != 0) throw ValidationError(path + ": degeneracy word \"" + word + "\" is out of range");
    return Simplex{dim, base->cell_dim, base->cell, mask};
}

std::vector<std::pair<int, const Json*>> sorted_degrees(const Json& obj, const std::string& path) {
    if (!obj.is_object()) field_error(path, "expected an object keyed by degree");
    std::vector<std::pair<int, const Json*>> out;
    for (auto it = obj.begin(); it != obj.end(); ++it)
        out.emplace_back(parse_degree_key(it.key(), path + "/" + it.key()), &it.value());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 1; k < out.size(); ++k)
        if (out[k].first == out[k - 1].first) field_error(path, "degree listed twice");
    return out;
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

Json simplex_to_json(const SimplicialSet& x, const Simplex& s) {
    return Json::array({degeneracy::format(s.degen), x.cell(s.cell_dim, s.cell).id});
}

Json sset_to_json(const SimplicialSet& x) {
    Json doc;
    doc["kind"] = "sset";
    doc["simplicial"] = x.simplicial();
    if (x.is_nerve()) doc["nerve"] = true;
    if (x.truncation()) doc["truncation"] = *x.truncation();
    Json cells = Json::object();
    for (int d = 0; d <= x.dimension(); ++d) {
        Json level = Json::array();
        for (const Cell& c : x.cells(d)) {
            Json entry;
            entry["id"] = c.id;
            if (d > 0) {
                Json faces = Json::array();
                for (const Simplex& f : c.faces) faces.push_back(simplex_to_json(x, f));
                entry["faces"] = std::move(faces);
            }
            level.push_back(std::move(entry));
        }
        cells[std::to_string(d)] = std::move(level);
    }
    doc["cells"] = std::move(cells);
    return doc;
}

Json smap_to_json(const SMap& f) {
    Json doc;
    doc["kind"] = "smap";
    doc["source"] = sset_to_json(f.source());
    doc["target"] = sset_to_json(f.target());
    Json assignment = Json::object();
    for (int d = 0; d <= f.source().dimension(); ++d) {
        Json level = Json::object();
        for (int k = 0; k < f.source().cell_count(d); ++k)
            level[f.source().cell(d, k).id] = simplex_to_json(f.target(), f.image(d, k));
        assignment[std::to_string(d)] = std::move(level);
    }
    doc["assignment"] = std::move(assignment);
    return doc;
}

SimplicialSet sset_from_json(const Json& doc, const std::string& path) {
    require_kind(doc, "sset", path);
    bool simplicial = true;
    if (auto it = doc.find("simplicial"); it != doc.end()) {
        if (!it->is_boolean()) field_error(path + "/simplicial", "expected true or false");
        simplicial = it->get<bool>();
    }
    SimplicialSetBuilder builder(simplicial);
    if (auto it = doc.find("nerve"); it != doc.end()) {
        if (!it->is_boolean()) field_error(path + "/nerve", "expected true or false");
        if (it->get<bool>()) builder.mark_nerve();
    }
    if (auto it = doc.find("truncation"); it != doc.end()) {
        if (!it->is_number_integer() || it->get<int>() < 0)
            field_error(path + "/truncation", "expected a non-negative integer");
        builder.set_truncation(it->get<int>());
    }
    const Json& cells = require(doc, "cells", path);
    for (const auto& [degree, level] : sorted_degrees(cells, path + "/cells")) {
        const std::string level_path = path + "/cells/" + std::to_string(degree);
        if (!level->is_array()) field_error(level_path, "expected an array of cells");
        for (std::size_t k = 0; k < level->size(); ++k) {
            const Json& entry = (*level)[k];
            const std::string entry_path = level_path + "/" + std::to_string(k);
            const Json& id = require(entry, "id", entry_path);
            if (!id.is_string()) field_error(entry_path + "/id", "expected a string");
            std::vector<std::pair<std::string, std::string>> faces;
            if (degree > 0) {
                const Json& fs = require(entry, "faces", entry_path);
                if (!fs.is_array()) field_error(entry_path + "/faces", "expected an array");
                for (std::size_t i = 0; i < fs.size(); ++i)
                    faces.push_back(face_pair(fs[i], entry_path + "/faces/" + std::to_string(i)));
            } else if (entry.contains("faces") && !entry["faces"].empty()) {
                field_error(entry_path + "/faces", "vertices have no faces");
            }
            builder.add_cell_named(degree, id.get<std::string>(), faces);
        }
    }
    return builder.build();
}

SMap smap_from_json(const Json& doc, const std::string& path) {
    require_kind(doc, "smap", path);
    SimplicialSet source = sset_from_json(require(doc, "source", path), path + "/source");
    SimplicialSet target = sset_from_json(require(doc, "target", path), path + "/target");
    const Json& assignment = require(doc, "assignment", path);
    std::vector<std::vector<std::optional<Simplex>>> partial(static_cast<std::size_t>(source.dimension() + 1));
    for (int d = 0; d <= source.dimension(); ++d) partial[static_cast<std::size_t>(d)].resize(static_cast<std::size_t>(source.cell_count(d)));

    for (const auto& [degree, level] : sorted_degrees(assignment, path + "/assignment")) {
        const std::string level_path = path + "/assignment/" + std::to_string(degree);
        if (!level->is_object()) field_error(level_path, "expected an object keyed by cell id");
        for (auto it = level->begin(); it != level->end(); ++it) {
            auto cell = source.find(it.key());
            if (!cell || cell->dim != degree)
                throw ValidationError(level_path + ": \"" + it.key() + "\" is not a source cell of degree " +
                                      std::to_string(degree));
            const Simplex img = simplex_from_json(target, it.value(), level_path + "/" + it.key());
            if (img.dim != degree)
                throw ValidationError(level_path + "/" + it.key() + ": image has degree " + std::to_string(img.dim));
            partial[static_cast<std::size_t>(degree)][static_cast<std::size_t>(cell->cell)] = img;
        }
    }
    std::vector<std::vector<Simplex>> images(partial.size());
    for (std::size_t d = 0; d < partial.size(); ++d) {
        for (std::size_t k = 0; k < partial[d].size(); ++k) {
            if (!partial[d][k])
                throw ValidationError(path + "/assignment: cell \"" +
                                      source.cell(static_cast<int>(d), static_cast<int>(k)).id + "\" has no image");
            images[d].push_back(*partial[d][k]);
        }
    }
    return SMap(std::move(source), std::move(target), std::move(images));
}

SsxValue parse_ssx(std::string_view text) {
    const Json doc = parse_json(text);
    const Json& kind = require(doc, "kind", "");
    if (kind == "sset") return sset_from_json(doc);
    if (kind == "smap") return smap_from_json(doc);
    field_error("/kind", "expected \"sset\" or \"smap\"");
}

SimplicialSet parse_sset(std::string_view text) { return sset_from_json(parse_json(text)); }
SMap parse_smap(std::string_view text) { return smap_from_json(parse_json(text)); }

std::string emit_ssx(const SimplicialSet& x) { return sset_to_json(x).dump() + "\n"; }
std::string emit_ssx(const SMap& f) { return smap_to_json(f).dump() + "\n"; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace simpfib

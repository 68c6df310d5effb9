#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "simpfib/simplicial_set.hpp"

namespace simpfib {

/// JSON value type used for every document and report: keys keep insertion
/// order so emitted text is deterministic.
using Json = nlohmann::ordered_json;

/// SSX documents hold either a simplicial set or a map of simplicial sets.
using SsxValue = std::variant<SimplicialSet, SMap>;

/// Parses an SSX document. Syntax errors raise ParseError (with line and
/// column, or the JSON path of the offending field); structural problems
/// raise ValidationError naming the cell.
SsxValue parse_ssx(std::string_view text);
SimplicialSet parse_sset(std::string_view text);
SMap parse_smap(std::string_view text);

/// Canonical text; parse_ssx(emit_ssx(v)) == v and emission is bit-stable.
std::string emit_ssx(const SimplicialSet& x);
std::string emit_ssx(const SMap& f);

Json sset_to_json(const SimplicialSet& x);
Json smap_to_json(const SMap& f);
SimplicialSet sset_from_json(const Json& doc, const std::string& path = "");
SMap smap_from_json(const Json& doc, const std::string& path = "");

/// A simplex as the SSX pair [degeneracy word, cell id].
Json simplex_to_json(const SimplicialSet& x, const Simplex& s);

/// Reads a whole file; throws InputError if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace simpfib

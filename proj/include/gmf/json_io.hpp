#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "gmf/characters.hpp"
#include "gmf/conjecture.hpp"
#include "gmf/decomposition.hpp"
#include "gmf/gmf.hpp"
#include "gmf/matrix.hpp"
#include "gmf/permgroup.hpp"

namespace gmf::io {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// {"n": 2, "entries": [[{"re": 1, "im": 0}, ...], ...]} or the real
/// shorthand {"entries": [[1, 0], [0, 1]]}.
ComplexMatrix matrix_from_json(const Json& j);
/// Full complex form, every number printed with 17 significant digits.
std::string matrix_to_text(const ComplexMatrix& a);

Json complex_to_json(Complex z);

/// {"n": 4, "generators": ["(1 2)", "(1 2 3 4)"], "name": "..."} or a name
/// accepted by named_group.
GroupPtr group_from_json(const Json& j);
/// A path to a group JSON file, otherwise a group name.
GroupPtr group_from_arg(const std::string& arg);

/// {"group": ..., "values": [{"class_rep": "(1 2)", "re": -1, "im": 0}, ...],
/// "label": "..."}. Every class needs a value; the result must decompose into
/// irreducibles with non-negative integer multiplicities and satisfy
/// |chi(g)| <= chi(e).
CharacterFn character_from_json(const Json& j, const GroupPtr& group);
/// "principal", "sign", "irr:k" (row k of the computed table, labelled irrk),
/// "partition:[2,1]" (restricted S_n character), or a path to character JSON.
CharacterFn character_from_arg(const std::string& arg, const GroupPtr& group);

Json to_json(const GmfValue& v);
Json to_json(const OmegaSet& s);
Json to_json(const DecompositionReport& r);
Json to_json(const PermanentExpansion& e);
Json to_json(const CharacterTable& t);
Json to_json(const EpsilonData& e);
Json to_json(const ConjectureReport& r);

}  // namespace gmf::io

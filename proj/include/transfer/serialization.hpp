#pragma once

// JSON, DOT and code-line formats. Grid points are written as [i, j].
//
//   transfer system  {"m":1,"n":1,"relations":[[[0,0],[1,0]], ...]}
//   cover            {"m":1,"n":1,"horizontal":[[0,0]],"vertical":[[0,0]]}
//   certificate      {"p":5,"q":7,"n":1,"target":{...},"index_set":[...],
//                     "witness":7,"verified":true}
//
// Relations omit reflexive pairs on output and accept them on input. A cover
// edge is named by its source point.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "transfer/errors.hpp"
#include "transfer/modular.hpp"
#include "transfer/saturated_cover.hpp"
#include "transfer/transfer_system.hpp"

namespace transfer {

using Json = nlohmann::ordered_json;

Json to_json(GridPoint x);
Json to_json(const TransferSystem& t);
Json to_json(const SaturatedCover& s);
Json to_json(const RealizationCertificate& c);

enum class DocumentKind { TransferSystem, Cover, Unknown };
DocumentKind document_kind(const Json& j);

/// Structure checks only; throws ParseError. The relation may violate the
/// transfer-system axioms.
Relation relation_from_json(const Json& j);
/// Throws ParseError for bad structure and std::invalid_argument for a
/// relation that is not a transfer system.
TransferSystem transfer_system_from_json(const Json& j);
/// Structure checks only; throws ParseError.
EdgeSet edge_set_from_json(const Json& j);

/// "[3,1,1] [2,3]"
std::string code_line(const CodePair& c);
void write_dot(std::ostream& os, const SaturatedCover& s);

/// One JSON document, a JSON array of documents, or JSON Lines. Throws
/// ParseError when none of these parse.
std::vector<Json> read_documents(std::istream& is);
std::vector<Json> read_documents_from_string(const std::string& text);

}  // namespace transfer

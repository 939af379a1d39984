#pragma once

#include <string>

#include "json.hpp"

#include "folmod/model.hpp"

namespace folmod {

// "o" for the root, then "/1[center]" (first chart) or "/2" (second chart)
std::string address_string(const Tower& t, const NodeAddress& addr);

// rational values as "p/q" strings, algebraic values as full TowerElem JSON
nlohmann::json te_json(const Tower& t, const TowerElem& v);

const char* class_name(NodeClass c);
const char* reject_name(RejectReason r);

// classification of the origin germ (the `classify` subcommand)
std::string classify_origin(const Tower& t, OneForm w);

nlohmann::json resolve_report(const ResolutionTree& tree);
nlohmann::json model_report(const ResolutionTree& tree, const IndexMatrix& A,
                            const DivisorialModel& model,
                            const VerifyReport& check);
nlohmann::json list_report(const ListDesing& d);

// temp-file-then-rename
void write_atomic(const std::string& path, const std::string& content);

}  // namespace folmod

// JSON (de)serialization for the file formats the CLI accepts and emits.
#ifndef XMS_JSON_IO_HPP
#define XMS_JSON_IO_HPP

#include "xms/statesum.hpp"

#include <json.hpp>

namespace xms {

using Json = nlohmann::ordered_json;

extern const char* kSchemaVersion;

Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

Json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j); // derives identity and inverses

Json xmod_to_json(const CrossedModule& cm);
CrossedModule xmod_from_json(const Json& j);

Json cocycle_to_json(const CrossedCocycle3& w);
CrossedCocycle3 cocycle_from_json(const Json& j, const CrossedModule& cm);

Json group_cocycle_to_json(const GroupCocycle3& w);
GroupCocycle3 group_cocycle_from_json(const Json& j, const FiniteGroup& h);

Json triangulation_to_json(const Triangulation& t);
Triangulation triangulation_from_json(const Json& j);

Json labeling_to_json(const XiLabeling& l);
XiLabeling labeling_from_json(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

} // namespace xms

#endif

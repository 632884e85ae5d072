#pragma once

#include <string>

#include "json.hpp"
#include "qcx/embed.hpp"
#include "qcx/explattice.hpp"
#include "qcx/intbijection.hpp"
#include "qcx/mapexpr.hpp"
#include "qcx/monotone_seq.hpp"

namespace qcx {

// All parsers throw InputError with a location hint on malformed input.
// Serialized doubles round-trip losslessly (shortest representation).

nlohmann::json bijection_to_json(const IntBijection& a);
IntBijection bijection_from_json(const nlohmann::json& j);

// Same schema plus an optional "negated" flag for mirrored inputs.
nlohmann::json auto_input_to_json(const AutoInput& a);
AutoInput auto_input_from_json(const nlohmann::json& j);

nlohmann::json seq_to_json(const MonotoneSeq& e);
MonotoneSeq seq_from_json(const nlohmann::json& j);

nlohmann::json expr_to_json(const MapExpr& e);
MapExpr expr_from_json(const nlohmann::json& j);

struct EmbeddingInput {
    MonotoneSeq image;
    AutoInput assignment;
};

nlohmann::json embedding_input_to_json(const EmbeddingInput& in);
EmbeddingInput embedding_input_from_json(const nlohmann::json& j);

nlohmann::json embedding_to_json(const EmbeddingMap& m);
EmbeddingMap embedding_from_json(const nlohmann::json& j);

nlohmann::json explattice_to_json(const ExpLatticeMap& m);
ExpLatticeMap explattice_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace qcx

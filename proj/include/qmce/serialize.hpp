#pragma once

#include <json.hpp>

#include "qmce/mceliece.hpp"
#include "qmce/qstate.hpp"

namespace qmce {

// Public half of a key file: everything an encrypting party needs.
struct PublicKey {
    BitMat g;
    unsigned t = 0;
};

nlohmann::json mat_to_hex_rows(const BitMat& m);
BitMat mat_from_hex_rows(const nlohmann::json& rows, std::size_t nrows, std::size_t ncols);

nlohmann::json public_key_to_json(const McElieceKeyPair& key);
nlohmann::json private_key_to_json(const McElieceKeyPair& key);
PublicKey public_key_from_json(const nlohmann::json& j);
// Rebuilds the full key pair, including decoder caches and the public matrix,
// from the stored private components; the result is bit-identical to the
// originally generated key.
McElieceKeyPair keypair_from_private_json(const nlohmann::json& j);

nlohmann::json state_to_json(const QuantumState& psi);
QuantumState state_from_json(const nlohmann::json& j);

// Minimal structural JSON-schema checker covering the subset the shipped
// schemas use: type, properties, required, items, enum, minimum.
// Throws Error naming the offending path.
void validate_schema(const nlohmann::json& value, const nlohmann::json& schema,
                     const std::string& path = "$");

}  // namespace qmce

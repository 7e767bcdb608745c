#include "qmce/serialize.hpp"

namespace qmce {

nlohmann::json mat_to_hex_rows(const BitMat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i).to_hex());
    return rows;
}

BitMat mat_from_hex_rows(const nlohmann::json& rows, std::size_t nrows, std::size_t ncols) {
    if (!rows.is_array() || rows.size() != nrows)
        throw DimensionError("hex matrix: wrong row count");
    BitMat m(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        m.set_row(i, BitVec::from_hex(rows[i].get<std::string>(), ncols));
    return m;
}

nlohmann::json public_key_to_json(const McElieceKeyPair& key) {
    return nlohmann::json{
        {"format", "qmce-public-key"},
        {"version", 1},
        {"n", key.n()},
        {"k", key.k()},
        {"t", key.t},
        {"m", key.code.field.degree()},
        {"g_hex", mat_to_hex_rows(key.g)},
    };
}

PublicKey public_key_from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "qmce-public-key")
        throw DimensionError("public key: unexpected format tag");
    PublicKey pk;
    pk.t = j.at("t").get<unsigned>();
    pk.g = mat_from_hex_rows(j.at("g_hex"), j.at("k").get<std::size_t>(),
                             j.at("n").get<std::size_t>());
    return pk;
}

nlohmann::json private_key_to_json(const McElieceKeyPair& key) {
    nlohmann::json goppa{
        {"m", key.code.field.degree()},
        {"t", key.code.t},
        {"reduction_poly", key.code.field.reduction_poly()},
        {"goppa_poly", key.code.goppa_poly.coeffs()},
        {"support", key.code.support},
        {"k_full", key.code.k()},
    };
    return nlohmann::json{
        {"format", "qmce-private-key"},
        {"version", 1},
        {"n", key.n()},
        {"k", key.k()},
        {"t", key.t},
        {"m", key.code.field.degree()},
        {"s_hex", mat_to_hex_rows(key.s)},
        {"p_hex", mat_to_hex_rows(key.p)},
        {"goppa", std::move(goppa)},
    };
}

McElieceKeyPair keypair_from_private_json(const nlohmann::json& j) {
    if (j.value("format", "") != "qmce-private-key")
        throw DimensionError("private key: unexpected format tag");
    const std::size_t n = j.at("n").get<std::size_t>();
    const std::size_t k = j.at("k").get<std::size_t>();

    const nlohmann::json& gj = j.at("goppa");
    GoppaCode code;
    code.field = GF2mField(gj.at("m").get<unsigned>());
    if (code.field.reduction_poly() != gj.at("reduction_poly").get<std::uint32_t>())
        throw DimensionError("private key: reduction polynomial does not match this build");
    code.t = gj.at("t").get<unsigned>();
    code.goppa_poly = Gf2mPoly(gj.at("goppa_poly").get<std::vector<std::uint16_t>>());
    code.support = gj.at("support").get<std::vector<std::uint16_t>>();
    if (code.support.size() != n) throw DimensionError("private key: support length mismatch");
    goppa_finalize(code);
    if (code.k() != gj.at("k_full").get<std::size_t>())
        throw DimensionError("private key: regenerated code rank mismatch");

    McElieceKeyPair key;
    key.t = code.t;
    key.s = mat_from_hex_rows(j.at("s_hex"), k, k);
    key.s_inv = invert(key.s);
    key.p = mat_from_hex_rows(j.at("p_hex"), n, n);
    key.p_inv = key.p.transpose();
    BitMat g0_used(k, n);
    for (std::size_t i = 0; i < k; ++i) g0_used.set_row(i, code.g0.row(i));
    key.g = mat_mul(mat_mul(key.s, g0_used), key.p);
    key.g0_rinv = right_inverse(g0_used);
    key.g0_used = std::move(g0_used);
    key.code = std::move(code);
    return key;
}

nlohmann::json state_to_json(const QuantumState& psi) {
    nlohmann::json amps = nlohmann::json::array();
    for (std::uint64_t x = 0; x < psi.dim(); ++x) {
        const auto a = psi.amp(x);
        if (a == QuantumState::Amp{0.0, 0.0}) continue;
        amps.push_back(nlohmann::json::array({x, a.real(), a.imag()}));
    }
    return nlohmann::json{
        {"format", "qmce-state"},
        {"version", 1},
        {"qubits", psi.num_qubits()},
        {"amplitudes", std::move(amps)},
    };
}

QuantumState state_from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "qmce-state")
        throw DimensionError("state: unexpected format tag");
    const std::size_t q = j.at("qubits").get<std::size_t>();
    std::vector<QuantumState::Amp> amps(std::uint64_t{1} << q, QuantumState::Amp{0.0, 0.0});
    for (const auto& entry : j.at("amplitudes")) {
        const std::uint64_t idx = entry.at(0).get<std::uint64_t>();
        if (idx >= amps.size()) throw DimensionError("state: amplitude index out of range");
        amps[idx] = QuantumState::Amp{entry.at(1).get<double>(), entry.at(2).get<double>()};
    }
    return QuantumState::from_normalized_amplitudes(std::move(amps));
}

namespace {

bool type_matches(const nlohmann::json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
    if (type == "number") return value.is_number();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    throw Error("schema: unsupported type " + type);
}

}  // namespace

void validate_schema(const nlohmann::json& value, const nlohmann::json& schema,
                     const std::string& path) {
    if (schema.contains("type")) {
        const auto& ty = schema.at("type");
        bool ok = false;
        if (ty.is_string()) {
            ok = type_matches(value, ty.get<std::string>());
        } else {
            for (const auto& option : ty)
                if (type_matches(value, option.get<std::string>())) ok = true;
        }
        if (!ok) throw Error("schema violation at " + path + ": wrong type");
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& option : schema.at("enum"))
            if (option == value) ok = true;
        if (!ok) throw Error("schema violation at " + path + ": not in enum");
    }
    if (schema.contains("minimum") && value.is_number()) {
        if (value.get<double>() < schema.at("minimum").get<double>())
            throw Error("schema violation at " + path + ": below minimum");
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& req : schema.at("required"))
                if (!value.contains(req.get<std::string>()))
                    throw Error("schema violation at " + path + ": missing " +
                                req.get<std::string>());
        if (schema.contains("properties"))
            for (auto it = schema.at("properties").begin(); it != schema.at("properties").end();
                 ++it)
                if (value.contains(it.key()))
                    validate_schema(value.at(it.key()), it.value(), path + "." + it.key());
    }
    if (value.is_array() && schema.contains("items")) {
        std::size_t i = 0;
        for (const auto& elem : value)
            validate_schema(elem, schema.at("items"), path + "[" + std::to_string(i++) + "]");
    }
}

}  // namespace qmce

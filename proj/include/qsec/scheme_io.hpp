// Copyright 2026 The qsec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Scheme definition files: a JSON format with fields
//   {name, qubits, key_model: "private"|"public",
//    builtin?: {kind, params}, keys?: [{id, prob, unitary|kraus, decrypt?}],
//    plaintexts: [{name, state}]}
// where exactly one of builtin/keys is present, unitaries are written as
// "pauli:<STRING>" or an [[re,im],...] matrix, and states as
// "basis:<bits>" or "vector:[re,im;...]".
//
// Parsing keeps the surface forms in a SchemeFile AST so the canonical
// serializer reproduces them; realize() turns the AST into validated
// library objects, decorating any invariant failure with its field path.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qsec/report.hpp"
#include "qsec/scheme.hpp"

namespace qsec {

//=========================================================================
// Surface AST
//=========================================================================

struct StateSpec {
    enum class Kind { kBasis, kVector };
    Kind kind = Kind::kBasis;
    std::string basis_bits;
    std::vector<cplx> amplitudes;
};

struct MatrixSpec {
    std::vector<std::vector<cplx>> rows;
};

struct ChannelSpec {
    enum class Kind { kPauli, kUnitary, kKraus };
    Kind kind = Kind::kPauli;
    std::string pauli;
    MatrixSpec unitary;
    std::vector<MatrixSpec> kraus;
};

struct KeySpec {
    std::string id;
    double prob = 0.0;
    ChannelSpec encrypt;
    std::optional<ChannelSpec> decrypt;
};

struct BuiltinSpec {
    std::string kind;
    std::vector<std::string> params;
};

struct PlaintextSpec {
    std::string name;
    StateSpec state;
};

struct SchemeFile {
    std::string name;
    std::size_t qubits = 0;
    KeyModel key_model = KeyModel::kPrivate;
    std::optional<BuiltinSpec> builtin;
    std::vector<KeySpec> keys;
    std::vector<PlaintextSpec> plaintexts;
};

//=========================================================================
// Parsing
//=========================================================================

namespace schemeio_detail {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& path, const std::string& message) {
    throw UsageError("scheme file: " + path + ": " + message);
}

inline const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) fail(path, "missing required field '" + key + "'");
    return *it;
}

inline std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

inline double get_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

inline void reject_unknown_fields(const json& j, const std::vector<std::string>& known,
                                  const std::string& path) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const std::string& k : known) ok = ok || (k == key);
        if (!ok) fail(path.empty() ? key : path + "." + key, "unknown field");
    }
}

inline cplx parse_entry(const json& j, const std::string& path) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return cplx(j[0].get<double>(), j[1].get<double>());
    }
    fail(path, "expected a number or an [re, im] pair");
}

inline MatrixSpec parse_matrix(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of rows");
    MatrixSpec m;
    const std::size_t dim = j.size();
    for (std::size_t r = 0; r < dim; ++r) {
        const json& row = j[r];
        const std::string row_path = path + "[" + std::to_string(r) + "]";
        if (!row.is_array() || row.size() != dim) {
            fail(row_path, "expected a row of " + std::to_string(dim) + " entries (square matrix)");
        }
        std::vector<cplx> entries;
        entries.reserve(dim);
        for (std::size_t c = 0; c < dim; ++c) {
            entries.push_back(parse_entry(row[c], row_path + "[" + std::to_string(c) + "]"));
        }
        m.rows.push_back(std::move(entries));
    }
    return m;
}

inline ChannelSpec parse_channel(const json& owner, const std::string& path) {
    const bool has_unitary = owner.contains("unitary");
    const bool has_kraus = owner.contains("kraus");
    if (has_unitary == has_kraus) {
        fail(path, "expected exactly one of 'unitary' and 'kraus'");
    }
    ChannelSpec ch;
    if (has_unitary) {
        const json& u = owner.at("unitary");
        if (u.is_string()) {
            const std::string s = u.get<std::string>();
            if (s.rfind("pauli:", 0) != 0) {
                fail(path + ".unitary", "string form must be \"pauli:<STRING>\"");
            }
            ch.kind = ChannelSpec::Kind::kPauli;
            ch.pauli = s.substr(6);
            if (ch.pauli.empty()) fail(path + ".unitary", "empty Pauli string");
        } else {
            ch.kind = ChannelSpec::Kind::kUnitary;
            ch.unitary = parse_matrix(u, path + ".unitary");
        }
    } else {
        const json& ops = owner.at("kraus");
        if (!ops.is_array() || ops.empty()) {
            fail(path + ".kraus", "expected a nonempty array of matrices");
        }
        ch.kind = ChannelSpec::Kind::kKraus;
        for (std::size_t i = 0; i < ops.size(); ++i) {
            ch.kraus.push_back(parse_matrix(ops[i], path + ".kraus[" + std::to_string(i) + "]"));
        }
    }
    return ch;
}

inline std::vector<cplx> parse_vector_state(const std::string& body, const std::string& path) {
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
        fail(path, "vector form must be \"vector:[re,im;re,im;...]\"");
    }
    std::vector<cplx> amps;
    std::stringstream inner(body.substr(1, body.size() - 2));
    std::string pair_text;
    while (std::getline(inner, pair_text, ';')) {
        const std::size_t comma = pair_text.find(',');
        if (comma == std::string::npos) {
            fail(path, "each amplitude must be \"re,im\", got '" + pair_text + "'");
        }
        try {
            std::size_t used = 0;
            const std::string re_text = pair_text.substr(0, comma);
            const std::string im_text = pair_text.substr(comma + 1);
            const double re = std::stod(re_text, &used);
            const double im = std::stod(im_text);
            (void)used;
            amps.emplace_back(re, im);
        } catch (const std::exception&) {
            fail(path, "bad amplitude '" + pair_text + "'");
        }
    }
    if (amps.empty()) fail(path, "empty amplitude list");
    return amps;
}

inline StateSpec parse_state(const json& j, const std::string& path) {
    const std::string s = get_string(j, path);
    StateSpec spec;
    if (s.rfind("basis:", 0) == 0) {
        spec.kind = StateSpec::Kind::kBasis;
        spec.basis_bits = s.substr(6);
        if (spec.basis_bits.empty()) fail(path, "empty basis bitstring");
        for (char c : spec.basis_bits) {
            if (c != '0' && c != '1') {
                fail(path, std::string("bad basis character '") + c + "'");
            }
        }
        return spec;
    }
    if (s.rfind("vector:", 0) == 0) {
        spec.kind = StateSpec::Kind::kVector;
        spec.amplitudes = parse_vector_state(s.substr(7), path);
        return spec;
    }
    fail(path, "state must be \"basis:<bits>\" or \"vector:[re,im;...]\"");
}

}  // namespace schemeio_detail

/// Parse scheme-file text into the surface AST. Diagnostics name the field
/// path that failed (e.g. "keys[1].prob").
inline SchemeFile parse_scheme_text(const std::string& text,
                                    const std::string& source = "<input>") {
    using schemeio_detail::fail;
    using schemeio_detail::field;
    using schemeio_detail::get_number;
    using schemeio_detail::get_string;
    using nlohmann::json;

    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw UsageError("scheme file: " + source + ": " + e.what());
    }
    if (!j.is_object()) throw UsageError("scheme file: " + source + ": top level must be an object");
    schemeio_detail::reject_unknown_fields(
        j, {"name", "qubits", "key_model", "builtin", "keys", "plaintexts"}, "");

    SchemeFile f;
    f.name = get_string(field(j, "name", "name"), "name");
    if (f.name.empty()) fail("name", "must be nonempty");

    const json& q = field(j, "qubits", "qubits");
    if (!q.is_number_integer() || q.get<long long>() < 1) {
        fail("qubits", "expected a positive integer");
    }
    f.qubits = q.get<std::size_t>();

    const std::string model = get_string(field(j, "key_model", "key_model"), "key_model");
    if (model == "private") {
        f.key_model = KeyModel::kPrivate;
    } else if (model == "public") {
        f.key_model = KeyModel::kPublic;
    } else {
        fail("key_model", "expected \"private\" or \"public\", got \"" + model + "\"");
    }

    const bool has_builtin = j.contains("builtin");
    const bool has_keys = j.contains("keys");
    if (has_builtin == has_keys) {
        throw UsageError("scheme file: " + source +
                         ": exactly one of 'builtin' and 'keys' must be present");
    }

    if (has_builtin) {
        const json& b = j.at("builtin");
        schemeio_detail::reject_unknown_fields(b, {"kind", "params"}, "builtin");
        BuiltinSpec spec;
        spec.kind = get_string(field(b, "kind", "builtin.kind"), "builtin.kind");
        if (b.contains("params")) {
            const json& params = b.at("params");
            if (!params.is_array()) fail("builtin.params", "expected an array of strings");
            for (std::size_t i = 0; i < params.size(); ++i) {
                spec.params.push_back(get_string(
                    params[i], "builtin.params[" + std::to_string(i) + "]"));
            }
        }
        f.builtin = std::move(spec);
    } else {
        const json& keys = j.at("keys");
        if (!keys.is_array() || keys.empty()) fail("keys", "expected a nonempty array");
        for (std::size_t i = 0; i < keys.size(); ++i) {
            const std::string path = "keys[" + std::to_string(i) + "]";
            const json& k = keys[i];
            schemeio_detail::reject_unknown_fields(
                k, {"id", "prob", "unitary", "kraus", "decrypt"}, path);
            KeySpec spec;
            spec.id = get_string(field(k, "id", path + ".id"), path + ".id");
            spec.prob = get_number(field(k, "prob", path + ".prob"), path + ".prob");
            spec.encrypt = schemeio_detail::parse_channel(k, path);
            if (k.contains("decrypt")) {
                const json& d = k.at("decrypt");
                schemeio_detail::reject_unknown_fields(d, {"unitary", "kraus"},
                                                       path + ".decrypt");
                spec.decrypt = schemeio_detail::parse_channel(d, path + ".decrypt");
            }
            f.keys.push_back(std::move(spec));
        }
    }

    const json& plaintexts = field(j, "plaintexts", "plaintexts");
    if (!plaintexts.is_array() || plaintexts.empty()) {
        fail("plaintexts", "expected a nonempty array");
    }
    for (std::size_t i = 0; i < plaintexts.size(); ++i) {
        const std::string path = "plaintexts[" + std::to_string(i) + "]";
        const json& p = plaintexts[i];
        schemeio_detail::reject_unknown_fields(p, {"name", "state"}, path);
        PlaintextSpec spec;
        spec.name = get_string(field(p, "name", path + ".name"), path + ".name");
        for (const PlaintextSpec& prev : f.plaintexts) {
            if (prev.name == spec.name) {
                fail(path + ".name", "duplicate plaintext name '" + spec.name + "'");
            }
        }
        spec.state = schemeio_detail::parse_state(field(p, "state", path + ".state"),
                                                  path + ".state");
        f.plaintexts.push_back(std::move(spec));
    }
    return f;
}

/// Parse a scheme file from disk.
inline SchemeFile parse_scheme_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("scheme file: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scheme_text(buf.str(), path);
}

//=========================================================================
// Realization: AST -> validated library objects
//=========================================================================

namespace schemeio_detail {

inline ComplexMatrix realize_matrix(const MatrixSpec& spec, const std::string& path) {
    const std::size_t dim = spec.rows.size();
    if (dim == 0) fail(path, "matrix has no rows");
    ComplexMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        if (spec.rows[r].size() != dim) {
            fail(path, "matrix row " + std::to_string(r) + " has " +
                           std::to_string(spec.rows[r].size()) + " entries, expected " +
                           std::to_string(dim));
        }
        for (std::size_t c = 0; c < dim; ++c) m(r, c) = spec.rows[r][c];
    }
    return m;
}

inline Channel realize_channel(const ChannelSpec& spec, std::size_t qubits,
                               const std::string& path) {
    try {
        switch (spec.kind) {
            case ChannelSpec::Kind::kPauli: {
                if (spec.pauli.size() != qubits) {
                    fail(path, "Pauli string '" + spec.pauli + "' has length " +
                                   std::to_string(spec.pauli.size()) + ", scheme has " +
                                   std::to_string(qubits) + " qubit(s)");
                }
                return Channel::unitary(pauli_string(spec.pauli));
            }
            case ChannelSpec::Kind::kUnitary:
                return Channel::unitary(realize_matrix(spec.unitary, path));
            case ChannelSpec::Kind::kKraus: {
                std::vector<ComplexMatrix> ops;
                ops.reserve(spec.kraus.size());
                for (std::size_t i = 0; i < spec.kraus.size(); ++i) {
                    ops.push_back(
                        realize_matrix(spec.kraus[i], path + "[" + std::to_string(i) + "]"));
                }
                return Channel::kraus(std::move(ops));
            }
        }
        fail(path, "unreachable channel kind");
    } catch (const UsageError& e) {
        const std::string what = e.what();
        // Avoid double-prefixing errors that already carry the path.
        if (what.rfind("scheme file: ", 0) == 0) throw;
        fail(path, what);
    }
}

inline PureState realize_state(const StateSpec& spec, std::size_t qubits,
                               const std::string& path) {
    try {
        if (spec.kind == StateSpec::Kind::kBasis) {
            if (spec.basis_bits.size() != qubits) {
                fail(path, "basis bitstring '" + spec.basis_bits + "' has length " +
                               std::to_string(spec.basis_bits.size()) + ", scheme has " +
                               std::to_string(qubits) + " qubit(s)");
            }
            return PureState::from_bits(spec.basis_bits);
        }
        return PureState(qubits, spec.amplitudes);
    } catch (const UsageError& e) {
        const std::string what = e.what();
        if (what.rfind("scheme file: ", 0) == 0) throw;
        fail(path, what);
    }
}

}  // namespace schemeio_detail

/// Turn a parsed scheme file into a validated Scheme and PlaintextSet.
/// Invariant violations surface as usage errors carrying the field path.
inline std::pair<Scheme, PlaintextSet> realize_scheme_file(const SchemeFile& f) {
    std::optional<Scheme> scheme;
    if (f.builtin) {
        Scheme base = builtin(f.builtin->kind, f.qubits, f.builtin->params, f.key_model);
        if (f.name == base.name()) {
            scheme.emplace(std::move(base));
        } else {
            scheme.emplace(f.name, f.qubits, f.key_model, base.keys());
        }
    } else {
        std::vector<SchemeKey> keys;
        keys.reserve(f.keys.size());
        for (std::size_t i = 0; i < f.keys.size(); ++i) {
            const KeySpec& ks = f.keys[i];
            const std::string path = "keys[" + std::to_string(i) + "]";
            const std::string enc_path =
                path + (ks.encrypt.kind == ChannelSpec::Kind::kKraus ? ".kraus" : ".unitary");
            Channel enc = schemeio_detail::realize_channel(ks.encrypt, f.qubits, enc_path);
            std::optional<Channel> dec;
            if (ks.decrypt) {
                dec = schemeio_detail::realize_channel(*ks.decrypt, f.qubits, path + ".decrypt");
            }
            keys.push_back(SchemeKey{ks.id, ks.prob, std::move(enc), std::move(dec)});
        }
        scheme.emplace(f.name, f.qubits, f.key_model, std::move(keys));
    }

    std::vector<PlaintextEntry> entries;
    entries.reserve(f.plaintexts.size());
    for (std::size_t i = 0; i < f.plaintexts.size(); ++i) {
        const std::string path = "plaintexts[" + std::to_string(i) + "].state";
        entries.push_back({f.plaintexts[i].name,
                           schemeio_detail::realize_state(f.plaintexts[i].state, f.qubits, path)});
    }
    return {std::move(*scheme), PlaintextSet(std::move(entries))};
}

/// Parse and realize in one step.
inline std::pair<Scheme, PlaintextSet> load_scheme(const std::string& path) {
    return realize_scheme_file(parse_scheme_file(path));
}

//=========================================================================
// Canonical serialization
//=========================================================================

namespace schemeio_detail {

inline jsonout::Value matrix_spec_value(const MatrixSpec& m) {
    jsonout::Value rows = jsonout::Value::array();
    for (const std::vector<cplx>& row : m.rows) {
        jsonout::Value rv = jsonout::Value::array();
        for (const cplx& e : row) {
            jsonout::Value entry = jsonout::Value::array();
            entry.push(jsonout::Value::number(e.real()));
            entry.push(jsonout::Value::number(e.imag()));
            rv.push(std::move(entry));
        }
        rows.push(std::move(rv));
    }
    return rows;
}

inline void add_channel_fields(jsonout::Value& owner, const ChannelSpec& ch) {
    switch (ch.kind) {
        case ChannelSpec::Kind::kPauli:
            owner.add("unitary", jsonout::Value::string("pauli:" + ch.pauli));
            return;
        case ChannelSpec::Kind::kUnitary:
            owner.add("unitary", matrix_spec_value(ch.unitary));
            return;
        case ChannelSpec::Kind::kKraus: {
            jsonout::Value ops = jsonout::Value::array();
            for (const MatrixSpec& m : ch.kraus) ops.push(matrix_spec_value(m));
            owner.add("kraus", std::move(ops));
            return;
        }
    }
}

inline std::string state_spec_text(const StateSpec& s) {
    if (s.kind == StateSpec::Kind::kBasis) return "basis:" + s.basis_bits;
    std::string text = "vector:[";
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
        if (i > 0) text += ';';
        text += jsonout::format_double(s.amplitudes[i].real()) + "," +
                jsonout::format_double(s.amplitudes[i].imag());
    }
    return text + "]";
}

}  // namespace schemeio_detail

/// Canonical emission of the surface AST: fixed key order, %.17g floats.
/// serialize(parse(text)) is a fixpoint — parsing the output and
/// serializing again reproduces it byte for byte.
inline std::string serialize_scheme_file(const SchemeFile& f) {
    using jsonout::Value;
    Value root = Value::object();
    root.add("name", Value::string(f.name));
    root.add("qubits", Value::integer(f.qubits));
    root.add("key_model", Value::string(to_string(f.key_model)));
    if (f.builtin) {
        Value b = Value::object();
        b.add("kind", Value::string(f.builtin->kind));
        if (!f.builtin->params.empty()) {
            Value params = Value::array();
            for (const std::string& p : f.builtin->params) params.push(Value::string(p));
            b.add("params", std::move(params));
        }
        root.add("builtin", std::move(b));
    } else {
        Value keys = Value::array();
        for (const KeySpec& k : f.keys) {
            Value kv = Value::object();
            kv.add("id", Value::string(k.id));
            kv.add("prob", Value::number(k.prob));
            schemeio_detail::add_channel_fields(kv, k.encrypt);
            if (k.decrypt) {
                Value d = Value::object();
                schemeio_detail::add_channel_fields(d, *k.decrypt);
                kv.add("decrypt", std::move(d));
            }
            keys.push(std::move(kv));
        }
        root.add("keys", std::move(keys));
    }
    Value plaintexts = Value::array();
    for (const PlaintextSpec& p : f.plaintexts) {
        Value pv = Value::object();
        pv.add("name", Value::string(p.name));
        pv.add("state", Value::string(schemeio_detail::state_spec_text(p.state)));
        plaintexts.push(std::move(pv));
    }
    root.add("plaintexts", std::move(plaintexts));
    return root.dump();
}

}  // namespace qsec

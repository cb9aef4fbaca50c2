#pragma once

#include "quadloop/loop.hpp"

#include <json.hpp>

namespace quadloop {

/// Loop JSON schema. Rationals are serialized as exact "p" or "p/q"
/// strings; "kind" is "linear" or "affine" and "translation" is present
/// only for affine loops. Certificate and trace are optional.
nlohmann::json loopToJson(const Loop& loop, const NontrivialityCertificate* cert,
                          const SynthesisTrace* trace);

struct LoadedLoop {
    Loop loop;
    std::optional<NontrivialityCertificate> certificate;
    std::optional<SynthesisTrace> trace;
};

struct LoopSchemaError : std::runtime_error {
    explicit LoopSchemaError(const std::string& what) : std::runtime_error(what) {}
};

LoadedLoop loopFromJson(const nlohmann::json& j);

nlohmann::json ratToJson(const Rat& r);
Rat ratFromJson(const nlohmann::json& j);
nlohmann::json vecToJson(const VecQ& v);
VecQ vecFromJson(const nlohmann::json& j);
nlohmann::json matToJson(const MatQ& m);
MatQ matFromJson(const nlohmann::json& j);

}  // namespace quadloop

#pragma once

#include "quadloop/loop.hpp"

#include <string>
#include <vector>

namespace quadloop {

enum class EmitFormat { Pretty, CLike, Json };

EmitFormat emitFormatFromName(const std::string& name);

/// Renders a loop. `vars` supplies variable names (x1..xd when empty);
/// `eq`/`eqVars`, when given, name the invariant in the c-like preamble.
/// The json format round-trips byte-exactly through the loop schema.
std::string emitLoop(const Loop& loop, const NontrivialityCertificate* cert,
                     const SynthesisTrace* trace, EmitFormat format,
                     const std::vector<std::string>& vars, const QuadraticEquation* eq = nullptr,
                     const std::vector<std::string>* eqVars = nullptr);

}  // namespace quadloop

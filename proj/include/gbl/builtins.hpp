#pragma once

#include "gbl/modules.hpp"
#include "gbl/sketch.hpp"

namespace gbl {

// Machine transcriptions of the Appendix B constructor space sketches.
// Reconstructed figures are flagged in comments at the construction site.
enum class Builtin { Cat, FinProd, FinLim, CCC };

const ConstructorSpaceSketch& builtin(Builtin which);
const ConstructorSpaceSketch& builtin(const std::string& name); // throws on unknown

// The standard modules over a builtin's graph (product/function-space).
const std::vector<ModuleTemplate>& builtin_modules(Builtin which);

} // namespace gbl

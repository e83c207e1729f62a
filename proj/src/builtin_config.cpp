#include "carnot/config.hpp"

#include <fstream>
#include <sstream>

// The embedded default configuration mirrors configs/default.json; a unit
// test keeps the two in sync.

namespace carnot {

namespace {
const char* kBuiltin =
#include "builtin_config.inc"
    ;
}

const std::string& builtin_config_text() {
    static const std::string text = kBuiltin;
    return text;
}

} // namespace carnot

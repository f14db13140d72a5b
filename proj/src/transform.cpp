#include "vlt/transform.hpp"

#include "vlt/error.hpp"

namespace vlt {

std::string to_string(TransformKind kind) {
    switch (kind) {
        case TransformKind::L: return "L";
        case TransformKind::T: return "T";
        case TransformKind::I: return "I";
        case TransformKind::J: return "J";
        case TransformKind::Ts: return "signed";
        case TransformKind::star: return "star";
    }
    return "?";
}

TransformKind parse_transform_kind(const std::string& name) {
    if (name == "L") return TransformKind::L;
    if (name == "T") return TransformKind::T;
    if (name == "I") return TransformKind::I;
    if (name == "J") return TransformKind::J;
    if (name == "signed" || name == "Ts") return TransformKind::Ts;
    if (name == "star") return TransformKind::star;
    throw ConfigError("unknown transform '" + name + "'");
}

}  // namespace vlt

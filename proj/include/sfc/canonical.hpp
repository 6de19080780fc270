#pragma once

#include <cmath>
#include <string>

#include <json.hpp>

#include "sfc/errors.hpp"

namespace sfc {

using Json = nlohmann::json;

// Canonical JSON: UTF-8, keys sorted lexicographically, no insignificant
// whitespace, numbers in shortest round-trip decimal form. nlohmann::json
// stores objects in a sorted map and dumps shortest round-trip numbers, so
// dump() is the canonical form once non-finite values are ruled out.
inline void require_canonical_encodable(const Json& value) {
    if (value.is_discarded())
        fail(Errc::parse_error, "cannot canonically encode a discarded JSON value");
    if (value.is_number_float() && !std::isfinite(value.get<double>()))
        fail(Errc::validation_error, "cannot canonically encode a non-finite number");
    if (value.is_binary())
        fail(Errc::validation_error, "cannot canonically encode binary data");
    if (value.is_object() || value.is_array())
        for (const auto& item : value) require_canonical_encodable(item);
}

inline std::string canonical_dump(const Json& value) {
    require_canonical_encodable(value);
    return value.dump();
}

// Shortest round-trip decimal form of a double ("0.75", "1.0", "-60.5").
inline std::string canonical_double(double value) {
    if (!std::isfinite(value)) fail(Errc::validation_error, "non-finite number");
    return Json(value).dump();
}

// Hash-chained payloads must round-trip through a file byte-exactly, so they
// may carry only strings, integers and booleans (nested containers of the
// same are fine). Floating point stays out of the hash preimage.
inline void require_hashable_payload(const Json& value) {
    if (value.is_string() || value.is_boolean() || value.is_number_integer() || value.is_number_unsigned())
        return;
    if (value.is_object() || value.is_array()) {
        for (const auto& item : value) require_hashable_payload(item);
        return;
    }
    fail(Errc::validation_error, "audit payload values must be strings, integers or booleans");
}

} // namespace sfc

#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace netsel {

using Json = nlohmann::json;

// Renders a JSON tree as the canonical byte form used for MDL costing:
// object keys in ascending byte order, no insignificant whitespace, reals in
// shortest form with at most 6 significant digits. Identical trees produce
// identical bytes on every platform. Throws on non-finite reals.
std::string canonical_dump(const Json& value);

// 6-significant-digit shortest rendering of one real.
std::string canonical_real(double value);

struct CostReport {
    std::string object_id;
    std::size_t raw_bytes = 0;
    std::size_t compressed_bytes = 0;
};

// cost(o) = byte length of the LZ4 frame over the canonical form.
std::size_t cost_bytes(const Json& value);
CostReport cost_report(const std::string& object_id, const Json& value);

}  // namespace netsel

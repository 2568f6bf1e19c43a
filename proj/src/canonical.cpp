#include "netsel/canonical.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "netsel/lz4.hpp"

namespace netsel {

namespace {

void append_escaped(const std::string& s, std::string& out) {
    out.push_back('"');
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(static_cast<char>(c));
                }
        }
    }
    out.push_back('"');
}

void dump_value(const Json& v, std::string& out) {
    switch (v.type()) {
        case Json::value_t::null:
            out += "null";
            break;
        case Json::value_t::boolean:
            out += v.get<bool>() ? "true" : "false";
            break;
        case Json::value_t::number_integer:
            out += std::to_string(v.get<std::int64_t>());
            break;
        case Json::value_t::number_unsigned:
            out += std::to_string(v.get<std::uint64_t>());
            break;
        case Json::value_t::number_float:
            out += canonical_real(v.get<double>());
            break;
        case Json::value_t::string:
            append_escaped(v.get<std::string>(), out);
            break;
        case Json::value_t::array: {
            out.push_back('[');
            bool first = true;
            for (const auto& e : v) {
                if (!first) out.push_back(',');
                first = false;
                dump_value(e, out);
            }
            out.push_back(']');
            break;
        }
        case Json::value_t::object: {
            // nlohmann objects iterate in ascending key order already
            out.push_back('{');
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out.push_back(',');
                first = false;
                append_escaped(it.key(), out);
                out.push_back(':');
                dump_value(it.value(), out);
            }
            out.push_back('}');
            break;
        }
        default:
            throw std::runtime_error("canonical_dump: unsupported value type");
    }
}

}  // namespace

std::string canonical_real(double value) {
    if (!std::isfinite(value))
        throw std::runtime_error("canonical_real: non-finite value");
    if (value == 0.0) return "0";  // normalizes -0
    char buf[48];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 6);
    std::string s(buf, res.ptr);
    // to_chars(general) may emit "1e+06"; strip the redundant '+' for byte economy
    if (auto pos = s.find("e+"); pos != std::string::npos) s.erase(pos + 1, 1);
    return s;
}

std::string canonical_dump(const Json& value) {
    std::string out;
    dump_value(value, out);
    return out;
}

std::size_t cost_bytes(const Json& value) {
    return lz4::compress_frame(canonical_dump(value)).size();
}

CostReport cost_report(const std::string& object_id, const Json& value) {
    CostReport r;
    r.object_id = object_id;
    const std::string text = canonical_dump(value);
    r.raw_bytes = text.size();
    r.compressed_bytes = lz4::compress_frame(text).size();
    return r;
}

}  // namespace netsel

#include "netsel/lz4.hpp"

#include <cstring>
#include <stdexcept>
#include <vector>

namespace netsel::lz4 {

namespace {

constexpr std::uint32_t kPrime1 = 2654435761u;
constexpr std::uint32_t kPrime2 = 2246822519u;
constexpr std::uint32_t kPrime3 = 3266489917u;
constexpr std::uint32_t kPrime4 = 668265263u;
constexpr std::uint32_t kPrime5 = 374761393u;

inline std::uint32_t rotl32(std::uint32_t x, int r) {
    return (x << r) | (x >> (32 - r));
}

inline std::uint32_t read_le32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

inline std::uint16_t read_le16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

inline void write_le32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

constexpr std::uint32_t kFrameMagic = 0x184D2204u;
constexpr std::size_t kMaxBlockSize = 4u << 20;  // BD = 0x70
constexpr std::size_t kMinMatch = 4;
constexpr std::size_t kLastLiterals = 5;   // final bytes of a block stay literal
constexpr std::size_t kMfLimit = 12;       // no match may start past end-12
constexpr int kHashLog = 14;

inline std::uint32_t hash_pos(const unsigned char* p) {
    return (read_le32(p) * kPrime1) >> (32 - kHashLog);
}

}  // namespace

std::uint32_t xxh32(const void* data, std::size_t len, std::uint32_t seed) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    const unsigned char* const end = p + len;
    std::uint32_t h;
    if (len >= 16) {
        std::uint32_t v1 = seed + kPrime1 + kPrime2;
        std::uint32_t v2 = seed + kPrime2;
        std::uint32_t v3 = seed;
        std::uint32_t v4 = seed - kPrime1;
        const unsigned char* const limit = end - 16;
        do {
            v1 = rotl32(v1 + read_le32(p) * kPrime2, 13) * kPrime1;
            v2 = rotl32(v2 + read_le32(p + 4) * kPrime2, 13) * kPrime1;
            v3 = rotl32(v3 + read_le32(p + 8) * kPrime2, 13) * kPrime1;
            v4 = rotl32(v4 + read_le32(p + 12) * kPrime2, 13) * kPrime1;
            p += 16;
        } while (p <= limit);
        h = rotl32(v1, 1) + rotl32(v2, 7) + rotl32(v3, 12) + rotl32(v4, 18);
    } else {
        h = seed + kPrime5;
    }
    h += static_cast<std::uint32_t>(len);
    while (p + 4 <= end) {
        h = rotl32(h + read_le32(p) * kPrime3, 17) * kPrime4;
        p += 4;
    }
    while (p < end) {
        h = rotl32(h + *p * kPrime5, 11) * kPrime1;
        ++p;
    }
    h ^= h >> 15;
    h *= kPrime2;
    h ^= h >> 13;
    h *= kPrime3;
    h ^= h >> 16;
    return h;
}

namespace {

void emit_sequence(std::string& out, const unsigned char* literals, std::size_t lit_len,
                   std::size_t offset, std::size_t match_len) {
    // match_len == 0 encodes the closing literal-only sequence
    unsigned char token = 0;
    std::size_t lit_extra = 0;
    if (lit_len >= 15) {
        token = 0xf0;
        lit_extra = lit_len - 15;
    } else {
        token = static_cast<unsigned char>(lit_len << 4);
    }
    std::size_t match_extra = 0;
    if (match_len > 0) {
        const std::size_t code = match_len - kMinMatch;
        if (code >= 15) {
            token |= 0x0f;
            match_extra = code - 15;
        } else {
            token |= static_cast<unsigned char>(code);
        }
    }
    out.push_back(static_cast<char>(token));
    if (lit_len >= 15) {
        std::size_t rest = lit_extra;
        while (rest >= 255) {
            out.push_back(static_cast<char>(0xff));
            rest -= 255;
        }
        out.push_back(static_cast<char>(rest));
    }
    out.append(reinterpret_cast<const char*>(literals), lit_len);
    if (match_len == 0) return;
    out.push_back(static_cast<char>(offset & 0xff));
    out.push_back(static_cast<char>((offset >> 8) & 0xff));
    if (match_len - kMinMatch >= 15) {
        std::size_t rest = match_extra;
        while (rest >= 255) {
            out.push_back(static_cast<char>(0xff));
            rest -= 255;
        }
        out.push_back(static_cast<char>(rest));
    }
}

}  // namespace

void compress_block(std::string_view src, std::string& out) {
    const unsigned char* const base = reinterpret_cast<const unsigned char*>(src.data());
    const std::size_t len = src.size();
    if (len < kMfLimit + 1) {
        emit_sequence(out, base, len, 0, 0);
        return;
    }
    std::vector<std::int64_t> table(std::size_t{1} << kHashLog, -1);
    const unsigned char* ip = base;
    const unsigned char* anchor = base;
    const unsigned char* const iend = base + len;
    const unsigned char* const mflimit = iend - kMfLimit;
    const unsigned char* const matchlimit = iend - kLastLiterals;

    while (ip < mflimit) {
        const std::uint32_t h = hash_pos(ip);
        const std::int64_t cand = table[h];
        table[h] = ip - base;
        if (cand < 0 || static_cast<std::size_t>(ip - base) - static_cast<std::size_t>(cand) > 65535 ||
            read_le32(base + cand) != read_le32(ip)) {
            ++ip;
            continue;
        }
        const unsigned char* match = base + cand;
        // extend backwards over unemitted literals
        while (ip > anchor && match > base && ip[-1] == match[-1]) {
            --ip;
            --match;
        }
        const unsigned char* mp = match + kMinMatch;
        const unsigned char* fp = ip + kMinMatch;
        while (fp < matchlimit && *fp == *mp) {
            ++fp;
            ++mp;
        }
        const std::size_t match_len = static_cast<std::size_t>(fp - ip);
        emit_sequence(out, anchor, static_cast<std::size_t>(ip - anchor),
                      static_cast<std::size_t>(ip - match), match_len);
        ip = fp;
        anchor = ip;
        if (ip < mflimit) table[hash_pos(ip - 2)] = (ip - 2) - base;
    }
    emit_sequence(out, anchor, static_cast<std::size_t>(iend - anchor), 0, 0);
}

namespace {

std::string decode_block(std::string_view src, std::size_t max_size) {
    std::string out;
    const unsigned char* p = reinterpret_cast<const unsigned char*>(src.data());
    const unsigned char* const end = p + src.size();
    auto fail = [](const char* what) -> std::size_t {
        throw std::runtime_error(std::string("lz4: malformed block: ") + what);
    };
    while (p < end) {
        const unsigned char token = *p++;
        std::size_t lit_len = token >> 4;
        if (lit_len == 15) {
            unsigned char b;
            do {
                if (p >= end) fail("literal length overruns input");
                b = *p++;
                lit_len += b;
            } while (b == 255);
        }
        if (static_cast<std::size_t>(end - p) < lit_len) fail("literals overrun input");
        if (out.size() + lit_len > max_size) fail("decoded size exceeds limit");
        out.append(reinterpret_cast<const char*>(p), lit_len);
        p += lit_len;
        if (p == end) break;  // final sequence has no match part
        if (end - p < 2) fail("truncated offset");
        const std::size_t offset = read_le16(p);
        p += 2;
        if (offset == 0 || offset > out.size()) fail("offset out of range");
        std::size_t match_len = (token & 0x0f) + kMinMatch;
        if ((token & 0x0f) == 15) {
            unsigned char b;
            do {
                if (p >= end) fail("match length overruns input");
                b = *p++;
                match_len += b;
            } while (b == 255);
        }
        if (out.size() + match_len > max_size) fail("decoded size exceeds limit");
        std::size_t from = out.size() - offset;
        for (std::size_t i = 0; i < match_len; ++i) out.push_back(out[from + i]);
    }
    return out;
}

}  // namespace

std::string decompress_block(std::string_view src, std::size_t expected_size) {
    std::string out = decode_block(src, expected_size);
    if (out.size() != expected_size)
        throw std::runtime_error("lz4: decoded size mismatch");
    return out;
}

std::string compress_frame(std::string_view src) {
    std::string out;
    write_le32(out, kFrameMagic);
    const unsigned char flg = 0x60;  // version 01, independent blocks
    const unsigned char bd = 0x70;   // 4 MiB max block size
    const unsigned char desc[2] = {flg, bd};
    out.push_back(static_cast<char>(flg));
    out.push_back(static_cast<char>(bd));
    out.push_back(static_cast<char>((xxh32(desc, 2, 0) >> 8) & 0xff));
    for (std::size_t pos = 0; pos < src.size(); pos += kMaxBlockSize) {
        const std::string_view chunk = src.substr(pos, kMaxBlockSize);
        std::string block;
        compress_block(chunk, block);
        if (block.size() >= chunk.size()) {
            write_le32(out, static_cast<std::uint32_t>(chunk.size()) | 0x80000000u);
            out.append(chunk);
        } else {
            write_le32(out, static_cast<std::uint32_t>(block.size()));
            out.append(block);
        }
    }
    write_le32(out, 0);  // EndMark
    return out;
}

std::string decompress_frame(std::string_view frame) {
    const unsigned char* p = reinterpret_cast<const unsigned char*>(frame.data());
    const unsigned char* const end = p + frame.size();
    auto need = [&](std::size_t n) {
        if (static_cast<std::size_t>(end - p) < n)
            throw std::runtime_error("lz4: truncated frame");
    };
    need(7);
    if (read_le32(p) != kFrameMagic) throw std::runtime_error("lz4: bad magic");
    p += 4;
    const unsigned char flg = p[0];
    const unsigned char bd = p[1];
    if ((flg >> 6) != 1) throw std::runtime_error("lz4: unsupported frame version");
    const bool block_checksum = flg & 0x10;
    const bool content_size = flg & 0x08;
    const bool content_checksum = flg & 0x04;
    const std::size_t desc_len = 2 + (content_size ? 8 : 0) + ((flg & 0x01) ? 4 : 0);
    need(desc_len + 1);
    const unsigned char hc = p[desc_len];
    if (((xxh32(p, desc_len, 0) >> 8) & 0xff) != hc)
        throw std::runtime_error("lz4: header checksum mismatch");
    const std::size_t max_block = std::size_t{256} << (2 * ((bd >> 4) & 0x07));
    p += desc_len + 1;
    std::string out;
    for (;;) {
        need(4);
        const std::uint32_t raw = read_le32(p);
        p += 4;
        if (raw == 0) break;
        const bool stored = raw & 0x80000000u;
        const std::size_t size = raw & 0x7fffffffu;
        need(size);
        const std::string_view data(reinterpret_cast<const char*>(p), size);
        if (stored) {
            out.append(data);
        } else {
            // decoded size is unknown per-block; bound by the declared max
            out.append(decode_block(data, max_block));
        }
        p += size;
        if (block_checksum) {
            need(4);
            p += 4;
        }
    }
    if (content_checksum) {
        need(4);
        if (read_le32(p) != xxh32(out.data(), out.size(), 0))
            throw std::runtime_error("lz4: content checksum mismatch");
    }
    return out;
}

}  // namespace netsel::lz4

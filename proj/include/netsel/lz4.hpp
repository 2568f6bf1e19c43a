#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

// LZ4 block and frame codecs, written against the published format
// specifications (v1.6.0 frame spec). Frames produced here use the default
// settings of standard tooling: version 01, independent blocks, 4 MiB max
// block size, no checksums or content size.
namespace netsel::lz4 {

std::uint32_t xxh32(const void* data, std::size_t len, std::uint32_t seed);

// Raw block compression. Output is appended to `out`.
void compress_block(std::string_view src, std::string& out);

// Decompresses one raw block; `expected_size` is the exact decoded size.
// Throws std::runtime_error on malformed input.
std::string decompress_block(std::string_view src, std::size_t expected_size);

std::string compress_frame(std::string_view src);
std::string decompress_frame(std::string_view frame);

}  // namespace netsel::lz4

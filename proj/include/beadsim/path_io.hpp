#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "beadsim/path.hpp"

namespace beadsim {

// BBPATH01 is a little-endian binary container: the 8 magic bytes "BBPATH01",
// then u64 n, f64 dt, u64 seed, then n+1 (x, y) pairs of f64. Writing then
// reading reproduces the path bit for bit.
void write_path(std::ostream& out, const Path& p);
void write_path_file(const std::string& filename, const Path& p);

Path read_path(std::istream& in);
Path read_path_file(const std::string& filename);

// FNV-1a over a byte range / a file; used for output digests in manifests.
std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ull);
std::uint64_t fnv1a64_file(const std::string& filename);

}  // namespace beadsim

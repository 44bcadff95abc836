#include "beadsim/path_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace beadsim {

namespace {

constexpr char kMagic[8] = {'B', 'B', 'P', 'A', 'T', 'H', '0', '1'};

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big,
              "mixed-endian platforms are not supported");

template <typename T>
void put(std::ostream& out, T v) {
    static_assert(sizeof(T) == 8);
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
    char buf[8];
    std::memcpy(buf, &bits, 8);
    out.write(buf, 8);
}

template <typename T>
T get(std::istream& in) {
    static_assert(sizeof(T) == 8);
    char buf[8];
    in.read(buf, 8);
    if (!in) throw std::runtime_error("path file: unexpected end of data");
    std::uint64_t bits;
    std::memcpy(&bits, buf, 8);
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
    T v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

void write_path(std::ostream& out, const Path& p) {
    out.write(kMagic, 8);
    put<std::uint64_t>(out, p.n());
    put<double>(out, p.dt());
    put<std::uint64_t>(out, p.meta().seed);
    for (const Vec2& v : p.points()) {
        put<double>(out, v.x);
        put<double>(out, v.y);
    }
    if (!out) throw std::runtime_error("path file: write failed");
}

void write_path_file(const std::string& filename, const Path& p) {
    std::ofstream f(filename, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + filename);
    write_path(f, p);
}

Path read_path(std::istream& in) {
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0)
        throw std::runtime_error("path file: bad magic, not a BBPATH01 file");
    const auto n = get<std::uint64_t>(in);
    const auto dt = get<double>(in);
    const auto seed = get<std::uint64_t>(in);
    if (n > (std::uint64_t(1) << 32))
        throw std::runtime_error("path file: implausible point count");
    std::vector<Vec2> pts(n + 1);
    for (auto& v : pts) {
        v.x = get<double>(in);
        v.y = get<double>(in);
    }
    return Path(std::move(pts), dt, PathMeta{seed, Scheme::FromFile, false});
}

Path read_path_file(const std::string& filename) {
    std::ifstream f(filename, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for reading: " + filename);
    return read_path(f);
}

std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t h) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& filename) {
    std::ifstream f(filename, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for digest: " + filename);
    std::uint64_t h = 0xcbf29ce484222325ull;
    char buf[1 << 16];
    while (f) {
        f.read(buf, sizeof buf);
        h = fnv1a64(buf, std::size_t(f.gcount()), h);
    }
    return h;
}

}  // namespace beadsim

#pragma once

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <zlib.h>

#include "bn/solver.hpp"

// Tablebase file format (little-endian):
//   magic "BNTB" (4 bytes)
//   format version  u16
//   rule            u8   (0 = normal, 1 = misere)
//   grundy flag     u8
//   stacks          u16
//   tokens          u32
//   for m = tokens down to 0:
//     entry count   u64
//     payload       (count bytes if grundy, else ceil(count/8) packed bits)
//   crc32 of the concatenated payloads  u32

namespace bn {

inline constexpr std::uint16_t kTableFormatVersion = 1;

class TablebaseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

template <typename T>
void put_le(std::ostream& os, T v) {
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
    os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
    unsigned char buf[sizeof(T)];
    is.read(reinterpret_cast<char*>(buf), sizeof(T));
    if (!is) throw TablebaseError("tablebase truncated");
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
    return v;
}

} // namespace detail

inline void save_table(const SolveTable& t, std::ostream& os) {
    os.write("BNTB", 4);
    detail::put_le<std::uint16_t>(os, kTableFormatVersion);
    detail::put_le<std::uint8_t>(os, t.rule() == Rule::Misere ? 1 : 0);
    detail::put_le<std::uint8_t>(os, t.has_grundy() ? 1 : 0);
    detail::put_le<std::uint16_t>(os, static_cast<std::uint16_t>(t.params().stacks));
    detail::put_le<std::uint32_t>(os, t.params().tokens);
    uLong crc = crc32(0L, Z_NULL, 0);
    for (std::uint32_t mi = 0; mi <= t.params().tokens; ++mi) {
        std::uint32_t m = t.params().tokens - mi;
        const auto& data = t.layer_data(m);
        detail::put_le<std::uint64_t>(os, t.layer_entries(m));
        os.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
        crc = crc32(crc, data.data(), static_cast<uInt>(data.size()));
    }
    detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(crc));
    if (!os) throw TablebaseError("tablebase write failed");
}

inline void save_table(const SolveTable& t, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw TablebaseError("cannot open " + path.string() + " for writing");
    save_table(t, os);
}

inline SolveTable load_table(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "BNTB", 4) != 0) throw TablebaseError("not a tablebase file (bad magic)");
    std::uint16_t version = detail::get_le<std::uint16_t>(is);
    if (version != kTableFormatVersion)
        throw TablebaseError("unsupported tablebase format version " + std::to_string(version));
    std::uint8_t rule_byte = detail::get_le<std::uint8_t>(is);
    if (rule_byte > 1) throw TablebaseError("bad rule byte");
    std::uint8_t grundy = detail::get_le<std::uint8_t>(is);
    std::uint16_t stacks = detail::get_le<std::uint16_t>(is);
    std::uint32_t tokens = detail::get_le<std::uint32_t>(is);
    GameParams params{tokens, stacks};
    params.validate();

    SolveTable t(params, rule_byte ? Rule::Misere : Rule::Normal, grundy != 0);
    uLong crc = crc32(0L, Z_NULL, 0);
    for (std::uint32_t mi = 0; mi <= tokens; ++mi) {
        std::uint32_t m = tokens - mi;
        std::uint64_t count = detail::get_le<std::uint64_t>(is);
        if (count != t.layer_entries(m))
            throw TablebaseError("layer " + std::to_string(m) + " has wrong entry count");
        auto& data = t.layer_data(m);
        data.resize(t.layer_bytes(m));
        is.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size()));
        if (!is) throw TablebaseError("tablebase truncated");
        crc = crc32(crc, data.data(), static_cast<uInt>(data.size()));
    }
    std::uint32_t want = detail::get_le<std::uint32_t>(is);
    if (want != static_cast<std::uint32_t>(crc)) throw TablebaseError("tablebase checksum failure");
    return t;
}

inline SolveTable load_table(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw TablebaseError("cannot open " + path.string());
    return load_table(is);
}

inline bool tables_identical(const SolveTable& a, const SolveTable& b) {
    if (!(a.params() == b.params()) || a.rule() != b.rule() || a.has_grundy() != b.has_grundy())
        return false;
    for (std::uint32_t m = 0; m <= a.params().tokens; ++m)
        if (a.layer_data(m) != b.layer_data(m)) return false;
    return true;
}

} // namespace bn

#pragma once

// Minimal zip writer for fetch tests: stored or raw-deflated entries, no
// data descriptors, no zip64.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <zlib.h>

namespace testing_support {

struct ZipEntry {
    std::string name;
    std::string content;
    bool deflate = false;
};

inline void put16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>(v >> 8));
}

inline void put32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline std::string raw_deflate(const std::string& in) {
    z_stream zs{};
    deflateInit2(&zs, Z_BEST_COMPRESSION, Z_DEFLATED, -MAX_WBITS, 8, Z_DEFAULT_STRATEGY);
    std::string out(deflateBound(&zs, static_cast<uLong>(in.size())), '\0');
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
    zs.avail_in = static_cast<uInt>(in.size());
    zs.next_out = reinterpret_cast<Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    deflate(&zs, Z_FINISH);
    out.resize(zs.total_out);
    deflateEnd(&zs);
    return out;
}

inline void write_zip(const std::filesystem::path& path, const std::vector<ZipEntry>& entries) {
    std::string body;
    std::string central;
    for (const auto& e : entries) {
        const std::string data = e.deflate ? raw_deflate(e.content) : e.content;
        const auto crc = static_cast<std::uint32_t>(
            crc32(0L, reinterpret_cast<const Bytef*>(e.content.data()), static_cast<uInt>(e.content.size())));
        const auto offset = static_cast<std::uint32_t>(body.size());
        const std::uint16_t method = e.deflate ? 8 : 0;

        put32(body, 0x04034b50);
        put16(body, 20);
        put16(body, 0);
        put16(body, method);
        put16(body, 0);
        put16(body, 0);
        put32(body, crc);
        put32(body, static_cast<std::uint32_t>(data.size()));
        put32(body, static_cast<std::uint32_t>(e.content.size()));
        put16(body, static_cast<std::uint16_t>(e.name.size()));
        put16(body, 0);
        body += e.name;
        body += data;

        put32(central, 0x02014b50);
        put16(central, 20);
        put16(central, 20);
        put16(central, 0);
        put16(central, method);
        put16(central, 0);
        put16(central, 0);
        put32(central, crc);
        put32(central, static_cast<std::uint32_t>(data.size()));
        put32(central, static_cast<std::uint32_t>(e.content.size()));
        put16(central, static_cast<std::uint16_t>(e.name.size()));
        put16(central, 0);
        put16(central, 0);
        put16(central, 0);
        put16(central, 0);
        put32(central, 0);
        put32(central, offset);
        central += e.name;
    }
    std::string eocd;
    put32(eocd, 0x06054b50);
    put16(eocd, 0);
    put16(eocd, 0);
    put16(eocd, static_cast<std::uint16_t>(entries.size()));
    put16(eocd, static_cast<std::uint16_t>(entries.size()));
    put32(eocd, static_cast<std::uint32_t>(central.size()));
    put32(eocd, static_cast<std::uint32_t>(body.size()));
    put16(eocd, 0);
    std::ofstream(path, std::ios::binary) << body << central << eocd;
}

}  // namespace testing_support

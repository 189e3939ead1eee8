#include "erk/fetch.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

#include <curl/curl.h>
#include <openssl/evp.h>
#include <zlib.h>

#include "erk/error.hpp"

namespace erk {

namespace fs = std::filesystem;

namespace {

constexpr const char* kTuBaseUrl = "https://www.chrsmrrs.com/graphkerneldatasets/";

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    std::replace(s.begin(), s.end(), '-', '_');
    return s;
}

std::uint32_t read_u32(const std::vector<unsigned char>& buf, std::size_t at) {
    if (at + 4 > buf.size()) throw InputError("zip: truncated archive");
    return static_cast<std::uint32_t>(buf[at]) | static_cast<std::uint32_t>(buf[at + 1]) << 8 |
           static_cast<std::uint32_t>(buf[at + 2]) << 16 | static_cast<std::uint32_t>(buf[at + 3]) << 24;
}

std::uint16_t read_u16(const std::vector<unsigned char>& buf, std::size_t at) {
    if (at + 2 > buf.size()) throw InputError("zip: truncated archive");
    return static_cast<std::uint16_t>(buf[at] | buf[at + 1] << 8);
}

std::vector<unsigned char> read_all(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<unsigned char> inflate_raw(const unsigned char* data, std::size_t size, std::size_t expected) {
    std::vector<unsigned char> out(expected);
    z_stream zs{};
    if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) throw ComputeError("zip: inflateInit2 failed");
    zs.next_in = const_cast<unsigned char*>(data);
    zs.avail_in = static_cast<uInt>(size);
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = inflate(&zs, Z_FINISH);
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || zs.total_out != expected) throw InputError("zip: corrupt deflate stream");
    return out;
}

bool escapes_root(const fs::path& relative) {
    if (relative.is_absolute() || relative.has_root_name()) return true;
    for (const auto& part : relative) {
        if (part == "..") return true;
    }
    return false;
}

}  // namespace

const std::vector<TuArchive>& supported_archives() {
    // Digests are pinned by the caller (--sha256) until verified copies are recorded here.
    static const std::vector<TuArchive> archives = [] {
        std::vector<TuArchive> list;
        for (const char* name : {"AIDS", "NCI1", "PTC_MR", "MUTAG", "PROTEINS"}) {
            list.push_back({name, std::string(kTuBaseUrl) + name + ".zip", ""});
        }
        return list;
    }();
    return archives;
}

const TuArchive& find_archive(const std::string& name) {
    const std::string key = upper(name);
    for (const auto& a : supported_archives()) {
        if (a.name == key) return a;
    }
    std::string names;
    for (const auto& a : supported_archives()) names += (names.empty() ? "" : ", ") + a.name;
    throw InputError("unknown dataset '" + name + "'; supported: " + names);
}

std::string sha256_hex(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw InputError("cannot open " + file.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw ComputeError("sha256 init failed");
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);
    std::string hex;
    char byte[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(byte, sizeof byte, "%02x", digest[i]);
        hex += byte;
    }
    return hex;
}

void download(const std::string& url, const fs::path& dest) {
    std::unique_ptr<CURL, decltype(&curl_easy_cleanup)> curl(curl_easy_init(), &curl_easy_cleanup);
    if (!curl) throw ComputeError("curl_easy_init failed");
    std::unique_ptr<std::FILE, decltype(&std::fclose)> file(std::fopen(dest.c_str(), "wb"), &std::fclose);
    if (!file) throw InputError("cannot write " + dest.string());
    curl_easy_setopt(curl.get(), CURLOPT_URL, url.c_str());
    curl_easy_setopt(curl.get(), CURLOPT_WRITEDATA, file.get());
    curl_easy_setopt(curl.get(), CURLOPT_FOLLOWLOCATION, 1L);
    curl_easy_setopt(curl.get(), CURLOPT_FAILONERROR, 1L);
    curl_easy_setopt(curl.get(), CURLOPT_CONNECTTIMEOUT, 30L);
    const CURLcode rc = curl_easy_perform(curl.get());
    file.reset();
    if (rc != CURLE_OK) {
        std::error_code ec;
        fs::remove(dest, ec);
        throw ComputeError("download of " + url + " failed: " + curl_easy_strerror(rc));
    }
}

std::vector<fs::path> unzip(const fs::path& archive, const fs::path& target) {
    const auto buf = read_all(archive);
    if (buf.size() < 22) throw InputError("zip: " + archive.string() + " is too small to be an archive");

    // end-of-central-directory record, searched backwards past any comment
    std::size_t eocd = buf.size() - 22;
    while (read_u32(buf, eocd) != 0x06054b50) {
        if (eocd == 0 || buf.size() - eocd > 22 + 0xffff) throw InputError("zip: no central directory");
        --eocd;
    }
    const std::size_t entries = read_u16(buf, eocd + 10);
    std::size_t at = read_u32(buf, eocd + 16);

    std::vector<fs::path> written;
    for (std::size_t e = 0; e < entries; ++e) {
        if (read_u32(buf, at) != 0x02014b50) throw InputError("zip: bad central directory entry");
        const std::uint16_t method = read_u16(buf, at + 10);
        const std::uint32_t crc = read_u32(buf, at + 16);
        const std::uint32_t compressed = read_u32(buf, at + 20);
        const std::uint32_t uncompressed = read_u32(buf, at + 24);
        const std::uint16_t name_len = read_u16(buf, at + 28);
        const std::uint16_t extra_len = read_u16(buf, at + 30);
        const std::uint16_t comment_len = read_u16(buf, at + 32);
        const std::uint32_t local = read_u32(buf, at + 42);
        if (at + 46 + name_len > buf.size()) throw InputError("zip: truncated entry name");
        const std::string name(reinterpret_cast<const char*>(&buf[at + 46]), name_len);
        at += 46 + name_len + extra_len + comment_len;

        const fs::path relative = fs::path(name).lexically_normal();
        if (escapes_root(relative)) throw InputError("zip: entry '" + name + "' escapes the target directory");
        const fs::path out_path = target / relative;
        if (!name.empty() && name.back() == '/') {
            fs::create_directories(out_path);
            continue;
        }

        if (read_u32(buf, local) != 0x04034b50) throw InputError("zip: bad local header for " + name);
        const std::size_t data_at = local + 30 + read_u16(buf, local + 26) + read_u16(buf, local + 28);
        if (data_at + compressed > buf.size()) throw InputError("zip: truncated data for " + name);

        std::vector<unsigned char> content;
        if (method == 0) {
            content.assign(buf.begin() + static_cast<std::ptrdiff_t>(data_at),
                           buf.begin() + static_cast<std::ptrdiff_t>(data_at + compressed));
        } else if (method == 8) {
            content = inflate_raw(&buf[data_at], compressed, uncompressed);
        } else {
            throw InputError("zip: unsupported compression method " + std::to_string(method) + " for " + name);
        }
        if (crc32(0L, content.data(), static_cast<uInt>(content.size())) != crc) {
            throw InputError("zip: CRC mismatch for " + name);
        }
        fs::create_directories(out_path.parent_path());
        std::ofstream out(out_path, std::ios::binary);
        out.write(reinterpret_cast<const char*>(content.data()), static_cast<std::streamsize>(content.size()));
        if (!out) throw InputError("cannot write " + out_path.string());
        written.push_back(out_path);
    }
    return written;
}

fs::path fetch_dataset(const std::string& name, const fs::path& target, const FetchOptions& options) {
    const TuArchive& entry = find_archive(name);
    const std::string url = options.url.value_or(entry.url);
    std::string pinned = options.sha256.value_or(entry.sha256);
    std::transform(pinned.begin(), pinned.end(), pinned.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

    fs::create_directories(target);
    const fs::path archive = target / (entry.name + ".zip.part");
    const fs::path staging = target / ("." + entry.name + ".staging");
    const fs::path final_dir = target / entry.name;
    const auto cleanup = [&] {
        std::error_code ec;
        fs::remove(archive, ec);
        fs::remove_all(staging, ec);
    };

    try {
        download(url, archive);
        const std::string digest = sha256_hex(archive);
        if (pinned.empty()) {
            throw InputError("no pinned sha256 for " + entry.name + "; rerun with --sha256 " + digest +
                             " after verifying it against a trusted source");
        }
        if (digest != pinned) {
            throw ComputeError("checksum mismatch for " + entry.name + ": expected " + pinned + ", got " + digest);
        }
        fs::remove_all(staging);
        unzip(archive, staging);
        const fs::path unpacked = fs::is_directory(staging / entry.name) ? staging / entry.name : staging;
        fs::remove_all(final_dir);
        fs::rename(unpacked, final_dir);
    } catch (...) {
        cleanup();
        throw;
    }
    cleanup();
    return final_dir;
}

}  // namespace erk

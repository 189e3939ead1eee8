#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace erk {

struct TuArchive {
    std::string name;    // canonical TU name, e.g. "PTC_MR"
    std::string url;
    std::string sha256;  // lowercase hex; empty when no digest is pinned
};

/// Datasets the fetch command knows about. Aliases such as "PTC-MR" resolve
/// to their canonical entry.
const std::vector<TuArchive>& supported_archives();

/// Throws InputError listing the supported names when `name` is unknown.
const TuArchive& find_archive(const std::string& name);

std::string sha256_hex(const std::filesystem::path& file);

/// Downloads `url` (any scheme libcurl handles, including file://) to `dest`.
void download(const std::string& url, const std::filesystem::path& dest);

/// Extracts a zip archive (stored or deflated entries) under `target` and
/// returns the paths written. Entries escaping `target` are rejected.
std::vector<std::filesystem::path> unzip(const std::filesystem::path& archive, const std::filesystem::path& target);

struct FetchOptions {
    std::optional<std::string> url;     // overrides the registry URL
    std::optional<std::string> sha256;  // overrides or supplies the pin
};

/// Downloads, verifies and unpacks; returns the directory that load_tu reads.
/// On a digest mismatch (or when no digest is pinned) the archive and any
/// extracted files are removed before throwing.
std::filesystem::path fetch_dataset(const std::string& name, const std::filesystem::path& target,
                                    const FetchOptions& options = {});

}  // namespace erk

#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

namespace refaudit {

class Doi;

// Snapshot store keeping one file per key under a directory (keys are
// DOIs or report ids; filenames are the percent-encoded key plus a fixed
// extension), with a manifest recording when each snapshot was fetched.
// Writes go through a temp file + rename so a crash never leaves a
// half-written snapshot. Safe for concurrent use by fetch workers.
class FileStore {
  public:
    FileStore(std::filesystem::path dir, std::string extension, bool read_only = false);

    bool has(const std::string& key) const;
    std::optional<std::string> read(const std::string& key) const;
    // Throws Error(io) when the store is read-only.
    void write(const std::string& key, const std::string& body, const std::string& fetched_at);
    std::optional<std::string> fetched_at(const std::string& key) const;
    std::filesystem::path path_for(const std::string& key) const;

    bool has(const Doi& doi) const;
    std::optional<std::string> read(const Doi& doi) const;
    void write(const Doi& doi, const std::string& body, const std::string& fetched_at);
    std::optional<std::string> fetched_at(const Doi& doi) const;
    std::filesystem::path path_for(const Doi& doi) const;

    const std::filesystem::path& dir() const { return dir_; }
    bool read_only() const { return read_only_; }
    std::size_t size() const;

  private:
    void load_manifest();
    void save_manifest() const;

    std::filesystem::path dir_;
    std::string extension_;
    bool read_only_;
    mutable std::mutex mutex_;
    std::map<std::string, std::string> manifest_; // key -> fetched_at
};

// Writes content to `target` atomically (temp file in the same directory,
// then rename).
void atomic_write(const std::filesystem::path& target, const std::string& content);

} // namespace refaudit

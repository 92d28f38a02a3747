#include "file_store.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "doi.hpp"
#include "errors.hpp"
#include "textutil.hpp"

namespace fs = std::filesystem;

namespace refaudit {

namespace {

std::optional<std::string> slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

void atomic_write(const fs::path& target, const std::string& content) {
    fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) raise(errc::io, "cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) raise(errc::io, "short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

FileStore::FileStore(fs::path dir, std::string extension, bool read_only)
    : dir_(std::move(dir)), extension_(std::move(extension)), read_only_(read_only) {
    if (!read_only_) fs::create_directories(dir_);
    load_manifest();
}

fs::path FileStore::path_for(const std::string& key) const {
    return dir_ / (percent_encode(key) + extension_);
}

bool FileStore::has(const std::string& key) const { return fs::exists(path_for(key)); }

std::optional<std::string> FileStore::read(const std::string& key) const {
    return slurp(path_for(key));
}

void FileStore::write(const std::string& key, const std::string& body,
                      const std::string& fetched_at) {
    if (read_only_) raise(errc::io, "snapshot store " + dir_.string() + " is read-only");
    std::lock_guard lock(mutex_);
    atomic_write(path_for(key), body);
    manifest_[key] = fetched_at;
    save_manifest();
}

std::optional<std::string> FileStore::fetched_at(const std::string& key) const {
    std::lock_guard lock(mutex_);
    auto it = manifest_.find(key);
    if (it == manifest_.end()) return std::nullopt;
    return it->second;
}

std::size_t FileStore::size() const {
    std::lock_guard lock(mutex_);
    return manifest_.size();
}

fs::path FileStore::path_for(const Doi& doi) const { return path_for(doi.value()); }
bool FileStore::has(const Doi& doi) const { return has(doi.value()); }
std::optional<std::string> FileStore::read(const Doi& doi) const { return read(doi.value()); }
void FileStore::write(const Doi& doi, const std::string& body, const std::string& fetched_at) {
    write(doi.value(), body, fetched_at);
}
std::optional<std::string> FileStore::fetched_at(const Doi& doi) const {
    return fetched_at(doi.value());
}

void FileStore::load_manifest() {
    auto body = slurp(dir_ / "manifest.json");
    if (!body) return;
    auto j = nlohmann::json::parse(*body, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        raise(errc::parse, "corrupt manifest in " + dir_.string());
    for (auto& [k, v] : j.items())
        if (v.is_string()) manifest_[k] = v.get<std::string>();
}

void FileStore::save_manifest() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : manifest_) j[k] = v;
    atomic_write(dir_ / "manifest.json", j.dump(2) + "\n");
}

} // namespace refaudit

#include "vcsim/store/snapshot.hpp"

#include <fstream>
#include <string>

#include <json.hpp>

#include "vcsim/core/json_io.hpp"

namespace vcsim::store {

using nlohmann::json;

namespace {

template <typename T, typename Fn>
void read_lines(std::istream& in, Fn&& apply) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            apply(json::parse(line).get<T>());
        } catch (const json::exception& e) {
            throw StoreError(StoreErrc::BadSnapshot, "line " + std::to_string(lineno) + ": " + e.what());
        } catch (const std::invalid_argument& e) {
            throw StoreError(StoreErrc::BadSnapshot, "line " + std::to_string(lineno) + ": " + e.what());
        }
    }
}

} // namespace

void write_detections(std::ostream& out, const DetectionStore& store) {
    for (const auto& d : store.all()) {
        out << json(d).dump() << '\n';
    }
}

void read_detections(std::istream& in, DetectionStore& store) {
    read_lines<Detection>(in, [&](const Detection& d) { store.restore(d); });
}

void write_watchlist(std::ostream& out, const WatchlistStore& store) {
    for (const auto& e : store.list()) {
        out << json(e).dump() << '\n';
    }
}

void read_watchlist(std::istream& in, WatchlistStore& store) {
    read_lines<WatchlistEntry>(in, [&](const WatchlistEntry& e) { store.restore(e); });
}

void save_snapshot(const std::filesystem::path& dir, const DetectionStore& detections, const WatchlistStore& watchlist) {
    std::filesystem::create_directories(dir);
    std::ofstream d(dir / kDetectionsFile, std::ios::binary | std::ios::trunc);
    write_detections(d, detections);
    std::ofstream w(dir / kWatchlistFile, std::ios::binary | std::ios::trunc);
    write_watchlist(w, watchlist);
    if (!d || !w) {
        throw StoreError(StoreErrc::BadSnapshot, "failed writing snapshot to " + dir.string());
    }
}

void load_snapshot(const std::filesystem::path& dir, DetectionStore& detections, WatchlistStore& watchlist) {
    if (std::ifstream d(dir / kDetectionsFile, std::ios::binary); d) {
        read_detections(d, detections);
    }
    if (std::ifstream w(dir / kWatchlistFile, std::ios::binary); w) {
        read_watchlist(w, watchlist);
    }
}

} // namespace vcsim::store

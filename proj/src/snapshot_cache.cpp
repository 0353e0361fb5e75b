#include <ranksurprise/snapshot_cache.hpp>

#include <ranksurprise/error.hpp>
#include <ranksurprise/text.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>

namespace ranksurprise {

std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open input file '" + path + "'");
    std::uint64_t h = fnv1a64({});
    char buffer[1 << 16];
    while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
        h = fnv1a64(std::string_view(buffer, static_cast<std::size_t>(in.gcount())), h);
        if (!in)
            break;
    }
    return hex64(h);
}

void write_snapshot_cache(std::ostream& out, const SnapshotCacheKey& key, const TemporalEdgeList& events,
                          const SnapshotSeries& series) {
    nlohmann::ordered_json j;
    j["format"] = "ranksurprise-snapshots";
    j["version"] = snapshot_cache_version;
    j["key"] = {{"input_hash", key.input_hash},
                {"delta", key.config.delta},
                {"start", key.config.start_year},
                {"end", key.config.end_year},
                {"reverse_edges", key.reverse_edges},
                {"weighted", key.weighted}};
    j["labels"] = events.nodes->labels();
    auto& ev = j["events"] = nlohmann::ordered_json::array();
    for (const auto& e : events.events)
        ev.push_back({e.src, e.dst, e.year, e.weight});
    auto& snaps = j["snapshots"] = nlohmann::ordered_json::array();
    for (const auto& s : snapshot_stats(series))
        snaps.push_back({{"t", s.t},
                         {"partial", s.partial},
                         {"nodes", s.nodes},
                         {"edges", s.edges},
                         {"total_weight", s.total_weight}});
    out << j.dump() << '\n';
}

LoadedSnapshots read_snapshot_cache(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
        if (j.at("format") != "ranksurprise-snapshots")
            throw DataError("not a snapshot cache");
        if (j.at("version").get<int>() != snapshot_cache_version)
            throw DataError("unsupported snapshot cache version " + j.at("version").dump());

        LoadedSnapshots loaded;
        const auto& k = j.at("key");
        loaded.key.input_hash = k.at("input_hash").get<std::string>();
        loaded.key.config = {k.at("delta").get<int>(), k.at("start").get<int>(), k.at("end").get<int>()};
        loaded.key.reverse_edges = k.at("reverse_edges").get<bool>();
        loaded.key.weighted = k.at("weighted").get<bool>();

        auto dict = std::make_shared<NodeDictionary>(j.at("labels").get<std::vector<std::string>>());
        if (dict->labels() != j.at("labels").get<std::vector<std::string>>())
            throw DataError("snapshot cache labels are not sorted and unique");
        loaded.events.nodes = dict;
        loaded.events.weighted = loaded.key.weighted;
        for (const auto& e : j.at("events")) {
            const auto src = e.at(0).get<node>();
            const auto dst = e.at(1).get<node>();
            if (src >= dict->size() || dst >= dict->size() || src == dst)
                throw DataError("snapshot cache event references an invalid node");
            loaded.events.events.push_back({src, dst, e.at(2).get<int>(), e.at(3).get<std::uint64_t>()});
        }
        if (!loaded.events.events.empty()) {
            loaded.events.min_year = loaded.events.events.front().year;
            loaded.events.max_year = loaded.events.events.back().year;
        }
        loaded.series = build_snapshots(loaded.events, loaded.key.config);

        std::vector<SnapshotStats> expected;
        for (const auto& s : j.at("snapshots"))
            expected.push_back({s.at("t").get<int>(), s.at("partial").get<bool>(), s.at("nodes").get<std::size_t>(),
                                s.at("edges").get<std::size_t>(), s.at("total_weight").get<std::uint64_t>()});
        if (expected != snapshot_stats(loaded.series))
            throw DataError("snapshot cache statistics do not match its events");
        return loaded;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed snapshot cache: ") + e.what());
    }
}

std::optional<LoadedSnapshots> load_matching_cache(const std::string& path, const SnapshotCacheKey& key) {
    std::ifstream in(path);
    if (!in)
        return std::nullopt;
    try {
        auto loaded = read_snapshot_cache(in);
        if (!(loaded.key == key))
            return std::nullopt;
        return loaded;
    } catch (const DataError&) {
        return std::nullopt;
    }
}

} // namespace ranksurprise

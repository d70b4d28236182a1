#include "topobench/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>
#include <sstream>
#include <vector>

namespace topobench {

double color_distance(Rgb a, Rgb b) {
    const double dr = static_cast<double>(a.r) - b.r;
    const double dg = static_cast<double>(a.g) - b.g;
    const double db = static_cast<double>(a.b) - b.b;
    return std::sqrt(dr * dr + dg * dg + db * db);
}

const RoomSpec* TopologyGraph::find_room(int id) const {
    for (const auto& room : rooms)
        if (room.id == id)
            return &room;
    return nullptr;
}

std::vector<int> TopologyGraph::neighbors(int id) const {
    std::vector<int> out;
    for (const auto& [a, b] : edges) {
        if (a == id)
            out.push_back(b);
        else if (b == id)
            out.push_back(a);
    }
    return out;
}

int TopologyGraph::degree(int id) const {
    int d = 0;
    for (const auto& [a, b] : edges)
        if (a == id || b == id)
            ++d;
    return d;
}

void TopologyGraph::normalize() {
    for (auto& e : edges)
        e = make_edge(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

std::uint64_t graph_id(const TopologyGraph& graph) {
    // FNV-1a over a canonical field walk; room order as given is part of identity
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x100000001b3ull;
        }
    };
    auto mix_str = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        h ^= 0xff; // terminator so "ab"+"c" != "a"+"bc"
        h *= 0x100000001b3ull;
    };
    for (const auto& room : graph.rooms) {
        mix(static_cast<std::uint64_t>(room.id));
        mix_str(room.name);
        mix(static_cast<std::uint64_t>(room.grey_level));
        mix((std::uint64_t(room.rgb.r) << 16) | (std::uint64_t(room.rgb.g) << 8) | room.rgb.b);
        std::uint64_t w;
        static_assert(sizeof(w) == sizeof(room.area_weight));
        std::memcpy(&w, &room.area_weight, sizeof(w));
        mix(w);
    }
    for (const auto& [a, b] : graph.edges) {
        mix(static_cast<std::uint64_t>(a));
        mix(static_cast<std::uint64_t>(b));
    }
    mix(static_cast<std::uint64_t>(graph.entrance_id));
    return h;
}

int GreyAdjacencyProfile::total() const {
    int sum = 0;
    for (const auto& [pair, count] : counts)
        sum += count;
    return sum;
}

const PaletteEntry* Palette::find(int label) const {
    for (const auto& entry : entries)
        if (entry.label == label)
            return &entry;
    return nullptr;
}

ValidationResult validate_graph(const TopologyGraph& graph) {
    ValidationResult result;
    auto flag = [&result](const std::string& msg) { result.violations.push_back(msg); };

    std::set<int> ids;
    for (const auto& room : graph.rooms) {
        if (!ids.insert(room.id).second)
            flag("duplicate room id " + std::to_string(room.id));
        if (room.grey_level < 1 || room.grey_level > 5)
            flag("room " + std::to_string(room.id) + " grey_level " +
                 std::to_string(room.grey_level) + " outside 1..5");
        if (!(room.area_weight > 0))
            flag("room " + std::to_string(room.id) + " area_weight not positive");
    }
    std::map<Rgb, int> seen_colors;
    for (const auto& room : graph.rooms) {
        auto [it, fresh] = seen_colors.emplace(room.rgb, room.id);
        if (!fresh)
            flag("rooms " + std::to_string(it->second) + " and " + std::to_string(room.id) +
                 " share the same rgb color");
    }

    for (const auto& [a, b] : graph.edges) {
        if (a == b)
            flag("self-loop on room " + std::to_string(a));
        if (!ids.count(a))
            flag("edge endpoint " + std::to_string(a) + " is not a room");
        if (!ids.count(b))
            flag("edge endpoint " + std::to_string(b) + " is not a room");
    }

    if (!ids.count(graph.entrance_id))
        flag("entrance_id " + std::to_string(graph.entrance_id) + " is not a room");

    // connectivity over valid edges only
    if (!graph.rooms.empty()) {
        std::map<int, std::vector<int>> adj;
        for (const auto& [a, b] : graph.edges)
            if (a != b && ids.count(a) && ids.count(b)) {
                adj[a].push_back(b);
                adj[b].push_back(a);
            }
        std::set<int> seen{graph.rooms.front().id};
        std::vector<int> stack{graph.rooms.front().id};
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            for (int next : adj[cur])
                if (seen.insert(next).second)
                    stack.push_back(next);
        }
        if (seen.size() != ids.size())
            flag("graph not connected");
    }

    return result;
}

GreyAdjacencyProfile grey_profile(const TopologyGraph& graph) {
    GreyAdjacencyProfile profile;
    for (const auto& [a, b] : graph.edges) {
        const RoomSpec* ra = graph.find_room(a);
        const RoomSpec* rb = graph.find_room(b);
        const int la = ra->grey_level;
        const int lb = rb->grey_level;
        profile.counts[{std::min(la, lb), std::max(la, lb)}] += 1;
    }
    return profile;
}

ValidationResult validate_palette(const Palette& palette) {
    ValidationResult result;
    auto flag = [&result](const std::string& msg) { result.violations.push_back(msg); };

    struct Named {
        std::string name;
        Rgb color;
    };
    std::vector<Named> all;
    for (const auto& entry : palette.entries)
        all.push_back({"entry " + std::to_string(entry.label), entry.color});
    all.push_back({"background", palette.background});
    all.push_back({"boundary", palette.boundary});

    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (all[i].color == all[j].color)
                flag("duplicate color: " + all[i].name + " equals " + all[j].name);

    const auto& entries = palette.entries;
    for (std::size_t i = 0; i < entries.size(); ++i)
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
            const double d = color_distance(entries[i].color, entries[j].color);
            if (!(d > 2.0 * palette.tolerance)) {
                std::ostringstream msg;
                msg << "entries " << entries[i].label << " and " << entries[j].label
                    << " are " << d << " apart, need > " << 2.0 * palette.tolerance;
                flag(msg.str());
            }
        }

    // A blur band between two rooms averages their colors; its midpoint must not
    // land within tolerance of any other classifiable color.
    for (std::size_t i = 0; i < entries.size(); ++i)
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
            const Rgb a = entries[i].color;
            const Rgb b = entries[j].color;
            const double mid[3] = {(a.r + b.r) / 2.0, (a.g + b.g) / 2.0, (a.b + b.b) / 2.0};
            auto mid_dist = [&mid](Rgb c) {
                const double dr = mid[0] - c.r;
                const double dg = mid[1] - c.g;
                const double db = mid[2] - c.b;
                return std::sqrt(dr * dr + dg * dg + db * db);
            };
            for (std::size_t k = 0; k < all.size(); ++k) {
                if (k == i || k == j)
                    continue;
                const double d = mid_dist(all[k].color);
                if (!(d > palette.tolerance)) {
                    std::ostringstream msg;
                    msg << "midpoint of entries " << entries[i].label << "/" << entries[j].label
                        << " is " << d << " from " << all[k].name << ", need > "
                        << palette.tolerance;
                    flag(msg.str());
                }
            }
        }

    return result;
}

} // namespace topobench

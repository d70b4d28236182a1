#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace topobench {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    auto operator<=>(const Rgb&) const = default;
};

double color_distance(Rgb a, Rgb b);

/// One room of a topology graph. grey_level runs 1 (most public) to 5 (most
/// private); area_weight is the room's relative target area.
struct RoomSpec {
    int id = 0;
    std::string name;
    int grey_level = 1;
    Rgb rgb;
    double area_weight = 1.0;
};

/// Unordered room-id pair, stored with first <= second.
using EdgeKey = std::pair<int, int>;

inline EdgeKey make_edge(int a, int b) {
    return a <= b ? EdgeKey{a, b} : EdgeKey{b, a};
}

/// Rooms plus the required ("core") adjacency edges and the entrance room.
struct TopologyGraph {
    std::vector<RoomSpec> rooms;
    std::vector<EdgeKey> edges; // normalized: lo <= hi, sorted, unique
    int entrance_id = 0;

    const RoomSpec* find_room(int id) const;
    std::vector<int> neighbors(int id) const;
    int degree(int id) const;

    /// Normalize edge storage (orient pairs, sort, drop duplicates).
    void normalize();
};

/// Content hash tying plans to the graph that produced them.
std::uint64_t graph_id(const TopologyGraph& graph);

/// Counts of core edges keyed by the unordered grey-level pair of their
/// endpoint rooms. Pairs with count zero are absent.
struct GreyAdjacencyProfile {
    std::map<std::pair<int, int>, int> counts;

    int total() const;
};

struct PaletteEntry {
    int label = 0;
    Rgb color;
};

/// Classification palette: labeled colors plus the background and boundary
/// colors, with the max RGB distance a pixel may sit from a color and still
/// take its label.
struct Palette {
    std::vector<PaletteEntry> entries;
    Rgb background{255, 255, 255};
    Rgb boundary{0, 0, 0};
    double tolerance = 0.0;

    const PaletteEntry* find(int label) const;
};

/// Violations are data, not errors: an empty list means the input is valid.
struct ValidationResult {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

ValidationResult validate_graph(const TopologyGraph& graph);

/// Project room-level edges onto grey-level pair counts. Requires a valid graph.
GreyAdjacencyProfile grey_profile(const TopologyGraph& graph);

ValidationResult validate_palette(const Palette& palette);

} // namespace topobench

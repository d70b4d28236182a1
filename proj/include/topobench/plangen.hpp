#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "topobench/errors.hpp"
#include "topobench/topology.hpp"

namespace topobench {

/// Cell-grid site mask. Cells are addressed (x, y) with y-major storage.
struct SiteBoundary {
    int width = 0, height = 0;
    std::vector<std::uint8_t> mask; // 1 = inside

    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    bool inside(int x, int y) const {
        return in_bounds(x, y) && mask[static_cast<std::size_t>(y) * width + x] != 0;
    }
    int inside_count() const;

    /// Full rectangle, optionally inset by `margin` cells of outside on each side.
    static SiteBoundary rectangle(int width, int height, int margin = 0);
};

/// Inside region must be nonempty and 4-connected.
ValidationResult validate_boundary(const SiteBoundary& boundary);

struct GenParams {
    int max_adjacency_distance = 2; // Chebyshev cell range for seed placement
    int density = 250;              // cells allocated per unit area_weight
    int max_retries = 50;
    std::uint64_t seed = 0;
};

inline constexpr int kEmptyCell = -1;

/// Cell-grid room assignment produced by generate_plan.
struct FloorPlan {
    int width = 0, height = 0;
    std::vector<int> cells; // room id or kEmptyCell, y-major
    SiteBoundary boundary;
    std::uint64_t graph_id = 0;
    std::uint64_t seed = 0;

    int at(int x, int y) const { return cells[static_cast<std::size_t>(y) * width + x]; }
    int& at(int x, int y) { return cells[static_cast<std::size_t>(y) * width + x]; }
};

enum class FailReason {
    SeedPlacement,    // no admissible seed cell for some room
    GrowthOverflow,   // a room ended below half its target size
    EntranceEnclosed, // qualify rule 1
    AdjacencyGap,     // qualify rule 2
    PointContact,     // qualify rule 3
};

const char* to_string(FailReason reason);

struct FeasibilityReport {
    int trials = 0;
    int qualified = 0;
    double yield_rate = 0.0;
    std::map<FailReason, int> failures;
};

struct GenStats {
    int attempts = 0;
    std::map<FailReason, int> rejections;
    double wall_seconds = 0.0;
};

class GenerationFailed : public Error {
public:
    GenerationFailed(const std::string& what, int attempts_, FailReason dominant_)
        : Error(what), attempts(attempts_), dominant(dominant_) {}
    int attempts;
    FailReason dominant;
};

/// Grow a qualified floor plan realizing `graph` inside `boundary`.
/// Deterministic given (graph, boundary, params). Throws GenerationFailed after
/// params.max_retries rejected attempts.
FloorPlan generate_plan(const TopologyGraph& graph, const SiteBoundary& boundary,
                        const GenParams& params);

/// Run `trials` independent single attempts and report the qualified fraction
/// plus a failure-reason histogram. Never throws on individual failures.
FeasibilityReport pre_evaluate(const TopologyGraph& graph, const SiteBoundary& boundary,
                               const GenParams& params, int trials);

/// Exactly `count` qualified plans with pairwise distinct seeds (slot i runs on
/// substream params.seed ^ i). Slots may generate in parallel; output order is
/// by slot index regardless of completion order.
std::vector<FloorPlan> generate_dataset(const TopologyGraph& graph, const SiteBoundary& boundary,
                                        const GenParams& params, int count,
                                        GenStats* stats = nullptr, int jobs = 1);

} // namespace topobench

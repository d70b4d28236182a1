#include "topobench/plangen.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <deque>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "topobench/qualify.hpp"
#include "topobench/rng.hpp"

namespace topobench {

int SiteBoundary::inside_count() const {
    int n = 0;
    for (auto v : mask)
        n += v != 0;
    return n;
}

SiteBoundary SiteBoundary::rectangle(int width, int height, int margin) {
    SiteBoundary b;
    b.width = width;
    b.height = height;
    b.mask.assign(static_cast<std::size_t>(width) * height, 0);
    for (int y = margin; y < height - margin; ++y)
        for (int x = margin; x < width - margin; ++x)
            b.mask[static_cast<std::size_t>(y) * width + x] = 1;
    return b;
}

ValidationResult validate_boundary(const SiteBoundary& boundary) {
    ValidationResult result;
    if (boundary.width <= 0 || boundary.height <= 0 ||
        boundary.mask.size() != static_cast<std::size_t>(boundary.width) * boundary.height) {
        result.violations.push_back("mask size does not match width x height");
        return result;
    }
    const int inside = boundary.inside_count();
    if (inside == 0) {
        result.violations.push_back("inside region is empty");
        return result;
    }
    // 4-connectivity via flood fill from the first inside cell
    std::vector<std::uint8_t> seen(boundary.mask.size(), 0);
    std::vector<int> stack;
    for (std::size_t i = 0; i < boundary.mask.size(); ++i)
        if (boundary.mask[i]) {
            stack.push_back(static_cast<int>(i));
            seen[i] = 1;
            break;
        }
    int reached = 0;
    while (!stack.empty()) {
        const int idx = stack.back();
        stack.pop_back();
        ++reached;
        const int x = idx % boundary.width;
        const int y = idx / boundary.width;
        const int dx[4] = {1, -1, 0, 0};
        const int dy[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
            const int nx = x + dx[d];
            const int ny = y + dy[d];
            if (!boundary.inside(nx, ny))
                continue;
            const std::size_t nidx = static_cast<std::size_t>(ny) * boundary.width + nx;
            if (!seen[nidx]) {
                seen[nidx] = 1;
                stack.push_back(static_cast<int>(nidx));
            }
        }
    }
    if (reached != inside)
        result.violations.push_back("inside region is not 4-connected");
    return result;
}

const char* to_string(FailReason reason) {
    switch (reason) {
    case FailReason::SeedPlacement: return "SeedPlacement";
    case FailReason::GrowthOverflow: return "GrowthOverflow";
    case FailReason::EntranceEnclosed: return "EntranceEnclosed";
    case FailReason::AdjacencyGap: return "AdjacencyGap";
    case FailReason::PointContact: return "PointContact";
    }
    return "?";
}

namespace {

constexpr int kDx[4] = {1, -1, 0, 0};
constexpr int kDy[4] = {0, 0, 1, -1};

struct RoomState {
    int id = 0;
    int cap = 0;                 // growth limit in cells
    int size = 0;
    std::deque<int> frontier;    // BFS queue of owned cell indices
    std::vector<int> cells;      // owned cell indices (seed first)
};

/// Placement order: entrance first, then descending degree, ties by ascending id.
std::vector<int> placement_order(const TopologyGraph& graph) {
    std::vector<int> order;
    for (const auto& room : graph.rooms)
        if (room.id != graph.entrance_id)
            order.push_back(room.id);
    std::sort(order.begin(), order.end(), [&graph](int a, int b) {
        const int da = graph.degree(a), db = graph.degree(b);
        if (da != db)
            return da > db;
        return a < b;
    });
    order.insert(order.begin(), graph.entrance_id);
    return order;
}

int chebyshev(int ax, int ay, int bx, int by) {
    return std::max(std::abs(ax - bx), std::abs(ay - by));
}

/// One full generation attempt; nullopt + reason on failure.
std::optional<FloorPlan> attempt_plan(const TopologyGraph& graph, const SiteBoundary& boundary,
                                      const GenParams& params, Rng& rng, FailReason& why) {
    const int w = boundary.width;
    const int h = boundary.height;
    std::vector<int> grid(static_cast<std::size_t>(w) * h, kEmptyCell);

    const std::vector<int> order = placement_order(graph);
    std::vector<RoomState> states(order.size());
    std::vector<int> state_of_id; // room id -> state index, for contact scans
    {
        int max_id = 0;
        for (const auto& room : graph.rooms)
            max_id = std::max(max_id, room.id);
        state_of_id.assign(max_id + 1, -1);
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        const RoomSpec* room = graph.find_room(order[i]);
        states[i].id = room->id;
        states[i].cap = static_cast<int>(std::ceil(params.density * room->area_weight));
        state_of_id[room->id] = static_cast<int>(i);
    }

    auto claim = [&](RoomState& st, int idx) {
        grid[idx] = st.id;
        st.cells.push_back(idx);
        st.frontier.push_back(idx);
        ++st.size;
    };

    // --- seed placement ---
    for (std::size_t i = 0; i < order.size(); ++i) {
        RoomState& st = states[i];
        std::vector<const RoomState*> placed_neighbors;
        for (int nb : graph.neighbors(st.id)) {
            const int si = state_of_id[nb];
            if (si >= 0 && static_cast<std::size_t>(si) < i)
                placed_neighbors.push_back(&states[si]);
        }

        std::vector<int> candidates;
        if (i == 0) {
            // entrance must sit on the boundary interface
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    if (!boundary.inside(x, y))
                        continue;
                    bool interface = false;
                    for (int d = 0; d < 4; ++d)
                        if (!boundary.inside(x + kDx[d], y + kDy[d]))
                            interface = true;
                    if (interface)
                        candidates.push_back(y * w + x);
                }
        } else {
            auto within = [&](int x, int y, const RoomState& other) {
                for (int idx : other.cells) {
                    if (chebyshev(x, y, idx % w, idx / w) <= params.max_adjacency_distance)
                        return true;
                }
                return false;
            };
            auto collect = [&](bool require_all) {
                std::vector<int> out;
                for (int y = 0; y < h; ++y)
                    for (int x = 0; x < w; ++x) {
                        if (!boundary.inside(x, y) || grid[y * w + x] != kEmptyCell)
                            continue;
                        bool ok;
                        if (placed_neighbors.empty()) {
                            ok = true;
                        } else if (require_all) {
                            ok = true;
                            for (const RoomState* nb : placed_neighbors)
                                ok = ok && within(x, y, *nb);
                        } else {
                            ok = false;
                            for (const RoomState* nb : placed_neighbors)
                                ok = ok || within(x, y, *nb);
                        }
                        if (ok)
                            out.push_back(y * w + x);
                    }
                return out;
            };
            candidates = collect(true);
            if (candidates.empty() && !placed_neighbors.empty())
                candidates = collect(false);
        }
        if (candidates.empty()) {
            why = FailReason::SeedPlacement;
            return std::nullopt;
        }

        // prefer candidates 4-adjacent to the most placed graph-neighbors
        int best_touch = -1;
        std::vector<int> best;
        for (int idx : candidates) {
            const int x = idx % w, y = idx / w;
            int touch = 0;
            for (const RoomState* nb : placed_neighbors) {
                bool touches = false;
                for (int d = 0; d < 4 && !touches; ++d) {
                    const int nx = x + kDx[d], ny = y + kDy[d];
                    if (nx >= 0 && nx < w && ny >= 0 && ny < h && grid[ny * w + nx] == nb->id)
                        touches = true;
                }
                touch += touches;
            }
            if (touch > best_touch) {
                best_touch = touch;
                best.clear();
            }
            if (touch == best_touch)
                best.push_back(idx);
        }
        claim(st, best[static_cast<std::size_t>(rng.below(best.size()))]);
    }

    // --- round-robin single-cell BFS growth ---
    bool grew = true;
    while (grew) {
        grew = false;
        for (RoomState& st : states) {
            if (st.size >= st.cap)
                continue;
            while (!st.frontier.empty()) {
                const int idx = st.frontier.front();
                const int x = idx % w, y = idx / w;
                int claimed = -1;
                for (int d = 0; d < 4; ++d) {
                    const int nx = x + kDx[d], ny = y + kDy[d];
                    if (boundary.inside(nx, ny) && grid[ny * w + nx] == kEmptyCell) {
                        claimed = ny * w + nx;
                        break;
                    }
                }
                if (claimed >= 0) {
                    grid[claimed] = st.id;
                    st.cells.push_back(claimed);
                    st.frontier.push_back(claimed);
                    ++st.size;
                    grew = true;
                    break; // one cell per turn
                }
                st.frontier.pop_front(); // exhausted cell
            }
        }
    }

    for (const RoomState& st : states)
        if (2 * st.size < st.cap) {
            why = FailReason::GrowthOverflow;
            return std::nullopt;
        }

    // --- absorb enclosed empty pockets ---
    // Empty cells with a 4-path to the site exterior stay empty (courtyards);
    // the rest go to the adjacent room with the largest remaining deficit.
    {
        std::vector<std::uint8_t> open(grid.size(), 0);
        std::vector<int> stack;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                const int idx = y * w + x;
                if (!boundary.inside(x, y) || grid[idx] != kEmptyCell)
                    continue;
                bool at_exterior = false;
                for (int d = 0; d < 4; ++d)
                    if (!boundary.inside(x + kDx[d], y + kDy[d]))
                        at_exterior = true;
                if (at_exterior && !open[idx]) {
                    open[idx] = 1;
                    stack.push_back(idx);
                }
            }
        while (!stack.empty()) {
            const int idx = stack.back();
            stack.pop_back();
            const int x = idx % w, y = idx / w;
            for (int d = 0; d < 4; ++d) {
                const int nx = x + kDx[d], ny = y + kDy[d];
                if (!boundary.inside(nx, ny))
                    continue;
                const int nidx = ny * w + nx;
                if (grid[nidx] == kEmptyCell && !open[nidx]) {
                    open[nidx] = 1;
                    stack.push_back(nidx);
                }
            }
        }
        bool assigned = true;
        while (assigned) {
            assigned = false;
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    const int idx = y * w + x;
                    if (!boundary.inside(x, y) || grid[idx] != kEmptyCell || open[idx])
                        continue;
                    int best_state = -1;
                    int best_deficit = 0;
                    for (int d = 0; d < 4; ++d) {
                        const int nx = x + kDx[d], ny = y + kDy[d];
                        if (nx < 0 || nx >= w || ny < 0 || ny >= h)
                            continue;
                        const int owner = grid[ny * w + nx];
                        if (owner == kEmptyCell)
                            continue;
                        const int si = state_of_id[owner];
                        const int deficit = states[si].cap - states[si].size;
                        if (best_state < 0 || deficit > best_deficit ||
                            (deficit == best_deficit && states[si].id < states[best_state].id)) {
                            best_state = si;
                            best_deficit = deficit;
                        }
                    }
                    if (best_state >= 0) {
                        grid[idx] = states[best_state].id;
                        states[best_state].cells.push_back(idx);
                        ++states[best_state].size;
                        assigned = true;
                    }
                }
        }
    }

    FloorPlan plan;
    plan.width = w;
    plan.height = h;
    plan.cells = std::move(grid);
    plan.boundary = boundary;
    plan.graph_id = graph_id(graph);
    plan.seed = params.seed;

    const QualificationResult check = check_plan(plan, graph);
    if (!check.qualified()) {
        switch (check.reasons.front().rule) {
        case Rule::EntranceEnclosed: why = FailReason::EntranceEnclosed; break;
        case Rule::AdjacencyGap: why = FailReason::AdjacencyGap; break;
        case Rule::PointContact: why = FailReason::PointContact; break;
        }
        return std::nullopt;
    }
    return plan;
}

} // namespace

FloorPlan generate_plan(const TopologyGraph& graph, const SiteBoundary& boundary,
                        const GenParams& params) {
    const ValidationResult graph_check = validate_graph(graph);
    if (!graph_check.ok())
        throw std::invalid_argument("generate_plan: invalid graph: " +
                                    graph_check.violations.front());
    std::map<FailReason, int> rejections;
    for (int attempt = 0; attempt < params.max_retries; ++attempt) {
        Rng rng = Rng::substream(params.seed, static_cast<std::uint64_t>(attempt));
        FailReason why = FailReason::SeedPlacement;
        if (auto plan = attempt_plan(graph, boundary, params, rng, why))
            return std::move(*plan);
        rejections[why] += 1;
    }
    FailReason dominant = FailReason::SeedPlacement;
    int best = -1;
    for (const auto& [reason, count] : rejections)
        if (count > best) {
            best = count;
            dominant = reason;
        }
    throw GenerationFailed("generate_plan: no qualified plan after " +
                               std::to_string(params.max_retries) + " attempts (dominant: " +
                               to_string(dominant) + ")",
                           params.max_retries, dominant);
}

FeasibilityReport pre_evaluate(const TopologyGraph& graph, const SiteBoundary& boundary,
                               const GenParams& params, int trials) {
    FeasibilityReport report;
    report.trials = trials;
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::substream(params.seed, static_cast<std::uint64_t>(trial));
        FailReason why = FailReason::SeedPlacement;
        if (attempt_plan(graph, boundary, params, rng, why))
            ++report.qualified;
        else
            report.failures[why] += 1;
    }
    report.yield_rate = trials > 0 ? static_cast<double>(report.qualified) / trials : 0.0;
    return report;
}

std::vector<FloorPlan> generate_dataset(const TopologyGraph& graph, const SiteBoundary& boundary,
                                        const GenParams& params, int count, GenStats* stats,
                                        int jobs) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<FloorPlan> plans(static_cast<std::size_t>(count));
    GenStats agg;

    std::atomic<int> next{0};
    std::mutex merge_mutex;
    std::exception_ptr first_error;

    auto worker = [&]() {
        GenStats local;
        try {
            for (;;) {
                const int slot = next.fetch_add(1);
                if (slot >= count)
                    break;
                GenParams slot_params = params;
                slot_params.seed = params.seed ^ static_cast<std::uint64_t>(slot);
                // local retry accounting mirrors generate_plan's loop
                bool done = false;
                for (int attempt = 0; attempt < params.max_retries && !done; ++attempt) {
                    Rng rng = Rng::substream(slot_params.seed, static_cast<std::uint64_t>(attempt));
                    FailReason why = FailReason::SeedPlacement;
                    ++local.attempts;
                    if (auto plan = attempt_plan(graph, boundary, slot_params, rng, why)) {
                        plans[static_cast<std::size_t>(slot)] = std::move(*plan);
                        done = true;
                    } else {
                        local.rejections[why] += 1;
                    }
                }
                if (!done)
                    throw GenerationFailed("generate_dataset: slot " + std::to_string(slot) +
                                               " exhausted " + std::to_string(params.max_retries) +
                                               " attempts",
                                           params.max_retries, FailReason::GrowthOverflow);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(merge_mutex);
            if (!first_error)
                first_error = std::current_exception();
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        agg.attempts += local.attempts;
        for (const auto& [reason, n] : local.rejections)
            agg.rejections[reason] += n;
    };

    if (count > 0) {
        const ValidationResult graph_check = validate_graph(graph);
        if (!graph_check.ok())
            throw std::invalid_argument("generate_dataset: invalid graph: " +
                                        graph_check.violations.front());
        const int n_threads = std::max(1, std::min(jobs, count));
        if (n_threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(n_threads));
            for (int t = 0; t < n_threads; ++t)
                pool.emplace_back(worker);
            for (auto& th : pool)
                th.join();
        }
        if (first_error)
            std::rethrow_exception(first_error);
    }

    agg.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (stats)
        *stats = agg;
    return plans;
}

} // namespace topobench

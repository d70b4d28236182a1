#pragma once

#include <string>
#include <vector>

#include "topobench/errors.hpp"
#include "topobench/plangen.hpp"
#include "topobench/topology.hpp"

namespace topobench {

enum class Rule {
    EntranceEnclosed, // entrance has no exterior-facing cell
    AdjacencyGap,     // a core edge's rooms do not touch at all
    PointContact,     // a core edge's rooms touch only diagonally or below min_contact
};

const char* to_string(Rule rule);

struct Rejection {
    Rule rule;
    std::string detail; // offending room or edge
};

struct QualificationResult {
    std::vector<Rejection> reasons;

    bool qualified() const { return reasons.empty(); }
};

class GraphMismatch : public Error {
public:
    using Error::Error;
};

class UnknownRoom : public Error {
public:
    using Error::Error;
};

/// Apply the three rejection rules to a plan against its source graph.
/// All applicable reasons are reported, not just the first.
QualificationResult check_plan(const FloorPlan& plan, const TopologyGraph& graph,
                               int min_contact = 2);

/// Number of unordered 4-adjacent cell pairs between rooms a and b.
/// Throws UnknownRoom when either id has no cells in the plan.
int contact_length(const FloorPlan& plan, int room_a, int room_b);

} // namespace topobench

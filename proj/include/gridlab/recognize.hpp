#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "gridlab/geometry.hpp"

namespace gridlab {

struct SearchOptions {
    std::chrono::milliseconds time_budget{std::chrono::minutes(5)};
    std::uint64_t node_budget = 200'000'000;
    bool parallel_branches = false;
    // Largest anchor coordinate in whole units; the search range becomes
    // [-1, extent] on both axes instead of [-1, n+1].
    std::optional<int> grid_extent_override;
    // Fixes the axis swap and, on the full range, the translation class of
    // the first segment. Off only for cross-checks.
    bool symmetry_pruning = true;
};

enum class Outcome { Accept, Reject, BudgetExceeded };

const char* outcome_name(Outcome o);

struct RecognitionResult {
    Outcome outcome = Outcome::Reject;
    std::optional<Representation> rep;
    std::uint64_t nodes = 0;
    std::string reason;
};

enum class QuickVerdict { NonBipartite, TrivialAccept };

struct QuickResult {
    QuickVerdict verdict;
    std::optional<Representation> rep;
};

// Bipartite graphs of maximum degree 2 get an explicit representation
// (staircases for paths, a two-row ring for each cycle).
std::optional<QuickResult> quick_reject(const Graph& g);
Representation degree_two_representation(const Graph& g);

RecognitionResult recognize_ugig(const Graph& g, const SearchOptions& opts = {});
RecognitionResult recognize_gig(const Graph& g, const SearchOptions& opts = {});

struct BoundResult {
    Representation rep;
    Rational size;
    std::uint64_t nodes = 0;
};

struct BoundSearch {
    std::optional<BoundResult> best;
    bool complete = false;
    std::uint64_t nodes = 0;
};

// Branch and bound behind min_boundary. Keeps the incumbent when the budget
// runs out. A seed representation on the 1/n grid starts as the incumbent.
BoundSearch bound_search(const Graph& g, const Rational& cap, const SearchOptions& opts,
                         const std::optional<Representation>& seed = std::nullopt);

// Exact minimum of boundary_size over the canonical unit grid, or nullopt if
// nothing fits within cap. Throws BudgetExceeded.
std::optional<BoundResult> min_boundary(const Graph& g, const Rational& cap, const SearchOptions& opts = {});

}  // namespace gridlab

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gridlab/geometry.hpp"
#include "gridlab/recognize.hpp"

namespace gridlab {

struct TreeInfo {
    Graph graph;
    Vertex root = 0;
    int level = 0;
    std::vector<Vertex> children;       // of the root
    std::vector<Vertex> grandchildren;  // grandchildren[i] hangs below children[i]
};

// T_2: a root with 33 children, each with one leaf child. T_n: a root with
// 16n+1 children, each with one child that is the root of a copy of T_{n-1}.
TreeInfo gen_tree(int n);
int tree_depth(const Graph& g, Vertex root);

using PathTrace = std::vector<Vertex>;

struct NestingReport {
    std::vector<std::string> violations;
    [[nodiscard]] bool ok() const { return violations.empty(); }
};

// Checks, for consecutive traces P_1, P_2, ...:
//   even i:  lowest horizontal segment of P_i lies strictly below P_{i-1}
//   odd i>1: lowest point of P_i lies more than one unit below P_{i-1}
NestingReport verify_nesting(const Representation& rep, const std::vector<PathTrace>& traces);

struct BoundEstimate {
    Rational lower;                  // certified
    std::optional<Rational> upper;   // best representation found
    std::optional<Representation> witness;
    bool exact = false;              // search finished, lower == upper
    std::uint64_t nodes = 0;
};

// Minimum boundary size of T_n over the canonical grid. Only n = 2 is
// attempted; larger levels throw BudgetExceeded straight away.
BoundEstimate empirical_bound(int n, const SearchOptions& opts = {});

}  // namespace gridlab

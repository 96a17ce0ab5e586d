#pragma once

#include "poisred/parse.hpp"
#include "poisred/reduction.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace poisred {

struct RunOptions {
    std::optional<int> bound;   // overrides the problem block's bound
    std::string format = "text"; // "text" or "structured"
    std::uint64_t seed = 1;      // randomized subcommands (lift perturbations)
};

struct RunResult {
    int exitCode = 0; // 0 all hold, 1 fails, 2 undecided, 3 input error
    std::string output;
};

/// Materialized problem roles with stable storage for base pointers.
struct ProblemInstance {
    ChartPtr chart;
    std::optional<Bivector> pi;
    std::vector<std::unique_ptr<SubmanifoldSpec>> submanifolds;
    std::vector<DistributionSpec> distributions;

    SubmanifoldSpec* findSubmanifold(const std::string& name);
    DistributionSpec* findDistribution(const std::string& name);
};

/// Builds specs from parsed data; throws std::invalid_argument on data that
/// fails the spec invariants (off-locus points, non-tangent frames, ...).
ProblemInstance materialize(const ProblemFile& file);

/// Dispatches one CLI command. Never throws on well-formed input; input
/// errors come back as exitCode 3 with the message in output.
RunResult run(const std::string& command, const std::string& fileText, const RunOptions& options,
              const std::vector<std::string>& args = {});

} // namespace poisred

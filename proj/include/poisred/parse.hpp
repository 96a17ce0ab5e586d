#pragma once

#include "poisred/chart.hpp"
#include "poisred/rational.hpp"
#include "poisred/superfn.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace poisred {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int col, const std::string& message)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + message),
          line(line), col(col) {}
    int line;
    int col;
};

struct SubmanifoldData {
    std::string name;
    std::vector<SuperFn> gens;
    std::vector<SuperFn> tangentGens;
    std::vector<std::vector<Rational>> points;
};

struct DistributionData {
    std::string name;
    std::string baseName;
    std::vector<SuperFn> gens;
};

struct ProblemBindings {
    std::string c, e, d, a;
    std::vector<SuperFn> bgens;
    std::optional<int> bound;
};

/// Parsed problem file: a manifold declaration, an optional bivector, named
/// submanifold and distribution blocks, and optional role bindings.
struct ProblemFile {
    ChartPtr chart;
    std::optional<SuperFn> poisson;
    std::vector<SubmanifoldData> submanifolds;
    std::vector<DistributionData> distributions;
    std::optional<ProblemBindings> problem;

    const SubmanifoldData* findSubmanifold(const std::string& name) const;
    const DistributionData* findDistribution(const std::string& name) const;
};

/// Parses a problem file; throws ParseError with position on both syntax and
/// semantic violations.
ProblemFile parseProblemFile(const std::string& text);

/// Parses a single expression in the chart (positional names only).
SuperFn parseExpression(const std::string& text, ChartPtr chart);

} // namespace poisred

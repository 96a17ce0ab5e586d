#pragma once

#include "poisred/parse.hpp"
#include "poisred/reduction.hpp"

#include <json.hpp>

#include <string>

namespace poisred {

/// Canonical echo of the parsed problem, deterministic.
std::string echoProblem(const ProblemFile& file);

std::string renderHypotheses(const HypothesisReport& rep);
std::string renderTable(const BracketTable& table);

nlohmann::json hypothesesJson(const HypothesisReport& rep);
nlohmann::json tableJson(const BracketTable& table);
nlohmann::json problemJson(const ProblemFile& file);

} // namespace poisred

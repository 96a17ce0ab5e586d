#include "poisred/chart.hpp"

#include <set>
#include <stdexcept>

namespace poisred {

namespace {

std::vector<std::string> positionalNames(const char* stem, int n) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) names.push_back(stem + std::to_string(k));
    return names;
}

} // namespace

Chart::Chart(int n) : Chart(n, positionalNames("x", n), positionalNames("xi", n)) {}

Chart::Chart(int n, std::vector<std::string> evenNames, std::vector<std::string> oddNames)
    : n_(n), even_(std::move(evenNames)), odd_(std::move(oddNames)) {
    if (n_ <= 0) throw std::invalid_argument("chart dimension must be positive");
    if (even_.size() != static_cast<std::size_t>(n_) || odd_.size() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("chart needs exactly n even and n odd names");
    std::set<std::string> seen;
    for (const auto& v : {even_, odd_})
        for (const auto& name : v)
            if (name.empty() || !seen.insert(name).second)
                throw std::invalid_argument("chart variable names must be unique and nonempty");
}

std::shared_ptr<const Chart> Chart::standard(int n) { return std::make_shared<Chart>(n); }

} // namespace poisred

#pragma once

#include <memory>
#include <string>
#include <vector>

namespace poisred {

/// Global coordinate chart: body R^n with even coordinates x1..xn (degree 0)
/// and odd anticommuting fiber coordinates xi1..xin (degree 1). Names beyond
/// the positional x<k>/xi<k> scheme are presentation-only aliases; canonical
/// rendering always uses positional names.
class Chart {
public:
    explicit Chart(int n);
    Chart(int n, std::vector<std::string> evenNames, std::vector<std::string> oddNames);

    int dim() const { return n_; }
    const std::string& evenName(int i) const { return even_[static_cast<std::size_t>(i)]; }
    const std::string& oddName(int j) const { return odd_[static_cast<std::size_t>(j)]; }
    const std::vector<std::string>& evenNames() const { return even_; }
    const std::vector<std::string>& oddNames() const { return odd_; }

    static std::shared_ptr<const Chart> standard(int n);

private:
    int n_;
    std::vector<std::string> even_;
    std::vector<std::string> odd_;
};

using ChartPtr = std::shared_ptr<const Chart>;

/// Arithmetic compatibility: same body dimension (names are aliases only).
inline bool compatible(const Chart& a, const Chart& b) { return a.dim() == b.dim(); }

} // namespace poisred

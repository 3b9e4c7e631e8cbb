#include "anchorlab/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace anchorlab {

double mean(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return acc / static_cast<double>(xs.size() - 1);
}

double sample_stdev(std::span<const double> xs) { return std::sqrt(sample_variance(xs)); }

double sharpe_ratio(std::span<const double> returns, double periods_per_year) {
    const double sd = sample_stdev(returns);
    if (returns.size() < 2 || sd == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return mean(returns) / sd * std::sqrt(periods_per_year);
}

BatchStandardErrors batch_standard_errors(std::span<const double> xs, std::size_t batches) {
    if (batches < 2) throw std::invalid_argument("need at least two batches");
    const std::size_t block = xs.size() / batches;
    if (block < 2) throw std::invalid_argument("series too short for the requested batch count");

    std::vector<double> block_means(batches), block_vars(batches);
    for (std::size_t b = 0; b < batches; ++b) {
        const auto slice = xs.subspan(b * block, block);
        block_means[b] = mean(slice);
        block_vars[b] = sample_variance(slice);
    }
    const double nb = static_cast<double>(batches);
    BatchStandardErrors se;
    se.mean_se = sample_stdev(block_means) / std::sqrt(nb);
    se.variance_se = sample_stdev(block_vars) / std::sqrt(nb);
    return se;
}

}  // namespace anchorlab

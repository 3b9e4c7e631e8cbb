#pragma once

#include <cstddef>
#include <span>

namespace anchorlab {

double mean(std::span<const double> xs);

// Unbiased sample variance / standard deviation (n-1 denominator).
// Returns 0 for fewer than two samples.
double sample_variance(std::span<const double> xs);
double sample_stdev(std::span<const double> xs);

// Annualized Sharpe ratio: mean / unbiased stdev * sqrt(periods_per_year).
// NaN when the deviation is zero or there are fewer than two samples.
double sharpe_ratio(std::span<const double> returns, double periods_per_year);

// Standard errors of the sample mean and sample variance estimated by the
// method of batch means: the series is cut into `batches` equal blocks and
// the spread of the per-block statistics is used. This stays valid when
// the series is autocorrelated, which strategy return streams are.
struct BatchStandardErrors {
    double mean_se = 0.0;
    double variance_se = 0.0;
};
BatchStandardErrors batch_standard_errors(std::span<const double> xs, std::size_t batches = 50);

}  // namespace anchorlab

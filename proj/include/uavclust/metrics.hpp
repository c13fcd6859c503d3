#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "uavclust/config.hpp"
#include "uavclust/engine.hpp"

namespace uavclust {

/// Evaluation quantities recovered from one trace.
struct RunMetrics {
    Scheme scheme = Scheme::Proposed;
    std::uint32_t run_index = 0;
    std::vector<double> per_cluster;    // CH re-selections per UAV cluster
    double total = 0.0;
    std::vector<double> series_time;    // 0, cam_interval, ... <= duration
    std::vector<double> series;         // cumulative re-selections at series_time
    std::optional<double> mean_snr;     // linear; averaged in dB per tenure, then over tenures
    std::size_t tenures = 0;            // tenures that contributed SNR samples
    double degraded = 0.0;              // degraded CH selections
};

RunMetrics run_metrics(const Trace& trace);

struct LikelihoodParams {
    double weight_reselection = 0.6;
    double weight_snr = 0.4;
    double poisson_rate = 0.5;
    double snr_mean = 1.0;
    double snr_variance = 0.1;
};

LikelihoodParams likelihood_params(const SimConfig& config);

/// Divides by the maximum. Throws unless some value is strictly positive.
std::vector<double> normalize(std::span<const double> values);

/// -ln of the Poisson pmf at (possibly non-integer) R; R! is taken as Gamma(R + 1).
double lambda_r(double reselections, double poisson_rate);

/// -ln of the Gaussian density at S.
double lambda_s(double snr, double mean, double variance);

/// exp(-(w_R lambda_R + w_S lambda_S)).
double robustness_likelihood(double reselections, double snr, const LikelihoodParams& params);

struct MeanCi {
    double mean = 0.0;
    double half_width = 0.0;  // 95 %, normal approximation
    std::size_t n = 0;
};

MeanCi mean_ci(std::span<const double> samples);

/// Statistics of a[i] - b[i].
MeanCi paired_difference(std::span<const double> a, std::span<const double> b);

struct SchemeAggregate {
    Scheme scheme = Scheme::Proposed;
    std::vector<std::uint32_t> runs;    // run indices, ascending
    std::vector<double> per_cluster;    // means over runs
    MeanCi total;
    std::vector<double> series;         // mean cumulative series
    MeanCi snr;                         // over runs that produced SNR samples
    double degraded = 0.0;
    double normalized_reselections = 0.0;
    double normalized_snr = 0.0;
    double likelihood = 0.0;
    std::vector<RunMetrics> per_run;    // sorted by run index
};

struct Aggregate {
    std::uint64_t digest = 0;
    std::vector<double> series_time;
    std::vector<SchemeAggregate> schemes;  // sorted by scheme

    const SchemeAggregate* find(Scheme s) const;
};

/// Folds traces of one configuration family into per-scheme means and the
/// cross-scheme normalised likelihood. Mixed digests are a domain error.
Aggregate aggregate(std::span<const Trace> traces, const LikelihoodParams& params);

}  // namespace uavclust

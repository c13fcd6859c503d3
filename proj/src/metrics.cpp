#include "uavclust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "uavclust/trace_io.hpp"

namespace uavclust {

namespace {

bool is_reselection(EventKind k) { return k == EventKind::ChReplacedFromBackup || k == EventKind::ChReselectedFull; }

bool starts_tenure(EventKind k) { return k == EventKind::ChSelected || is_reselection(k); }

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (const double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace

RunMetrics run_metrics(const Trace& trace) {
    const auto& h = trace.header;
    RunMetrics m;
    m.scheme = h.scheme;
    m.run_index = h.run_index;
    m.per_cluster.assign(h.num_uavs, 0.0);

    if (h.cam_interval > 0.0) {
        const auto points = static_cast<std::size_t>(std::floor(h.duration / h.cam_interval + 1e-9)) + 1;
        for (std::size_t k = 0; k < points; ++k) m.series_time.push_back(static_cast<double>(k) * h.cam_interval);
    }
    m.series.assign(m.series_time.size(), 0.0);

    struct Tenure {
        std::optional<VehicleId> ch;
        double sum = 0.0;
        std::size_t samples = 0;
    };
    std::vector<Tenure> open(h.num_uavs);
    std::vector<double> tenure_means;
    const auto close = [&](Tenure& t) {
        if (t.samples > 0) tenure_means.push_back(t.sum / static_cast<double>(t.samples));
        t = Tenure{};
    };

    for (const auto& e : trace.events) {
        if (!e.uav) continue;
        const auto j = e.uav->value;
        if (j >= h.num_uavs) throw std::domain_error("trace references a UAV beyond the header count");
        if (is_reselection(e.kind)) {
            m.per_cluster[j] += 1.0;
            for (std::size_t k = 0; k < m.series_time.size(); ++k) {
                if (e.time <= m.series_time[k] + 1e-9) m.series[k] += 1.0;
            }
        }
        if (starts_tenure(e.kind)) {
            close(open[j]);
            open[j].ch = e.vehicle;
            if (payload_value(e.payload, "degraded") == "1") m.degraded += 1.0;
        } else if (e.kind == EventKind::ChDeparted || e.kind == EventKind::ClusteringRound) {
            close(open[j]);
        } else if (e.kind == EventKind::CamBatch && e.vehicle && open[j].ch == e.vehicle) {
            if (const auto snr = payload_value(e.payload, "snr")) {
                open[j].sum += 10.0 * std::log10(std::stod(*snr));
                ++open[j].samples;
            }
        }
    }
    for (auto& t : open) close(t);

    for (const double c : m.per_cluster) m.total += c;
    m.tenures = tenure_means.size();
    if (!tenure_means.empty()) m.mean_snr = std::pow(10.0, mean_of(tenure_means) / 10.0);
    return m;
}

LikelihoodParams likelihood_params(const SimConfig& c) {
    return {c.weight_reselection, c.weight_snr, c.poisson_rate, c.snr_mean, c.snr_variance};
}

std::vector<double> normalize(std::span<const double> values) {
    if (values.empty()) throw std::domain_error("normalize: empty input");
    const double peak = *std::max_element(values.begin(), values.end());
    if (!(peak > 0.0)) throw std::domain_error("normalize: no strictly positive value");
    std::vector<double> out;
    out.reserve(values.size());
    for (const double v : values) out.push_back(v / peak);
    return out;
}

double lambda_r(double reselections, double poisson_rate) {
    if (reselections < 0.0) throw std::domain_error("lambda_r: R must be >= 0");
    if (!(poisson_rate > 0.0)) throw std::domain_error("lambda_r: rate must be > 0");
    return poisson_rate - reselections * std::log(poisson_rate) + std::lgamma(reselections + 1.0);
}

double lambda_s(double snr, double mean, double variance) {
    if (!(variance > 0.0)) throw std::domain_error("lambda_s: variance must be > 0");
    const double d = snr - mean;
    return 0.5 * std::log(2.0 * std::numbers::pi * variance) + d * d / (2.0 * variance);
}

double robustness_likelihood(double reselections, double snr, const LikelihoodParams& p) {
    return std::exp(-(p.weight_reselection * lambda_r(reselections, p.poisson_rate) +
                      p.weight_snr * lambda_s(snr, p.snr_mean, p.snr_variance)));
}

MeanCi mean_ci(std::span<const double> samples) {
    MeanCi out;
    out.n = samples.size();
    if (samples.empty()) return out;
    out.mean = mean_of(samples);
    if (samples.size() > 1) {
        double ss = 0.0;
        for (const double x : samples) ss += (x - out.mean) * (x - out.mean);
        const double sd = std::sqrt(ss / static_cast<double>(samples.size() - 1));
        out.half_width = 1.96 * sd / std::sqrt(static_cast<double>(samples.size()));
    }
    return out;
}

MeanCi paired_difference(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::domain_error("paired_difference: unequal sample counts");
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return mean_ci(d);
}

const SchemeAggregate* Aggregate::find(Scheme s) const {
    for (const auto& a : schemes) {
        if (a.scheme == s) return &a;
    }
    return nullptr;
}

Aggregate aggregate(std::span<const Trace> traces, const LikelihoodParams& params) {
    if (traces.empty()) throw std::domain_error("aggregate: no traces");
    Aggregate out;
    out.digest = traces.front().header.digest;
    std::map<Scheme, std::vector<RunMetrics>> by_scheme;
    for (const auto& t : traces) {
        if (t.header.digest != out.digest) throw std::domain_error("aggregate: traces come from different configurations");
        by_scheme[t.header.scheme].push_back(run_metrics(t));
    }

    for (auto& [scheme, runs] : by_scheme) {
        std::sort(runs.begin(), runs.end(), [](const auto& a, const auto& b) { return a.run_index < b.run_index; });
        SchemeAggregate agg;
        agg.scheme = scheme;
        const std::size_t n = runs.size();
        agg.per_cluster.assign(runs.front().per_cluster.size(), 0.0);
        agg.series.assign(runs.front().series.size(), 0.0);
        if (out.series_time.empty()) out.series_time = runs.front().series_time;
        std::vector<double> totals, snrs;
        for (const auto& r : runs) {
            agg.runs.push_back(r.run_index);
            for (std::size_t j = 0; j < agg.per_cluster.size() && j < r.per_cluster.size(); ++j) {
                agg.per_cluster[j] += r.per_cluster[j] / static_cast<double>(n);
            }
            for (std::size_t k = 0; k < agg.series.size() && k < r.series.size(); ++k) {
                agg.series[k] += r.series[k] / static_cast<double>(n);
            }
            totals.push_back(r.total);
            if (r.mean_snr) snrs.push_back(*r.mean_snr);
            agg.degraded += r.degraded / static_cast<double>(n);
        }
        agg.total = mean_ci(totals);
        agg.snr = mean_ci(snrs);
        agg.per_run = std::move(runs);
        out.schemes.push_back(std::move(agg));
    }

    std::vector<double> totals, snrs;
    for (const auto& a : out.schemes) {
        totals.push_back(a.total.mean);
        snrs.push_back(a.snr.mean);
    }
    const bool any_reselection = std::any_of(totals.begin(), totals.end(), [](double v) { return v > 0.0; });
    const bool any_snr = std::any_of(snrs.begin(), snrs.end(), [](double v) { return v > 0.0; });
    const auto norm_r = any_reselection ? normalize(totals) : std::vector<double>(totals.size(), 0.0);
    const auto norm_s = any_snr ? normalize(snrs) : std::vector<double>(snrs.size(), 0.0);
    for (std::size_t i = 0; i < out.schemes.size(); ++i) {
        auto& a = out.schemes[i];
        a.normalized_reselections = norm_r[i];
        a.normalized_snr = norm_s[i];
        a.likelihood = robustness_likelihood(norm_r[i], norm_s[i], params);
    }
    return out;
}

}  // namespace uavclust

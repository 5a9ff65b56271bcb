#include "sdpkit/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sdp {

namespace {

constexpr double kMassSumTolerance = 1e-12;

void check_probability_open(double q, const char* what) {
    if (!(q > 0.0 && q < 1.0)) {
        throw DomainError(std::string(what) + " must lie strictly between 0 and 1, got " +
                          std::to_string(q));
    }
}

bool is_integer(double x) {
    return std::floor(x) == x;
}

} // namespace

// ---------------------------------------------------------------------------
// EmpiricalDiscrete

EmpiricalDiscrete::EmpiricalDiscrete(std::vector<WeightedOutcome> support)
    : support_(std::move(support)) {
    if (support_.empty()) {
        throw ModelError("empirical distribution needs a nonempty support");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) {
        if (!(support_[i].mass > 0.0)) {
            throw ModelError("empirical mass at outcome " + std::to_string(support_[i].outcome) +
                             " must be positive");
        }
        if (i > 0 && !(support_[i].outcome > support_[i - 1].outcome)) {
            throw ModelError("empirical outcomes must be strictly increasing");
        }
        total += support_[i].mass;
    }
    if (std::abs(total - 1.0) > kMassSumTolerance) {
        throw ModelError("empirical masses must sum to 1, got " + std::to_string(total));
    }
}

double EmpiricalDiscrete::pmf(double k) const {
    for (const auto& [outcome, mass] : support_) {
        if (outcome == k) return mass;
        if (outcome > k) break;
    }
    return 0.0;
}

double EmpiricalDiscrete::cdf(double k) const {
    double acc = 0.0;
    for (const auto& [outcome, mass] : support_) {
        if (outcome > k) break;
        acc += mass;
    }
    return acc;
}

double EmpiricalDiscrete::quantile(double q) const {
    check_probability_open(q, "quantile level");
    double acc = 0.0;
    for (const auto& [outcome, mass] : support_) {
        acc += mass;
        if (acc >= q) return outcome;
    }
    return support_.back().outcome;
}

double EmpiricalDiscrete::mean() const {
    double m = 0.0;
    for (const auto& [outcome, mass] : support_) m += outcome * mass;
    return m;
}

std::vector<double> EmpiricalDiscrete::outcomes_between(double lo, double hi) const {
    std::vector<double> out;
    for (const auto& [outcome, mass] : support_) {
        if (outcome >= lo && outcome <= hi) out.push_back(outcome);
    }
    return out;
}

// ---------------------------------------------------------------------------
// PoissonDiscrete

PoissonDiscrete::PoissonDiscrete(double mean) : mean_(mean) {
    if (!(mean > 0.0) || !std::isfinite(mean)) {
        throw ModelError("Poisson mean must be positive and finite, got " + std::to_string(mean));
    }
}

double PoissonDiscrete::pmf(double k) const {
    if (k < 0.0 || !is_integer(k)) return 0.0;
    return std::exp(k * std::log(mean_) - mean_ - std::lgamma(k + 1.0));
}

double PoissonDiscrete::cdf(double k) const {
    if (k < 0.0) return 0.0;
    const double kmax = std::floor(k);
    // Multiplicative recurrence keeps the scan cheap and consistent with quantile().
    double term = std::exp(-mean_);
    double acc = term;
    for (double j = 1.0; j <= kmax; ++j) {
        term *= mean_ / j;
        acc += term;
    }
    return std::min(acc, 1.0);
}

double PoissonDiscrete::quantile(double q) const {
    check_probability_open(q, "quantile level");
    double term = std::exp(-mean_);
    double acc = term;
    double k = 0.0;
    while (acc < q) {
        k += 1.0;
        term *= mean_ / k;
        acc += term;
        if (term == 0.0 && acc < q) {
            // Mass exhausted below q due to floating-point underflow; q is in
            // the far upper tail.
            throw DomainError("Poisson quantile level " + std::to_string(q) +
                              " is unattainable at double precision");
        }
    }
    return k;
}

std::vector<double> PoissonDiscrete::outcomes_between(double lo, double hi) const {
    std::vector<double> out;
    for (double k = std::max(0.0, std::ceil(lo)); k <= hi; k += 1.0) out.push_back(k);
    return out;
}

// ---------------------------------------------------------------------------
// TruncatedDistribution

TruncatedDistribution::TruncatedDistribution(std::vector<WeightedOutcome> support, double lower,
                                             double upper, double source_quantile)
    : support_(std::move(support)), lower_(lower), upper_(upper),
      source_quantile_(source_quantile) {
    if (support_.empty()) {
        throw ModelError("truncated distribution has an empty support");
    }
    if (!(source_quantile_ > 0.5 && source_quantile_ < 1.0)) {
        throw ModelError("truncation quantile must lie in (0.5, 1), got " +
                         std::to_string(source_quantile_));
    }
    double total = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) {
        const auto& [outcome, mass] = support_[i];
        if (outcome < lower_ || outcome > upper_) {
            throw ModelError("truncated outcome " + std::to_string(outcome) +
                             " falls outside [" + std::to_string(lower_) + ", " +
                             std::to_string(upper_) + "]");
        }
        if (!(mass > 0.0)) {
            throw ModelError("truncated mass at outcome " + std::to_string(outcome) +
                             " must be positive");
        }
        if (i > 0 && !(outcome > support_[i - 1].outcome)) {
            throw ModelError("truncated outcomes must be strictly increasing");
        }
        total += mass;
    }
    if (std::abs(total - 1.0) > kMassSumTolerance) {
        throw ModelError("truncated masses must sum to 1, got " + std::to_string(total));
    }
}

double TruncatedDistribution::mean() const {
    double m = 0.0;
    for (const auto& [outcome, mass] : support_) m += outcome * mass;
    return m;
}

double TruncatedDistribution::mass_at(double outcome) const {
    for (const auto& [o, mass] : support_) {
        if (o == outcome) return mass;
        if (o > outcome) break;
    }
    return 0.0;
}

TruncatedDistribution truncate(const DiscreteDistribution& d, double q) {
    if (!(q > 0.5 && q < 1.0)) {
        throw DomainError("truncation quantile must lie in (0.5, 1), got " + std::to_string(q));
    }
    const double lower = d.quantile(1.0 - q);
    const double upper = d.quantile(q);
    const std::vector<double> outcomes = d.outcomes_between(lower, upper);
    if (outcomes.empty()) {
        throw ModelError("truncation at quantile " + std::to_string(q) +
                         " produced an empty support");
    }

    std::vector<WeightedOutcome> support;
    support.reserve(outcomes.size());
    double total = 0.0;
    for (double k : outcomes) {
        const double mass = d.pmf(k);
        support.push_back({k, mass});
        total += mass;
    }
    for (auto& point : support) point.mass /= total;
    return TruncatedDistribution(std::move(support), lower, upper, q);
}

} // namespace sdp

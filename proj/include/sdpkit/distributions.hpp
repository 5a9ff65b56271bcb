#pragma once

#include <vector>

#include "sdpkit/errors.hpp"

namespace sdp {

/// One point of a finite discrete support: an outcome and its probability mass.
struct WeightedOutcome {
    double outcome = 0.0;
    double mass = 0.0;

    friend bool operator==(const WeightedOutcome&, const WeightedOutcome&) = default;
};

/// Discrete scalar distribution with pmf/cdf evaluation and generalized
/// inverse-cdf quantiles. Implementations are immutable after construction and
/// safe for unrestricted concurrent reads.
class DiscreteDistribution {
public:
    virtual ~DiscreteDistribution() = default;

    /// P[D = k]; 0 for outcomes outside the support.
    virtual double pmf(double k) const = 0;

    /// P[D <= k].
    virtual double cdf(double k) const = 0;

    /// Smallest outcome k with cdf(k) >= q. Throws DomainError unless 0 < q < 1.
    virtual double quantile(double q) const = 0;

    virtual double mean() const = 0;

    /// All support outcomes in [lo, hi], ascending.
    virtual std::vector<double> outcomes_between(double lo, double hi) const = 0;
};

/// Finite distribution given directly as (outcome, mass) pairs.
///
/// Invariants enforced at construction: outcomes strictly increasing, every
/// mass positive, masses summing to 1 within 1e-12.
class EmpiricalDiscrete final : public DiscreteDistribution {
public:
    explicit EmpiricalDiscrete(std::vector<WeightedOutcome> support);

    double pmf(double k) const override;
    double cdf(double k) const override;
    double quantile(double q) const override;
    double mean() const override;
    std::vector<double> outcomes_between(double lo, double hi) const override;

    const std::vector<WeightedOutcome>& support() const noexcept { return support_; }

private:
    std::vector<WeightedOutcome> support_;
};

/// Poisson distribution over nonnegative integers.
///
/// The pmf is evaluated as exp(k*log(mean) - mean - lgamma(k+1)); cdf and
/// quantile scan cumulative masses from 0.
class PoissonDiscrete final : public DiscreteDistribution {
public:
    explicit PoissonDiscrete(double mean);

    double pmf(double k) const override;
    double cdf(double k) const override;
    double quantile(double q) const override;
    double mean() const override { return mean_; }
    std::vector<double> outcomes_between(double lo, double hi) const override;

private:
    double mean_;
};

/// Finite support obtained by cutting a parent distribution at a quantile and
/// renormalizing the retained masses so they sum to 1.
class TruncatedDistribution {
public:
    TruncatedDistribution(std::vector<WeightedOutcome> support, double lower, double upper,
                          double source_quantile);

    const std::vector<WeightedOutcome>& support() const noexcept { return support_; }
    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }
    double source_quantile() const noexcept { return source_quantile_; }

    std::size_t size() const noexcept { return support_.size(); }
    double mean() const;

    /// Mass at an exact outcome value; 0 if the outcome is not in the support.
    double mass_at(double outcome) const;

    friend bool operator==(const TruncatedDistribution&, const TruncatedDistribution&) = default;

private:
    std::vector<WeightedOutcome> support_;
    double lower_;
    double upper_;
    double source_quantile_;
};

/// Cut d to the window [quantile(1-q), quantile(q)] and renormalize.
/// Requires 0.5 < q < 1.
TruncatedDistribution truncate(const DiscreteDistribution& d, double q);

} // namespace sdp

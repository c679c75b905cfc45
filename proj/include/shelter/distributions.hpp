#pragma once

// Inverse-transform samplers. Each takes its uniform draw explicitly so the
// distribution math stays independent of the generator and is easy to test
// at fixed points.

namespace shelter::dist {

/// Triangular distribution on [min, max] with peak at mode.
class Triangular {
public:
    /// Throws std::invalid_argument unless min <= mode <= max and min < max.
    Triangular(double min, double mode, double max);

    double min() const noexcept { return min_; }
    double mode() const noexcept { return mode_; }
    double max() const noexcept { return max_; }
    double mean() const noexcept { return (min_ + mode_ + max_) / 3.0; }
    double variance() const noexcept;
    double cdf(double x) const noexcept;

    /// u in [0, 1).
    double sample(double u) const noexcept;

private:
    double min_;
    double mode_;
    double max_;
};

class Exponential {
public:
    /// Throws std::invalid_argument unless mean > 0.
    explicit Exponential(double mean);

    double mean() const noexcept { return mean_; }

    /// u in (0, 1]; u == 1 maps to 0.
    double sample(double u) const noexcept;

private:
    double mean_;
};

/// true iff u < prob.
bool sample_bernoulli(double prob, double u) noexcept;

/// Integer in [lo, hi], each value equally likely for u uniform on [0, 1).
int sample_uniform_int(int lo, int hi, double u);

}  // namespace shelter::dist

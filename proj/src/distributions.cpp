#include "shelter/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shelter::dist {

Triangular::Triangular(double min, double mode, double max) : min_(min), mode_(mode), max_(max)
{
    if (!(min <= mode && mode <= max && min < max) || !std::isfinite(min) || !std::isfinite(max)) {
        throw std::invalid_argument("triangular parameters must satisfy min <= mode <= max and min < max");
    }
}

double Triangular::variance() const noexcept
{
    const double a = min_, m = mode_, b = max_;
    return (a * a + m * m + b * b - a * m - a * b - m * b) / 18.0;
}

double Triangular::cdf(double x) const noexcept
{
    if (x <= min_) {
        return 0.0;
    }
    if (x >= max_) {
        return 1.0;
    }
    const double width = max_ - min_;
    if (x <= mode_) {
        return (x - min_) * (x - min_) / (width * (mode_ - min_));
    }
    return 1.0 - (max_ - x) * (max_ - x) / (width * (max_ - mode_));
}

double Triangular::sample(double u) const noexcept
{
    const double width = max_ - min_;
    const double split = (mode_ - min_) / width;
    const double x = u < split ? min_ + std::sqrt(u * width * (mode_ - min_))
                               : max_ - std::sqrt((1.0 - u) * width * (max_ - mode_));
    return std::clamp(x, min_, max_);
}

Exponential::Exponential(double mean) : mean_(mean)
{
    if (!(mean > 0.0) || !std::isfinite(mean)) {
        throw std::invalid_argument("exponential mean must be positive");
    }
}

double Exponential::sample(double u) const noexcept
{
    // -0.0 for u == 1
    return -mean_ * std::log(u) + 0.0;
}

bool sample_bernoulli(double prob, double u) noexcept
{
    return u < prob;
}

int sample_uniform_int(int lo, int hi, double u)
{
    if (lo > hi) {
        throw std::invalid_argument("uniform integer range is empty");
    }
    const double span = static_cast<double>(hi) - static_cast<double>(lo) + 1.0;
    const auto v = static_cast<long long>(std::floor(static_cast<double>(lo) + u * span));
    return static_cast<int>(std::min<long long>(v, hi));
}

}  // namespace shelter::dist

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace bmo {

/// Raised when a caller breaks an operation's precondition (length mismatch,
/// index out of range, invalid parameter).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised when a run cannot continue, e.g. the field produced a non-finite value.
class RunError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point or displacement in a 2-D or 3-D search space.
class Vec {
public:
    static constexpr std::size_t kMaxDim = 3;

    Vec() = default;
    explicit Vec(std::size_t dim) : dim_(check_dim(dim)) {}
    Vec(std::initializer_list<double> values) : dim_(check_dim(values.size()))
    {
        std::size_t k = 0;
        for (double v : values) c_[k++] = v;
    }
    static Vec from(const std::vector<double>& values)
    {
        Vec v(values.size());
        for (std::size_t k = 0; k < values.size(); ++k) v.c_[k] = values[k];
        return v;
    }

    std::size_t size() const { return dim_; }
    double& operator[](std::size_t k) { return c_[k]; }
    double operator[](std::size_t k) const { return c_[k]; }
    const double* begin() const { return c_.data(); }
    const double* end() const { return c_.data() + dim_; }

    bool operator==(const Vec& o) const
    {
        if (dim_ != o.dim_) return false;
        for (std::size_t k = 0; k < dim_; ++k)
            if (c_[k] != o.c_[k]) return false;
        return true;
    }

    std::vector<double> to_vector() const { return {begin(), end()}; }

private:
    static std::size_t check_dim(std::size_t d)
    {
        if (d > kMaxDim) throw ContractViolation("Vec: dimension must be at most 3");
        return d;
    }

    std::array<double, kMaxDim> c_{};
    std::size_t dim_ = 0;
};

/// Euclidean distance, summing squared components in coordinate order.
inline double distance(const Vec& a, const Vec& b)
{
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        acc += d * d;
    }
    return std::sqrt(acc);
}

/// Axis-aligned box [lower, upper].
struct Box {
    Vec lower;
    Vec upper;

    std::size_t dim() const { return lower.size(); }

    bool contains(const Vec& p) const
    {
        if (p.size() != dim()) return false;
        for (std::size_t k = 0; k < dim(); ++k)
            if (!(p[k] >= lower[k] && p[k] <= upper[k])) return false;
        return true;
    }

    Vec clamp(Vec p) const
    {
        for (std::size_t k = 0; k < dim(); ++k) {
            if (p[k] < lower[k]) p[k] = lower[k];
            if (p[k] > upper[k]) p[k] = upper[k];
        }
        return p;
    }

    double diagonal() const { return distance(lower, upper); }

    Vec center() const
    {
        Vec c(dim());
        for (std::size_t k = 0; k < dim(); ++k) c[k] = 0.5 * (lower[k] + upper[k]);
        return c;
    }

    void validate() const
    {
        if (lower.size() != upper.size() || (dim() != 2 && dim() != 3))
            throw ContractViolation("bounds must be 2-D or 3-D with matching corners");
        for (std::size_t k = 0; k < dim(); ++k)
            if (!(lower[k] < upper[k]))
                throw ContractViolation("bounds: lower corner must be below upper corner");
    }
};

std::string to_string(const Vec& v);

}  // namespace bmo

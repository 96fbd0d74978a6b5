#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace tps {

/// A finite set of points in R^d stored row-major.
class PointCloud {
public:
    PointCloud() = default;
    explicit PointCloud(std::size_t dim) : dim_(dim) {}
    PointCloud(std::size_t dim, std::vector<double> values) : dim_(dim), values_(std::move(values)) {
        if (dim_ == 0 ? !values_.empty() : values_.size() % dim_ != 0)
            throw std::invalid_argument("point cloud values not a multiple of the dimension");
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return dim_ == 0 ? 0 : values_.size() / dim_; }
    bool empty() const noexcept { return values_.empty(); }

    std::span<const double> row(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }
    std::span<double> row(std::size_t i) { return {values_.data() + i * dim_, dim_}; }
    std::span<const double> values() const noexcept { return values_; }

    void push_back(std::span<const double> p) {
        if (p.size() != dim_) throw std::invalid_argument("point dimension mismatch");
        values_.insert(values_.end(), p.begin(), p.end());
    }

private:
    std::size_t dim_ = 0;
    std::vector<double> values_;
};

}  // namespace tps

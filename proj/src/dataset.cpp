#include "annlab/dataset.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace annlab {

VectorDataset VectorDataset::create(std::uint32_t n, std::uint32_t d, Metric metric,
                                    std::vector<float> data) {
    VectorDataset ds;
    ds.n = n;
    ds.d = d;
    ds.metric = metric;
    ds.data = std::move(data);
    ds.validate();
    return ds;
}

void VectorDataset::validate() const {
    if (n < 1 || d < 1) {
        throw std::invalid_argument("VectorDataset: n and d must be >= 1");
    }
    if (data.size() != static_cast<std::size_t>(n) * d) {
        throw std::invalid_argument("VectorDataset: data length " + std::to_string(data.size()) +
                                    " does not equal n*d = " +
                                    std::to_string(static_cast<std::size_t>(n) * d));
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!std::isfinite(data[i])) {
            throw std::invalid_argument("VectorDataset: non-finite component at index " +
                                        std::to_string(i));
        }
    }
}

}  // namespace annlab

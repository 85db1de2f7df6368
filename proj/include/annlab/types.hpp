#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace annlab {

using VertexId = std::uint32_t;

// Sentinel filling unused neighbor slots in fixed-degree rows.
inline constexpr VertexId kInvalidId = std::numeric_limits<VertexId>::max();

enum class Metric { kL2, kInnerProduct };

inline const char* metric_name(Metric m) {
    return m == Metric::kL2 ? "l2" : "ip";
}

inline Metric parse_metric(const std::string& s) {
    if (s == "l2" || s == "L2") return Metric::kL2;
    if (s == "ip" || s == "inner_product" || s == "inner-product") {
        return Metric::kInnerProduct;
    }
    throw std::invalid_argument("unknown metric: " + s);
}

}  // namespace annlab

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace qrc {

enum class SeriesOrigin { santafe, uniform_random, custom };

/// Input sequence, every value in [0, 1].
struct TimeSeries {
    std::vector<double> values;
    SeriesOrigin origin = SeriesOrigin::custom;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t k) const { return values[k]; }

    /// Throws if any value lies outside [0, 1].
    void validate() const;
};

std::string origin_name(SeriesOrigin origin);

}  // namespace qrc

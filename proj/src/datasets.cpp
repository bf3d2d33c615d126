#include "egnh/datasets.hpp"

namespace egnh::datasets {

Sample aarset() {
    return Sample(std::vector<double>(aarset_values.begin(), aarset_values.end()), "aarset");
}

Sample kevlar() {
    return Sample(std::vector<double>(kevlar_values.begin(), kevlar_values.end()), "kevlar");
}

std::optional<Sample> by_name(std::string_view name) {
    if (name == "aarset") return aarset();
    if (name == "kevlar") return kevlar();
    return std::nullopt;
}

} // namespace egnh::datasets

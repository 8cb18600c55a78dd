#ifndef FLATSUB_REPORT_HPP
#define FLATSUB_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace flatsub {

// One named max-norm residual with the provenance of the worst offender.
struct ResidualReport {
    std::string name;
    double value = 0.0;
    std::optional<std::string> value_exact; // rational mode only
    std::vector<double> worst_point;
    std::vector<int> worst_indices;
    double tolerance = 0.0; // 0 means "must vanish exactly"
    bool pass = false;
};

nlohmann::ordered_json to_json(const ResidualReport& r);

// Deterministic serialization: insertion-ordered keys, every float printed
// with 17 significant digits, newline-terminated. Identical input objects
// produce byte-identical output.
std::string dump_deterministic(const nlohmann::ordered_json& j, int indent = 2);

// %.17g rendering shared by the JSON and CSV writers.
std::string format_double(double v);

} // namespace flatsub

#endif

#include "flatsub/report.hpp"

#include <cmath>
#include <cstdio>

namespace flatsub {

using nlohmann::ordered_json;

std::string format_double(double v) {
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json to_json(const ResidualReport& r) {
    ordered_json j;
    j["name"] = r.name;
    j["value"] = r.value;
    if (r.value_exact) j["value_exact"] = *r.value_exact;
    j["worst_point"] = r.worst_point;
    j["worst_indices"] = r.worst_indices;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    return j;
}

namespace {

void dump_rec(const ordered_json& j, std::string& out, int indent, int depth) {
    std::string pad(static_cast<size_t>(indent) * depth, ' ');
    std::string pad_in(static_cast<size_t>(indent) * (depth + 1), ' ');
    switch (j.type()) {
        case ordered_json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            size_t k = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++k) {
                out += pad_in;
                out += ordered_json(it.key()).dump();
                out += ": ";
                dump_rec(it.value(), out, indent, depth + 1);
                if (k + 1 < j.size()) out += ",";
                out += "\n";
            }
            out += pad + "}";
            return;
        }
        case ordered_json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Scalar-only arrays stay on one line.
            bool flat = true;
            for (const auto& v : j)
                if (v.is_object() || v.is_array()) flat = false;
            if (flat) {
                out += "[";
                for (size_t i = 0; i < j.size(); ++i) {
                    if (i) out += ", ";
                    dump_rec(j[i], out, indent, depth);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (size_t i = 0; i < j.size(); ++i) {
                out += pad_in;
                dump_rec(j[i], out, indent, depth + 1);
                if (i + 1 < j.size()) out += ",";
                out += "\n";
            }
            out += pad + "]";
            return;
        }
        case ordered_json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

} // namespace

std::string dump_deterministic(const ordered_json& j, int indent) {
    std::string out;
    dump_rec(j, out, indent, 0);
    out += "\n";
    return out;
}

} // namespace flatsub

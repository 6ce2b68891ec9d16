#include "plap/json_format.hpp"

#include <cmath>
#include <cstdio>

namespace plap {

namespace {

void emit(const nlohmann::ordered_json& j, std::string& out) {
    using value_t = nlohmann::ordered_json::value_t;
    switch (j.type()) {
        case value_t::object: {
            out += '{';
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out += ',';
                first = false;
                out += nlohmann::ordered_json(key).dump();
                out += ':';
                emit(value, out);
            }
            out += '}';
            break;
        }
        case value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& value : j) {
                if (!first) out += ',';
                first = false;
                emit(value, out);
            }
            out += ']';
            break;
        }
        case value_t::number_float: {
            const double x = j.get<double>();
            if (!std::isfinite(x)) {
                out += "null";
                break;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            out += buf;
            // Keep floats recognizable as floats when they print as integers.
            bool integral = true;
            for (const char* c = buf; *c; ++c) {
                if (*c == '.' || *c == 'e' || *c == 'n' || *c == 'i') integral = false;
            }
            if (integral) out += ".0";
            break;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json& j) {
    std::string out;
    emit(j, out);
    return out;
}

}  // namespace plap

#include "breaktime/scenario_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "breaktime/errors.hpp"

namespace breaktime {
namespace {

using nlohmann::json;

std::size_t line_of_byte_offset(const std::string& text, std::size_t offset) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

double require_number(const json& node, const std::string& context, const char* key) {
    if (!node.contains(key)) {
        throw ParseError(context + ": missing field '" + key + "'");
    }
    if (!node[key].is_number()) {
        throw ParseError(context + ": field '" + key + "' must be a number");
    }
    return node[key].get<double>();
}

std::uint64_t require_count(const json& node, const std::string& context, const char* key,
                            std::uint64_t fallback) {
    if (!node.contains(key)) return fallback;
    if (!node[key].is_number_unsigned()) {
        throw ParseError(context + ": field '" + key + "' must be a nonnegative integer");
    }
    return node[key].get<std::uint64_t>();
}

void reject_unknown_keys(const json& node, const std::string& context,
                         std::initializer_list<const char*> allowed) {
    for (const auto& item : node.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ParseError(context + ": unknown field '" + item.key() + "'");
        }
    }
}

DistributionSpec distribution_from_json(const json& node, const std::string& context) {
    if (!node.is_object()) {
        throw ParseError(context + ": distribution record must be an object");
    }
    if (!node.contains("family") || !node["family"].is_string()) {
        throw ParseError(context + ": missing string field 'family'");
    }
    const std::string family = node["family"].get<std::string>();
    try {
        if (family == "exponential") {
            reject_unknown_keys(node, context, {"family", "rate"});
            return Exponential(require_number(node, context, "rate"));
        }
        if (family == "uniform") {
            reject_unknown_keys(node, context, {"family", "lo", "hi"});
            return Uniform(require_number(node, context, "lo"),
                           require_number(node, context, "hi"));
        }
        if (family == "gamma") {
            reject_unknown_keys(node, context, {"family", "shape", "scale"});
            return Gamma(require_number(node, context, "shape"),
                         require_number(node, context, "scale"));
        }
        if (family == "weibull") {
            reject_unknown_keys(node, context, {"family", "shape", "scale"});
            return Weibull(require_number(node, context, "shape"),
                           require_number(node, context, "scale"));
        }
        if (family == "lognormal") {
            reject_unknown_keys(node, context, {"family", "log_mean", "log_sd"});
            return LogNormal(require_number(node, context, "log_mean"),
                             require_number(node, context, "log_sd"));
        }
        if (family == "deterministic") {
            reject_unknown_keys(node, context, {"family", "value"});
            return Deterministic(require_number(node, context, "value"));
        }
    } catch (const InvalidParameter& e) {
        throw ParseError(context + ": " + e.what());
    }
    throw ParseError(context + ": unknown family '" + family + "'");
}

json must_contain(const json& root, const std::string& origin, const char* key) {
    if (!root.contains(key)) {
        throw ParseError(origin + ": missing field '" + key + "'");
    }
    return root[key];
}

// ---- writing ----

std::string escape_json_string(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
    return out;
}

std::string format_u64(std::uint64_t value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%" PRIu64, value);
    return buf;
}

std::string optional_to_json(const std::optional<double>& value) {
    return value ? format_double(*value) : "null";
}

const char* method_name(MomentMethod method) {
    return method == MomentMethod::ClosedForm ? "closed_form" : "quadrature";
}

std::string format_value_line(const char* label, const std::string& value) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "  %-16s %s\n", label, value.c_str());
    return buf;
}

std::string text_double(double value) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

std::string optional_to_text(const std::optional<double>& value) {
    return value ? text_double(*value) : "undefined";
}

// ---- reading reports back ----

std::optional<double> optional_from_json(const json& node, const char* key) {
    if (!node.contains(key) || node[key].is_null()) return std::nullopt;
    return node[key].get<double>();
}

}  // namespace

ScenarioFile parse_scenario_json(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ":" + std::to_string(line_of_byte_offset(text, e.byte)) + ": " +
                         e.what());
    }
    if (!root.is_object()) {
        throw ParseError(origin + ": top level must be a JSON object");
    }
    reject_unknown_keys(root, origin, {"name", "uptime", "downtime", "proc", "simulation"});

    ScenarioFile file{
        .name = "",
        .scenario = {distribution_from_json(must_contain(root, origin, "uptime"),
                                            origin + ": uptime"),
                     distribution_from_json(must_contain(root, origin, "downtime"),
                                            origin + ": downtime"),
                     distribution_from_json(must_contain(root, origin, "proc"),
                                            origin + ": proc")},
        .simulation = std::nullopt,
    };

    if (!root.contains("name") || !root["name"].is_string()) {
        throw ParseError(origin + ": missing string field 'name'");
    }
    file.name = root["name"].get<std::string>();

    if (root.contains("simulation")) {
        const json& sim = root["simulation"];
        const std::string context = origin + ": simulation";
        if (!sim.is_object()) throw ParseError(context + ": must be an object");
        reject_unknown_keys(sim, context, {"n", "seed", "max_attempts"});
        SimulationParams params;
        params.n = require_count(sim, context, "n", params.n);
        params.seed = require_count(sim, context, "seed", params.seed);
        params.max_attempts = require_count(sim, context, "max_attempts", params.max_attempts);
        if (params.n < 2) throw ParseError(context + ": n must be >= 2");
        if (params.max_attempts < 1) throw ParseError(context + ": max_attempts must be >= 1");
        file.simulation = params;
    }
    return file;
}

ScenarioFile load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_json(buffer.str(), path);
}

std::string format_double(double value) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string report_to_json(const std::string& name, const MomentReport& report) {
    std::string out = "{\n";
    out += "  \"name\": " + escape_json_string(name) + ",\n";
    out += "  \"q\": " + format_double(report.q) + ",\n";
    out += "  \"e_r\": " + format_double(report.e_r) + ",\n";
    out += "  \"e_r2\": " + format_double(report.e_r2) + ",\n";
    out += "  \"var_r\": " + format_double(report.var_r) + ",\n";
    out += "  \"cm\": {\n";
    out += "    \"q\": " + format_double(report.cm.q) + ",\n";
    out += "    \"a\": " + optional_to_json(report.cm.a) + ",\n";
    out += "    \"b\": " + optional_to_json(report.cm.b) + ",\n";
    out += "    \"c\": " + optional_to_json(report.cm.c) + ",\n";
    out += "    \"d\": " + optional_to_json(report.cm.d) + ",\n";
    out += "    \"method\": \"" + std::string(method_name(report.cm.method)) + "\",\n";
    out += "    \"est_abs_error\": " + format_double(report.cm.est_abs_error) + "\n";
    out += "  },\n";
    out += "  \"notes\": [";
    for (std::size_t i = 0; i < report.notes.size(); ++i) {
        out += (i == 0 ? "\n    " : ",\n    ") + escape_json_string(report.notes[i]);
    }
    out += report.notes.empty() ? "]\n" : "\n  ]\n";
    out += "}\n";
    return out;
}

std::string report_to_text(const std::string& name, const MomentReport& report) {
    std::string out = "scenario: " + name + "\n";
    out += format_value_line("q", text_double(report.q));
    out += format_value_line("a", optional_to_text(report.cm.a));
    out += format_value_line("b", optional_to_text(report.cm.b));
    out += format_value_line("c", optional_to_text(report.cm.c));
    out += format_value_line("d", optional_to_text(report.cm.d));
    out += format_value_line("E[R]", text_double(report.e_r));
    out += format_value_line("E[R^2]", text_double(report.e_r2));
    out += format_value_line("Var[R]", text_double(report.var_r));
    out += format_value_line("method", method_name(report.cm.method));
    out += format_value_line("est_abs_error", text_double(report.cm.est_abs_error));
    for (const std::string& note : report.notes) {
        out += "  note: " + note + "\n";
    }
    return out;
}

std::string estimate_to_json(const std::string& name, const SimulationEstimate& estimate) {
    std::string out = "{\n";
    out += "  \"name\": " + escape_json_string(name) + ",\n";
    out += "  \"n\": " + format_u64(estimate.n) + ",\n";
    out += "  \"mean_r\": " + format_double(estimate.mean_r) + ",\n";
    out += "  \"mean_r2\": " + format_double(estimate.mean_r2) + ",\n";
    out += "  \"se_mean\": " + format_double(estimate.se_mean) + ",\n";
    out += "  \"se_mean2\": " + format_double(estimate.se_mean2) + ",\n";
    out += "  \"mean_attempts\": " + format_double(estimate.mean_attempts) + ",\n";
    out += "  \"max_attempts_hit\": " + format_u64(estimate.max_attempts_hit) + ",\n";
    out += "  \"seed\": " + format_u64(estimate.seed) + "\n";
    out += "}\n";
    return out;
}

std::string estimate_to_text(const std::string& name, const SimulationEstimate& estimate) {
    std::string out = "scenario: " + name + "\n";
    out += format_value_line("n", format_u64(estimate.n));
    out += format_value_line("mean R", text_double(estimate.mean_r));
    out += format_value_line("se(mean R)", text_double(estimate.se_mean));
    out += format_value_line("mean R^2", text_double(estimate.mean_r2));
    out += format_value_line("se(mean R^2)", text_double(estimate.se_mean2));
    out += format_value_line("mean attempts", text_double(estimate.mean_attempts));
    out += format_value_line("max attempts hit", format_u64(estimate.max_attempts_hit));
    out += format_value_line("seed", format_u64(estimate.seed));
    return out;
}

std::string validation_to_text(const std::string& name, const SimulationEstimate& estimate,
                               const ValidationResult& result) {
    char buf[256];
    std::string out = "scenario: " + name + "  (n=" + format_u64(estimate.n) +
                      ", seed=" + format_u64(estimate.seed) + ")\n";
    std::snprintf(buf, sizeof(buf), "  %-8s %-22s %-22s %-14s %s\n", "moment", "analytic",
                  "simulated", "se", "z");
    out += buf;
    const MomentComparison* rows[2] = {&result.first, &result.second};
    const char* labels[2] = {"E[R]", "E[R^2]"};
    for (int i = 0; i < 2; ++i) {
        std::snprintf(buf, sizeof(buf), "  %-8s %-22.12g %-22.12g %-14.6g %+.3f\n", labels[i],
                      rows[i]->analytic, rows[i]->simulated, rows[i]->se, rows[i]->z);
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "  %s (|z| threshold %.1f)\n",
                  result.pass ? "PASS" : "FAIL", result.threshold);
    out += buf;
    return out;
}

ParsedReport parse_report_json(const std::string& text) {
    json root = json::parse(text);
    ParsedReport parsed;
    parsed.name = root.at("name").get<std::string>();
    parsed.report.q = root.at("q").get<double>();
    parsed.report.e_r = root.at("e_r").get<double>();
    parsed.report.e_r2 = root.at("e_r2").get<double>();
    parsed.report.var_r = root.at("var_r").get<double>();
    const json& cm = root.at("cm");
    parsed.report.cm.q = cm.at("q").get<double>();
    parsed.report.cm.one_minus_q = 1.0 - parsed.report.cm.q;
    parsed.report.cm.a = optional_from_json(cm, "a");
    parsed.report.cm.b = optional_from_json(cm, "b");
    parsed.report.cm.c = optional_from_json(cm, "c");
    parsed.report.cm.d = optional_from_json(cm, "d");
    parsed.report.cm.method = cm.at("method").get<std::string>() == "closed_form"
                                  ? MomentMethod::ClosedForm
                                  : MomentMethod::Quadrature;
    parsed.report.cm.est_abs_error = cm.at("est_abs_error").get<double>();
    for (const auto& note : root.at("notes")) {
        parsed.report.notes.push_back(note.get<std::string>());
    }
    return parsed;
}

ParsedEstimate parse_estimate_json(const std::string& text) {
    json root = json::parse(text);
    ParsedEstimate parsed;
    parsed.name = root.at("name").get<std::string>();
    parsed.estimate.n = root.at("n").get<std::uint64_t>();
    parsed.estimate.mean_r = root.at("mean_r").get<double>();
    parsed.estimate.mean_r2 = root.at("mean_r2").get<double>();
    parsed.estimate.se_mean = root.at("se_mean").get<double>();
    parsed.estimate.se_mean2 = root.at("se_mean2").get<double>();
    parsed.estimate.mean_attempts = root.at("mean_attempts").get<double>();
    parsed.estimate.max_attempts_hit = root.at("max_attempts_hit").get<std::uint64_t>();
    parsed.estimate.seed = root.at("seed").get<std::uint64_t>();
    return parsed;
}

}  // namespace breaktime

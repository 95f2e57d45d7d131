#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "hypcc/harness.hpp"

namespace hypcc::verify {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string pairs_field(const std::vector<std::pair<std::string, double>>& kv) {
    std::string s;
    for (std::size_t i = 0; i < kv.size(); ++i) {
        if (i) s += ';';
        s += kv[i].first;
        s += '=';
        s += format_double(kv[i].second);
    }
    return s;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string json_number(double v) {
    if (std::isfinite(v)) return format_double(v);
    return '"' + format_double(v) + '"';
}

void write_csv(const RunResult& result, const VerifyConfig& config, std::ostream& os) {
    os << "# model=" << model_name(config.model) << " suite=" << config.suite
       << " samples=" << config.samples << " seed=" << config.seed << "\n";
    os << "# delta=" << format_double(result.constants.delta)
       << " c1=" << format_double(result.constants.c1)
       << " c2=" << format_double(result.constants.c2)
       << " c3=" << format_double(result.constants.c3)
       << " c2_prime=" << format_double(result.constants.c2_prime)
       << " diameter=" << format_double(result.constants.diameter)
       << " c2_double_prime=" << format_double(result.constants.c2_double_prime()) << "\n";
    os << "suite,index,inputs,quantities,ratio,lower,upper,pass,diagnostics\n";
    for (const auto& r : result.records) {
        std::string diag = "antecedent=" + std::string(r.antecedent ? "1" : "0") +
                           ";soft=" + (r.soft_failure ? "1" : "0");
        if (!r.note.empty()) diag += ";note=" + r.note;
        os << r.suite << ',' << r.index << ",\"" << pairs_field(r.inputs) << "\",\""
           << pairs_field(r.quantities) << "\"," << format_double(r.ratio) << ','
           << format_double(r.lower) << ',' << format_double(r.upper) << ','
           << (r.pass ? 1 : 0) << ",\"" << diag << "\"\n";
    }
    os << "# summary";
    for (const auto& s : result.summaries)
        os << " " << s.suite << ":" << s.passed << "/" << s.total
           << (s.soft_failures ? "(soft " + std::to_string(s.soft_failures) + ")" : "");
    os << "\n";
}

void write_json(const RunResult& result, const VerifyConfig& config, std::ostream& os) {
    os << "{\n";
    os << "  \"config\": {\"model\": \"" << model_name(config.model) << "\", \"suite\": \""
       << config.suite << "\", \"samples\": " << config.samples
       << ", \"seed\": " << config.seed << "},\n";
    os << "  \"constants\": {\"delta\": " << json_number(result.constants.delta)
       << ", \"c1\": " << json_number(result.constants.c1)
       << ", \"c2\": " << json_number(result.constants.c2)
       << ", \"c3\": " << json_number(result.constants.c3)
       << ", \"c2_prime\": " << json_number(result.constants.c2_prime)
       << ", \"diameter\": " << json_number(result.constants.diameter)
       << ", \"c2_double_prime\": " << json_number(result.constants.c2_double_prime())
       << "},\n";
    os << "  \"summary\": [";
    for (std::size_t i = 0; i < result.summaries.size(); ++i) {
        const auto& s = result.summaries[i];
        if (i) os << ", ";
        os << "{\"suite\": \"" << s.suite << "\", \"total\": " << s.total
           << ", \"passed\": " << s.passed << ", \"hard_failures\": " << s.hard_failures
           << ", \"soft_failures\": " << s.soft_failures
           << ", \"min_ratio\": " << json_number(s.min_ratio)
           << ", \"max_ratio\": " << json_number(s.max_ratio) << "}";
    }
    os << "],\n";
    os << "  \"records\": [\n";
    for (std::size_t i = 0; i < result.records.size(); ++i) {
        const auto& r = result.records[i];
        os << "    {\"suite\": \"" << r.suite << "\", \"index\": " << r.index
           << ", \"inputs\": {";
        for (std::size_t j = 0; j < r.inputs.size(); ++j) {
            if (j) os << ", ";
            os << "\"" << r.inputs[j].first << "\": " << json_number(r.inputs[j].second);
        }
        os << "}, \"quantities\": {";
        for (std::size_t j = 0; j < r.quantities.size(); ++j) {
            if (j) os << ", ";
            os << "\"" << r.quantities[j].first
               << "\": " << json_number(r.quantities[j].second);
        }
        os << "}, \"ratio\": " << json_number(r.ratio)
           << ", \"lower\": " << json_number(r.lower)
           << ", \"upper\": " << json_number(r.upper)
           << ", \"pass\": " << (r.pass ? "true" : "false")
           << ", \"soft_failure\": " << (r.soft_failure ? "true" : "false")
           << ", \"antecedent\": " << (r.antecedent ? "true" : "false") << ", \"note\": \""
           << json_escape(r.note) << "\"}";
        os << (i + 1 < result.records.size() ? ",\n" : "\n");
    }
    os << "  ]\n}\n";
}

} // namespace

void write_report(const RunResult& result, const VerifyConfig& config, std::ostream& os) {
    if (config.format == Format::Csv)
        write_csv(result, config, os);
    else
        write_json(result, config, os);
}

} // namespace hypcc::verify

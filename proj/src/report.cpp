#include "meanking/report.hpp"

#include <json.hpp>

namespace meanking {

bool all_pass(const std::vector<CheckRecord>& checks) {
    for (const CheckRecord& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string to_json_line(const CheckRecord& rec) {
    nlohmann::json j{{"suite", rec.suite},
                     {"check", rec.name},
                     {"expected", rec.expected},
                     {"observed", rec.observed},
                     {"pass", rec.pass}};
    return j.dump();
}

namespace {
std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}
}  // namespace

std::string csv_header() { return "suite,check,expected,observed,pass"; }

std::string to_csv_line(const CheckRecord& rec) {
    return csv_escape(rec.suite) + "," + csv_escape(rec.name) + "," + csv_escape(rec.expected) + "," +
           csv_escape(rec.observed) + "," + (rec.pass ? "true" : "false");
}

std::string to_text_line(const CheckRecord& rec) {
    return std::string(rec.pass ? "PASS" : "FAIL") + "  [" + rec.suite + "] " + rec.name +
           "  expected=" + rec.expected + " observed=" + rec.observed;
}

}  // namespace meanking

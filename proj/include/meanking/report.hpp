#pragma once

// Plain check records shared by the geometry audit and the CLI verification
// suites, with renderers for the three output formats.

#include <string>
#include <vector>

namespace meanking {

struct CheckRecord {
    std::string suite;
    std::string name;
    std::string expected;
    std::string observed;
    bool pass = false;
};

bool all_pass(const std::vector<CheckRecord>& checks);

std::string to_json_line(const CheckRecord& rec);
std::string to_csv_line(const CheckRecord& rec);
std::string csv_header();
std::string to_text_line(const CheckRecord& rec);

}  // namespace meanking

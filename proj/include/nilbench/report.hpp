#pragma once

#include <string>
#include <string_view>

#include "nilbench/classifier.hpp"

namespace nilbench {

enum class ReportFormat { Text, Json };

// JSON keys are sorted, so equal reports give identical bytes.
std::string emit_report(const ClassificationReport& r, ReportFormat format);
// Inverse of the JSON form; throws ParseError on malformed input.
ClassificationReport report_from_json(std::string_view text);

const char* side_name(Side s);

}  // namespace nilbench

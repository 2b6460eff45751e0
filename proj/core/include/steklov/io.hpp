#pragma once

#include <string>
#include <vector>

#include "steklov/verify.hpp"

namespace steklov {

/// Domain records:
///   {"shape":"polygon","vertices":[[x,y],...],"symmetries":["central","quarter_turn"]}
///   {"shape":"star","a":[a0,a1,...],"b":[0,b1,...],"symmetries":[...]}
/// plus the conveniences disc/square/rectangle/cross.
Domain parse_domain(const std::string& json_text);
Domain load_domain(const std::string& path);

/// Weight records:
///   {"kind":"power","alpha":A,"beta":B,"dim":N}
///   {"kind":"logconvex","family":"constant|quadratic|power|spline",...}
WeightSpec parse_weight(const std::string& json_text);
/// CLI convenience: treats the argument as a path when a file exists there,
/// otherwise as an inline JSON record.
WeightSpec load_weight_arg(const std::string& path_or_json);

/// Suite configuration; domain "file" references resolve relative to the
/// config file location. Parse problems raise ConfigError with a line number.
SuiteConfig load_suite_config(const std::string& path);

std::string report_to_json_line(const VerificationReport& report);
std::string report_csv_header();
std::string report_to_csv_row(const VerificationReport& report);

}  // namespace steklov

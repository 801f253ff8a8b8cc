#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace singfold {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

// argv without the program name
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// mismatches between the catalogue file and the compiled case data
std::vector<std::string> check_catalogue(const std::string& path);
Json catalogue_json();
std::string default_catalogue_path();

Json case_report(const std::string& case_id, int samples, std::uint64_t seed, int theorem2_points);
bool report_passes(const Json& report);

}  // namespace singfold

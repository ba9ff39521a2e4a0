#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace tdlab::report {

inline constexpr const char* kToolName = "tdlab";
inline constexpr const char* kToolVersion = "0.1.0";

std::uint64_t fnv1a(const std::string& bytes);

// A structured run report. The JSON form round-trips losslessly and the
// text rendering carries the same verdicts.
class Report {
public:
    Report(std::string subcommand, std::string input_path, const std::string& input_bytes,
           std::uint64_t seed);

    void add_check(const std::string& name, bool ok, const std::string& detail = "");
    void set_field(const std::string& key, const nlohmann::json& value);
    void set_timing_ms(double ms);

    bool all_ok() const;
    int failed_count() const;

    std::string to_text() const;
    std::string to_json() const;
    const nlohmann::json& json() const { return j_; }

private:
    nlohmann::json j_;
};

} // namespace tdlab::report

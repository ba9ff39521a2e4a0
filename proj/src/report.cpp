#include "tdlab/report.hpp"

#include <sstream>

namespace tdlab::report {

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

Report::Report(std::string subcommand, std::string input_path, const std::string& input_bytes,
               std::uint64_t seed) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a(input_bytes));
    j_ = {{"tool", kToolName},
          {"version", kToolVersion},
          {"subcommand", std::move(subcommand)},
          {"input", {{"path", std::move(input_path)}, {"fingerprint", std::string(buf)}}},
          {"seed", seed},
          {"checks", nlohmann::json::array()},
          {"timing_ms", 0.0}};
}

void Report::add_check(const std::string& name, bool ok, const std::string& detail) {
    nlohmann::json c = {{"name", name}, {"ok", ok}};
    if (!detail.empty()) c["detail"] = detail;
    j_["checks"].push_back(std::move(c));
}

void Report::set_field(const std::string& key, const nlohmann::json& value) { j_[key] = value; }

void Report::set_timing_ms(double ms) { j_["timing_ms"] = ms; }

bool Report::all_ok() const { return failed_count() == 0; }

int Report::failed_count() const {
    int n = 0;
    for (const auto& c : j_["checks"])
        if (!c["ok"].get<bool>()) ++n;
    return n;
}

std::string Report::to_text() const {
    std::ostringstream out;
    out << j_["tool"].get<std::string>() << " " << j_["version"].get<std::string>() << "  "
        << j_["subcommand"].get<std::string>() << "\n";
    out << "input: " << j_["input"]["path"].get<std::string>() << "  (fingerprint "
        << j_["input"]["fingerprint"].get<std::string>() << ", seed " << j_["seed"] << ")\n";
    for (const auto& [key, value] : j_.items()) {
        if (key == "tool" || key == "version" || key == "subcommand" || key == "input" ||
            key == "seed" || key == "checks" || key == "timing_ms")
            continue;
        out << key << ": " << value.dump() << "\n";
    }
    for (const auto& c : j_["checks"]) {
        out << "check " << c["name"].get<std::string>() << ": "
            << (c["ok"].get<bool>() ? "ok" : "FAIL");
        if (c.contains("detail")) out << "  (" << c["detail"].get<std::string>() << ")";
        out << "\n";
    }
    out << (all_ok() ? "all checks passed" : std::to_string(failed_count()) + " check(s) failed")
        << "  [" << j_["timing_ms"] << " ms]\n";
    return out.str();
}

std::string Report::to_json() const { return j_.dump(2) + "\n"; }

} // namespace tdlab::report

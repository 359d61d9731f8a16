#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "radbound/bounds.hpp"
#include "radbound/error.hpp"
#include "radbound/network.hpp"
#include "radbound/norms.hpp"

namespace radbound {

/// Malformed or unreadable input file.
class FormatError : public Error {
public:
    using Error::Error;
};

/// `%.17g`; round-trips every finite double.
std::string format_double(double value);

NetworkSpec network_from_json(const nlohmann::json& doc);
InputSet inputs_from_json(const nlohmann::json& doc);
NormBudget budget_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const NormBudget& budget);
nlohmann::json to_json(const Subsequence& seq);
nlohmann::json to_json(const BoundReport& report);

/// {"layers": [...]} with every entry printed to 17 significant digits.
std::string network_to_text(const NetworkSpec& net);
std::string inputs_to_text(const InputSet& inputs);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

NetworkSpec load_network(const std::filesystem::path& path);
InputSet load_inputs(const std::filesystem::path& path);
NormBudget load_budget(const std::filesystem::path& path);

}  // namespace radbound

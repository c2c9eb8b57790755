#pragma once

#include "cmdp/model.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace cmdp {

/// Raised by parse_instance; `report` is filled when the document parsed but
/// the resulting model failed validation.
class InstanceError : public ModelError {
public:
    explicit InstanceError(const std::string& what, ValidationReport report = {})
        : ModelError(what), report_(std::move(report)) {}
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

/// Parses a JSON instance document into a model without validating it.
/// Throws InstanceError on syntax or schema errors.
Mdp parse_instance_unchecked(std::string_view text);

/// Parses and validates; throws InstanceError carrying the validation report
/// if any invariant fails.
Mdp parse_instance(std::string_view text);

Mdp load_instance(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);

/// Instance document with every number as an exact "p/q" string.
std::string serialize_instance(const Mdp& mdp);

} // namespace cmdp

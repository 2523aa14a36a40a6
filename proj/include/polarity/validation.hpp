#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace polarity {

/// Outcome of a single named structural check, with a concrete witness on failure.
struct CheckResult {
    std::string name;
    bool pass = false;
    std::string witness;  // empty when the check passed
};

/// Collection of check outcomes produced by validate_plane / validate_polarity.
struct ValidationReport {
    std::vector<CheckResult> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    const CheckResult* find(std::string_view name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    std::string summary() const {
        std::ostringstream os;
        for (const auto& c : checks) {
            os << (c.pass ? "pass" : "FAIL") << "  " << c.name;
            if (!c.pass && !c.witness.empty()) os << "  [" << c.witness << "]";
            os << '\n';
        }
        return os.str();
    }
};

/// Syntax error while reading a text format; carries the 1-based line and column.
class ParseError : public std::runtime_error {
  public:
    ParseError(int line, int column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
};

/// A structure parsed fine but failed axiom validation; the report is attached.
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(ValidationReport report, const std::string& context = "validation failed")
        : std::runtime_error(context + "\n" + report.summary()), report_(std::move(report)) {}

    const ValidationReport& report() const { return report_; }

  private:
    ValidationReport report_;
};

}  // namespace polarity

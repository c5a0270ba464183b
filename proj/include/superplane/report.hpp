#pragma once

#include <string>
#include <variant>
#include <vector>

namespace superplane {

/// A labeled informational value.
struct ReportInfo {
    std::string key;
    std::string label;
    std::string value;
};

/// A numeric check: measured against expected under a comparison rule.
struct ReportCheck {
    enum class Rule { Near, AtMost, Equal };

    std::string key;
    std::string label;
    double measured;
    double expected;
    double tolerance;
    Rule rule;

    bool passed() const noexcept;
};

struct ReportSection {
    std::string title;
    std::string key_prefix;
    std::vector<std::variant<ReportInfo, ReportCheck>> items;

    void info(std::string key, std::string label, std::string value);
    /// |measured - expected| <= tolerance
    void near(std::string key, std::string label, double measured, double expected, double tolerance);
    /// measured <= bound
    void at_most(std::string key, std::string label, double measured, double bound);
    void equal(std::string key, std::string label, double measured, double expected);
};

/// Exit status: 0 when every check passes, 1 otherwise. Usage errors (2)
/// never produce a document.
class ReportDocument {
public:
    ReportSection& add_section(std::string title, std::string key_prefix);

    const std::vector<ReportSection>& sections() const noexcept { return sections_; }
    bool all_passed() const noexcept;
    int exit_status() const noexcept { return all_passed() ? 0 : 1; }

private:
    std::vector<ReportSection> sections_;
};

enum class ReportFormat { Text, Machine };

std::string render(const ReportDocument& doc, ReportFormat format);

}  // namespace superplane

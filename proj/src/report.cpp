#include "superplane/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace superplane {

namespace {

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

// Fixed notation where it reads well, scientific for tiny or huge values.
std::string human(double v, int decimals) {
    const double a = std::abs(v);
    char pattern[16];
    if (v == 0.0 || (a >= 1e-3 && a < 1e7)) {
        std::snprintf(pattern, sizeof pattern, "%%.%df", decimals);
    } else {
        std::snprintf(pattern, sizeof pattern, "%%.%de", decimals);
    }
    return fmt(pattern, v);
}

std::string compact(double v) { return fmt("%.10g", v); }

std::string measured_text(const ReportCheck& c, int decimals) {
    const auto integral = [](double v) { return std::abs(v) < 1e15 && v == std::floor(v); };
    if (c.rule != ReportCheck::Rule::Near && integral(c.measured) && integral(c.expected)) {
        return fmt("%.0f", c.measured);
    }
    return human(c.measured, decimals);
}

std::string expected_text(const ReportCheck& c) {
    switch (c.rule) {
        case ReportCheck::Rule::Near: return compact(c.expected);
        case ReportCheck::Rule::AtMost: return "<= " + compact(c.expected);
        case ReportCheck::Rule::Equal: return "== " + compact(c.expected);
    }
    return {};
}

}  // namespace

bool ReportCheck::passed() const noexcept {
    if (!std::isfinite(measured)) return false;
    switch (rule) {
        case Rule::Near: return std::abs(measured - expected) <= tolerance;
        case Rule::AtMost: return measured <= expected;
        case Rule::Equal: return measured == expected;
    }
    return false;
}

void ReportSection::info(std::string key, std::string label, std::string value) {
    items.emplace_back(ReportInfo{std::move(key), std::move(label), std::move(value)});
}

void ReportSection::near(std::string key, std::string label, double measured, double expected, double tolerance) {
    items.emplace_back(ReportCheck{std::move(key), std::move(label), measured, expected, tolerance, ReportCheck::Rule::Near});
}

void ReportSection::at_most(std::string key, std::string label, double measured, double bound) {
    items.emplace_back(ReportCheck{std::move(key), std::move(label), measured, bound, 0.0, ReportCheck::Rule::AtMost});
}

void ReportSection::equal(std::string key, std::string label, double measured, double expected) {
    items.emplace_back(ReportCheck{std::move(key), std::move(label), measured, expected, 0.0, ReportCheck::Rule::Equal});
}

ReportSection& ReportDocument::add_section(std::string title, std::string key_prefix) {
    sections_.push_back({std::move(title), std::move(key_prefix), {}});
    return sections_.back();
}

bool ReportDocument::all_passed() const noexcept {
    for (const auto& s : sections_) {
        for (const auto& item : s.items) {
            if (const auto* c = std::get_if<ReportCheck>(&item); c != nullptr && !c->passed()) return false;
        }
    }
    return true;
}

std::string render(const ReportDocument& doc, ReportFormat format) {
    std::ostringstream os;
    if (format == ReportFormat::Machine) {
        for (const auto& s : doc.sections()) {
            for (const auto& item : s.items) {
                if (const auto* info = std::get_if<ReportInfo>(&item)) {
                    os << s.key_prefix << '.' << info->key << '=' << info->value << '\n';
                    continue;
                }
                const auto& c = std::get<ReportCheck>(item);
                const std::string k = s.key_prefix + '.' + c.key;
                os << k << '=' << measured_text(c, 10) << '\n';
                os << k << ".expected=" << compact(c.expected) << '\n';
                if (c.rule == ReportCheck::Rule::Near) os << k << ".tol=" << compact(c.tolerance) << '\n';
                os << k << ".status=" << (c.passed() ? "PASS" : "FAIL") << '\n';
            }
        }
        os << "status=" << (doc.all_passed() ? "PASS" : "FAIL") << '\n';
        return os.str();
    }

    for (const auto& s : doc.sections()) {
        os << "== " << s.title << " ==\n";
        std::size_t width = 0;
        for (const auto& item : s.items) {
            std::visit([&](const auto& x) { width = std::max(width, x.label.size()); }, item);
        }
        for (const auto& item : s.items) {
            if (const auto* info = std::get_if<ReportInfo>(&item)) {
                os << "  " << info->label << std::string(width - info->label.size(), ' ') << " = " << info->value << '\n';
                continue;
            }
            const auto& c = std::get<ReportCheck>(item);
            os << "  " << c.label << std::string(width - c.label.size(), ' ') << " = " << measured_text(c, 6)
               << "  expected " << expected_text(c);
            if (c.rule == ReportCheck::Rule::Near) os << "  tol " << compact(c.tolerance);
            os << "  " << (c.passed() ? "PASS" : "FAIL") << '\n';
        }
        os << '\n';
    }
    os << (doc.all_passed() ? "ALL CHECKS PASSED" : "SOME CHECKS FAILED") << '\n';
    return os.str();
}

}  // namespace superplane

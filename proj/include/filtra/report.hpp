#pragma once

#include <string>
#include <vector>

namespace filtra {

// One verdict of a structural check. `check` is a stable slug used verbatim
// in the machine output format.
struct Finding {
    std::string check;
    std::string subject;
    bool pass = false;
    std::string detail;

    bool operator==(const Finding& o) const {
        return check == o.check && subject == o.subject && pass == o.pass && detail == o.detail;
    }
};

struct ValidationReport {
    std::vector<Finding> findings;

    bool pass() const {
        for (const auto& f : findings)
            if (!f.pass)
                return false;
        return true;
    }

    void add(std::string check, std::string subject, bool ok, std::string detail = "") {
        findings.push_back({std::move(check), std::move(subject), ok, std::move(detail)});
    }

    void merge(const ValidationReport& o) {
        findings.insert(findings.end(), o.findings.begin(), o.findings.end());
    }

    std::vector<Finding> failures() const {
        std::vector<Finding> r;
        for (const auto& f : findings)
            if (!f.pass)
                r.push_back(f);
        return r;
    }

    std::string summary() const {
        std::string s;
        for (const auto& f : findings) {
            s += (f.pass ? "pass " : "FAIL ") + f.check + " " + f.subject;
            if (!f.detail.empty())
                s += ": " + f.detail;
            s += "\n";
        }
        return s;
    }
};

} // namespace filtra

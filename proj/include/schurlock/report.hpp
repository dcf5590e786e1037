#ifndef SCHURLOCK_REPORT_HPP
#define SCHURLOCK_REPORT_HPP

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace schurlock {

enum class Status { pass, fail, informational };

/// Where an expected value comes from: a published closed form, a trivial
/// identity, or an independent derivation (oracle, construction).
enum class Provenance { published, trivial, derived };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::informational: return "info";
    }
    return "?";
}

inline const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::published: return "published";
        case Provenance::trivial: return "trivial";
        case Provenance::derived: return "derived";
    }
    return "?";
}

struct CheckRecord {
    std::string id;
    std::string description;
    Status status = Status::informational;
    std::string expected;
    std::string actual;
    Provenance provenance = Provenance::derived;
    std::string anchor;  // the published statement or identity being checked
};

struct ReportDocument {
    std::string suite;
    std::vector<CheckRecord> checks;

    void add(CheckRecord r) { checks.push_back(std::move(r)); }

    void check(std::string id, std::string description, bool ok, std::string expected, std::string actual,
               Provenance p, std::string anchor) {
        checks.push_back({std::move(id), std::move(description), ok ? Status::pass : Status::fail,
                          std::move(expected), std::move(actual), p, std::move(anchor)});
    }

    void info(std::string id, std::string description, std::string expected, std::string actual, Provenance p,
              std::string anchor) {
        checks.push_back({std::move(id), std::move(description), Status::informational, std::move(expected),
                          std::move(actual), p, std::move(anchor)});
    }

    void append(const ReportDocument& other) {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    }

    int count(Status s) const {
        return static_cast<int>(std::count_if(checks.begin(), checks.end(), [&](const auto& c) { return c.status == s; }));
    }

    int exit_code() const { return count(Status::fail) == 0 ? 0 : 1; }

    std::string summary() const {
        std::ostringstream os;
        os << suite << ": " << count(Status::pass) << " passed, " << count(Status::fail) << " failed, "
           << count(Status::informational) << " informational";
        return os.str();
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json doc;
        doc["suite"] = suite;
        doc["checks"] = nlohmann::ordered_json::array();
        for (const auto& c : checks) {
            nlohmann::ordered_json j;
            j["id"] = c.id;
            j["description"] = c.description;
            j["status"] = to_string(c.status);
            j["expected"] = c.expected;
            j["actual"] = c.actual;
            j["provenance"] = to_string(c.provenance);
            j["anchor"] = c.anchor;
            doc["checks"].push_back(std::move(j));
        }
        doc["summary"] = {{"passed", count(Status::pass)},
                          {"failed", count(Status::fail)},
                          {"informational", count(Status::informational)},
                          {"exit_code", exit_code()}};
        return doc;
    }

    std::string to_csv() const {
        std::ostringstream os;
        os << "id,status,provenance,description,expected,actual,anchor\n";
        for (const auto& c : checks) {
            os << csv_field(c.id) << ',' << to_string(c.status) << ',' << to_string(c.provenance) << ','
               << csv_field(c.description) << ',' << csv_field(c.expected) << ',' << csv_field(c.actual) << ','
               << csv_field(c.anchor) << '\n';
        }
        return os.str();
    }

    std::string to_table() const {
        std::ostringstream os;
        os << "== " << suite << " ==\n";
        for (const auto& c : checks) {
            os << '[' << to_string(c.status) << "] " << c.id << "  (" << to_string(c.provenance) << ")\n"
               << "    " << c.description << '\n'
               << "    expected: " << c.expected << '\n'
               << "    actual:   " << c.actual << '\n';
            if (c.status == Status::fail) os << "    checks:   " << c.anchor << '\n';
        }
        os << summary() << '\n';
        return os.str();
    }

    std::string render(const std::string& format) const {
        if (format == "json") return to_json().dump(2) + "\n";
        if (format == "csv") return to_csv();
        return to_table();
    }

private:
    static std::string csv_field(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char ch : s) {
            if (ch == '"') out += '"';
            out += ch;
        }
        return out + "\"";
    }
};

}  // namespace schurlock

#endif  // SCHURLOCK_REPORT_HPP

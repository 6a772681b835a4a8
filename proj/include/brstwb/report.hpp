#pragma once

#include <optional>
#include <string>
#include <vector>

namespace brstwb {

inline constexpr const char* kNotFoundWithinBound = "not found within bound";

struct Residual {
    std::string name;
    std::string value;
    bool zero = true;
};

struct DimensionRow {
    std::string label;
    int p = 0;
    int d = 0;
    std::size_t raw = 0;
    std::size_t modded = 0;
    std::size_t classes = 0;
};

struct Report {
    std::string command;
    bool pass = true;
    std::vector<Residual> residuals;
    std::vector<DimensionRow> dimensions;
    std::vector<std::string> notes;
    std::optional<double> seconds;

    void record(std::string name, std::string value, bool zero) {
        if (!zero) pass = false;
        residuals.push_back({std::move(name), std::move(value), zero});
    }

    void record_zero(std::string name) { record(std::move(name), "0", true); }

    void record_failure(std::string name, std::string value) {
        record(std::move(name), std::move(value), false);
    }

    void note(std::string text) { notes.push_back(std::move(text)); }

    void absorb(const Report& other) {
        pass = pass && other.pass;
        residuals.insert(residuals.end(), other.residuals.begin(), other.residuals.end());
        dimensions.insert(dimensions.end(), other.dimensions.begin(), other.dimensions.end());
        notes.insert(notes.end(), other.notes.begin(), other.notes.end());
    }

    std::vector<Residual> failures() const {
        std::vector<Residual> out;
        for (const auto& r : residuals) {
            if (!r.zero) out.push_back(r);
        }
        return out;
    }
};

inline std::string to_text(const Report& r) {
    std::string s = r.command + ": " + (r.pass ? "PASS" : "FAIL") + "\n";
    for (const auto& res : r.residuals) {
        s += "  " + res.name + " = " + res.value + "\n";
    }
    if (!r.dimensions.empty()) {
        s += "  dimensions:\n";
        for (const auto& d : r.dimensions) {
            s += "    " + d.label + " p=" + std::to_string(d.p) + " d=" + std::to_string(d.d) +
                 " raw=" + std::to_string(d.raw) + " modded=" + std::to_string(d.modded) +
                 " classes=" + std::to_string(d.classes) + "\n";
        }
    }
    for (const auto& n : r.notes) s += "  note: " + n + "\n";
    if (r.seconds) s += "  seconds: " + std::to_string(*r.seconds) + "\n";
    return s;
}

} // namespace brstwb

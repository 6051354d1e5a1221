#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace heis {

struct CheckRecord {
    std::string id;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::vector<CheckRecord> records;

    void add(std::string id, bool pass, std::string detail = {}) {
        records.push_back({std::move(id), pass, std::move(detail)});
    }
    void append(const Report& other) {
        records.insert(records.end(), other.records.begin(), other.records.end());
    }
    bool all_pass() const {
        return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.pass; });
    }
    std::size_t failures() const {
        return static_cast<std::size_t>(
            std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.pass; }));
    }
};

}  // namespace heis

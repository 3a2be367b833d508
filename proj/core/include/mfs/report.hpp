#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace mfs {

struct CheckRecord {
    std::string axiom;
    bool pass = false;
    /// Order up to which the axiom is certified; -1 means exact.
    int certified_order = -1;
    std::string detail; // first counterexample locus on failure
};

struct Report {
    std::vector<CheckRecord> records;

    void add(std::string axiom, bool pass, std::string detail = "", int order = -1) {
        records.push_back({std::move(axiom), pass, order, std::move(detail)});
    }
    void merge(const Report& other) {
        records.insert(records.end(), other.records.begin(), other.records.end());
    }
    bool ok() const {
        return std::all_of(records.begin(), records.end(),
                           [](const CheckRecord& r) { return r.pass; });
    }
    const CheckRecord* find(const std::string& axiom) const {
        for (const auto& r : records)
            if (r.axiom == axiom) return &r;
        return nullptr;
    }
};

} // namespace mfs

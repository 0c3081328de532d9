#pragma once

// Structured scan reports: JSON-lines records with a trailing summary line,
// or a flattened CSV with a stable column order. Records are kept in input
// order regardless of worker count.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace halfint {

struct ScanReport {
    std::string command;
    nlohmann::json parameters = nlohmann::json::object();
    std::vector<nlohmann::json> records;
    nlohmann::json summary = nlohmann::json::object();
    std::string tool_version = "halfint 1.0.0";
    std::optional<long long> seed;

    std::string to_jsonl() const;
    std::string to_csv() const;
};

// 15-significant-digit real formatting used in all emitted records.
std::string format_real(double v);

int resolve_jobs(int requested);  // 0 = auto: HALFINT_JOBS env, then hardware

// Deterministic parallel map: f(i) for i in [0, count), any worker count.
// f must write only to its own slot of pre-sized output storage.
void parallel_for_ordered(std::size_t count, int jobs, const std::function<void(std::size_t)>& f);

}  // namespace halfint

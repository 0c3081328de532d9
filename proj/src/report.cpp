#include "halfint/report.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

namespace halfint {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

std::string ScanReport::to_jsonl() const {
    std::ostringstream os;
    for (const auto& rec : records) {
        nlohmann::json line = rec;
        os << line.dump() << "\n";
    }
    nlohmann::json tail;
    tail["command"] = command;
    tail["parameters"] = parameters;
    tail["summary"] = summary;
    tail["tool_version"] = tool_version;
    if (seed) tail["seed"] = *seed;
    os << tail.dump() << "\n";
    return os.str();
}

namespace {

void flatten(const nlohmann::json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_string()) {
        out.emplace_back(prefix, j.get<std::string>());
    } else {
        out.emplace_back(prefix, j.dump());
    }
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += "\"\"";
        else q += c;
    }
    return q + "\"";
}

}  // namespace

std::string ScanReport::to_csv() const {
    // Stable column order: first-seen order across records.
    std::vector<std::string> columns;
    std::set<std::string> seen;
    std::vector<std::vector<std::pair<std::string, std::string>>> rows;
    for (const auto& rec : records) {
        std::vector<std::pair<std::string, std::string>> row;
        flatten(rec, "", row);
        for (auto& [k, v] : row) {
            if (seen.insert(k).second) columns.push_back(k);
        }
        rows.push_back(std::move(row));
    }
    std::ostringstream os;
    for (size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_escape(columns[i]);
    os << "\n";
    for (auto& row : rows) {
        for (size_t i = 0; i < columns.size(); ++i) {
            std::string val;
            for (auto& [k, v] : row)
                if (k == columns[i]) {
                    val = v;
                    break;
                }
            os << (i ? "," : "") << csv_escape(val);
        }
        os << "\n";
    }
    return os.str();
}

int resolve_jobs(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("HALFINT_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

void parallel_for_ordered(std::size_t count, int jobs, const std::function<void(std::size_t)>& f) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    int workers = std::min<std::size_t>(jobs, count);
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&]() {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) f(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace halfint

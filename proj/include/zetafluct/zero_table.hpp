#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetafluct/predictor.hpp"

namespace zetafluct {

// Ordinates of critical-line zeros, 1-based and dense: zeros[i] is gamma_{i+1}.
// Immutable after construction; safe to share across threads.
struct ZeroTable {
    enum class Source { computed, ingested };

    std::vector<double> zeros;
    Source source = Source::computed;
    double max_height = 0.0;  // table is complete below this ordinate

    std::int64_t size() const { return static_cast<std::int64_t>(zeros.size()); }

    /// gamma_k, 1-based.
    double gamma(std::int64_t k) const {
        if (k < 1 || k > size()) throw std::out_of_range("ZeroTable::gamma: index " + std::to_string(k));
        return zeros[static_cast<std::size_t>(k - 1)];
    }
};

/// Parse a zero table: one ascending decimal ordinate per line, '#' comments.
inline ZeroTable ingest_table(const std::string& path, std::int64_t limit) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("ingest_table: cannot open " + path);
    ZeroTable table;
    table.source = ZeroTable::Source::ingested;
    std::string line;
    std::int64_t lineno = 0;
    while (static_cast<std::int64_t>(table.zeros.size()) < limit && std::getline(in, line)) {
        ++lineno;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        double v = 0.0;
        try {
            v = std::stod(line.substr(pos));
        } catch (const std::exception&) {
            throw std::runtime_error("ingest_table: parse error at " + path + ":" +
                                     std::to_string(lineno));
        }
        if (!(v > 0.0))
            throw std::runtime_error("ingest_table: non-positive ordinate at line " +
                                     std::to_string(lineno));
        if (!table.zeros.empty() && v < table.zeros.back())
            throw std::runtime_error("ingest_table: monotonicity violation at index " +
                                     std::to_string(table.zeros.size() + 1));
        table.zeros.push_back(v);
    }
    if (table.zeros.empty()) throw std::runtime_error("ingest_table: no zeros in " + path);
    table.max_height = table.zeros.back();
    return table;
}

/// Write in the same format ingest_table reads, so caches round-trip.
inline void save_table(const ZeroTable& table, const std::string& path) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_table: cannot write " + path);
    char buf[64];
    for (double z : table.zeros) {
        std::snprintf(buf, sizeof buf, "%.12f\n", z);
        out << buf;
    }
}

struct VerifyCountResult {
    std::int64_t discrepancy = 0;  // N(T) - round(main_term(T, 7/8))
    bool suspect = false;          // |discrepancy| > 3
};

/// Consistency of the table against the smooth count at height T.
inline VerifyCountResult verify_count(const ZeroTable& table, double T) {
    if (T > table.max_height)
        throw std::domain_error("verify_count: T exceeds table max height");
    // strict count below T; a half-counted boundary zero cannot change the
    // rounded discrepancy by more than the S(T) noise this check tolerates
    const auto it = std::lower_bound(table.zeros.begin(), table.zeros.end(), T);
    const std::int64_t n = it - table.zeros.begin();
    const double m = main_term(T, kConstZeroGrid);
    VerifyCountResult r;
    r.discrepancy = n - std::llround(m);
    r.suspect = std::llabs(r.discrepancy) > 3;
    return r;
}

}  // namespace zetafluct

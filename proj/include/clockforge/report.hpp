#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace clockforge {

inline const char* version() { return "1.0.0"; }

// FNV-1a over the canonical config string; stable across platforms.
inline std::uint64_t config_hash(const std::string& config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : config) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// CSV with a reproducibility header.  Every emitted file carries the tool
// version, the config hash, and the seed; the generated-at line is the only
// non-deterministic field and is marked so downstream diffs can strip it.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& config, std::uint64_t seed,
              const std::vector<std::string>& columns, const std::string& timestamp)
        : out_(path) {
        if (!out_) throw std::invalid_argument("CsvWriter: cannot open " + path);
        out_ << "# clockforge " << version() << "\n";
        std::ostringstream hash;
        hash << std::hex << std::setw(16) << std::setfill('0') << config_hash(config);
        out_ << "# config=0x" << hash.str() << " seed=" << seed << "\n";
        out_ << "# generated=" << timestamp << "\n";
        for (size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
        out_ << "\n";
        out_ << std::setprecision(17);
    }

    void row(const std::vector<double>& values) {
        for (size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << values[i];
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

}  // namespace clockforge

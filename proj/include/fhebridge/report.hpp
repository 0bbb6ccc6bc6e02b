// Benchmark report records: stable 13-field schema, JSON/CSV serialization,
// and the FNV-1a output digest used for cross-run comparison.
#pragma once

#include <iomanip>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "fhebridge/backend.hpp"

namespace fhebridge {

inline std::uint64_t fnv1a64(const std::vector<std::uint64_t>& values) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t v : values) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

inline std::string digest_string(std::uint64_t h) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

struct BenchRecord {
    std::string benchmark;
    std::string mode;
    int bits = 0;
    std::uint64_t t = 0;
    std::size_t slots = 1;
    std::string backend;
    std::uint64_t ct_adds = 0;
    std::uint64_t ct_mults = 0;
    std::uint64_t pt_ops = 0;
    int mult_depth = 0;
    double wall_ms = 0;
    double amortized_ms = 0;
    std::string output_digest;
    std::optional<std::string> error;  // present only for failed runs
};

inline nlohmann::ordered_json to_json(const BenchRecord& r) {
    nlohmann::ordered_json j{{"benchmark", r.benchmark},
                             {"mode", r.mode},
                             {"bits", r.bits},
                             {"t", r.t},
                             {"slots", r.slots},
                             {"backend", r.backend},
                             {"ct_adds", r.ct_adds},
                             {"ct_mults", r.ct_mults},
                             {"pt_ops", r.pt_ops},
                             {"mult_depth", r.mult_depth},
                             {"wall_ms", r.wall_ms},
                             {"amortized_ms", r.amortized_ms},
                             {"output_digest", r.output_digest}};
    if (r.error) j["error"] = *r.error;
    return j;
}

inline const char* csv_header() {
    return "benchmark,mode,bits,t,slots,backend,ct_adds,ct_mults,pt_ops,mult_depth,"
           "wall_ms,amortized_ms,output_digest";
}

inline std::string to_csv_row(const BenchRecord& r) {
    std::ostringstream os;
    os << r.benchmark << ',' << r.mode << ',' << r.bits << ',' << r.t << ',' << r.slots << ','
       << r.backend << ',' << r.ct_adds << ',' << r.ct_mults << ',' << r.pt_ops << ','
       << r.mult_depth << ',' << r.wall_ms << ',' << r.amortized_ms << ',' << r.output_digest;
    return os.str();
}

}  // namespace fhebridge

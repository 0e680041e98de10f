#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fraudsys/puzzle.hpp"

namespace fraudsys {

// Floor below which hashrate measurements are ignored.
constexpr double kDefaultEtaMinHps = 1000.0;

struct DeviceProfile {
    std::string model_name;
    std::string cpu_class;
    double hashrate_hps = 0;
};

// Hashrate profiling table for known device types. Lookup prefers an
// exact model match, then the median of the matching cpu class, then the
// table median.
class ProfileTable {
public:
    // The six profiled devices shipped with the service.
    static ProfileTable builtin_defaults();

    // CSV with header model_name,cpu_class,hashrate_hps.
    static ProfileTable load_csv(std::istream& in);
    static ProfileTable load_csv_file(const std::filesystem::path& path);
    std::string to_csv() const;

    void add(DeviceProfile p);
    bool empty() const { return rows_.empty(); }
    const std::vector<DeviceProfile>& rows() const { return rows_; }

    double initial_hashrate(const std::string& model_name,
                            const std::string& cpu_class) const;

private:
    std::vector<DeviceProfile> rows_;
};

struct DeviceRecord {
    std::string device_id;
    double hashrate_hps = 0;
    int64_t last_updated_ms = 0;
};

struct HashrateUpdate {
    double hashrate_hps = 0; // new stored value
    double measured_hps = 0; // 2*q*difficulty / solve_time; 0 when invalid
    bool applied = false;
};

// Ratchet-up correction: the measured rate eta' = 2*q*delta/tau' replaces
// the stored value only when it is higher and at least eta_min. Slow
// solves (possibly deliberate waiting) never lower the estimate, and a
// non-positive solve time is a clock anomaly that changes nothing.
HashrateUpdate correct_hashrate(const DeviceRecord& rec, const Difficulty& d, uint32_t q,
                                double solve_time_s, double eta_min = kDefaultEtaMinHps);

struct BenchResult {
    double hashes_per_s = 0;
    uint64_t hashes = 0;
    double elapsed_s = 0;
    std::string kernel;
};

// Measures local double-SHA-256 throughput over roughly the given window.
BenchResult bench_double_hash(double seconds, const Sha256dKernel& kernel);

} // namespace fraudsys

#include "fraudsys/hashrate.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fraudsys {

ProfileTable ProfileTable::builtin_defaults() {
    ProfileTable t;
    t.add({"Nexus 4", "phone", 6.53e3});
    t.add({"Nexus 5", "phone", 13.26e3});
    t.add({"LG Leon LTE", "phone", 10.1e3});
    t.add({"NVS 295", "gpu", 1.7e6});
    t.add({"Server", "server", 80e6});
    t.add({"AntMiner", "asic", 4.72e12});
    return t;
}

void ProfileTable::add(DeviceProfile p) {
    if (!(p.hashrate_hps > 0)) throw std::invalid_argument("profile hashrate must be positive");
    rows_.push_back(std::move(p));
}

static std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

ProfileTable ProfileTable::load_csv(std::istream& in) {
    ProfileTable t;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.starts_with("model_name")) continue; // header
        }
        std::istringstream row(line);
        std::string model, cls, rate;
        if (!std::getline(row, model, ',') || !std::getline(row, cls, ',') ||
            !std::getline(row, rate)) {
            throw std::runtime_error("malformed profile row: " + line);
        }
        t.add({trim(model), trim(cls), std::stod(trim(rate))});
    }
    return t;
}

ProfileTable ProfileTable::load_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return load_csv(in);
}

std::string ProfileTable::to_csv() const {
    std::ostringstream out;
    out << "model_name,cpu_class,hashrate_hps\n";
    for (const auto& r : rows_) {
        out << r.model_name << ',' << r.cpu_class << ',' << r.hashrate_hps << '\n';
    }
    return out.str();
}

static double median_rate(std::vector<double> rates) {
    std::sort(rates.begin(), rates.end());
    size_t n = rates.size();
    return n % 2 ? rates[n / 2] : (rates[n / 2 - 1] + rates[n / 2]) / 2.0;
}

double ProfileTable::initial_hashrate(const std::string& model_name,
                                      const std::string& cpu_class) const {
    if (rows_.empty()) throw std::logic_error("profile table is empty");
    for (const auto& r : rows_) {
        if (r.model_name == model_name) return r.hashrate_hps;
    }
    std::vector<double> class_rates;
    for (const auto& r : rows_) {
        if (r.cpu_class == cpu_class) class_rates.push_back(r.hashrate_hps);
    }
    if (!class_rates.empty()) return median_rate(std::move(class_rates));
    std::vector<double> all;
    for (const auto& r : rows_) all.push_back(r.hashrate_hps);
    return median_rate(std::move(all));
}

HashrateUpdate correct_hashrate(const DeviceRecord& rec, const Difficulty& d, uint32_t q,
                                double solve_time_s, double eta_min) {
    HashrateUpdate u;
    u.hashrate_hps = rec.hashrate_hps;
    if (!(solve_time_s > 0)) return u; // clock anomaly, no update
    u.measured_hps = 2.0 * q * d.value.to_double() / solve_time_s;
    if (u.measured_hps >= eta_min && u.measured_hps > rec.hashrate_hps) {
        u.hashrate_hps = u.measured_hps;
        u.applied = true;
    }
    return u;
}

BenchResult bench_double_hash(double seconds, const Sha256dKernel& kernel) {
    if (!(seconds > 0)) throw std::invalid_argument("bench window must be positive");
    const size_t batch = std::max<size_t>(kernel.lanes, 8) * 64;
    std::vector<uint8_t> msgs(batch * 64);
    std::vector<uint8_t> digests(batch * 32);
    for (size_t i = 0; i < msgs.size(); ++i) msgs[i] = static_cast<uint8_t>(i * 131);

    BenchResult r;
    r.kernel = kernel.name;
    auto start = std::chrono::steady_clock::now();
    auto stop_at = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                               std::chrono::duration<double>(seconds));
    uint64_t counter = 0;
    while (std::chrono::steady_clock::now() < stop_at) {
        // Vary the messages so the loop cannot be folded.
        std::memcpy(msgs.data(), &counter, sizeof(counter));
        kernel.sha256d64(digests.data(), msgs.data(), batch);
        r.hashes += batch;
        ++counter;
    }
    r.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.hashes_per_s = static_cast<double>(r.hashes) / r.elapsed_s;
    return r;
}

} // namespace fraudsys

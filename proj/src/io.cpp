#include "rsedge/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rsedge {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_batch_csv(const std::filesystem::path& file, const EdgeSampleBatch& batch) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + file.string());
    out << "value\n";
    for (double v : batch.values) out << format_double(v) << "\n";
}

void write_batch_sidecar(const std::filesystem::path& file, const EdgeSampleBatch& batch) {
    nlohmann::json j;
    j["n"] = batch.n;
    j["exponent_c"] = batch.exponent_c;
    j["ensemble_tag"] = batch.ensemble_tag;
    j["root_seed"] = batch.root_seed;
    j["stream_base"] = batch.stream_base;
    j["count"] = batch.values.size();
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + file.string());
    out << j.dump(2) << "\n";
}

EdgeSampleBatch read_batch_csv(const std::filesystem::path& csv_file,
                               const std::filesystem::path& sidecar_file) {
    EdgeSampleBatch batch;
    {
        std::ifstream in(csv_file);
        if (!in) throw std::runtime_error("cannot open " + csv_file.string());
        std::string line;
        if (!std::getline(in, line) || line != "value")
            throw std::runtime_error("bad batch CSV header in " + csv_file.string());
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            batch.values.push_back(std::stod(line));
        }
    }
    {
        std::ifstream in(sidecar_file);
        if (!in) throw std::runtime_error("cannot open " + sidecar_file.string());
        nlohmann::json j = nlohmann::json::parse(in);
        batch.n = j.at("n").get<std::size_t>();
        batch.exponent_c = j.at("exponent_c").get<double>();
        batch.ensemble_tag = j.at("ensemble_tag").get<std::string>();
        batch.root_seed = j.at("root_seed").get<std::uint64_t>();
        batch.stream_base = j.at("stream_base").get<std::uint64_t>();
    }
    return batch;
}

void write_matrix_csv(const std::filesystem::path& file,
                      const std::vector<std::string>& column_names,
                      const std::vector<std::vector<double>>& rows) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + file.string());
    out << "replica";
    for (const auto& name : column_names) out << "," << name;
    out << "\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out << r;
        for (double v : rows[r]) out << "," << format_double(v);
        out << "\n";
    }
}

} // namespace rsedge

#include "hydro/io.hpp"

#include <json.hpp>

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hydro {

namespace {

constexpr const char* kMagic = "HYDRO1\n";

void require_little_endian() {
    if constexpr (std::endian::native != std::endian::little)
        throw HydroError("snapshot format requires a little-endian host");
}

} // namespace

void write_snapshot(const std::string& path, const SnapshotHeader& h,
                    const std::vector<double>& g1, const std::vector<double>& g2) {
    require_little_endian();
    size_t n = static_cast<size_t>(h.domain.nx) * h.domain.ny * h.domain.nz;
    if (g1.size() != n || g2.size() != n)
        throw HydroError("write_snapshot: field size does not match header");
    nlohmann::json meta{{"h", h.domain.h},
                        {"nx", h.domain.nx},
                        {"ny", h.domain.ny},
                        {"nz", h.domain.nz},
                        {"bc", gamma_d_name(h.domain.bc)},
                        {"time", h.time},
                        {"dt", h.dt},
                        {"layout", "z,y,x"},
                        {"components", {"v1", "v2"}},
                        {"endian", "LE"},
                        {"scalar_bytes", 8}};
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw HydroError("cannot open " + path);
    out << kMagic << meta.dump() << '\n';
    out.write(reinterpret_cast<const char*>(g1.data()), n * sizeof(double));
    out.write(reinterpret_cast<const char*>(g2.data()), n * sizeof(double));
    if (!out) throw HydroError("write_snapshot: short write to " + path);
}

SnapshotHeader read_snapshot(const std::string& path, std::vector<double>& g1,
                             std::vector<double>& g2) {
    require_little_endian();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw HydroError("cannot open " + path);
    std::string magic(7, '\0');
    in.read(magic.data(), 7);
    if (!in || magic != kMagic) throw HydroError("read_snapshot: bad magic in " + path);
    std::string meta_line;
    if (!std::getline(in, meta_line)) throw HydroError("read_snapshot: missing metadata");
    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(meta_line);
    } catch (const nlohmann::json::exception& e) {
        throw HydroError(std::string("read_snapshot: bad metadata: ") + e.what());
    }
    SnapshotHeader h;
    h.domain.h = meta.at("h").get<double>();
    h.domain.nx = meta.at("nx").get<int>();
    h.domain.ny = meta.at("ny").get<int>();
    h.domain.nz = meta.at("nz").get<int>();
    h.domain.bc = parse_gamma_d(meta.at("bc").get<std::string>());
    h.time = meta.at("time").get<double>();
    h.dt = meta.at("dt").get<double>();
    if (meta.at("endian").get<std::string>() != "LE" || meta.at("scalar_bytes").get<int>() != 8)
        throw HydroError("read_snapshot: unsupported scalar encoding");

    size_t n = static_cast<size_t>(h.domain.nx) * h.domain.ny * h.domain.nz;
    g1.resize(n);
    g2.resize(n);
    in.read(reinterpret_cast<char*>(g1.data()), n * sizeof(double));
    in.read(reinterpret_cast<char*>(g2.data()), n * sizeof(double));
    if (!in || in.gcount() != static_cast<std::streamsize>(n * sizeof(double)))
        throw HydroError("read_snapshot: truncated payload in " + path);
    return h;
}

DiagWriter::DiagWriter(std::string path, std::vector<std::string> names)
    : path_(std::move(path)), names_(std::move(names)) {}

void DiagWriter::append(double time, const std::vector<double>& values) {
    if (values.size() != names_.size())
        throw HydroError("DiagWriter: row has " + std::to_string(values.size()) +
                         " values, schema has " + std::to_string(names_.size()));
    std::ostringstream row;
    row.precision(17);
    if (!created_) {
        row << "time";
        for (const auto& n : names_) row << ',' << n;
        row << '\n';
    }
    row << time;
    for (double v : values) row << ',' << v;
    row << '\n';
    std::ofstream out(path_, created_ ? std::ios::app : std::ios::trunc);
    if (!out) throw HydroError("cannot open " + path_);
    out << row.str();
    created_ = true;
}

} // namespace hydro

#pragma once

#include "hydro/domain.hpp"

namespace hydro {

/// Binary snapshot: magic "HYDRO1\n", one JSON metadata line, then the raw
/// little-endian float64 payload, row-major (z slowest, then y, then x),
/// v1 block followed by v2 block.
struct SnapshotHeader {
    DomainSpec domain;
    double time = 0.0;
    double dt = 0.0;
};

void write_snapshot(const std::string& path, const SnapshotHeader& h,
                    const std::vector<double>& g1, const std::vector<double>& g2);
SnapshotHeader read_snapshot(const std::string& path, std::vector<double>& g1,
                             std::vector<double>& g2);

/// CSV diagnostics appender. The first append fixes the schema (header row);
/// later appends must match the column count. One write call per row.
class DiagWriter {
public:
    DiagWriter(std::string path, std::vector<std::string> names);
    void append(double time, const std::vector<double>& values);

private:
    std::string path_;
    std::vector<std::string> names_;
    bool created_ = false;
};

} // namespace hydro

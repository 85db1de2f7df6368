#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "annlab/dataset.hpp"
#include "annlab/types.hpp"

namespace annlab {

// File-format violation carrying the byte offset where parsing failed.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& msg, std::uint64_t offset)
        : std::runtime_error(msg + " (offset " + std::to_string(offset) + ")"), offset_(offset) {}

    std::uint64_t offset() const { return offset_; }

private:
    std::uint64_t offset_;
};

// fvecs: per record a little-endian int32 dimension followed by that many
// little-endian float32 values. All records must agree on the dimension.
VectorDataset read_fvecs(const std::filesystem::path& file, Metric metric = Metric::kL2);
void write_fvecs(const std::filesystem::path& file, const VectorDataset& ds);

// ivecs: same framing with int32 payload (ground-truth ID lists).
struct IntMatrix {
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    std::vector<std::int32_t> data;  // rows * cols

    const std::int32_t* row(std::uint32_t r) const {
        return data.data() + static_cast<std::size_t>(r) * cols;
    }
};

IntMatrix read_ivecs(const std::filesystem::path& file);
void write_ivecs(const std::filesystem::path& file, const IntMatrix& m);

// raw-bin: 8-byte header (uint32 n, uint32 d, little-endian) then n*d floats.
VectorDataset read_raw_bin(const std::filesystem::path& file, Metric metric = Metric::kL2);
void write_raw_bin(const std::filesystem::path& file, const VectorDataset& ds);

// Little-endian scalar helpers shared by every binary format.
void store_le32(std::vector<std::uint8_t>& out, std::uint32_t v);
void store_le64(std::vector<std::uint8_t>& out, std::uint64_t v);
std::uint32_t load_le32(const std::uint8_t* p);
std::uint64_t load_le64(const std::uint8_t* p);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& file);
void write_file_bytes(const std::filesystem::path& file, const std::vector<std::uint8_t>& bytes);

}  // namespace annlab

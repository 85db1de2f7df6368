#include "annlab/io.hpp"

#include <cstring>
#include <fstream>

namespace annlab {

void store_le32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xFF));
}

void store_le64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

std::uint32_t load_le32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint64_t load_le64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + file.string());
    in.seekg(0, std::ios::end);
    const std::streamoff size = in.tellg();
    in.seekg(0, std::ios::beg);
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
    if (size > 0) in.read(reinterpret_cast<char*>(bytes.data()), size);
    if (!in) throw std::runtime_error("failed reading file: " + file.string());
    return bytes;
}

void write_file_bytes(const std::filesystem::path& file, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + file.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("failed writing file: " + file.string());
}

namespace {

float load_le_float(const std::uint8_t* p) {
    const std::uint32_t bits = load_le32(p);
    float f;
    std::memcpy(&f, &bits, sizeof(f));
    return f;
}

void store_le_float(std::vector<std::uint8_t>& out, float f) {
    std::uint32_t bits;
    std::memcpy(&bits, &f, sizeof(bits));
    store_le32(out, bits);
}

// Shared .Xvecs record framing: int32 width then `width` 4-byte payloads.
// Returns the payload bytes record by record via the callback.
template <typename OnRecord>
void parse_xvecs(const std::vector<std::uint8_t>& bytes, const char* what, OnRecord on_record) {
    if (bytes.empty()) {
        throw FormatError(std::string(what) + ": empty file", 0);
    }
    std::uint64_t off = 0;
    std::int64_t width = -1;
    while (off < bytes.size()) {
        if (bytes.size() - off < 4) {
            throw FormatError(std::string(what) + ": truncated record header", off);
        }
        const std::int32_t rec_width = static_cast<std::int32_t>(load_le32(bytes.data() + off));
        if (rec_width <= 0) {
            throw FormatError(std::string(what) + ": non-positive record width " +
                                  std::to_string(rec_width),
                              off);
        }
        if (width >= 0 && rec_width != width) {
            throw FormatError(std::string(what) + ": inconsistent record width " +
                                  std::to_string(rec_width) + " (expected " +
                                  std::to_string(width) + ")",
                              off);
        }
        width = rec_width;
        const std::uint64_t payload_bytes = static_cast<std::uint64_t>(rec_width) * 4;
        if (bytes.size() - off - 4 < payload_bytes) {
            throw FormatError(std::string(what) + ": truncated record payload", off + 4);
        }
        on_record(bytes.data() + off + 4, static_cast<std::uint32_t>(rec_width));
        off += 4 + payload_bytes;
    }
}

}  // namespace

VectorDataset read_fvecs(const std::filesystem::path& file, Metric metric) {
    const auto bytes = read_file_bytes(file);
    std::vector<float> data;
    std::uint32_t d = 0;
    std::uint32_t n = 0;
    parse_xvecs(bytes, "fvecs", [&](const std::uint8_t* payload, std::uint32_t width) {
        d = width;
        for (std::uint32_t j = 0; j < width; ++j) data.push_back(load_le_float(payload + 4 * j));
        ++n;
    });
    return VectorDataset::create(n, d, metric, std::move(data));
}

void write_fvecs(const std::filesystem::path& file, const VectorDataset& ds) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(static_cast<std::size_t>(ds.n) * (4 + 4ull * ds.d));
    for (std::uint32_t i = 0; i < ds.n; ++i) {
        store_le32(bytes, ds.d);
        const float* r = ds.row(i);
        for (std::uint32_t j = 0; j < ds.d; ++j) store_le_float(bytes, r[j]);
    }
    write_file_bytes(file, bytes);
}

IntMatrix read_ivecs(const std::filesystem::path& file) {
    const auto bytes = read_file_bytes(file);
    IntMatrix m;
    parse_xvecs(bytes, "ivecs", [&](const std::uint8_t* payload, std::uint32_t width) {
        m.cols = width;
        for (std::uint32_t j = 0; j < width; ++j) {
            m.data.push_back(static_cast<std::int32_t>(load_le32(payload + 4 * j)));
        }
        ++m.rows;
    });
    return m;
}

void write_ivecs(const std::filesystem::path& file, const IntMatrix& m) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(static_cast<std::size_t>(m.rows) * (4 + 4ull * m.cols));
    for (std::uint32_t r = 0; r < m.rows; ++r) {
        store_le32(bytes, m.cols);
        const std::int32_t* row = m.row(r);
        for (std::uint32_t j = 0; j < m.cols; ++j) {
            store_le32(bytes, static_cast<std::uint32_t>(row[j]));
        }
    }
    write_file_bytes(file, bytes);
}

VectorDataset read_raw_bin(const std::filesystem::path& file, Metric metric) {
    const auto bytes = read_file_bytes(file);
    if (bytes.size() < 8) throw FormatError("raw-bin: truncated header", 0);
    const std::uint32_t n = load_le32(bytes.data());
    const std::uint32_t d = load_le32(bytes.data() + 4);
    const std::uint64_t expected = 8 + static_cast<std::uint64_t>(n) * d * 4;
    if (bytes.size() != expected) {
        throw FormatError("raw-bin: file size " + std::to_string(bytes.size()) +
                              " does not match header (expected " + std::to_string(expected) + ")",
                          8);
    }
    std::vector<float> data;
    data.reserve(static_cast<std::size_t>(n) * d);
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(n) * d; ++i) {
        data.push_back(load_le_float(bytes.data() + 8 + 4 * i));
    }
    return VectorDataset::create(n, d, metric, std::move(data));
}

void write_raw_bin(const std::filesystem::path& file, const VectorDataset& ds) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(8 + static_cast<std::size_t>(ds.n) * ds.d * 4);
    store_le32(bytes, ds.n);
    store_le32(bytes, ds.d);
    for (float f : ds.data) store_le_float(bytes, f);
    write_file_bytes(file, bytes);
}

}  // namespace annlab

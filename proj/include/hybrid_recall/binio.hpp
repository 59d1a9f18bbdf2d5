#pragma once

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hybrid_recall {

/// Little binary stream helpers shared by the index and embedding-store
/// file formats. Native byte order; these artifacts are not meant to be
/// shipped across architectures.
class BinaryWriter {
public:
    explicit BinaryWriter(const std::filesystem::path& path)
        : out_(path, std::ios::binary | std::ios::trunc) {
        if (!out_) throw std::runtime_error("cannot open for writing: " + path.string());
    }

    void magic(const char tag[4]) { out_.write(tag, 4); }
    void u8(std::uint8_t v) { raw(&v, sizeof v); }
    void u32(std::uint32_t v) { raw(&v, sizeof v); }
    void u64(std::uint64_t v) { raw(&v, sizeof v); }
    void f32(float v) { raw(&v, sizeof v); }
    void f64(double v) { raw(&v, sizeof v); }

    void str(const std::string& s) {
        u32(static_cast<std::uint32_t>(s.size()));
        raw(s.data(), s.size());
    }

    void f32_block(const std::vector<float>& v) { raw(v.data(), v.size() * sizeof(float)); }
    void f64_block(const std::vector<double>& v) { raw(v.data(), v.size() * sizeof(double)); }
    void u32_block(const std::vector<std::uint32_t>& v) { raw(v.data(), v.size() * sizeof(std::uint32_t)); }

    void raw(const void* data, std::size_t bytes) {
        out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(bytes));
        if (!out_) throw std::runtime_error("write failed");
    }

private:
    std::ofstream out_;
};

class BinaryReader {
public:
    explicit BinaryReader(const std::filesystem::path& path)
        : in_(path, std::ios::binary), path_(path.string()) {
        if (!in_) throw std::runtime_error("cannot open for reading: " + path_);
    }

    void expect_magic(const char tag[4]) {
        char got[4] = {};
        raw(got, 4);
        if (std::memcmp(got, tag, 4) != 0) {
            throw std::runtime_error("bad file magic in " + path_);
        }
    }

    std::uint8_t u8() { std::uint8_t v; raw(&v, sizeof v); return v; }
    std::uint32_t u32() { std::uint32_t v; raw(&v, sizeof v); return v; }
    std::uint64_t u64() { std::uint64_t v; raw(&v, sizeof v); return v; }
    float f32() { float v; raw(&v, sizeof v); return v; }
    double f64() { double v; raw(&v, sizeof v); return v; }

    std::string str() {
        const std::uint32_t n = u32();
        std::string s(n, '\0');
        raw(s.data(), n);
        return s;
    }

    std::vector<float> f32_block(std::size_t n) {
        std::vector<float> v(n);
        raw(v.data(), n * sizeof(float));
        return v;
    }
    std::vector<double> f64_block(std::size_t n) {
        std::vector<double> v(n);
        raw(v.data(), n * sizeof(double));
        return v;
    }
    std::vector<std::uint32_t> u32_block(std::size_t n) {
        std::vector<std::uint32_t> v(n);
        raw(v.data(), n * sizeof(std::uint32_t));
        return v;
    }

    void raw(void* data, std::size_t bytes) {
        in_.read(static_cast<char*>(data), static_cast<std::streamsize>(bytes));
        if (in_.gcount() != static_cast<std::streamsize>(bytes)) {
            throw std::runtime_error("truncated file: " + path_);
        }
    }

private:
    std::ifstream in_;
    std::string path_;
};

/// FNV-1a digest of a file, used to stamp eval reports with the exact
/// model/index artifacts they were computed from.
inline std::uint64_t file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for hashing: " + path.string());
    std::uint64_t hash = 1469598103934665603ull;
    char buffer[1 << 16];
    while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
        const std::streamsize n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            hash ^= static_cast<unsigned char>(buffer[i]);
            hash *= 1099511628211ull;
        }
    }
    return hash;
}

}  // namespace hybrid_recall

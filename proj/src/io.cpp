#include "gaussmem/io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace gaussmem::io {

namespace {

// All formats are little-endian; this code assumes a little-endian host.
static_assert(sizeof(float) == 4 && sizeof(std::uint32_t) == 4);

class Writer {
  public:
    explicit Writer(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open for writing: " + path);
    }
    void bytes(const void* p, std::size_t n) {
        out_.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
        if (!out_) throw std::runtime_error("write failed");
    }
    void u32(std::uint32_t v) { bytes(&v, 4); }
    void f32(float v) { bytes(&v, 4); }
    void u8(std::uint8_t v) { bytes(&v, 1); }

  private:
    std::ofstream out_;
};

class Reader {
  public:
    Reader(const std::string& path, const char* what) : in_(path, std::ios::binary), what_(what) {
        if (!in_) throw std::runtime_error(std::string("cannot open ") + what + ": " + path);
    }
    void bytes(void* p, std::size_t n) {
        in_.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
        if (in_.gcount() != static_cast<std::streamsize>(n)) {
            throw std::runtime_error(std::string("truncated ") + what_);
        }
    }
    std::uint32_t u32() {
        std::uint32_t v;
        bytes(&v, 4);
        return v;
    }
    float f32() {
        float v;
        bytes(&v, 4);
        return v;
    }
    std::uint8_t u8() {
        std::uint8_t v;
        bytes(&v, 1);
        return v;
    }
    bool at_end() {
        in_.peek();
        return in_.eof();
    }

  private:
    std::ifstream in_;
    const char* what_;
};

}  // namespace

void save_memory(const GaussianMemory& memory, const std::string& path) {
    Writer w(path);
    w.bytes("GMEM", 4);
    w.u32(1);
    w.u32(static_cast<std::uint32_t>(memory.gaussians.size()));
    for (int a = 0; a < 3; ++a) w.f32(static_cast<float>(memory.bounds.min[a]));
    for (int a = 0; a < 3; ++a) w.f32(static_cast<float>(memory.bounds.max[a]));
    w.f32(static_cast<float>(memory.interval));
    for (const SemanticGaussian& g : memory.gaussians) {
        for (int a = 0; a < 3; ++a) w.f32(static_cast<float>(g.mean[a]));
        for (int a = 0; a < 3; ++a) w.f32(static_cast<float>(g.scale_raw[a]));
        w.f32(static_cast<float>(g.rotation.w()));
        w.f32(static_cast<float>(g.rotation.x()));
        w.f32(static_cast<float>(g.rotation.y()));
        w.f32(static_cast<float>(g.rotation.z()));
        w.f32(static_cast<float>(g.opacity_raw));
        for (int c = 0; c < kClassCount; ++c) w.f32(static_cast<float>(g.logits[c]));
        w.u8(g.tag);
    }
}

GaussianMemory load_memory(const std::string& path) {
    Reader r(path, "snapshot");
    char magic[4];
    r.bytes(magic, 4);
    if (std::memcmp(magic, "GMEM", 4) != 0) throw std::runtime_error("not a GMEM file");
    const std::uint32_t version = r.u32();
    if (version != 1) throw std::runtime_error("unsupported GMEM version");
    const std::uint32_t count = r.u32();
    GaussianMemory mem;
    for (int a = 0; a < 3; ++a) mem.bounds.min[a] = r.f32();
    for (int a = 0; a < 3; ++a) mem.bounds.max[a] = r.f32();
    mem.interval = r.f32();
    mem.gaussians.resize(count);
    for (SemanticGaussian& g : mem.gaussians) {
        for (int a = 0; a < 3; ++a) g.mean[a] = r.f32();
        for (int a = 0; a < 3; ++a) g.scale_raw[a] = r.f32();
        const float qw = r.f32(), qx = r.f32(), qy = r.f32(), qz = r.f32();
        g.rotation = Quatd(qw, qx, qy, qz);
        g.opacity_raw = r.f32();
        for (int c = 0; c < kClassCount; ++c) g.logits[c] = r.f32();
        g.tag = r.u8();
    }
    if (!r.at_end()) throw std::runtime_error("trailing bytes in snapshot");
    return mem;
}

void save_grid(const VoxelGrid& grid, const std::string& path) {
    Writer w(path);
    w.bytes("OCCG", 4);
    w.u32(1);
    for (int a = 0; a < 3; ++a) w.u32(static_cast<std::uint32_t>(grid.geom.dims[a]));
    w.f32(static_cast<float>(grid.geom.voxel_size));
    for (int a = 0; a < 3; ++a) w.f32(static_cast<float>(grid.geom.origin[a]));
    w.bytes(grid.labels.data(), grid.labels.size());
}

VoxelGrid load_grid(const std::string& path) {
    Reader r(path, "grid");
    char magic[4];
    r.bytes(magic, 4);
    if (std::memcmp(magic, "OCCG", 4) != 0) throw std::runtime_error("not an OCCG file");
    const std::uint32_t version = r.u32();
    if (version != 1) throw std::runtime_error("unsupported OCCG version");
    VoxelGrid grid;
    for (int a = 0; a < 3; ++a) grid.geom.dims[a] = static_cast<int>(r.u32());
    grid.geom.voxel_size = r.f32();
    for (int a = 0; a < 3; ++a) grid.geom.origin[a] = r.f32();
    grid.labels.resize(static_cast<std::size_t>(grid.geom.voxel_count()));
    r.bytes(grid.labels.data(), grid.labels.size());
    if (!r.at_end()) throw std::runtime_error("trailing bytes in grid");
    return grid;
}

std::vector<std::uint8_t> pack_bits(const std::vector<std::uint8_t>& mask) {
    std::vector<std::uint8_t> bytes((mask.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) bytes[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
    }
    return bytes;
}

std::vector<std::uint8_t> unpack_bits(const std::vector<std::uint8_t>& bytes, std::size_t count) {
    std::vector<std::uint8_t> mask(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
        mask[i] = (bytes[i / 8] >> (i % 8)) & 1u;
    }
    return mask;
}

void save_mask(const std::vector<std::uint8_t>& mask, const std::string& path) {
    const auto bytes = pack_bits(mask);
    Writer w(path);
    w.bytes(bytes.data(), bytes.size());
}

std::vector<std::uint8_t> load_mask(const std::string& path, std::size_t count) {
    Reader r(path, "mask");
    std::vector<std::uint8_t> bytes((count + 7) / 8);
    r.bytes(bytes.data(), bytes.size());
    return unpack_bits(bytes, count);
}

void save_f32(const std::vector<float>& data, const std::string& path) {
    Writer w(path);
    w.bytes(data.data(), data.size() * sizeof(float));
}

std::vector<float> load_f32(const std::string& path, std::size_t count) {
    Reader r(path, "raster");
    std::vector<float> data(count);
    r.bytes(data.data(), count * sizeof(float));
    return data;
}

void save_u8(const std::vector<std::uint8_t>& data, const std::string& path) {
    Writer w(path);
    w.bytes(data.data(), data.size());
}

std::vector<std::uint8_t> load_u8(const std::string& path, std::size_t count) {
    Reader r(path, "raster");
    std::vector<std::uint8_t> data(count);
    r.bytes(data.data(), count);
    return data;
}

}  // namespace gaussmem::io

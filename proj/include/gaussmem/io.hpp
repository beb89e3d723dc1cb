#pragma once

#include "gaussmem/gaussian.hpp"
#include "gaussmem/splatting.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gaussmem::io {

// GMEM1 snapshot: magic "GMEM", u32 version=1, u32 count, f32 bounds[6]
// (min xyz, max xyz), f32 interval, then per Gaussian 23 f32 (mean, scale_raw,
// rotation wxyz, opacity_raw, 12 logits) and a u8 tag. Little-endian.
void save_memory(const GaussianMemory& memory, const std::string& path);
GaussianMemory load_memory(const std::string& path);

// OCCG1 grid: magic "OCCG", u32 version=1, u32 dims[3], f32 voxel_size,
// f32 origin[3], then X*Y*Z u8 labels in index order x + X*(y + Y*z).
void save_grid(const VoxelGrid& grid, const std::string& path);
VoxelGrid load_grid(const std::string& path);

// Bit-packed boolean mask, LSB-first within bytes, no header.
void save_mask(const std::vector<std::uint8_t>& mask, const std::string& path);
std::vector<std::uint8_t> load_mask(const std::string& path, std::size_t count);

void save_f32(const std::vector<float>& data, const std::string& path);
std::vector<float> load_f32(const std::string& path, std::size_t count);

void save_u8(const std::vector<std::uint8_t>& data, const std::string& path);
std::vector<std::uint8_t> load_u8(const std::string& path, std::size_t count);

std::vector<std::uint8_t> pack_bits(const std::vector<std::uint8_t>& mask);
std::vector<std::uint8_t> unpack_bits(const std::vector<std::uint8_t>& bytes, std::size_t count);

}  // namespace gaussmem::io

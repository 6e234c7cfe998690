#pragma once

// VVL1 grid files. Layout, all little-endian:
//   0  magic "VVL1"
//   4  dtype u8: 1 = float32 intensity, 2 = uint16 labels, 3 = uint8 mask
//   5  dims, 3 x u32
//  17  spacing in mm, 3 x float32
//  29  11 reserved zero bytes
//  40  payload, x-fastest
// Label maps append the name table after the payload: u32 record count, then
// per record u16 label id, u32 byte length, UTF-8 bytes.

#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

#include "voxrg/volume.hpp"

namespace voxrg::vio {

inline constexpr std::size_t kHeaderSize = 40;

enum class Dtype : std::uint8_t { Float32 = 1, Uint16 = 2, Uint8 = 3 };

using Grid = std::variant<Volume, AtlasLabelMap, BinaryMask>;

std::vector<std::uint8_t> encode(const Volume& volume);
std::vector<std::uint8_t> encode(const AtlasLabelMap& atlas);
std::vector<std::uint8_t> encode(const BinaryMask& mask);
std::vector<std::uint8_t> encode(const Grid& grid);

/// Throws BadMagic, BadDtype, BadHeader, TruncatedPayload, BadPayload or NonFiniteData.
Grid decode(std::span<const std::uint8_t> bytes);

void write(const std::filesystem::path& path, const Grid& grid);
Grid read(const std::filesystem::path& path);

/// Typed reads; a file of another kind is BadDtype.
Volume read_volume(const std::filesystem::path& path);
AtlasLabelMap read_atlas(const std::filesystem::path& path);
BinaryMask read_mask(const std::filesystem::path& path);

}  // namespace voxrg::vio

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crbridge/generator.hpp"

namespace crbridge {

enum class GeneratorRole : uint8_t { Image = 0, Depth = 1 };

// Binary checkpoint: "CRW1" magic, u32 version, role byte, config echo,
// per-layer records (name, rank, dims, raw f32 LE values), trailing CRC-32
// over all preceding bytes.
std::vector<uint8_t> encode_checkpoint(const GeneratorWeights<float>& w, GeneratorRole role);
GeneratorWeights<float> decode_checkpoint(const std::vector<uint8_t>& bytes, GeneratorRole* role = nullptr);

void save_checkpoint(const std::string& path, const GeneratorWeights<float>& w, GeneratorRole role);
GeneratorWeights<float> load_checkpoint(const std::string& path, GeneratorRole* role = nullptr);

// Thrown on CRC mismatch or malformed layout.
struct CorruptCheckpoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace crbridge

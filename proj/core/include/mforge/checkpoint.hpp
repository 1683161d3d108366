#pragma once

#include <cstdint>
#include <string>

#include "mforge/discriminator.hpp"
#include "mforge/translator.hpp"

namespace mforge {

/// Binary model checkpoint. Layout, bit-exact across platforms:
///
///   bytes 0..3   magic "GGAN"
///   u32          format version (little-endian)
///   u64          header length in bytes (little-endian)
///   header       UTF-8 JSON: configs, seed, ordered parameter table
///                (name, shape) with names prefixed "translator." /
///                "discriminator."
///   payload      raw little-endian f64 values in table order
///   u64          FNV-1a 64-bit checksum of the payload bytes
struct Checkpoint {
  TranslatorModel translator;
  DiscriminatorModel discriminator;
  std::uint64_t seed = 0;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

void save_checkpoint(const TranslatorModel& translator, const DiscriminatorModel& discriminator,
                     std::uint64_t seed, const std::string& path);

/// Throws FormatError on a bad magic/version/table or truncated file, and
/// ChecksumMismatch when the payload does not match its recorded checksum.
Checkpoint load_checkpoint(const std::string& path);

}  // namespace mforge

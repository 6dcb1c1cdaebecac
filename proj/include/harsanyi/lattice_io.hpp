#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "harsanyi/lattice.hpp"

namespace harsanyi::io {

// Binary layout shared by both lattice files:
//   magic[4] | version u16 LE | n u8 | 2^n x f64 LE in mask order
inline constexpr std::string_view kTableMagic = "MOTB";
inline constexpr std::string_view kInteractionMagic = "HIVB";
inline constexpr std::uint16_t kLatticeFormatVersion = 1;

std::string encode_table(const MaskedOutputTable& table);
std::string encode_interactions(const InteractionVector& iv);

MaskedOutputTable decode_table(std::string_view bytes);
InteractionVector decode_interactions(std::string_view bytes);

/// Debug form: header "mask,value", one row per mask with 17 significant digits.
std::string table_to_csv(const MaskedOutputTable& table);
std::string interactions_to_csv(const InteractionVector& iv);
MaskedOutputTable table_from_csv(std::string_view text);

MaskedOutputTable read_table(const std::filesystem::path& path);
InteractionVector read_interactions(const std::filesystem::path& path);

/// Whole-file helpers used by every reader and writer in the project.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace harsanyi::io

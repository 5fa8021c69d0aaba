#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>

#include "grainstat/image.hpp"

namespace grainstat::pnm {

// Supported netpbm flavors.  PBM bit 1 is ink and is stored as pixel value
// 1; PGM requires maxval 255.  Binary variants are the write default.
enum class Format { pbm_text, pbm_binary, pgm_text, pgm_binary };

using AnyImage = std::variant<BinaryImage, GrayImage>;

AnyImage read_image(std::istream& in, const std::string& source_name);
AnyImage read_image(const std::filesystem::path& path);

void write_image(const BinaryImage& image, std::ostream& out,
                 Format format = Format::pbm_binary);
void write_image(const GrayImage& image, std::ostream& out,
                 Format format = Format::pgm_binary);
void write_image(const BinaryImage& image, const std::filesystem::path& path,
                 Format format = Format::pbm_binary);
void write_image(const GrayImage& image, const std::filesystem::path& path,
                 Format format = Format::pgm_binary);

// Runtime-dispatched variant; rejects format/image mismatches (a gray image
// cannot be written as PBM, nor a binary one as PGM).
void write_image(const AnyImage& image, const std::filesystem::path& path,
                 Format format);

} // namespace grainstat::pnm

#pragma once

#include <string>

#include "semd/types.hpp"

namespace semd {

/// A parsed CSV table: one named column per channel.
struct CsvData {
    std::vector<std::string> header;
    MultiSignal data;
};

/// Read a comma-separated table: first row is the header, every following
/// row holds one double per column ('.' decimal). Throws ParseError with
/// the offending line number on malformed input.
CsvData read_csv(const std::string& path);

/// Write a CSV table with %.17g precision so round-trips are lossless.
/// `header` must have one name per channel.
void write_csv(const std::string& path, const MultiSignal& data,
               const std::vector<std::string>& header);

/// Read a binary PGM ("P5", maxval 255). Throws ParseError with the byte
/// offset on malformed input.
Image read_pgm(const std::string& path);

/// Write a binary PGM. With rescale = true the image's [min, max] range is
/// mapped to 0..255 (for viewing signed modes); otherwise values are
/// rounded and clamped to 0..255.
void write_pgm(const std::string& path, const Image& img, bool rescale = false);

}  // namespace semd

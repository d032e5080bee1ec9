#pragma once

#include <string>

#include "fpd/coupling.hpp"

namespace fpd {

// Touchstone v1 text: option line `# HZ S RI R <z_ref>`, then one block per
// frequency point with the complex entries in row-major matrix order, wrapped
// four real/imaginary pairs per line. Integral frequencies print without a
// decimal point; S entries print with 9 fixed decimals.
std::string touchstone_text(const SParamSweep& sweep);
void write_touchstone(const SParamSweep& sweep, const std::string& path);

// Parser for the same dialect: '!' comments, case-insensitive option tokens,
// frequency units HZ/KHZ/MHZ/GHZ, format RI only. Throws ParseError on a
// malformed or missing option line, inconsistent column counts, or
// non-ascending frequencies.
SParamSweep parse_touchstone(const std::string& text, int nports);

// Port count from a .sNp extension, e.g. "sweep.s4p" -> 4.
int ports_from_touchstone_path(const std::string& path);
SParamSweep read_touchstone(const std::string& path);

// CSV of magnitudes in dB, two decimals, floored at -200 dB. Header
// `freq_hz,S11_db,S21_db,...` runs over all entries, source port major.
std::string csv_text(const SParamSweep& sweep);
void write_csv(const SParamSweep& sweep, const std::string& path);

}  // namespace fpd

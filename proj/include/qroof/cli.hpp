#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qroof/channel.hpp"

namespace qroof {

/// Parses a channel document:
///   {"kind":"general","lambda":[[...],[...],[...]],"t":[...]}
///   {"kind":"axial","alpha":a,"beta":b,"gamma":g}
///   {"kind":"named","name":"depolarizing|phase_damping|amplitude_damping","param":p}
/// Throws ParseError.
QubitMap parse_channel(const std::string& text);

/// `source` is either inline JSON (first non-blank character '{') or a file path.
QubitMap load_channel(const std::string& source);

/// "min:max:step" (inclusive) or a single number. Throws ParseError.
std::vector<double> parse_grid(const std::string& spec);

/// "x,y,z". Throws ParseError.
Vec3 parse_triple(const std::string& spec);

/// 9 significant digits, as used in all printed and CSV values.
std::string format_number(double v);

/// Entry point of the command-line tool. Exit codes: 0 success, 1 numerical failure,
/// 2 bad input or unwritable output, 3 map not positive.
int run_cli(int argc, const char* const argv[], std::ostream& out, std::ostream& err);

}  // namespace qroof

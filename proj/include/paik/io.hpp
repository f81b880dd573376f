#pragma once

// CSV writers. Comma separated, '.' decimal, LF line endings; numbers use the
// shortest representation that round-trips, so output is byte-stable.

#include "paik/noise.hpp"
#include "paik/resonance.hpp"
#include "paik/response.hpp"
#include "paik/spectrum.hpp"
#include "paik/sweep.hpp"

#include <filesystem>
#include <ostream>
#include <string>

namespace paik {

std::string format_number(double value);

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);
void write_waveform_csv(std::ostream& out, const Waveform& waveform);
void write_noise_csv(std::ostream& out, const NoiseBudget& budget);
void write_modes_csv(std::ostream& out, const RadialModeSet& modes);
void write_sweep_csv(std::ostream& out, const SweepResult& result);

/// Nested JSON export of a sweep: axes, normalization and one object per cell.
std::string sweep_to_json(const SweepResult& result);

/// Writes text to path in binary mode (no newline translation).
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace paik

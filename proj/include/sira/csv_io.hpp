#pragma once

// CSV readers and writers. All files carry a header row; reals are printed
// with 17 significant digits.

#include <istream>
#include <ostream>
#include <span>
#include <string>

#include "sira/recon_core.hpp"
#include "sira/signal_model.hpp"

namespace sira::csv {

std::string format_real(double x);

// index,re,im
void write_signal(std::ostream& os, std::span<const Complex> samples);
ComplexVector read_signal(std::istream& is);

// bin,re,im,magnitude
void write_spectrum(std::ostream& os, const Spectrum& spectrum);
Spectrum read_spectrum(std::istream& is);

// threshold,variance,n_detected,positions (positions ';'-separated)
void write_detection(std::ostream& os, const DetectionResult& detection);

// index,value
void write_lut(std::ostream& os);

}  // namespace sira::csv

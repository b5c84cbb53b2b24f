#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "scms/rng.hpp"

namespace scms {

enum class Modulation { Bpsk, QpskGray };

// BiAWGN with BPSK mapping 0 -> +1, 1 -> -1.  QPSK with Gray labeling is two
// independent BPSK dimensions per symbol, so per-bit LLRs are identical; it is
// provided as an explicit mapping for completeness.
struct ChannelSpec {
    double sigma = 1.0;
    Modulation modulation = Modulation::Bpsk;
};

// Noise deviation for Eb/N0 in dB at the given code rate:
// sigma = (2 * rate * 10^(EbN0/10))^(-1/2).
inline double ebno_to_sigma(double ebno_db, double rate) {
    if (!(rate > 0.0) || rate > 1.0) throw std::invalid_argument("ebno_to_sigma: bad rate");
    return 1.0 / std::sqrt(2.0 * rate * std::pow(10.0, ebno_db / 10.0));
}

inline void modulate(std::span<const std::uint8_t> bits, std::span<double> symbols) {
    for (std::size_t i = 0; i < bits.size(); ++i) symbols[i] = bits[i] ? -1.0 : 1.0;
}

// y = x + sigma * z per real dimension (QPSK dimensions are independent, so
// the per-bit arithmetic is the same either way).
inline void transmit_awgn(std::span<const double> symbols, const ChannelSpec& spec, Rng& rng,
                          std::span<double> received) {
    for (std::size_t i = 0; i < symbols.size(); ++i)
        received[i] = symbols[i] + spec.sigma * rng.next_normal();
}

// A-priori LLR gamma = ln P(x=+1|y)/P(x=-1|y) = 2y/sigma^2.
inline void llr_from_received(std::span<const double> received, const ChannelSpec& spec,
                              std::span<double> gamma) {
    const double scale = 2.0 / (spec.sigma * spec.sigma);
    for (std::size_t i = 0; i < received.size(); ++i) gamma[i] = scale * received[i];
}

// Hot path for all-zero-codeword simulation: gamma for frame index `frame` of
// stream `seed`, one call covering modulate + AWGN + LLR.
inline void all_zero_llrs(int n, const ChannelSpec& spec, std::uint64_t seed, std::uint64_t frame,
                          std::span<double> gamma) {
    Rng rng = Rng::for_frame(seed, frame);
    const double scale = 2.0 / (spec.sigma * spec.sigma);
    for (int i = 0; i < n; ++i) gamma[i] = scale * (1.0 + spec.sigma * rng.next_normal());
}

}  // namespace scms

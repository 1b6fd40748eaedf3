#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qnetcap/channels.hpp"

namespace qnetcap::qkd {

inline constexpr double kSpeedOfLight = 299'792'458.0;   // m/s
inline constexpr double kPlanck = 6.626'070'15e-34;      // J s

/// Transmitted (co-propagating) or locally generated local oscillator.
enum class LoScheme { Transmitted, Local };

enum class Detection { Homodyne = 1, Heterodyne = 2 };

/// Coherent-detection receiver parameters. Defaults are the fibre setup
/// values commonly quoted for CV-QKD (800 nm, 100 MHz, 6 pW/sqrt(Hz), ...).
struct QkdSetup {
    double wavelength_m = 800e-9;
    double tau_eff = 0.8;
    Detection detection = Detection::Heterodyne;
    double bandwidth_hz = 1e8;
    double nbar_b = 0.002;
    double nep = 6e-12;            // W / sqrt(Hz)
    double lo_power_w = 0.1;
    double linewidth_hz = 1600.0;
    double clock_hz = 5e6;
    double lo_pulse_s = 1e-8;
    double signal_pulse_s = 1e-8;  // carried for completeness, unused by the noise model
    double modulation = 10.0;
    LoScheme scheme = LoScheme::Local;

    /// Optical frequency c / lambda.
    double frequency() const { return kSpeedOfLight / wavelength_m; }

    /// Throws DomainError on non-physical parameters.
    void validate() const;
};

/// Phase noise from reconstructing a local LO: pi (mu - 1) l_W / C.
double theta_ph(const QkdSetup& setup);

/// Electronic noise in shot-noise units for a given LO power at the detector.
double theta_el(const QkdSetup& setup, double lo_power_at_detector);

/// Excess photons at the receiver for a link of transmissivity eta.
/// LLO: eta tau_eff theta_ph + theta_el(P_LO);
/// TLO: theta_el at the attenuated LO power eta tau_eff P_LO.
double receiver_noise(const QkdSetup& setup, double eta_channel);

/// Receiving node for a link of transmissivity eta: detection loss tau_eff
/// with the scheme's receiver noise, ideal sending side.
NodeSpec receiver_node(const QkdSetup& setup, double eta_channel, std::string id = "receiver");

/// Transmissivity at which TLO and LLO receiver noise coincide; below it the
/// TLO is the noisier scheme.
double crossover_transmissivity(const QkdSetup& setup);

/// Named presets: "table1-{homodyne,heterodyne}-{llo,tlo}".
QkdSetup preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace qnetcap::qkd

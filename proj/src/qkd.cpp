#include "qnetcap/qkd.hpp"

#include <cmath>
#include <numbers>

#include "qnetcap/errors.hpp"

namespace qnetcap::qkd {

void QkdSetup::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be positive");
    };
    auto non_negative = [](double v, const char* name) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw DomainError(std::string(name) + " must be non-negative");
        }
    };
    positive(wavelength_m, "wavelength");
    positive(bandwidth_hz, "detector bandwidth");
    positive(lo_power_w, "LO power");
    positive(clock_hz, "clock rate");
    positive(lo_pulse_s, "LO pulse duration");
    non_negative(nep, "noise equivalent power");
    non_negative(linewidth_hz, "linewidth");
    non_negative(nbar_b, "channel noise");
    if (!(tau_eff > 0.0 && tau_eff <= 1.0)) throw DomainError("detector efficiency must lie in (0, 1]");
    if (!(modulation >= 1.0)) throw DomainError("modulation must be at least 1");
    if (detection != Detection::Homodyne && detection != Detection::Heterodyne) {
        throw DomainError("detector shot-noise factor must be 1 or 2");
    }
}

double theta_ph(const QkdSetup& setup) {
    setup.validate();
    return std::numbers::pi * (setup.modulation - 1.0) * setup.linewidth_hz / setup.clock_hz;
}

double theta_el(const QkdSetup& setup, double lo_power_at_detector) {
    setup.validate();
    if (!(lo_power_at_detector > 0.0)) throw DomainError("LO power at the detector must be positive");
    const double shot = static_cast<double>(static_cast<int>(setup.detection));
    return shot * setup.nep * setup.nep * setup.bandwidth_hz * setup.lo_pulse_s /
           (2.0 * kPlanck * setup.frequency() * lo_power_at_detector);
}

double receiver_noise(const QkdSetup& setup, double eta_channel) {
    if (!(eta_channel >= 0.0 && eta_channel <= 1.0)) {
        throw DomainError("channel transmissivity must lie in [0, 1]");
    }
    if (setup.scheme == LoScheme::Local) {
        return eta_channel * setup.tau_eff * theta_ph(setup) + theta_el(setup, setup.lo_power_w);
    }
    if (eta_channel == 0.0) throw DomainError("TLO receiver noise diverges at zero transmissivity");
    return theta_el(setup, eta_channel * setup.tau_eff * setup.lo_power_w);
}

NodeSpec receiver_node(const QkdSetup& setup, double eta_channel, std::string id) {
    NodeSpec node;
    node.id = std::move(id);
    node.recv = ChannelSpec::thermal_loss(setup.tau_eff, receiver_noise(setup, eta_channel));
    node.send = ChannelSpec::identity();
    return node;
}

double crossover_transmissivity(const QkdSetup& setup) {
    // With x = eta tau_eff: theta_el / x = x theta_ph + theta_el.
    const double ph = theta_ph(setup);
    const double el = theta_el(setup, setup.lo_power_w);
    if (ph == 0.0) return 1.0 / setup.tau_eff;
    const double x = (-el + std::sqrt(el * el + 4.0 * ph * el)) / (2.0 * ph);
    return x / setup.tau_eff;
}

QkdSetup preset(std::string_view name) {
    QkdSetup setup;
    if (name == "table1-heterodyne-llo") return setup;
    if (name == "table1-heterodyne-tlo") {
        setup.scheme = LoScheme::Transmitted;
        return setup;
    }
    if (name == "table1-homodyne-llo") {
        setup.detection = Detection::Homodyne;
        return setup;
    }
    if (name == "table1-homodyne-tlo") {
        setup.detection = Detection::Homodyne;
        setup.scheme = LoScheme::Transmitted;
        return setup;
    }
    throw NotFound("unknown QKD preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
    return {"table1-heterodyne-llo", "table1-heterodyne-tlo", "table1-homodyne-llo",
            "table1-homodyne-tlo"};
}

}  // namespace qnetcap::qkd

// Achievable-rate sweeps over an SNR grid: the experiment runner behind the
// command line tool and the acceptance checks.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pas4d/pas_mapper.hpp"
#include "pas4d/rates.hpp"

namespace pas4d {

struct SnrGrid {
    double start_db = 0.0;
    double stop_db = 20.0;
    double step_db = 1.0;

    std::vector<double> points() const;
};

struct SweepModeSpec {
    PasMode mode;
    MetricKind metric = MetricKind::Bmd1D;
    bool metric_overridden = false;
    bool nu_auto = false;  // PAS-nD-1D: pick nu per SNR by maximizing the oracle rate
};

// Default decoding metric of a scheme: 4D schemes demap at their dimension,
// everything else per real dimension.
MetricKind default_metric(Scheme scheme);

struct ExperimentConfig {
    std::vector<SweepModeSpec> modes;
    SnrGrid snr;
    std::size_t samples = 100000;
    std::uint64_t seed = 1;
    bool oracle = false;
    std::string out = "sweep.csv";
    int threads = 0;  // 0 = hardware concurrency

    void validate() const;
};

struct SweepRow {
    std::string scheme;
    int M = 0;
    double k_or_nu = 0.0;
    double snr_db = 0.0;
    double rate_bits_4d = 0.0;
    double rate_bpqs = 0.0;
    double stderr_bits = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

// The constellation a mode transmits. PAS-nD-1D uses the given nu (the
// nu_auto policy is resolved by the runner before calling this).
ShapedSource mode_source(const PasMode& mode);

// nu maximizing the deterministic BMD-1D rate oracle at this SNR.
double optimize_nu(int M, const SnrSpec& snr);

// Runs every (mode, snr) cell; deterministic in the config regardless of the
// thread count. Rows come out mode-major, then one capacity row per SNR.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config);

// Header plus fixed-format rows: dB with two decimals, everything else with
// six significant digits. Byte-identical for identical configs.
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os);

}  // namespace pas4d

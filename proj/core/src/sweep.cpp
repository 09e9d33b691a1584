#include "pas4d/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "pas4d/ccdm.hpp"
#include "pas4d/channel.hpp"
#include "pas4d/lut_dm.hpp"
#include "pas4d/random.hpp"

namespace pas4d {

std::vector<double> SnrGrid::points() const {
    if (!(step_db > 0.0)) throw std::invalid_argument("SnrGrid: step must be positive");
    if (stop_db < start_db) throw std::invalid_argument("SnrGrid: stop below start");
    std::vector<double> out;
    const int count = static_cast<int>(std::floor((stop_db - start_db) / step_db + 1e-9)) + 1;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(start_db + i * step_db);
    return out;
}

MetricKind default_metric(Scheme scheme) {
    switch (scheme) {
        case Scheme::Pas4D4D: return MetricKind::Bmd4D;
        case Scheme::Pas4D2D: return MetricKind::Bmd2D;
        case Scheme::PasND1D: return MetricKind::Bmd1D;
        case Scheme::Uniform: return MetricKind::Bmd1D;
    }
    return MetricKind::Bmd1D;
}

void ExperimentConfig::validate() const {
    if (modes.empty()) throw std::invalid_argument("sweep config: no modes");
    if (samples < 1000) throw std::invalid_argument("sweep config: need at least 1000 samples");
    snr.points();  // validates the grid
}

ShapedSource mode_source(const PasMode& mode) {
    switch (mode.scheme) {
        case Scheme::Pas4D4D:
        case Scheme::Pas4D2D:
            return lut_source(build_lut(build_ask(mode.M), mode.k));
        case Scheme::PasND1D:
            return mb_product_source(build_ask(mode.M), mode.nu);
        case Scheme::Uniform:
            return uniform_product_source(AskAlphabet::grid(mode.M));
    }
    throw std::invalid_argument("mode_source: unknown scheme");
}

double optimize_nu(int M, const SnrSpec& snr) {
    const AskAlphabet ask = build_ask(M);
    const auto rate_at = [&](double nu) {
        ShapedSource src = mb_product_source(ask, nu);
        normalize(src);
        return exact_rate_oracle(src, snr.sigma2, MetricKind::Bmd1D);
    };
    // Golden-section maximization; the oracle rate is unimodal in nu.
    constexpr double kInvPhi = 0.6180339887498949;
    double lo = 0.0, hi = 1.0;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = rate_at(x1), f2 = rate_at(x2);
    for (int it = 0; it < 48; ++it) {
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = rate_at(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = rate_at(x2);
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

SweepRow run_cell(const SweepModeSpec& spec, double snr_db, std::size_t samples,
                  std::uint64_t master_seed, std::size_t mode_index, std::size_t snr_index) {
    const SnrSpec snr = SnrSpec::from_db(snr_db);

    PasMode mode = spec.mode;
    if (spec.nu_auto) mode.nu = optimize_nu(mode.M, snr);

    ShapedSource source = mode_source(mode);
    normalize(source);
    const DecodingMetric metric(spec.metric, source, snr.sigma2);

    const std::uint64_t seed = cell_seed(master_seed, mode_index, snr_index);
    const SymbolStream xs = draw_symbols(source, samples, seed);
    const ReceiveStream ys = add_noise(source, xs, snr, mix_seed(seed + 1));
    const RateEstimate est = achievable_rate(metric, xs, ys);

    SweepRow row;
    row.scheme = scheme_name(mode.scheme);
    row.M = mode.M;
    row.k_or_nu = (mode.scheme == Scheme::Pas4D4D || mode.scheme == Scheme::Pas4D2D)
                      ? static_cast<double>(mode.k)
                      : mode.nu;
    row.snr_db = snr_db;
    row.rate_bits_4d = est.bits_per_4d;
    row.rate_bpqs = est.bpqs;
    row.stderr_bits = est.stderr_bits_4d;
    row.samples = samples;
    row.seed = seed;
    return row;
}

SweepRow oracle_row(const SweepModeSpec& spec, const SweepRow& mc_row) {
    const SnrSpec snr = SnrSpec::from_db(mc_row.snr_db);
    PasMode mode = spec.mode;
    if (spec.nu_auto) mode.nu = mc_row.k_or_nu;  // reuse the resolved nu
    ShapedSource source = mode_source(mode);
    normalize(source);

    SweepRow row = mc_row;
    row.scheme += ":oracle";
    row.samples = 0;
    row.seed = 0;
    row.stderr_bits = 0.0;
    const double bits = exact_rate_oracle(source, snr.sigma2, spec.metric);
    row.rate_bits_4d = bits;
    row.rate_bpqs = bits / 2.0;
    return row;
}

bool oracle_feasible(const ShapedSource& source) {
    return source.product_per_dim || source.size() <= 4096;
}

}  // namespace

std::vector<SweepRow> run_sweep(const ExperimentConfig& config) {
    config.validate();
    const std::vector<double> grid = config.snr.points();
    const std::size_t cells = config.modes.size() * grid.size();
    std::vector<SweepRow> data(cells);

    unsigned workers = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, cells));

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error;
    std::mutex error_mutex;

    auto work = [&] {
        for (;;) {
            const std::size_t cell = next.fetch_add(1);
            if (cell >= cells || failed.load()) break;
            const std::size_t mi = cell / grid.size();
            const std::size_t si = cell % grid.size();
            try {
                data[cell] = run_cell(config.modes[mi], grid[si], config.samples, config.seed, mi, si);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                error = e.what();
                failed.store(true);
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) throw std::runtime_error("sweep failed: " + error);

    std::vector<SweepRow> rows;
    rows.reserve(cells * (config.oracle ? 2 : 1) + grid.size());
    for (std::size_t mi = 0; mi < config.modes.size(); ++mi) {
        for (std::size_t si = 0; si < grid.size(); ++si) {
            const SweepRow& mc = data[mi * grid.size() + si];
            rows.push_back(mc);
            if (config.oracle) {
                PasMode mode = config.modes[mi].mode;
                if (config.modes[mi].nu_auto) mode.nu = mc.k_or_nu;
                ShapedSource src = mode_source(mode);
                if (oracle_feasible(src)) {
                    rows.push_back(oracle_row(config.modes[mi], mc));
                }
            }
        }
    }
    for (std::size_t si = 0; si < grid.size(); ++si) {
        SweepRow cap;
        cap.scheme = "capacity";
        cap.snr_db = grid[si];
        cap.rate_bpqs = gaussian_capacity_bpqs(SnrSpec::from_db(grid[si]));
        cap.rate_bits_4d = 2.0 * cap.rate_bpqs;
        rows.push_back(cap);
    }
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
    os << "scheme,M,k_or_nu,snr_db,rate_bits_per_4d,rate_bpqs,stderr,K,seed\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s,%d,%.6g,%.2f,%.6g,%.6g,%.6g,%zu,%llu\n", r.scheme.c_str(),
                      r.M, r.k_or_nu, r.snr_db, r.rate_bits_4d, r.rate_bpqs, r.stderr_bits, r.samples,
                      static_cast<unsigned long long>(r.seed));
        os << buf;
    }
}

}  // namespace pas4d

// pas4d: probabilistic amplitude shaping experiments on the AWGN channel.
//
// Subcommands:
//   sweep      achievable-rate sweep over an SNR grid, CSV output
//   modes      the spectral-efficiency set one FEC supports
//   roundtrip  distribution-matcher encode/decode self checks
//   kurtosis   transmit-law moment comparison
//
// Exit codes: 0 ok, 2 configuration error, 3 runtime check failure,
// 4 unexpected internal failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pas4d/ccdm.hpp"
#include "pas4d/channel.hpp"
#include "pas4d/lut_dm.hpp"
#include "pas4d/random.hpp"
#include "pas4d/sweep.hpp"
#include "sweep_config.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCheckFailed = 3;
constexpr int kExitInternal = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Relative outputs land in $PAS4D_OUT_DIR when it is set.
std::string resolve_output(const std::string& path) {
    const char* dir = std::getenv("PAS4D_OUT_DIR");
    if (!dir || *dir == '\0' || path.empty() || path == "-") return path;
    const std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(dir) / p).string();
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    out << text;
}

struct SweepArgs {
    std::string config_path;
    std::optional<double> snr_start, snr_stop, snr_step;
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> threads;
    bool oracle = false;
    bool print_config = false;
};

int cmd_sweep(const SweepArgs& args) {
    pas4d::ExperimentConfig cfg = pas4d::cli::parse_experiment_config(read_file(args.config_path));
    if (args.snr_start) cfg.snr.start_db = *args.snr_start;
    if (args.snr_stop) cfg.snr.stop_db = *args.snr_stop;
    if (args.snr_step) cfg.snr.step_db = *args.snr_step;
    if (args.samples) cfg.samples = *args.samples;
    if (args.seed) cfg.seed = *args.seed;
    if (args.out) cfg.out = *args.out;
    if (args.threads) cfg.threads = *args.threads;
    if (args.oracle) cfg.oracle = true;
    cfg.validate();

    if (args.print_config) {
        std::cout << pas4d::cli::serialize_experiment_config(cfg);
        return kExitOk;
    }

    const auto rows = pas4d::run_sweep(cfg);
    std::ostringstream csv;
    pas4d::write_sweep_csv(rows, csv);
    const std::string out_path = resolve_output(cfg.out);
    write_text(out_path, csv.str());
    if (out_path != "-") {
        std::printf("wrote %zu rows to %s\n", rows.size(), out_path.c_str());
    }
    return kExitOk;
}

int cmd_modes(int M, const std::string& rc_text, const std::string& csv_path) {
    using namespace pas4d;
    const Rational rc = parse_rational(rc_text);
    const int m_q = 4 * build_ask(M).bits_per_dim - 4;

    std::vector<PasMode> modes;
    for (int k = 1; k <= m_q; ++k) modes.push_back(make_pas4d_mode(Scheme::Pas4D4D, M, k, rc));

    if (!csv_path.empty()) {
        std::ostringstream os;
        write_mode_csv(modes, os);
        write_text(resolve_output(csv_path), os.str());
        if (csv_path != "-") std::printf("wrote %zu modes to %s\n", modes.size(), csv_path.c_str());
        return kExitOk;
    }

    std::printf("PAS modes for M=%d (%d-QAM per 2D), Rc=%s, gamma=%.6g\n", M, M * M, rc.str().c_str(),
                modes.front().gamma);
    std::printf("%4s %12s %14s %10s %12s\n", "k", "lut_entries", "R_tx[bits/4D]", "SE[bpQs]", "DM");
    for (const auto& m : modes) {
        std::printf("%4d %12lld %14.6g %10.4g %12s\n", m.k, 1LL << m.k, m.r_tx_bits_4d, m.se_bpqs,
                    "lut");
    }
    std::printf("\nuniform formats would need per-SE code rates:\n");
    for (double target : {3.0, 4.0, 5.0}) {
        std::printf("  %.1f bpQs:", target);
        for (int bits : {4, 6, 8}) {
            if (target < bits) {
                const auto u = uniform_qam_mode(bits, target);
                std::printf("  %d-QAM Rc=%s", 1 << bits, u.rc.str().c_str());
            }
        }
        std::printf("\n");
    }
    return kExitOk;
}

int cmd_roundtrip_lut(int M, int k, const std::string& dump_path) {
    using namespace pas4d;
    const AskAlphabet ask = build_ask(M);
    const int m_q = 4 * ask.bits_per_dim - 4;
    std::vector<int> ks;
    if (k > 0) {
        ks.push_back(k);
    } else {
        for (int kk = 1; kk <= std::min(m_q, 12); ++kk) ks.push_back(kk);
    }

    bool ok = true;
    for (int kk : ks) {
        const LutDm dm = build_lut(ask, kk);
        std::size_t pass = 0;
        for (std::uint32_t b = 0; b < dm.table.size(); ++b) {
            try {
                if (lut_decode(dm, lut_encode(dm, b)) == b) {
                    ++pass;
                } else {
                    std::printf("k=%d: round trip mismatch at input %u\n", kk, b);
                    ok = false;
                    break;
                }
            } catch (const std::exception& e) {
                std::printf("k=%d: decode failed at input %u: %s\n", kk, b, e.what());
                ok = false;
                break;
            }
        }
        std::printf("lut M=%d k=%d: %zu/%zu pass\n", M, kk, pass, dm.table.size());
        if (!dump_path.empty() && kk == ks.back()) {
            std::ostringstream os;
            write_lut_csv(dm, os);
            write_text(resolve_output(dump_path), os.str());
        }
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_roundtrip_ccdm(int M, int n, double nu, double target_entropy, int blocks,
                       std::uint64_t seed, bool corrupt) {
    using namespace pas4d;
    const AskAlphabet ask = build_ask(M);
    if (target_entropy > 0.0) nu = fit_mb_entropy(ask, target_entropy);
    const Composition comp = quantize_composition(mb_pmf(ask, nu), n);
    const CcdmCodec codec(comp);
    std::printf("ccdm M=%d n=%d nu=%.6g k_cc=%d (%.4f bits/amplitude)\n", M, n, nu,
                codec.input_length(), static_cast<double>(codec.input_length()) / n);

    Rng rng(seed);
    for (int b = 0; b < blocks; ++b) {
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(codec.input_length()));
        for (auto& bit : bits) bit = static_cast<std::uint8_t>(rng.bit());
        std::vector<int> seq;
        try {
            seq = codec.encode(bits);
        } catch (const std::exception& e) {
            std::printf("block %d: encode failed: %s\n", b, e.what());
            return kExitCheckFailed;
        }
        for (std::size_t a = 0; a < comp.counts.size(); ++a) {
            const auto amp = ask.amplitude_at(static_cast<int>(a));
            if (std::count(seq.begin(), seq.end(), amp) != comp.counts[a]) {
                std::printf("block %d: composition violated for amplitude %d\n", b, amp);
                return kExitCheckFailed;
            }
        }
        if (corrupt && b == 0) {
            // flip one amplitude; the decoder must reject the block
            std::vector<int> bad = seq;
            bad[0] = bad[0] == ask.amplitude_at(0) ? ask.amplitude_at(1) : ask.amplitude_at(0);
            try {
                (void)codec.decode(bad);
                std::printf("block %d: injected corruption went undetected\n", b);
                return kExitInternal;
            } catch (const std::domain_error& e) {
                std::printf("block %d: injected corruption detected: %s\n", b, e.what());
                return kExitCheckFailed;
            }
        }
        try {
            if (codec.decode(seq) != bits) {
                std::printf("block %d: decoded bits differ\n", b);
                return kExitCheckFailed;
            }
        } catch (const std::exception& e) {
            std::printf("block %d: decode failed: %s\n", b, e.what());
            return kExitCheckFailed;
        }
    }
    std::printf("ccdm: %d/%d blocks pass, composition verified on every output\n", blocks, blocks);
    return kExitOk;
}

int cmd_kurtosis(const std::string& config_path) {
    using namespace pas4d;
    std::vector<SweepModeSpec> specs;
    if (!config_path.empty()) {
        specs = cli::parse_experiment_config(read_file(config_path)).modes;
    } else {
        for (int M : {2, 4, 8, 16}) {
            SweepModeSpec s;
            s.mode = make_uniform_mode(M);
            specs.push_back(s);
        }
        SweepModeSpec mb;
        mb.mode = make_nd1d_mode(16, fit_mb_entropy(build_ask(16), 2.25), 6000, {13, 16});
        specs.push_back(mb);
        for (int k : {5, 7, 9}) {
            SweepModeSpec s;
            s.mode = make_pas4d_mode(Scheme::Pas4D4D, 16, k, {13, 16});
            specs.push_back(s);
        }
    }

    std::vector<std::pair<double, std::string>> rows;
    for (const auto& spec : specs) {
        const ShapedSource src = mode_source(spec.mode);
        rows.emplace_back(moment_ratio(src), spec.mode.label());
    }
    std::sort(rows.begin(), rows.end());
    std::printf("%-24s %10s\n", "mode", "phi");
    for (const auto& [phi, name] : rows) std::printf("%-24s %10.6g\n", name.c_str(), phi);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"probabilistic amplitude shaping toolbox (4D LUT + CCDM, AWGN rates)"};
    app.require_subcommand(1);

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "run an achievable-rate sweep, emit CSV");
    sweep->add_option("--config", sweep_args.config_path, "JSON experiment config")->required();
    sweep->add_option("--snr-start", sweep_args.snr_start, "override snr.start_db");
    sweep->add_option("--snr-stop", sweep_args.snr_stop, "override snr.stop_db");
    sweep->add_option("--snr-step", sweep_args.snr_step, "override snr.step_db");
    sweep->add_option("--samples", sweep_args.samples, "override sample count");
    sweep->add_option("--seed", sweep_args.seed, "override master seed");
    sweep->add_option("--out", sweep_args.out, "override output path ('-' = stdout)");
    sweep->add_option("--threads", sweep_args.threads, "worker threads (0 = hardware)");
    sweep->add_flag("--oracle", sweep_args.oracle, "add quadrature oracle rows where feasible");
    sweep->add_flag("--print-config", sweep_args.print_config, "print the normalized config and exit");

    int modes_m = 16;
    std::string modes_rc = "13/16";
    std::string modes_csv;
    auto* modes = app.add_subcommand("modes", "list the SE set one FEC supports");
    modes->add_option("--M", modes_m, "ASK points per dimension")->required();
    modes->add_option("--Rc", modes_rc, "FEC code rate, e.g. 13/16")->required();
    modes->add_option("--csv", modes_csv, "write CSV to this path ('-' = stdout)");

    auto* rt = app.add_subcommand("roundtrip", "distribution matcher self checks");
    rt->require_subcommand(1);
    int lut_m = 16, lut_k = 0;
    std::string lut_dump;
    auto* rt_lut = rt->add_subcommand("lut", "exhaustive LUT encode/decode round trip");
    rt_lut->add_option("--M", lut_m, "ASK points per dimension");
    rt_lut->add_option("--k", lut_k, "single k to test (default: all k <= 12)");
    rt_lut->add_option("--dump", lut_dump, "dump the table as CSV");

    int cc_m = 16, cc_n = 6000, cc_blocks = 100;
    double cc_nu = -1.0, cc_h = -1.0;
    std::uint64_t cc_seed = 1;
    bool cc_corrupt = false;
    auto* rt_cc = rt->add_subcommand("ccdm", "randomized CCDM round trip at block length");
    rt_cc->add_option("--M", cc_m, "ASK points per dimension");
    rt_cc->add_option("--n", cc_n, "block length in amplitudes");
    rt_cc->add_option("--nu", cc_nu, "Maxwell-Boltzmann parameter");
    rt_cc->add_option("--target-entropy", cc_h, "fit nu to this amplitude entropy [bits]");
    rt_cc->add_option("--blocks", cc_blocks, "number of random blocks");
    rt_cc->add_option("--seed", cc_seed, "data seed");
    rt_cc->add_flag("--corrupt", cc_corrupt, "inject a corrupted block and expect rejection");

    std::string kurt_config;
    auto* kurt = app.add_subcommand("kurtosis", "higher-order moment indicator per mode");
    kurt->add_option("--config", kurt_config, "take the mode list from this sweep config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (sweep->parsed()) return cmd_sweep(sweep_args);
        if (modes->parsed()) return cmd_modes(modes_m, modes_rc, modes_csv);
        if (rt->parsed()) {
            if (rt_lut->parsed()) return cmd_roundtrip_lut(lut_m, lut_k, lut_dump);
            if (rt_cc->parsed()) {
                if (cc_nu < 0.0 && cc_h < 0.0) cc_h = 2.25;
                return cmd_roundtrip_ccdm(cc_m, cc_n, std::max(cc_nu, 0.0), cc_h, cc_blocks, cc_seed,
                                          cc_corrupt);
            }
        }
        if (kurt->parsed()) return cmd_kurtosis(kurt_config);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitInternal;
    }
    return kExitConfig;
}

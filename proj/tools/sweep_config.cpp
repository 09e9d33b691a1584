#include "sweep_config.hpp"

#include <stdexcept>

#include <json.hpp>

namespace pas4d::cli {

namespace {

using nlohmann::json;

Scheme scheme_from_string(const std::string& s) {
    if (s == "PAS-4D-4D") return Scheme::Pas4D4D;
    if (s == "PAS-4D-2D") return Scheme::Pas4D2D;
    if (s == "PAS-nD-1D") return Scheme::PasND1D;
    if (s == "UNIFORM") return Scheme::Uniform;
    throw std::invalid_argument("unknown scheme '" + s + "'");
}

SweepModeSpec parse_mode(const json& j) {
    SweepModeSpec spec;
    const auto scheme = scheme_from_string(j.at("scheme").get<std::string>());
    const int M = j.at("M").get<int>();
    const Rational rc = j.contains("Rc") ? parse_rational(j.at("Rc").get<std::string>()) : Rational{1, 1};

    switch (scheme) {
        case Scheme::Pas4D4D:
        case Scheme::Pas4D2D:
            spec.mode = make_pas4d_mode(scheme, M, j.at("k").get<int>(), rc);
            break;
        case Scheme::PasND1D: {
            const int n = j.value("n", 6000);
            double nu = 0.0;
            if (j.contains("nu") && j.at("nu").is_string()) {
                if (j.at("nu").get<std::string>() != "auto") {
                    throw std::invalid_argument("mode nu must be a number or \"auto\"");
                }
                spec.nu_auto = true;
            } else if (j.contains("nu")) {
                nu = j.at("nu").get<double>();
            } else {
                spec.nu_auto = true;
            }
            spec.mode = make_nd1d_mode(M, nu, n, rc);
            break;
        }
        case Scheme::Uniform:
            spec.mode = make_uniform_mode(M);
            break;
    }
    spec.metric = default_metric(scheme);
    if (j.contains("metric")) {
        spec.metric = metric_from_name(j.at("metric").get<std::string>());
        spec.metric_overridden = true;
    }
    return spec;
}

json mode_to_json(const SweepModeSpec& spec) {
    json j;
    j["scheme"] = scheme_name(spec.mode.scheme);
    j["M"] = spec.mode.M;
    switch (spec.mode.scheme) {
        case Scheme::Pas4D4D:
        case Scheme::Pas4D2D:
            j["k"] = spec.mode.k;
            j["Rc"] = spec.mode.rc.str();
            break;
        case Scheme::PasND1D:
            j["n"] = spec.mode.n_ccdm;
            j["Rc"] = spec.mode.rc.str();
            if (spec.nu_auto)
                j["nu"] = "auto";
            else
                j["nu"] = spec.mode.nu;
            break;
        case Scheme::Uniform:
            break;
    }
    if (spec.metric_overridden) j["metric"] = metric_name(spec.metric);
    return j;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        ExperimentConfig cfg;
        const json& snr = j.at("snr");
        cfg.snr.start_db = snr.at("start_db").get<double>();
        cfg.snr.stop_db = snr.at("stop_db").get<double>();
        cfg.snr.step_db = snr.at("step_db").get<double>();
        cfg.samples = j.value("samples", std::size_t{100000});
        cfg.seed = j.value("seed", std::uint64_t{1});
        cfg.oracle = j.value("oracle", false);
        cfg.threads = j.value("threads", 0);
        cfg.out = j.value("out", std::string("sweep.csv"));
        for (const json& m : j.at("modes")) cfg.modes.push_back(parse_mode(m));
        cfg.validate();
        return cfg;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config field error: ") + e.what());
    }
}

std::string serialize_experiment_config(const ExperimentConfig& config) {
    json j;
    j["snr"] = {{"start_db", config.snr.start_db},
                {"stop_db", config.snr.stop_db},
                {"step_db", config.snr.step_db}};
    j["samples"] = config.samples;
    j["seed"] = config.seed;
    j["oracle"] = config.oracle;
    j["threads"] = config.threads;
    j["out"] = config.out;
    j["modes"] = json::array();
    for (const auto& m : config.modes) j["modes"].push_back(mode_to_json(m));
    return j.dump(2) + "\n";
}

}  // namespace pas4d::cli

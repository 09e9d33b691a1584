#include "pas4d/rates.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "pas4d/quadrature.hpp"

namespace pas4d {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint32_t pack_levels(const std::array<std::uint8_t, 4>& idx) {
    return (static_cast<std::uint32_t>(idx[0]) << 24) | (static_cast<std::uint32_t>(idx[1]) << 16) |
           (static_cast<std::uint32_t>(idx[2]) << 8) | static_cast<std::uint32_t>(idx[3]);
}

}  // namespace

std::string metric_name(MetricKind kind) {
    switch (kind) {
        case MetricKind::Smd4D: return "SMD-4D";
        case MetricKind::Bmd4D: return "BMD-4D";
        case MetricKind::Bmd2D: return "BMD-2D";
        case MetricKind::Bmd1D: return "BMD-1D";
    }
    return "?";
}

MetricKind metric_from_name(const std::string& name) {
    std::string s;
    for (char c : name)
        if (c != '-' && c != '_') s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "smd4d" || s == "smd") return MetricKind::Smd4D;
    if (s == "bmd4d") return MetricKind::Bmd4D;
    if (s == "bmd2d") return MetricKind::Bmd2D;
    if (s == "bmd1d") return MetricKind::Bmd1D;
    throw std::invalid_argument("unknown decoding metric '" + name + "'");
}

DecodingMetric::DecodingMetric(MetricKind kind, const ShapedSource& source, double sigma2,
                               MetricOptions options)
    : kind_(kind), options_(options), sigma2_(sigma2) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("DecodingMetric: sigma2 must be positive");
    if (std::abs(source.mean_energy_signal() - 2.0) > 1e-9) {
        throw std::invalid_argument("DecodingMetric: source must be normalized to E||x||^2 = 2");
    }
    if (kind != MetricKind::Smd4D &&
        (source.labeling.m != 4 * source.ask.bits_per_dim || source.labeling.label_of_level.empty())) {
        throw std::invalid_argument("DecodingMetric: bit-metric decoding needs a labeled source");
    }
    inv_two_sigma2_log2e_ = 1.0 / (2.0 * sigma2 * std::log(2.0));

    M_ = source.ask.M;
    bits_per_dim_ = source.ask.bits_per_dim;
    scale_ = source.scale;
    entropy_bits_ = source.entropy_bits;
    coords_.resize(static_cast<std::size_t>(M_));
    for (int j = 0; j < M_; ++j) coords_[static_cast<std::size_t>(j)] = scale_ * source.ask.level_at(j);
    sublabel_ = source.labeling.label_of_level;
    if (sublabel_.empty()) sublabel_.assign(static_cast<std::size_t>(M_), 0);

    level_idx_ = source.level_idx;
    pmf_ = source.pmf;
    log2_pmf_.resize(pmf_.size());
    for (std::size_t i = 0; i < pmf_.size(); ++i)
        log2_pmf_[i] = pmf_[i] > 0.0 ? std::log2(pmf_[i]) : -1e30;
    for (int d = 0; d < 4; ++d) {
        marg_[static_cast<std::size_t>(d)] = source.dim_marginal[static_cast<std::size_t>(d)];
        auto& lm = log2_marg_[static_cast<std::size_t>(d)];
        lm.resize(static_cast<std::size_t>(M_));
        for (int j = 0; j < M_; ++j) {
            const double p = marg_[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)];
            lm[static_cast<std::size_t>(j)] = p > 0.0 ? std::log2(p) : -1e30;
        }
    }

    factorized_ = options_.allow_factorized && source.product_per_dim;
    use_pmf_in_sum_ = kind_ == MetricKind::Smd4D && !factorized_;

    if (factorized_) {
        // On a product law every bit metric reduces to its own dimension, so
        // all BMD flavors coincide and evaluate per dimension.
        if (kind_ != MetricKind::Smd4D) {
            total_bits_ = 4 * bits_per_dim_;
            bit_dim_.resize(static_cast<std::size_t>(total_bits_));
            bit_shift_.resize(static_cast<std::size_t>(total_bits_));
            for (int d = 0; d < 4; ++d)
                for (int s = 0; s < bits_per_dim_; ++s) {
                    bit_dim_[static_cast<std::size_t>(d * bits_per_dim_ + s)] = d;
                    bit_shift_[static_cast<std::size_t>(d * bits_per_dim_ + s)] = s;
                }
        }
    } else {
        build_scopes(source);
    }
}

void DecodingMetric::build_scopes(const ShapedSource& source) {
    std::vector<std::vector<int>> partitions;
    switch (kind_) {
        case MetricKind::Smd4D: return;  // no bit metrics
        case MetricKind::Bmd4D: partitions = {{0, 1, 2, 3}}; break;
        case MetricKind::Bmd2D: partitions = {{0, 1}, {2, 3}}; break;
        case MetricKind::Bmd1D: partitions = {{0}, {1}, {2}, {3}}; break;
    }

    int offset = 0;
    for (const auto& dims : partitions) {
        Scope sc;
        sc.ndims = static_cast<int>(dims.size());
        for (int i = 0; i < sc.ndims; ++i) sc.dims[static_cast<std::size_t>(i)] = dims[static_cast<std::size_t>(i)];
        sc.nbits = sc.ndims * bits_per_dim_;
        sc.bit_offset = offset;

        for (int i = 0; i < sc.ndims; ++i)
            for (int s = 0; s < bits_per_dim_; ++s) {
                bit_dim_.push_back(dims[static_cast<std::size_t>(i)]);
                bit_shift_.push_back(s);
            }
        offset += sc.nbits;

        if (sc.ndims == 4) {
            sc.identity = true;
        } else {
            // Deterministic support order: ascending packed level indices.
            std::unordered_map<std::uint32_t, std::uint32_t> index_of;
            std::vector<std::uint32_t> keys;
            sc.point_to_support.resize(level_idx_.size());
            for (std::size_t i = 0; i < level_idx_.size(); ++i) {
                std::uint32_t key = 0;
                for (int d = 0; d < sc.ndims; ++d)
                    key = key * 256u + level_idx_[i][static_cast<std::size_t>(sc.dims[static_cast<std::size_t>(d)])];
                auto [it, inserted] = index_of.try_emplace(key, static_cast<std::uint32_t>(keys.size()));
                if (inserted) keys.push_back(key);
                sc.point_to_support[i] = it->second;
            }
            std::vector<std::uint32_t> order(keys.size());
            for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
            std::sort(order.begin(), order.end(),
                      [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });
            std::vector<std::uint32_t> rank(order.size());
            for (std::uint32_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = pos;

            sc.support_levels.resize(keys.size());
            sc.support_pmf.assign(keys.size(), 0.0);
            for (std::uint32_t old = 0; old < keys.size(); ++old) {
                std::uint32_t key = keys[old];
                std::array<std::uint8_t, 4> lev{};
                for (int d = sc.ndims - 1; d >= 0; --d) {
                    lev[static_cast<std::size_t>(d)] = static_cast<std::uint8_t>(key % 256u);
                    key /= 256u;
                }
                sc.support_levels[rank[old]] = lev;
            }
            for (std::size_t i = 0; i < level_idx_.size(); ++i) {
                sc.point_to_support[i] = rank[sc.point_to_support[i]];
                sc.support_pmf[sc.point_to_support[i]] += source.pmf[i];
            }
        }
        scopes_.push_back(std::move(sc));
    }
    total_bits_ = offset;
}

DecodingMetric::Workspace DecodingMetric::make_workspace() const {
    Workspace ws;
    ws.lt.assign(static_cast<std::size_t>(4 * M_), 0.0);
    ws.lin.assign(static_cast<std::size_t>(4 * M_), 0.0);
    ws.f.assign(static_cast<std::size_t>(4 * M_), 0.0);
    ws.lf.assign(static_cast<std::size_t>(4 * M_), 0.0);
    ws.mass.assign(static_cast<std::size_t>(4 * M_), 0.0);
    ws.q.assign(static_cast<std::size_t>(std::max(total_bits_, 1)), {0.0, 0.0});
    ws.lq.assign(static_cast<std::size_t>(std::max(total_bits_, 1)), {0.0, 0.0});
    return ws;
}

void DecodingMetric::prepare(const std::array<double, 4>& y, Workspace& ws) const {
    const int M = M_;
    // Per-dimension log2 likelihood tables, shifted so each dimension's
    // maximum is zero before exponentiation.
    for (int d = 0; d < 4; ++d) {
        double* lt = ws.lt.data() + d * M;
        double* lin = ws.lin.data() + d * M;
        double best = -1e300;
        for (int j = 0; j < M; ++j) {
            const double diff = y[static_cast<std::size_t>(d)] - coords_[static_cast<std::size_t>(j)];
            lt[j] = -diff * diff * inv_two_sigma2_log2e_;
            best = std::max(best, lt[j]);
        }
        for (int j = 0; j < M; ++j) {
            lt[j] -= best;
            lin[j] = std::exp2(lt[j]);
        }
    }

    if (factorized_) {
        if (kind_ == MetricKind::Smd4D) {
            for (int d = 0; d < 4; ++d) {
                double dsum = 0.0;
                for (int j = 0; j < M; ++j) {
                    const std::size_t o = static_cast<std::size_t>(d * M + j);
                    ws.f[o] = marg_[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)] * ws.lin[o];
                    ws.lf[o] = log2_marg_[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)] +
                               ws.lt[o];
                    dsum += ws.f[o];
                }
                ws.dim_log_d[static_cast<std::size_t>(d)] = std::log2(dsum);
            }
        } else {
            for (int d = 0; d < 4; ++d) {
                for (int j = 0; j < M; ++j) {
                    const std::size_t o = static_cast<std::size_t>(d * M + j);
                    ws.mass[o] = marg_[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)] * ws.lin[o];
                }
                for (int s = 0; s < bits_per_dim_; ++s) {
                    const std::size_t t = static_cast<std::size_t>(d * bits_per_dim_ + s);
                    double q0 = 0.0, q1 = 0.0;
                    for (int j = 0; j < M; ++j) {
                        const double w = ws.mass[static_cast<std::size_t>(d * M + j)];
                        if ((sublabel_[static_cast<std::size_t>(j)] >> s) & 1u)
                            q1 += w;
                        else
                            q0 += w;
                    }
                    const double sc = std::max(q0, q1);
                    if (sc > 0.0) {
                        ws.q[t] = {q0 / sc, q1 / sc};
                        ws.lq[t] = {std::log2(ws.q[t][0]), std::log2(ws.q[t][1])};
                    } else {
                        ws.q[t] = {1.0, 1.0};
                        ws.lq[t] = {0.0, 0.0};
                    }
                }
                double dsum = 0.0;
                for (int j = 0; j < M; ++j) {
                    const std::size_t o = static_cast<std::size_t>(d * M + j);
                    double fv = 1.0, lv = 0.0;
                    for (int s = 0; s < bits_per_dim_; ++s) {
                        const std::size_t t = static_cast<std::size_t>(d * bits_per_dim_ + s);
                        const unsigned bit = (sublabel_[static_cast<std::size_t>(j)] >> s) & 1u;
                        fv *= ws.q[t][bit];
                        lv += ws.lq[t][bit];
                    }
                    ws.f[o] = fv;
                    ws.lf[o] = lv;
                    dsum += fv;
                }
                ws.dim_log_d[static_cast<std::size_t>(d)] = std::log2(dsum);
            }
        }
        ws.sum_log_d = ws.dim_log_d[0] + ws.dim_log_d[1] + ws.dim_log_d[2] + ws.dim_log_d[3];
        return;
    }

    // Joint path.
    if (kind_ == MetricKind::Smd4D) {
        ws.f = ws.lin;
        ws.lf = ws.lt;
    } else {
        std::fill(ws.f.begin(), ws.f.end(), 1.0);
        std::fill(ws.lf.begin(), ws.lf.end(), 0.0);
        for (const Scope& sc : scopes_) {
            for (int d = 0; d < sc.ndims; ++d) {
                double* mass = ws.mass.data() + sc.dims[static_cast<std::size_t>(d)] * M;
                std::fill(mass, mass + M, 0.0);
            }
            if (sc.identity) {
                for (std::size_t i = 0; i < level_idx_.size(); ++i) {
                    const auto& li = level_idx_[i];
                    double w = pmf_[i];
                    for (int d = 0; d < 4; ++d) w *= ws.lin[static_cast<std::size_t>(d * M + li[static_cast<std::size_t>(d)])];
                    for (int d = 0; d < 4; ++d)
                        ws.mass[static_cast<std::size_t>(d * M + li[static_cast<std::size_t>(d)])] += w;
                }
            } else {
                for (std::size_t sidx = 0; sidx < sc.support_levels.size(); ++sidx) {
                    const auto& li = sc.support_levels[sidx];
                    double w = sc.support_pmf[sidx];
                    for (int d = 0; d < sc.ndims; ++d)
                        w *= ws.lin[static_cast<std::size_t>(sc.dims[static_cast<std::size_t>(d)] * M +
                                                             li[static_cast<std::size_t>(d)])];
                    for (int d = 0; d < sc.ndims; ++d)
                        ws.mass[static_cast<std::size_t>(sc.dims[static_cast<std::size_t>(d)] * M +
                                                         li[static_cast<std::size_t>(d)])] += w;
                }
            }
            for (int tb = 0; tb < sc.nbits; ++tb) {
                const std::size_t t = static_cast<std::size_t>(sc.bit_offset + tb);
                const int d = bit_dim_[t];
                const int s = bit_shift_[t];
                double q0 = 0.0, q1 = 0.0;
                for (int j = 0; j < M; ++j) {
                    const double w = ws.mass[static_cast<std::size_t>(d * M + j)];
                    if ((sublabel_[static_cast<std::size_t>(j)] >> s) & 1u)
                        q1 += w;
                    else
                        q0 += w;
                }
                const double scq = std::max(q0, q1);
                if (scq > 0.0) {
                    ws.q[t] = {q0 / scq, q1 / scq};
                    ws.lq[t] = {std::log2(ws.q[t][0]), std::log2(ws.q[t][1])};
                } else {
                    ws.q[t] = {1.0, 1.0};
                    ws.lq[t] = {0.0, 0.0};
                }
            }
            for (int tb = 0; tb < sc.nbits; ++tb) {
                const std::size_t t = static_cast<std::size_t>(sc.bit_offset + tb);
                const int d = bit_dim_[t];
                const int s = bit_shift_[t];
                for (int j = 0; j < M; ++j) {
                    const std::size_t o = static_cast<std::size_t>(d * M + j);
                    const unsigned bit = (sublabel_[static_cast<std::size_t>(j)] >> s) & 1u;
                    ws.f[o] *= ws.q[t][bit];
                    ws.lf[o] += ws.lq[t][bit];
                }
            }
        }
    }

    // Denominator over the constellation.
    const double* f0 = ws.f.data();
    const double* f1 = ws.f.data() + M;
    const double* f2 = ws.f.data() + 2 * M;
    const double* f3 = ws.f.data() + 3 * M;
    double denom = 0.0;
    if (use_pmf_in_sum_) {
        for (std::size_t i = 0; i < level_idx_.size(); ++i) {
            const auto& li = level_idx_[i];
            denom += pmf_[i] * f0[li[0]] * f1[li[1]] * f2[li[2]] * f3[li[3]];
        }
    } else {
        for (std::size_t i = 0; i < level_idx_.size(); ++i) {
            const auto& li = level_idx_[i];
            denom += f0[li[0]] * f1[li[1]] * f2[li[2]] * f3[li[3]];
        }
    }
    ws.sum_log_d = std::log2(denom);
}

double DecodingMetric::loss_prepared(std::uint32_t x_index, const Workspace& ws) const {
    const auto& li = level_idx_[x_index];
    double lnum = ws.lf[li[0]] + ws.lf[static_cast<std::size_t>(M_ + li[1])] +
                  ws.lf[static_cast<std::size_t>(2 * M_ + li[2])] +
                  ws.lf[static_cast<std::size_t>(3 * M_ + li[3])];
    if (use_pmf_in_sum_) lnum += log2_pmf_[x_index];
    return ws.sum_log_d - lnum;
}

double DecodingMetric::loss(std::uint32_t x_index, const std::array<double, 4>& y,
                            Workspace& ws) const {
    prepare(y, ws);
    return loss_prepared(x_index, ws);
}

double DecodingMetric::dim_loss_prepared(int dim, int level_index, const Workspace& ws) const {
    return ws.dim_log_d[static_cast<std::size_t>(dim)] -
           ws.lf[static_cast<std::size_t>(dim * M_ + level_index)];
}

std::vector<double> DecodingMetric::log_metric_values(const std::array<double, 4>& y) const {
    Workspace ws = make_workspace();
    prepare(y, ws);
    std::vector<double> out(level_idx_.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& li = level_idx_[i];
        double v = ws.lf[li[0]] + ws.lf[static_cast<std::size_t>(M_ + li[1])] +
                   ws.lf[static_cast<std::size_t>(2 * M_ + li[2])] +
                   ws.lf[static_cast<std::size_t>(3 * M_ + li[3])];
        if (use_pmf_in_sum_) v += log2_pmf_[i];
        out[i] = v;
    }
    return out;
}

DecodingMetric make_metric(MetricKind kind, const ShapedSource& source, double sigma2,
                           MetricOptions options) {
    return DecodingMetric(kind, source, sigma2, options);
}

double pairwise_sum(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::size_t n = values.size();
    while (n > 1) {
        const std::size_t half = n / 2;
        for (std::size_t i = 0; i < half; ++i) values[i] = values[2 * i] + values[2 * i + 1];
        if (n % 2 == 1) {
            values[half] = values[n - 1];
            n = half + 1;
        } else {
            n = half;
        }
    }
    return values[0];
}

RateEstimate achievable_rate(const DecodingMetric& metric, const SymbolStream& xs,
                             const ReceiveStream& ys) {
    const std::size_t K = xs.indices.size();
    if (K == 0) throw std::invalid_argument("achievable_rate: empty stream");
    if (ys.y.size() != K) throw std::invalid_argument("achievable_rate: stream length mismatch");

    std::vector<double> losses(K);
    auto ws = metric.make_workspace();
    for (std::size_t i = 0; i < K; ++i) {
        if (xs.indices[i] >= metric.constellation_size()) {
            throw std::invalid_argument("achievable_rate: symbol index outside the constellation");
        }
        metric.prepare(ys.y[i], ws);
        losses[i] = metric.loss_prepared(xs.indices[i], ws);
    }

    const double mean = pairwise_sum(losses) / static_cast<double>(K);
    double stderr_bits = 0.0;
    if (K >= 2) {
        std::vector<double> dev2(K);
        for (std::size_t i = 0; i < K; ++i) {
            const double d = losses[i] - mean;
            dev2[i] = d * d;
        }
        const double var = pairwise_sum(std::move(dev2)) / static_cast<double>(K - 1);
        stderr_bits = std::sqrt(var / static_cast<double>(K));
    }

    RateEstimate est;
    est.samples = K;
    est.raw_bits_per_4d = metric.source_entropy_bits() - mean;
    est.bits_per_4d = std::max(0.0, est.raw_bits_per_4d);
    est.bpqs = est.bits_per_4d / 2.0;
    est.stderr_bits_4d = stderr_bits;
    return est;
}

double exact_rate_oracle(const ShapedSource& source, double sigma2, MetricKind kind,
                         MetricOptions options) {
    DecodingMetric metric(kind, source, sigma2, options);
    const GaussHermite gh = gauss_hermite(options.gh_nodes_per_dim);
    const double step = std::sqrt(2.0 * sigma2);
    auto ws = metric.make_workspace();
    double loss = 0.0;

    if (metric.factorized()) {
        const double inv_sqrt_pi = 1.0 / std::sqrt(kPi);
        for (int d = 0; d < 4; ++d) {
            for (int j = 0; j < source.ask.M; ++j) {
                const double p = source.dim_marginal[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)];
                if (p <= 0.0) continue;
                const double center = source.scale * source.ask.level_at(j);
                double acc = 0.0;
                for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
                    std::array<double, 4> y{0.0, 0.0, 0.0, 0.0};
                    y[static_cast<std::size_t>(d)] = center + step * gh.nodes[i];
                    metric.prepare(y, ws);
                    acc += gh.weights[i] * metric.dim_loss_prepared(d, j, ws);
                }
                loss += p * acc * inv_sqrt_pi;
            }
        }
        return std::max(0.0, source.entropy_bits - loss);
    }

    if (source.size() > 4096) {
        throw std::invalid_argument(
            "exact_rate_oracle: coupled constellations above 4096 points are too costly");
    }

    // Sign-orbit reduction: when the constellation is closed under all 16
    // sign patterns with equal probability, the loss is invariant under a
    // global sign flip, so only all-positive representatives are integrated.
    std::unordered_map<std::uint32_t, std::uint32_t> point_index;
    point_index.reserve(source.size() * 2);
    for (std::size_t i = 0; i < source.size(); ++i)
        point_index.emplace(pack_levels(source.level_idx[i]), static_cast<std::uint32_t>(i));

    std::vector<std::pair<std::uint32_t, double>> reps;
    bool reducible = true;
    for (std::size_t i = 0; i < source.size() && reducible; ++i) {
        bool all_positive = true;
        for (int d = 0; d < 4; ++d) all_positive = all_positive && source.level(i, d) > 0;
        if (!all_positive) continue;
        for (std::uint32_t mask = 0; mask < 16 && reducible; ++mask) {
            std::array<std::uint8_t, 4> flipped{};
            for (int d = 0; d < 4; ++d) {
                const int lev = source.level(i, d);
                const int want = (mask >> (3 - d)) & 1 ? -lev : lev;
                flipped[static_cast<std::size_t>(d)] =
                    static_cast<std::uint8_t>(source.ask.level_index_of(want));
            }
            const auto it = point_index.find(pack_levels(flipped));
            if (it == point_index.end() ||
                std::abs(source.pmf[it->second] - source.pmf[i]) > 1e-15) {
                reducible = false;
            }
        }
        if (reducible) reps.emplace_back(static_cast<std::uint32_t>(i), 16.0 * source.pmf[i]);
    }
    if (!reducible || reps.size() * 16 != source.size()) {
        reps.clear();
        for (std::size_t i = 0; i < source.size(); ++i)
            reps.emplace_back(static_cast<std::uint32_t>(i), source.pmf[i]);
    }

    // Pruned tensor rule over the four noise dimensions.
    struct Node {
        std::array<double, 4> t;
        double w;
    };
    std::vector<Node> nodes;
    const int n = options.gh_nodes_per_dim;
    for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1) {
            const double w01 = gh.weights[static_cast<std::size_t>(i0)] * gh.weights[static_cast<std::size_t>(i1)];
            if (w01 < options.gh_prune) continue;
            for (int i2 = 0; i2 < n; ++i2) {
                const double w012 = w01 * gh.weights[static_cast<std::size_t>(i2)];
                if (w012 < options.gh_prune) continue;
                for (int i3 = 0; i3 < n; ++i3) {
                    const double w = w012 * gh.weights[static_cast<std::size_t>(i3)];
                    if (w < options.gh_prune) continue;
                    nodes.push_back({{gh.nodes[static_cast<std::size_t>(i0)], gh.nodes[static_cast<std::size_t>(i1)],
                                      gh.nodes[static_cast<std::size_t>(i2)], gh.nodes[static_cast<std::size_t>(i3)]},
                                     w});
                }
            }
        }

    const double inv_pi2 = 1.0 / (kPi * kPi);
    for (const auto& [xidx, weight] : reps) {
        double acc = 0.0;
        for (const Node& node : nodes) {
            std::array<double, 4> y;
            for (int d = 0; d < 4; ++d) {
                y[static_cast<std::size_t>(d)] =
                    source.coord(xidx, d) + step * node.t[static_cast<std::size_t>(d)];
            }
            metric.prepare(y, ws);
            acc += node.w * metric.loss_prepared(xidx, ws);
        }
        loss += weight * acc * inv_pi2;
    }
    return std::max(0.0, source.entropy_bits - loss);
}

double gaussian_capacity_bpqs(const SnrSpec& snr) {
    if (!std::isfinite(snr.snr_db)) {
        throw std::invalid_argument("gaussian_capacity: snr must be finite");
    }
    return std::log2(1.0 + snr.snr_linear);
}

}  // namespace pas4d

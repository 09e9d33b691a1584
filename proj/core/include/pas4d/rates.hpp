// Achievable-rate estimation: the Monte-Carlo information estimator with
// symbol-metric and bit-metric decoding flavors, plus deterministic
// Gauss-Hermite oracles for validation.
//
// For a metric q the per-sample loss is -log2( q(x_i,y_i) / sum_a q(a,y_i) )
// and the rate is [ H(X) - mean loss ]+ in bits per 4D symbol. Gaussian
// kernels are unnormalized and every per-dimension likelihood table is scaled
// by its maximum before exponentiation; the scalings cancel in the ratio and
// keep the evaluation inside double range at high SNR, where the raw ratio
// underflows. Numerators are accumulated in the log domain throughout.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pas4d/channel.hpp"
#include "pas4d/pas_mapper.hpp"
#include "pas4d/source.hpp"

namespace pas4d {

enum class MetricKind { Smd4D, Bmd4D, Bmd2D, Bmd1D };

std::string metric_name(MetricKind kind);
MetricKind metric_from_name(const std::string& name);

struct MetricOptions {
    bool allow_factorized = true;  // per-dimension evaluation on product laws
    int gh_nodes_per_dim = 40;     // oracle rule size
    double gh_prune = 1e-18;       // drop 4D node-weight products below this
};

struct RateEstimate {
    double bits_per_4d = 0.0;      // [H(X) - loss]+, clipped at zero
    double bpqs = 0.0;             // bits_per_4d / 2
    double raw_bits_per_4d = 0.0;  // before clipping
    double stderr_bits_4d = 0.0;   // Monte-Carlo standard error of the mean
    std::size_t samples = 0;
};

// A decoding metric bound to one normalized source and noise variance.
//
//   Smd4D  q(x,y) = P(x) prod_d g(y_d - x_d)
//   Bmd4D  q(x,y) = prod_j q_j(b_j(x), y) over all m label bits, with
//          q_j(b,y) = sum over constellation points whose bit j equals b of
//          P(a) prod_d g(y_d - a_d)
//   Bmd2D  the same construction per 2D slice with the slice marginal law
//   Bmd1D  per real dimension with the dimension marginals
//
// The denominator of the loss always sums over the source constellation.
class DecodingMetric {
  public:
    DecodingMetric(MetricKind kind, const ShapedSource& source, double sigma2,
                   MetricOptions options = {});

    MetricKind kind() const { return kind_; }
    double sigma2() const { return sigma2_; }
    bool factorized() const { return factorized_; }
    std::size_t constellation_size() const { return level_idx_.size(); }
    double source_entropy_bits() const { return entropy_bits_; }
    const MetricOptions& options() const { return options_; }

    // Reusable per-thread scratch space.
    struct Workspace {
        std::vector<double> lt, lin, f, lf, mass;  // 4*M, indexed d*M + level
        std::vector<std::array<double, 2>> q, lq;  // one slot per metric bit
        std::array<double, 4> dim_log_d{};         // factorized path: log2 D_d
        double sum_log_d = 0.0;
    };
    Workspace make_workspace() const;

    // Per-dimension likelihood tables and bit metrics for one receive vector.
    void prepare(const std::array<double, 4>& y, Workspace& ws) const;
    // Loss for the point at x_index given the prepared tables.
    double loss_prepared(std::uint32_t x_index, const Workspace& ws) const;
    double loss(std::uint32_t x_index, const std::array<double, 4>& y, Workspace& ws) const;

    // Factorized path only: the per-dimension share of the loss.
    double dim_loss_prepared(int dim, int level_index, const Workspace& ws) const;

    // Introspection for tests: metric values over the constellation for one y
    // (log2 domain, common additive offset unspecified).
    std::vector<double> log_metric_values(const std::array<double, 4>& y) const;

  private:
    struct Scope {
        std::array<int, 4> dims{};
        int ndims = 0;
        int nbits = 0;
        int bit_offset = 0;
        bool identity = false;  // support is the constellation itself
        std::vector<std::array<std::uint8_t, 4>> support_levels;
        std::vector<double> support_pmf;
        std::vector<std::uint32_t> point_to_support;
    };

    void build_scopes(const ShapedSource& source);

    MetricKind kind_;
    MetricOptions options_;
    double sigma2_;
    double inv_two_sigma2_log2e_;
    bool factorized_ = false;
    bool use_pmf_in_sum_ = false;  // SMD carries P(a) in the denominator terms

    int M_ = 0;
    int bits_per_dim_ = 0;
    double scale_ = 1.0;
    double entropy_bits_ = 0.0;
    std::vector<double> coords_;          // scaled level values
    std::vector<std::uint32_t> sublabel_; // per level index, Gray sublabel
    std::vector<std::array<std::uint8_t, 4>> level_idx_;
    std::vector<double> pmf_, log2_pmf_;
    std::array<std::vector<double>, 4> marg_, log2_marg_;

    std::vector<Scope> scopes_;       // joint path
    std::vector<int> bit_dim_;        // per metric bit: owning dimension
    std::vector<int> bit_shift_;      // per metric bit: position in the sublabel
    int total_bits_ = 0;
};

DecodingMetric make_metric(MetricKind kind, const ShapedSource& source, double sigma2,
                           MetricOptions options = {});

// Eq.-1 estimate over aligned transmit/receive streams, in bits per 4D symbol.
RateEstimate achievable_rate(const DecodingMetric& metric, const SymbolStream& xs,
                             const ReceiveStream& ys);

// The same expectation by Gauss-Hermite quadrature instead of sampling:
// factorized metrics integrate per scope dimension, coupled constellations
// use the full 4D tensor rule with negligible-weight nodes pruned. Coupled
// evaluation is limited to |X| <= 4096 for cost.
double exact_rate_oracle(const ShapedSource& source, double sigma2, MetricKind kind,
                         MetricOptions options = {});

// log2(1 + snr) bits per QAM symbol.
double gaussian_capacity_bpqs(const SnrSpec& snr);

// Deterministic pairwise reduction; bit-stable for a fixed input order.
double pairwise_sum(std::vector<double> values);

}  // namespace pas4d

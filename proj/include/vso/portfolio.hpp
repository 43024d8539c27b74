#pragma once

#include "vso/engine.hpp"
#include "vso/objective.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vso::portfolio {

/// Daily closing prices, row-major n_dates x n_assets.
struct PriceMatrix {
    std::vector<std::string> symbols;
    std::vector<std::string> dates;
    std::vector<double> prices;

    [[nodiscard]] std::size_t n_dates() const noexcept { return dates.size(); }
    [[nodiscard]] std::size_t n_assets() const noexcept { return symbols.size(); }
    [[nodiscard]] double at(std::size_t date, std::size_t asset) const { return prices[date * n_assets() + asset]; }
};

struct IngestReport {
    std::size_t rows_read = 0;
    std::size_t rows_dropped = 0;
    /// 1-based file line numbers of dropped rows.
    std::vector<std::size_t> dropped_lines;
};

struct IngestResult {
    PriceMatrix prices;
    IngestReport report;
};

/// Reads a "date,SYM1,SYM2,..." CSV. Rows with an empty or missing cell are
/// dropped and reported. Throws ParseError for non-numeric or non-positive
/// cells and for dates that do not strictly increase, and
/// InsufficientDataError when fewer than two rows survive.
[[nodiscard]] IngestResult ingest_prices(std::istream& in);
/// Throws IoError when the file cannot be opened.
[[nodiscard]] IngestResult ingest_prices(const std::filesystem::path& path);

struct MomentEstimates {
    std::vector<double> mean_returns;
    /// Row-major n x n sample covariance of simple returns.
    std::vector<double> covariance;

    [[nodiscard]] std::size_t n_assets() const noexcept { return mean_returns.size(); }
    [[nodiscard]] double cov(std::size_t i, std::size_t j) const { return covariance[i * n_assets() + j]; }
};

/// Simple returns p_t / p_{t-1} - 1, their means and their n-1 covariance.
/// With a single return the covariance is reported as zero.
[[nodiscard]] MomentEstimates estimate_moments_serial(const PriceMatrix& prices);
/// OpenMP over covariance entries; bit-identical to the serial path.
[[nodiscard]] MomentEstimates estimate_moments(const PriceMatrix& prices);

inline constexpr double kSharpeFloor = 1e-10;
inline constexpr double kVarianceFloor = 1e-18;
inline constexpr double kTradingDaysPerYear = 252.0;

struct PortfolioSpec {
    MomentEstimates moments;
    /// Per-period risk-free rate, in the same units as mean_returns.
    double risk_free = 0.0;
    bool allow_short = false;

    [[nodiscard]] std::size_t n_assets() const noexcept { return moments.n_assets(); }
};

/// Converts a quoted annual rate into the per-period rate used by the ratio.
/// With use_quoted_value the rate is taken as-is.
[[nodiscard]] double risk_free_per_period(double quoted_annual_rate, bool use_quoted_value);

/// w_i = x_i / sum |x_j|. Empty optional for an all-zero vector.
[[nodiscard]] std::optional<std::vector<double>> normalize_weights(std::span<const double> raw);

/// (E - R_f) / V for already-normalized weights, V floored at kVarianceFloor.
[[nodiscard]] double sharpe_ratio(std::span<const double> weights, const PortfolioSpec& spec);

/// 1 / SR after normalization, with SR <= 0 replaced by kSharpeFloor.
/// Degenerate (all-zero) inputs get 1 / kSharpeFloor.
[[nodiscard]] double portfolio_fitness(std::span<const double> raw, const PortfolioSpec& spec);

/// Box [0,1]^n long-only or [-1,1]^n with shorting.
[[nodiscard]] Objective make_portfolio_objective(const PortfolioSpec& spec, std::string name = "portfolio");

/// Inverts portfolio_fitness.
[[nodiscard]] inline double sharpe_from_fitness(double fitness) { return 1.0 / fitness; }

} // namespace vso::portfolio

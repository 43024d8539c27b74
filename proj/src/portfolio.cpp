#include "vso/portfolio.hpp"

#include "vso/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace vso::portfolio {

namespace {

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream stream(line);
    while (std::getline(stream, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

std::string trim(std::string s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

void strip_bom(std::string& line)
{
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
        line.erase(0, 3);
    }
}

std::vector<double> simple_returns(const PriceMatrix& prices)
{
    const std::size_t n = prices.n_assets();
    const std::size_t t = prices.n_dates() - 1;
    std::vector<double> returns(t * n);
    for (std::size_t r = 0; r < t; ++r) {
        for (std::size_t a = 0; a < n; ++a) {
            returns[r * n + a] = prices.at(r + 1, a) / prices.at(r, a) - 1.0;
        }
    }
    return returns;
}

std::vector<double> column_means(const std::vector<double>& returns, std::size_t t, std::size_t n)
{
    std::vector<double> mean(n, 0.0);
    for (std::size_t r = 0; r < t; ++r) {
        for (std::size_t a = 0; a < n; ++a) {
            mean[a] += returns[r * n + a];
        }
    }
    for (double& m : mean) {
        m /= static_cast<double>(t);
    }
    return mean;
}

double covariance_entry(const std::vector<double>& returns, const std::vector<double>& mean, std::size_t t,
                        std::size_t n, std::size_t i, std::size_t j)
{
    if (t < 2) {
        return 0.0;
    }
    double acc = 0.0;
    for (std::size_t r = 0; r < t; ++r) {
        acc += (returns[r * n + i] - mean[i]) * (returns[r * n + j] - mean[j]);
    }
    return acc / static_cast<double>(t - 1);
}

void check_estimable(const PriceMatrix& prices)
{
    if (prices.n_dates() < 2) {
        throw InsufficientDataError("at least two dated price rows are required to form returns");
    }
}

} // namespace

IngestResult ingest_prices(std::istream& in)
{
    IngestResult result;
    PriceMatrix& matrix = result.prices;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            break;
        }
    }
    if (line_no == 0 || trim(line).empty()) {
        throw InsufficientDataError("price file is empty");
    }
    strip_bom(line);
    const std::vector<std::string> header = split_csv_line(line);
    if (header.size() < 2 || trim(header[0]) != "date") {
        throw ParseError(line_no, 1, "header must start with 'date' followed by at least one symbol");
    }
    for (std::size_t c = 1; c < header.size(); ++c) {
        matrix.symbols.push_back(trim(header[c]));
        if (matrix.symbols.back().empty()) {
            throw ParseError(line_no, c + 1, "empty symbol name");
        }
    }
    const std::size_t n_assets = matrix.symbols.size();

    std::vector<double> row(n_assets);
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        ++result.report.rows_read;
        const std::vector<std::string> cells = split_csv_line(line);
        bool gap = cells.size() < header.size() || trim(cells[0]).empty();
        if (cells.size() > header.size()) {
            throw ParseError(line_no, header.size() + 1, "more cells than header columns");
        }
        for (std::size_t a = 0; a < n_assets && !gap; ++a) {
            const std::string cell = trim(cells[a + 1]);
            if (cell.empty()) {
                gap = true;
                break;
            }
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
                throw ParseError(line_no, a + 2, "non-numeric price '" + cell + "'");
            }
            if (value <= 0.0) {
                throw ParseError(line_no, a + 2, "price must be strictly positive");
            }
            row[a] = value;
        }
        if (gap) {
            ++result.report.rows_dropped;
            result.report.dropped_lines.push_back(line_no);
            continue;
        }
        std::string date = trim(cells[0]);
        if (!matrix.dates.empty() && !(matrix.dates.back() < date)) {
            throw ParseError(line_no, 1, "dates must be strictly increasing ('" + date + "' after '" +
                                             matrix.dates.back() + "')");
        }
        matrix.dates.push_back(std::move(date));
        matrix.prices.insert(matrix.prices.end(), row.begin(), row.end());
    }

    check_estimable(matrix);
    return result;
}

IngestResult ingest_prices(const std::filesystem::path& path)
{
    std::ifstream file(path);
    if (!file) {
        throw IoError("cannot open price file '" + path.string() + "'");
    }
    return ingest_prices(file);
}

MomentEstimates estimate_moments_serial(const PriceMatrix& prices)
{
    check_estimable(prices);
    const std::size_t n = prices.n_assets();
    const std::size_t t = prices.n_dates() - 1;
    const std::vector<double> returns = simple_returns(prices);

    MomentEstimates m;
    m.mean_returns = column_means(returns, t, n);
    m.covariance.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double c = covariance_entry(returns, m.mean_returns, t, n, i, j);
            m.covariance[i * n + j] = c;
            m.covariance[j * n + i] = c;
        }
    }
    return m;
}

MomentEstimates estimate_moments(const PriceMatrix& prices)
{
    check_estimable(prices);
    const std::size_t n = prices.n_assets();
    const std::size_t t = prices.n_dates() - 1;
    const std::vector<double> returns = simple_returns(prices);

    MomentEstimates m;
    m.mean_returns = column_means(returns, t, n);
    m.covariance.assign(n * n, 0.0);

    const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        for (std::size_t j = i; j < n; ++j) {
            const double c = covariance_entry(returns, m.mean_returns, t, n, i, j);
            m.covariance[i * n + j] = c;
            m.covariance[j * n + i] = c;
        }
    }
    return m;
}

double risk_free_per_period(double quoted_annual_rate, bool use_quoted_value)
{
    return use_quoted_value ? quoted_annual_rate : quoted_annual_rate / kTradingDaysPerYear;
}

std::optional<std::vector<double>> normalize_weights(std::span<const double> raw)
{
    double total = 0.0;
    for (const double v : raw) {
        total += std::abs(v);
    }
    if (!(total > 0.0) || !std::isfinite(total)) {
        return std::nullopt;
    }
    std::vector<double> w(raw.begin(), raw.end());
    for (double& v : w) {
        v /= total;
    }
    return w;
}

double sharpe_ratio(std::span<const double> weights, const PortfolioSpec& spec)
{
    const std::size_t n = spec.n_assets();
    double expected = 0.0;
    double variance = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        expected += weights[i] * spec.moments.mean_returns[i];
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            row += spec.moments.cov(i, j) * weights[j];
        }
        variance += weights[i] * row;
    }
    variance = std::max(variance, kVarianceFloor);
    return (expected - spec.risk_free) / variance;
}

double portfolio_fitness(std::span<const double> raw, const PortfolioSpec& spec)
{
    if (raw.size() != spec.n_assets()) {
        throw ConfigError("portfolio weight vector has " + std::to_string(raw.size()) + " entries, expected " +
                          std::to_string(spec.n_assets()));
    }
    const auto weights = normalize_weights(raw);
    if (!weights) {
        return 1.0 / kSharpeFloor;
    }
    double sr = sharpe_ratio(*weights, spec);
    if (!(sr > 0.0)) {
        sr = kSharpeFloor;
    }
    return 1.0 / sr;
}

Objective make_portfolio_objective(const PortfolioSpec& spec, std::string name)
{
    const std::size_t n = spec.n_assets();
    if (n == 0) {
        throw ConfigError("portfolio needs at least one asset");
    }
    const double lo = spec.allow_short ? -1.0 : 0.0;
    return Objective{std::move(name), std::vector<double>(n, lo), std::vector<double>(n, 1.0),
                     [spec](std::span<const double> x) { return portfolio_fitness(x, spec); }};
}

} // namespace vso::portfolio

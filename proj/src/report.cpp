#include "vso/report.hpp"

#include "vso/error.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace vso {

namespace {

std::string exact(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream stream(line);
    while (std::getline(stream, cell, sep)) {
        if (!cell.empty() && cell.back() == '\r') {
            cell.pop_back();
        }
        out.push_back(cell);
    }
    return out;
}

double parse_double(const std::string& text, std::size_t row, std::size_t col)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception&) {
        throw ParseError(row, col, "not a number: '" + text + "'");
    }
}

const char* kCsvHeader = "Algorithm,Function,Dimension,Mean,Std,Best,Worst,Time(s)";

} // namespace

std::string format_scientific(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2E", value);
    return buf;
}

std::string summary_csv(const std::vector<SummaryRow>& rows)
{
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const SummaryRow& r : rows) {
        out << r.algorithm << ',' << r.function << ',' << r.dimension << ',' << format_scientific(r.mean) << ','
            << format_scientific(r.std) << ',' << format_scientific(r.best) << ',' << format_scientific(r.worst) << ','
            << format_scientific(r.time_seconds) << '\n';
    }
    return out.str();
}

std::string summary_json(const std::vector<SummaryRow>& rows)
{
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const SummaryRow& r : rows) {
        nlohmann::ordered_json j;
        j["algorithm"] = r.algorithm;
        j["function"] = r.function;
        j["dimension"] = r.dimension;
        j["runs"] = r.runs;
        j["mean"] = r.mean;
        j["std"] = r.std;
        j["best"] = r.best;
        j["worst"] = r.worst;
        j["time_seconds"] = r.time_seconds;
        if (r.mean_error) {
            j["mean_error"] = *r.mean_error;
        }
        doc.push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

std::vector<SummaryRow> parse_summary_json(const std::string& text)
{
    std::vector<SummaryRow> rows;
    try {
        const auto doc = nlohmann::json::parse(text);
        for (const auto& j : doc) {
            SummaryRow r;
            r.algorithm = j.at("algorithm").get<std::string>();
            r.function = j.at("function").get<std::string>();
            r.dimension = j.at("dimension").get<std::size_t>();
            r.runs = j.value("runs", std::size_t{0});
            r.mean = j.at("mean").get<double>();
            r.std = j.at("std").get<double>();
            r.best = j.at("best").get<double>();
            r.worst = j.at("worst").get<double>();
            r.time_seconds = j.at("time_seconds").get<double>();
            if (j.contains("mean_error")) {
                r.mean_error = j.at("mean_error").get<double>();
            }
            rows.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, 0, std::string("invalid summary JSON: ") + e.what());
    }
    return rows;
}

std::vector<SummaryRow> parse_summary_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::size_t row_no = 1;
    if (!std::getline(in, line) || split(line, ',') != split(kCsvHeader, ',')) {
        throw ParseError(1, 1, "summary CSV header must be " + std::string(kCsvHeader));
    }
    std::vector<SummaryRow> rows;
    while (std::getline(in, line)) {
        ++row_no;
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto cells = split(line, ',');
        if (cells.size() != 8) {
            throw ParseError(row_no, cells.size(), "expected 8 cells");
        }
        SummaryRow r;
        r.algorithm = cells[0];
        r.function = cells[1];
        r.dimension = static_cast<std::size_t>(parse_double(cells[2], row_no, 3));
        r.mean = parse_double(cells[3], row_no, 4);
        r.std = parse_double(cells[4], row_no, 5);
        r.best = parse_double(cells[5], row_no, 6);
        r.worst = parse_double(cells[6], row_no, 7);
        r.time_seconds = parse_double(cells[7], row_no, 8);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string trace_csv(const RunRecord& record)
{
    std::string out = "iteration,best_fitness\n";
    for (const TracePoint& p : record.trace) {
        out += std::to_string(p.iteration);
        out += ',';
        out += exact(p.best_fitness);
        out += '\n';
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<SummaryRow> load_summary(const std::filesystem::path& path)
{
    const std::string text = read_text_file(path);
    return path.extension() == ".json" ? parse_summary_json(text) : parse_summary_csv(text);
}

std::string trace_file_name(const SummaryRow& summary, const RunRecord& record)
{
    return summary.algorithm + "_" + summary.function + "_D" + std::to_string(summary.dimension) + "_seed" +
           std::to_string(record.seed) + ".csv";
}

void export_results(const std::filesystem::path& dir, const SummaryRow& summary, const std::vector<RunRecord>& records)
{
    std::error_code ec;
    std::filesystem::create_directories(dir / "traces", ec);
    if (ec) {
        throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    }
    write_text_file(dir / "summary.csv", summary_csv({summary}));
    write_text_file(dir / "summary.json", summary_json({summary}));
    for (const RunRecord& record : records) {
        write_text_file(dir / "traces" / trace_file_name(summary, record), trace_csv(record));
    }
}

} // namespace vso

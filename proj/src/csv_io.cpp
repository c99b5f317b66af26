#include "hybridad/csv_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

#include "hybridad/errors.hpp"
#include "hybridad/text.hpp"

namespace hybridad::csv_io {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) fields.push_back(field);
    if (!line.empty() && line.back() == sep) fields.emplace_back();
    return fields;
}

} // namespace

std::vector<std::string> default_signal_names(const std::vector<signals::SignalKind>& kinds) {
    std::vector<std::string> names;
    names.reserve(kinds.size());
    int next_continuous = 1;
    int next_discrete = 1;
    for (signals::SignalKind kind : kinds) {
        if (kind == signals::SignalKind::Continuous)
            names.push_back("c" + std::to_string(next_continuous++));
        else
            names.push_back("d" + std::to_string(next_discrete++));
    }
    return names;
}

void write_cycle_csv(const std::string& path, const signals::ObservationExample& cycle,
                     const std::vector<std::string>& names) {
    const std::vector<std::string> columns =
        names.empty() ? default_signal_names(cycle.kinds) : names;
    if (columns.size() != cycle.kinds.size())
        raise(Errc::ArityMismatch, "signal name count does not match signal count");

    std::ofstream out(path, std::ios::binary);
    if (!out) raise(Errc::IoError, "cannot open '" + path + "' for writing");

    out << 't';
    for (std::size_t s = 0; s < columns.size(); ++s)
        out << ',' << (cycle.kinds[s] == signals::SignalKind::Continuous ? "c:" : "d:")
            << columns[s];
    out << '\n';
    for (const signals::TimedSample& sample : cycle.samples) {
        out << format_double(sample.t);
        for (double value : sample.values) out << ',' << format_double(value);
        out << '\n';
    }
    if (!out) raise(Errc::IoError, "write to '" + path + "' failed");
}

std::vector<signals::ObservationExample> read_cycles_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::IoError, "cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) raise(Errc::ParseError, path + ": missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const std::vector<std::string> header = split(line, ',');
    if (header.empty() || header[0] != "t")
        raise(Errc::ParseError, path + ": first column must be 't'");

    std::vector<signals::SignalKind> kinds;
    std::ptrdiff_t cycle_column = -1;
    for (std::size_t i = 1; i < header.size(); ++i) {
        const std::string& name = header[i];
        if (name == "cycle") {
            if (cycle_column >= 0) raise(Errc::ParseError, path + ": duplicate 'cycle' column");
            cycle_column = static_cast<std::ptrdiff_t>(i);
        } else if (name.rfind("c:", 0) == 0) {
            kinds.push_back(signals::SignalKind::Continuous);
        } else if (name.rfind("d:", 0) == 0) {
            kinds.push_back(signals::SignalKind::Discrete);
        } else {
            raise(Errc::ParseError,
                  path + ": column '" + name + "' needs a 'c:' or 'd:' prefix");
        }
    }
    if (kinds.empty()) raise(Errc::ParseError, path + ": no signal columns");

    // Cycle ids keep their order of first appearance.
    std::vector<std::string> cycle_order;
    std::vector<std::vector<signals::TimedSample>> cycles;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split(line, ',');
        if (fields.size() != header.size())
            raise(Errc::ParseError, path + ":" + std::to_string(line_no) + ": expected " +
                                        std::to_string(header.size()) + " fields, got " +
                                        std::to_string(fields.size()));
        signals::TimedSample sample;
        std::string cycle_id = "";
        sample.values.reserve(kinds.size());
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (static_cast<std::ptrdiff_t>(i) == cycle_column) {
                cycle_id = fields[i];
                continue;
            }
            double value = 0.0;
            try {
                value = parse_double(fields[i]);
            } catch (const Error& e) {
                raise(Errc::ParseError, path + ":" + std::to_string(line_no) + ": column '" +
                                            header[i] + "': " + e.what());
            }
            if (i == 0)
                sample.t = value;
            else
                sample.values.push_back(value);
        }
        auto it = std::find(cycle_order.begin(), cycle_order.end(), cycle_id);
        if (it == cycle_order.end()) {
            cycle_order.push_back(cycle_id);
            cycles.emplace_back();
            it = std::prev(cycle_order.end());
        }
        cycles[static_cast<std::size_t>(it - cycle_order.begin())].push_back(std::move(sample));
    }
    if (cycles.empty()) raise(Errc::EmptyData, path + ": no data rows");

    std::vector<signals::ObservationExample> result;
    result.reserve(cycles.size());
    for (std::vector<signals::TimedSample>& rows : cycles) {
        try {
            result.push_back(signals::build_observation(std::move(rows), kinds));
        } catch (const Error& e) {
            raise(e.code(), path + ": " + e.what());
        }
    }
    return result;
}

std::vector<signals::ObservationExample> load_corpus(const std::string& dir) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) raise(Errc::IoError, "'" + dir + "' is not a directory");

    std::vector<fs::path> paths;
    for (const fs::directory_entry& entry : fs::directory_iterator(dir, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            paths.push_back(entry.path());
    }
    if (ec) raise(Errc::IoError, "cannot list '" + dir + "': " + ec.message());
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) raise(Errc::EmptyData, "no .csv files in '" + dir + "'");

    std::vector<signals::ObservationExample> corpus;
    for (const fs::path& path : paths) {
        std::vector<signals::ObservationExample> cycles = read_cycles_csv(path.string());
        for (signals::ObservationExample& cycle : cycles) corpus.push_back(std::move(cycle));
    }
    return corpus;
}

} // namespace hybridad::csv_io

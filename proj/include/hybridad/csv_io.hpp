#pragma once

#include <string>
#include <vector>

#include "hybridad/signals.hpp"

namespace hybridad::csv_io {

// Column header names matching the observation's kinds, without the c:/d:
// prefixes. Generated as c1, c2, ..., d1, d2, ... when not supplied.
std::vector<std::string> default_signal_names(const std::vector<signals::SignalKind>& kinds);

// One cycle per file: header `t,c:<name>,...,d:<name>,...`, one row per
// sample, values in shortest round-trip decimal form.
void write_cycle_csv(const std::string& path, const signals::ObservationExample& cycle,
                     const std::vector<std::string>& names = {});

// Parses one file into its cycles. A column headed `cycle` partitions rows
// into cycles by value, in order of first appearance; without it the file
// is a single cycle.
std::vector<signals::ObservationExample> read_cycles_csv(const std::string& path);

// Every *.csv under dir, sorted by filename, flattened in that order.
std::vector<signals::ObservationExample> load_corpus(const std::string& dir);

} // namespace hybridad::csv_io

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "uavclust/engine.hpp"

namespace uavclust {

// Trace file layout, one record per line:
//
//   # uavclust-trace 1
//   # scheme=<name> seed=<base> run=<index> mobility_seed=<u64> fading_seed=<u64>
//     scheme_seed=<u64> digest=<hex16> vehicles=<I> uavs=<J> duration=<s> cam_interval=<s>
//   <time>\t<kind>\t<uav|->\t<vehicle|->\t<payload|->
//
// (the header is a single line). Times and payload numbers use the shortest
// round-trip decimal form, so equal runs give byte-identical files.

void write_trace(std::ostream& out, const Trace& trace);
std::string format_trace(const Trace& trace);
Trace read_trace(std::istream& in);
Trace read_trace_file(const std::filesystem::path& path);

/// Looks up `key` in a `k=v;k=v` payload.
std::optional<std::string> payload_value(std::string_view payload, std::string_view key);

}  // namespace uavclust

#pragma once

#include <string>
#include <string_view>

#include "fairdiv/core.hpp"
#include "fairdiv/framework.hpp"

namespace fairdiv::io {

struct InstanceFile {
  std::string model = "custom";
  Instance instance;
};

// All parse functions throw ParseError carrying the line and column of the
// offending JSON value (or of the syntax error).
InstanceFile parse_instance(std::string_view text);
std::string serialize_instance(const Instance& inst, std::string_view model = "custom");

// Checks that the allocation partitions the goods of `inst`.
Allocation parse_allocation(std::string_view text, const Instance& inst);
std::string serialize_allocation(const Allocation& alloc);

// One JSON object on one line: step, rule, agents, goods, phi.
std::string trace_line(const TraceEntry& e);

// Whole file into a string; throws Error when unreadable.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace fairdiv::io

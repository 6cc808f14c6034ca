#pragma once

#include <filesystem>
#include <variant>

#include "opecsim/errors.hpp"
#include "opecsim/simulator.hpp"
#include "opecsim/sweep.hpp"

namespace opecsim {

// A file is a sweep when it carries a v_list or policies key; otherwise it
// describes a single simulation.
using LoadResult = std::variant<SimConfig, SweepSpec>;

// Parses and validates a flat key = value scenario file (see README for
// the key reference). Distributions use `{value:prob, value:prob}` syntax.
// Every invariant is enforced at load time; diagnostics carry file:line.
LoadResult load_config(const std::filesystem::path& path);

// The single-simulation view of a load: a sweep file yields its base config.
SimConfig base_config(const LoadResult& loaded);

}  // namespace opecsim

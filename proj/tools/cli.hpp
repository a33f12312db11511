#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "smddc/config.hpp"

namespace smddc::cli {

using Cell = std::variant<std::monostate, bool, long long, std::uint64_t, double, std::string, std::vector<double>>;
using Row = std::vector<std::pair<std::string, Cell>>;

enum class Axis { Omega, SessionLength, Gamma, Channels, Depth };

Axis parse_axis(std::string_view name);
std::string axis_name(Axis axis);
PolicyKind parse_policy(std::string_view name, int depth);
/// "a,b,c" or "start:step:end" (end inclusive).
std::vector<double> parse_values(std::string_view spec);

std::vector<Row> cmd_ladder(const SystemConfig& config);
std::vector<Row> cmd_analytic(const SystemConfig& config);
/// Runtime is not part of the rows; it goes to `diag` when given.
std::vector<Row> cmd_simulate(const SystemConfig& config, unsigned workers, std::ostream* diag = nullptr);
/// One row per (value, policy). Per-point failures land in the row's `error` column.
std::vector<Row> cmd_sweep(const SystemConfig& base, const std::vector<std::string>& policies, Axis axis,
                           const std::vector<double>& values, unsigned workers);

std::string to_csv(const std::vector<Row>& rows);
std::string to_json(std::string_view command, const std::vector<Row>& rows);

/// Entry point shared by the executable and the tests. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smddc::cli

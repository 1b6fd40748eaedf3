#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnetcap/errors.hpp"
#include "qnetcap/network.hpp"
#include "qnetcap/qkd.hpp"
#include "qnetcap/routing.hpp"
#include "qnetcap/wrn.hpp"

namespace qnetcap::io {

using Json = nlohmann::ordered_json;

/// Malformed or mistyped input document.
class InputError : public Error {
public:
    using Error::Error;
};

Json read_json_file(const std::string& path);
Json parse_json(const std::string& text);
void write_text_file(const std::string& path, const std::string& text);
/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

// {"kind":"ad","p"} | {"kind":"tl","tau","nbar"} | {"kind":"pl","eta"} | {"kind":"id"}
Json to_json(const ChannelSpec& ch);
ChannelSpec channel_from_json(const Json& j, const std::string& path = "channel");

/// nodes[{id, recv?, send?, role?, split?}], edges[{a, b, fibre | channel}],
/// users [a, b], optional family. A missing "users" key is left for validate().
Json to_json(const NetworkGraph& graph);
NetworkGraph network_from_json(const Json& j);

/// {"lower", "upper", "orientation": "x->y", ...}
Json to_json(const EdgeBounds& bounds);

/// {"value", "mincut": {"A", "B", "edges"}, "flows"}
Json to_json(const FlowResult& flow, const BoundedGraph& graph);
Json to_json(const PathResult& path, const BoundedGraph& graph);
Json report_json(const BoundedGraph& graph, const CapacityReport& report);

/// Accepts a preset name or an object overriding the defaults.
qkd::QkdSetup qkd_from_json(const Json& j);
Json to_json(const qkd::QkdSetup& setup);

wrn::WrnSpec wrn_spec_from_json(const Json& j);
Json to_json(const wrn::WrnSpec& spec);

/// {"param", "x", "bracket", "direction", "target", "scale", "fromLowerBound", "fromUpperBound"}
Json to_json(const wrn::ThresholdResult& result);
Json to_json(const wrn::ThresholdReport& report, const std::optional<wrn::DensityResult>& density);

enum class SweepVariable { EdgeLength, InternalLoss, ReceiverNoise, TargetCapacity };
std::string_view to_string(SweepVariable v);

/// Sweeps either the edge bounds over a parameter (edgeLength, internalLoss,
/// receiverNoise) or the bulk threshold over the target (targetCapacity).
struct SweepSpec {
    SweepVariable variable = SweepVariable::EdgeLength;
    double start = 0.0;
    double stop = 1.0;
    int steps = 2;
    bool log_scale = false;
    wrn::ThresholdQuery context;
    /// Parameter solved for when sweeping the target.
    wrn::ParameterKind solve_for = wrn::ParameterKind::EdgeLength;

    std::vector<double> points() const;
};

SweepSpec sweep_from_json(const Json& j);

}  // namespace qnetcap::io

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sdn5g {

enum class NodeKind : std::uint8_t { UE, GNB, DNB, AMF, EAMF, CorePeer };

// Handover involves two base stations of the same kind; registration uses
// only the serving one.
enum class Site : std::uint8_t { Serving, Target };

struct NodeRef {
    NodeKind kind;
    Site site = Site::Serving;

    friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

struct Hop {
    NodeRef from;
    NodeRef to;

    friend bool operator==(const Hop&, const Hop&) = default;
};

enum class Layer : std::uint8_t { RRC, NGAP, F1AP };
enum class Direction : std::uint8_t { Encode, Decode };

// The ten ASN.1 encode/decode operations a control message can incur.
enum class ProcessingStepKind : std::uint8_t {
    GnbRrcDecode,   // P_gd
    GnbRrcEncode,   // P_ge
    GnbNgapEncode,  // P_ge'
    GnbNgapDecode,  // P_gd'
    EamfRrcEncode,  // P_ee
    EamfRrcDecode,  // P_ed
    EamfF1apEncode, // P_e'e
    EamfF1apDecode, // P_e'd
    DnbF1apEncode,  // P_de
    DnbF1apDecode,  // P_dd
};

inline constexpr std::size_t kProcessingStepKindCount = 10;

struct StepTraits {
    NodeKind node;
    Layer layer;
    Direction direction;
    std::string_view notation;
};

StepTraits traits(ProcessingStepKind kind);
std::span<const ProcessingStepKind> all_step_kinds();
bool is_gnb_step(ProcessingStepKind kind);

struct MessageSpec {
    std::string id;           // e.g. "N_cf'"
    std::string display_name; // e.g. "Create Flow"
    std::vector<Hop> hops;
    std::vector<ProcessingStepKind> processing;
    bool core_internal = false;
};

enum class CallflowVariant : std::uint8_t {
    ThreeGppRegistration,
    ProposedRegistration,
    ThreeGppHandover,
    ProposedHandover,
};

std::span<const CallflowVariant> all_variants();
std::string_view variant_name(CallflowVariant v);
std::optional<CallflowVariant> parse_variant(std::string_view name);
bool is_proposed(CallflowVariant v);
bool is_registration(CallflowVariant v);

// Signaling time as a pair of integer coefficients: tx_hops * m * alpha +
// proc_steps * beta.
struct CostPolynomial {
    int tx_hops = 0;
    int proc_steps = 0;

    friend bool operator==(const CostPolynomial&, const CostPolynomial&) = default;
};

// Coefficients every canonical callflow of this variant must total.
CostPolynomial expected_coefficients(CallflowVariant v);

struct Callflow {
    CallflowVariant variant;
    std::vector<MessageSpec> messages;

    int hop_count() const;
    int step_count() const;
};

std::vector<MessageSpec> message_catalog(CallflowVariant v);
Callflow build_callflow(CallflowVariant v);

enum class ViolationKind : std::uint8_t {
    EmptyHops,
    HopDiscontinuity,
    ForeignNode,
    ForbiddenProcessing,
    ProcessingOffPath,
    AmbiguousProcessingNode,
    RelayProcessing,
    CoreInternalMismatch,
    WrongInitiator,
    CoefficientMismatch,
};

struct Violation {
    ViolationKind kind;
    std::optional<std::size_t> message_index;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool contains(ViolationKind kind) const;
    std::string to_string() const;
};

ValidationReport validate_callflow(const Callflow& cf);

// Resolves which node on the message path performs `step`; nullopt when the
// step's node kind is not on the path or matches more than one node.
std::optional<NodeRef> step_location(const MessageSpec& msg, ProcessingStepKind step);

std::string node_name(NodeRef node);
std::string_view node_kind_name(NodeKind kind);

// One JSON object per line: {"id","name","hops","steps","core_internal"},
// preceded by a header line {"variant": ...}.
std::string export_callflow(const Callflow& cf);

// Human-readable aligned table, one row per hop.
std::string render_callflow_table(const Callflow& cf);

} // namespace sdn5g

#include "sdn5g/callflow.hpp"

#include <algorithm>
#include <array>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace sdn5g {

namespace {

using PSK = ProcessingStepKind;

constexpr NodeRef kUe{NodeKind::UE};
constexpr NodeRef kGnb{NodeKind::GNB};
constexpr NodeRef kGnbT{NodeKind::GNB, Site::Target};
constexpr NodeRef kDnb{NodeKind::DNB};
constexpr NodeRef kDnbT{NodeKind::DNB, Site::Target};
constexpr NodeRef kAmf{NodeKind::AMF};
constexpr NodeRef kEamf{NodeKind::EAMF};
constexpr NodeRef kCore{NodeKind::CorePeer};

constexpr std::array<ProcessingStepKind, kProcessingStepKindCount> kAllSteps{
    PSK::GnbRrcDecode,   PSK::GnbRrcEncode,   PSK::GnbNgapEncode, PSK::GnbNgapDecode,
    PSK::EamfRrcEncode,  PSK::EamfRrcDecode,  PSK::EamfF1apEncode, PSK::EamfF1apDecode,
    PSK::DnbF1apEncode,  PSK::DnbF1apDecode,
};

constexpr std::array<CallflowVariant, 4> kAllVariants{
    CallflowVariant::ThreeGppRegistration,
    CallflowVariant::ProposedRegistration,
    CallflowVariant::ThreeGppHandover,
    CallflowVariant::ProposedHandover,
};

MessageSpec direct(std::string id, std::string name, NodeRef from, NodeRef to,
                   std::vector<ProcessingStepKind> steps = {}) {
    const bool core = id.ends_with("''");
    return MessageSpec{std::move(id), std::move(name), {Hop{from, to}}, std::move(steps), core};
}

// UE <-> base station <-> eAMF, transparent at the base station.
MessageSpec relayed(std::string id, std::string name, NodeRef from, NodeRef via, NodeRef to,
                    std::vector<ProcessingStepKind> steps) {
    return MessageSpec{std::move(id), std::move(name), {Hop{from, via}, Hop{via, to}},
                       std::move(steps), false};
}

// Every UE<->AMF NAS exchange crosses the gNB twice: once over RRC, once over
// NG-AP. The NG-AP legs carry the relay work (RRC decode + NG-AP encode
// upstream, NG-AP decode + RRC encode downstream); the RRC legs carry the
// radio-side work. The registration-complete leg is decoded twice because it
// follows the RRC reconfiguration complete.
std::vector<MessageSpec> three_gpp_registration() {
    return {
        direct("N_rr", "Registration Request", kUe, kGnb, {PSK::GnbRrcDecode}),
        direct("N_rr'", "Initial UE Message (Registration Request)", kGnb, kAmf,
               {PSK::GnbRrcDecode, PSK::GnbNgapEncode}),
        direct("N_ireq'", "Downlink NAS Transport (Identity Request)", kAmf, kGnb,
               {PSK::GnbNgapDecode, PSK::GnbRrcEncode}),
        direct("N_ireq", "Identity Request", kGnb, kUe, {PSK::GnbRrcEncode}),
        direct("N_iresp", "Identity Response", kUe, kGnb, {PSK::GnbRrcDecode}),
        direct("N_iresp'", "Uplink NAS Transport (Identity Response)", kGnb, kAmf,
               {PSK::GnbRrcDecode, PSK::GnbNgapEncode}),
        direct("N_areq'", "Downlink NAS Transport (Authentication Request)", kAmf, kGnb,
               {PSK::GnbNgapDecode, PSK::GnbRrcEncode}),
        direct("N_areq", "Authentication Request", kGnb, kUe, {PSK::GnbRrcEncode}),
        direct("N_aresp", "Authentication Response", kUe, kGnb, {PSK::GnbRrcDecode}),
        direct("N_aresp'", "Uplink NAS Transport (Authentication Response)", kGnb, kAmf,
               {PSK::GnbRrcDecode, PSK::GnbNgapEncode}),
        direct("N_creq''", "Create Session Request", kAmf, kCore),
        direct("N_cresp''", "Create Session Response", kCore, kAmf),
        direct("N_ra'", "Initial Context Setup Request (Registration Accept)", kAmf, kGnb,
               {PSK::GnbNgapDecode, PSK::GnbRrcEncode}),
        direct("N_ra", "Registration Accept", kGnb, kUe),
        direct("N_rcr", "RRC Connection Reconfiguration", kGnb, kUe, {PSK::GnbRrcEncode}),
        direct("N_cresp'", "Initial Context Setup Response", kGnb, kAmf,
               {PSK::GnbRrcDecode, PSK::GnbNgapEncode}),
        direct("N_rc", "Registration Complete", kUe, kGnb,
               {PSK::GnbRrcDecode, PSK::GnbRrcDecode}),
        direct("N_rc'", "Uplink NAS Transport (Registration Complete)", kGnb, kAmf,
               {PSK::GnbRrcDecode, PSK::GnbNgapEncode}),
    };
}

// Same encode/decode accounting as the 3GPP flow: the accept rides inside the
// reconfiguration (one encode for both), the complete is decoded twice.
std::vector<MessageSpec> proposed_registration() {
    return {
        relayed("N_rr", "Registration Request", kUe, kDnb, kEamf, {PSK::EamfRrcDecode}),
        relayed("N_ireq", "Identity Request", kEamf, kDnb, kUe, {PSK::EamfRrcEncode}),
        relayed("N_iresp", "Identity Response", kUe, kDnb, kEamf, {PSK::EamfRrcDecode}),
        relayed("N_areq", "Authentication Request", kEamf, kDnb, kUe, {PSK::EamfRrcEncode}),
        relayed("N_aresp", "Authentication Response", kUe, kDnb, kEamf, {PSK::EamfRrcDecode}),
        direct("N_creq''", "Create Session Request", kEamf, kCore),
        direct("N_cresp''", "Create Session Response", kCore, kEamf),
        direct("N_cf'", "Create Flow", kEamf, kDnb, {PSK::EamfF1apEncode, PSK::DnbF1apDecode}),
        relayed("N_ra", "Registration Accept", kEamf, kDnb, kUe, {}),
        relayed("N_rcr", "RRC Connection Reconfiguration", kEamf, kDnb, kUe,
                {PSK::EamfRrcEncode}),
        relayed("N_rc", "Registration Complete", kUe, kDnb, kEamf,
                {PSK::EamfRrcDecode, PSK::EamfRrcDecode}),
    };
}

std::vector<MessageSpec> three_gpp_handover() {
    return {
        direct("N_mc", "Measurement Control", kGnb, kUe, {PSK::GnbRrcEncode}),
        direct("N_mr", "Measurement Report", kUe, kGnb, {PSK::GnbRrcDecode}),
        direct("N_hr", "Handover Required", kGnb, kAmf, {PSK::GnbRrcDecode, PSK::GnbNgapEncode}),
        direct("N_hreq", "Handover Request", kAmf, kGnbT, {PSK::GnbNgapDecode, PSK::GnbRrcEncode}),
        direct("N_hreqa", "Handover Request Acknowledge", kGnbT, kAmf,
               {PSK::GnbRrcDecode, PSK::GnbNgapEncode}),
        direct("N_hc", "Handover Command", kAmf, kGnb, {PSK::GnbNgapDecode, PSK::GnbRrcEncode}),
        direct("N_rcr", "RRC Connection Reconfiguration", kGnb, kUe, {PSK::GnbRrcEncode}),
        direct("N_st", "Session Transfer", kGnb, kAmf, {PSK::GnbRrcDecode, PSK::GnbNgapEncode}),
        direct("N_st'", "Session Transfer (to target)", kAmf, kGnbT,
               {PSK::GnbNgapDecode, PSK::GnbRrcEncode}),
        direct("N_rc", "Handover Confirm", kUe, kGnbT, {PSK::GnbRrcDecode}),
        direct("N_hn", "Handover Notify", kGnbT, kAmf, {PSK::GnbRrcDecode, PSK::GnbNgapEncode}),
        direct("N_crel", "UE Context Release Command", kAmf, kGnb,
               {PSK::GnbNgapDecode, PSK::GnbRrcEncode}),
        direct("N_crel'", "UE Context Release Complete", kGnb, kAmf,
               {PSK::GnbRrcDecode, PSK::GnbNgapEncode}),
    };
}

std::vector<MessageSpec> proposed_handover() {
    return {
        relayed("N_mc", "Measurement Control", kEamf, kDnb, kUe, {PSK::EamfRrcEncode}),
        relayed("N_mr", "Measurement Report", kUe, kDnb, kEamf, {PSK::EamfRrcDecode}),
        direct("N_cf'", "Create Flow", kEamf, kDnbT, {PSK::EamfF1apEncode, PSK::DnbF1apDecode}),
        direct("N_mf'", "Modify Flow", kEamf, kDnb, {PSK::EamfF1apEncode, PSK::DnbF1apDecode}),
        relayed("N_rcr", "RRC Connection Reconfiguration", kEamf, kDnb, kUe,
                {PSK::EamfRrcEncode}),
        direct("N_st", "Session Transfer", kDnb, kEamf, {PSK::DnbF1apEncode, PSK::EamfF1apDecode}),
        direct("N_st'", "Session Transfer (to target)", kEamf, kDnbT,
               {PSK::EamfF1apEncode, PSK::DnbF1apDecode}),
        relayed("N_rc", "Handover Confirm", kUe, kDnbT, kEamf, {PSK::EamfRrcDecode}),
    };
}

NodeRef initiator(CallflowVariant v) {
    switch (v) {
    case CallflowVariant::ThreeGppRegistration:
    case CallflowVariant::ProposedRegistration: return kUe;
    case CallflowVariant::ThreeGppHandover: return kGnb;
    case CallflowVariant::ProposedHandover: return kEamf;
    }
    return kUe;
}

bool node_allowed(CallflowVariant v, NodeKind kind) {
    switch (kind) {
    case NodeKind::UE:
    case NodeKind::CorePeer: return true;
    case NodeKind::GNB:
    case NodeKind::AMF: return !is_proposed(v);
    case NodeKind::DNB:
    case NodeKind::EAMF: return is_proposed(v);
    }
    return false;
}

std::string join_path(const std::vector<Hop>& hops) {
    if (hops.empty()) return "";
    std::string out = node_name(hops.front().from);
    for (const auto& h : hops) {
        out += " > ";
        out += node_name(h.to);
    }
    return out;
}

} // namespace

StepTraits traits(ProcessingStepKind kind) {
    switch (kind) {
    case PSK::GnbRrcDecode: return {NodeKind::GNB, Layer::RRC, Direction::Decode, "P_gd"};
    case PSK::GnbRrcEncode: return {NodeKind::GNB, Layer::RRC, Direction::Encode, "P_ge"};
    case PSK::GnbNgapEncode: return {NodeKind::GNB, Layer::NGAP, Direction::Encode, "P_ge'"};
    case PSK::GnbNgapDecode: return {NodeKind::GNB, Layer::NGAP, Direction::Decode, "P_gd'"};
    case PSK::EamfRrcEncode: return {NodeKind::EAMF, Layer::RRC, Direction::Encode, "P_ee"};
    case PSK::EamfRrcDecode: return {NodeKind::EAMF, Layer::RRC, Direction::Decode, "P_ed"};
    case PSK::EamfF1apEncode: return {NodeKind::EAMF, Layer::F1AP, Direction::Encode, "P_e'e"};
    case PSK::EamfF1apDecode: return {NodeKind::EAMF, Layer::F1AP, Direction::Decode, "P_e'd"};
    case PSK::DnbF1apEncode: return {NodeKind::DNB, Layer::F1AP, Direction::Encode, "P_de"};
    case PSK::DnbF1apDecode: return {NodeKind::DNB, Layer::F1AP, Direction::Decode, "P_dd"};
    }
    return {NodeKind::UE, Layer::RRC, Direction::Encode, "?"};
}

std::span<const ProcessingStepKind> all_step_kinds() { return kAllSteps; }

bool is_gnb_step(ProcessingStepKind kind) { return traits(kind).node == NodeKind::GNB; }

std::span<const CallflowVariant> all_variants() { return kAllVariants; }

std::string_view variant_name(CallflowVariant v) {
    switch (v) {
    case CallflowVariant::ThreeGppRegistration: return "3gpp-registration";
    case CallflowVariant::ProposedRegistration: return "proposed-registration";
    case CallflowVariant::ThreeGppHandover: return "3gpp-handover";
    case CallflowVariant::ProposedHandover: return "proposed-handover";
    }
    return "?";
}

std::optional<CallflowVariant> parse_variant(std::string_view name) {
    for (auto v : kAllVariants)
        if (variant_name(v) == name) return v;
    return std::nullopt;
}

bool is_proposed(CallflowVariant v) {
    return v == CallflowVariant::ProposedRegistration || v == CallflowVariant::ProposedHandover;
}

bool is_registration(CallflowVariant v) {
    return v == CallflowVariant::ThreeGppRegistration ||
           v == CallflowVariant::ProposedRegistration;
}

CostPolynomial expected_coefficients(CallflowVariant v) {
    switch (v) {
    case CallflowVariant::ThreeGppRegistration: return {18, 24};
    case CallflowVariant::ProposedRegistration: return {19, 10};
    case CallflowVariant::ThreeGppHandover: return {13, 22};
    case CallflowVariant::ProposedHandover: return {12, 12};
    }
    return {};
}

int Callflow::hop_count() const {
    int n = 0;
    for (const auto& m : messages) n += static_cast<int>(m.hops.size());
    return n;
}

int Callflow::step_count() const {
    int n = 0;
    for (const auto& m : messages) n += static_cast<int>(m.processing.size());
    return n;
}

std::vector<MessageSpec> message_catalog(CallflowVariant v) {
    switch (v) {
    case CallflowVariant::ThreeGppRegistration: return three_gpp_registration();
    case CallflowVariant::ProposedRegistration: return proposed_registration();
    case CallflowVariant::ThreeGppHandover: return three_gpp_handover();
    case CallflowVariant::ProposedHandover: return proposed_handover();
    }
    return {};
}

Callflow build_callflow(CallflowVariant v) { return Callflow{v, message_catalog(v)}; }

std::optional<NodeRef> step_location(const MessageSpec& msg, ProcessingStepKind step) {
    const NodeKind want = traits(step).node;
    std::optional<NodeRef> found;
    auto consider = [&](NodeRef n) -> bool {
        if (n.kind != want) return true;
        if (found && !(*found == n)) return false;
        found = n;
        return true;
    };
    if (msg.hops.empty()) return std::nullopt;
    if (!consider(msg.hops.front().from)) return std::nullopt;
    for (const auto& h : msg.hops)
        if (!consider(h.to)) return std::nullopt;
    return found;
}

bool ValidationReport::contains(ViolationKind kind) const {
    return std::any_of(violations.begin(), violations.end(),
                       [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const auto& v : violations) {
        if (v.message_index) os << "message " << *v.message_index << ": ";
        os << v.detail << '\n';
    }
    return os.str();
}

ValidationReport validate_callflow(const Callflow& cf) {
    ValidationReport report;
    auto add = [&](ViolationKind k, std::optional<std::size_t> idx, std::string detail) {
        report.violations.push_back(Violation{k, idx, std::move(detail)});
    };
    const bool proposed = is_proposed(cf.variant);

    for (std::size_t i = 0; i < cf.messages.size(); ++i) {
        const MessageSpec& msg = cf.messages[i];
        if (msg.hops.empty()) {
            add(ViolationKind::EmptyHops, i, "empty hop list (" + msg.id + ")");
            continue;
        }
        for (std::size_t h = 0; h + 1 < msg.hops.size(); ++h) {
            if (!(msg.hops[h].to == msg.hops[h + 1].from))
                add(ViolationKind::HopDiscontinuity, i, "hop discontinuity (" + msg.id + ")");
        }
        for (const auto& h : msg.hops) {
            for (NodeRef n : {h.from, h.to}) {
                if (!node_allowed(cf.variant, n.kind))
                    add(ViolationKind::ForeignNode, i,
                        "node " + node_name(n) + " not part of this architecture (" + msg.id +
                            ")");
            }
        }

        const NodeRef origin = msg.hops.front().from;
        const NodeRef dest = msg.hops.back().to;
        for (auto step : msg.processing) {
            const auto notation = std::string(traits(step).notation);
            if (proposed && is_gnb_step(step))
                add(ViolationKind::ForbiddenProcessing, i,
                    "gNB processing in proposed variant (" + notation + " on " + msg.id + ")");
            if (!proposed && !is_gnb_step(step))
                add(ViolationKind::ForbiddenProcessing, i,
                    "dNB/eAMF processing in 3GPP variant (" + notation + " on " + msg.id + ")");
            auto where = step_location(msg, step);
            if (!where) {
                add(ViolationKind::ProcessingOffPath, i,
                    "processing node not uniquely on path (" + notation + " on " + msg.id + ")");
            } else if (!(*where == origin) && !(*where == dest)) {
                add(ViolationKind::RelayProcessing, i,
                    "processing at relay node (" + notation + " on " + msg.id + ")");
            }
        }

        const bool double_primed = msg.id.ends_with("''");
        if (msg.core_internal != double_primed) {
            add(ViolationKind::CoreInternalMismatch, i,
                "core_internal flag disagrees with id (" + msg.id + ")");
        } else if (msg.core_internal) {
            const bool touches_core =
                msg.hops.size() == 1 && (origin.kind == NodeKind::CorePeer ||
                                         dest.kind == NodeKind::CorePeer);
            if (!touches_core || !msg.processing.empty())
                add(ViolationKind::CoreInternalMismatch, i,
                    "core-internal message must be a single unprocessed core hop (" + msg.id +
                        ")");
        }
    }

    if (!cf.messages.empty() && !cf.messages.front().hops.empty() &&
        !(cf.messages.front().hops.front().from == initiator(cf.variant))) {
        add(ViolationKind::WrongInitiator, 0,
            "procedure must start at " + node_name(initiator(cf.variant)));
    }

    const CostPolynomial want = expected_coefficients(cf.variant);
    if (cf.hop_count() != want.tx_hops || cf.step_count() != want.proc_steps) {
        add(ViolationKind::CoefficientMismatch, std::nullopt,
            "coefficient mismatch: got (" + std::to_string(cf.hop_count()) + ", " +
                std::to_string(cf.step_count()) + "), expected (" +
                std::to_string(want.tx_hops) + ", " + std::to_string(want.proc_steps) + ")");
    }
    return report;
}

std::string_view node_kind_name(NodeKind kind) {
    switch (kind) {
    case NodeKind::UE: return "UE";
    case NodeKind::GNB: return "GNB";
    case NodeKind::DNB: return "DNB";
    case NodeKind::AMF: return "AMF";
    case NodeKind::EAMF: return "EAMF";
    case NodeKind::CorePeer: return "CORE";
    }
    return "?";
}

std::string node_name(NodeRef node) {
    std::string s(node_kind_name(node.kind));
    if (node.site == Site::Target) s += "_T";
    return s;
}

std::string export_callflow(const Callflow& cf) {
    std::string out;
    out += nlohmann::json{{"variant", variant_name(cf.variant)}}.dump();
    out += '\n';
    for (const auto& m : cf.messages) {
        nlohmann::json hops = nlohmann::json::array();
        for (const auto& h : m.hops) hops.push_back(node_name(h.from) + ">" + node_name(h.to));
        nlohmann::json steps = nlohmann::json::array();
        for (auto s : m.processing) steps.push_back(traits(s).notation);
        nlohmann::json rec{{"id", m.id},
                           {"name", m.display_name},
                           {"hops", std::move(hops)},
                           {"steps", std::move(steps)},
                           {"core_internal", m.core_internal}};
        out += rec.dump();
        out += '\n';
    }
    return out;
}

std::string render_callflow_table(const Callflow& cf) {
    std::size_t id_w = 2, name_w = 4, path_w = 4;
    for (const auto& m : cf.messages) {
        id_w = std::max(id_w, m.id.size());
        name_w = std::max(name_w, m.display_name.size());
        path_w = std::max(path_w, join_path(m.hops).size());
    }
    std::ostringstream os;
    os << std::left << std::setw(4) << "#" << std::setw(static_cast<int>(id_w) + 2) << "id"
       << std::setw(static_cast<int>(name_w) + 2) << "name"
       << std::setw(static_cast<int>(path_w) + 2) << "path" << "steps\n";
    for (std::size_t i = 0; i < cf.messages.size(); ++i) {
        const auto& m = cf.messages[i];
        std::string steps;
        for (auto s : m.processing) {
            if (!steps.empty()) steps += ' ';
            steps += traits(s).notation;
        }
        if (steps.empty()) steps = "-";
        os << std::left << std::setw(4) << (i + 1) << std::setw(static_cast<int>(id_w) + 2)
           << m.id << std::setw(static_cast<int>(name_w) + 2) << m.display_name
           << std::setw(static_cast<int>(path_w) + 2) << join_path(m.hops) << steps << '\n';
    }
    return os.str();
}

} // namespace sdn5g

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "grn/format.hpp"
#include "grn/network.hpp"

namespace grn {

// ---------------------------------------------------------------------------
// Document model. Parsing produces this verbatim-order structure; validate()
// lowers it onto a NetworkSpec.
// ---------------------------------------------------------------------------

/// A constant level or a step schedule, as written.
struct SignalExpr {
    bool is_schedule = false;
    double constant = 0.0;
    std::vector<std::pair<double, double>> steps;

    bool operator==(const SignalExpr&) const = default;

    InputSchedule to_schedule() const {
        return is_schedule ? InputSchedule(steps) : InputSchedule(constant);
    }
};

/// Right-hand side of a channel assignment: a literal signal or a reference
/// to a named global input.
struct ChannelValue {
    enum class Kind { Literal, InputRef };
    Kind kind = Kind::Literal;
    SignalExpr literal;
    std::string input_ref;

    bool operator==(const ChannelValue&) const = default;
};

struct NeuronBlock {
    std::string name;
    std::vector<std::pair<std::string, double>> params;         // overrides, declaration order
    std::vector<std::pair<std::string, ChannelValue>> channels; // declaration order

    bool operator==(const NeuronBlock&) const = default;
};

struct WireDecl {
    std::string source;  // neuron name; species is always out
    std::string target;  // neuron name
    std::string channel; // IPTG | aTc | IndT
    double gain = 1.0;

    bool operator==(const WireDecl&) const = default;
};

struct SweepBlock {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;  // raw values

    bool operator==(const SweepBlock&) const = default;

    const std::string* find(std::string_view key) const {
        for (const auto& [k, v] : entries)
            if (k == key) return &v;
        return nullptr;
    }
};

struct NetworkDocument {
    std::vector<std::pair<std::string, SignalExpr>> inputs;
    std::vector<NeuronBlock> neurons;
    std::vector<WireDecl> wires;
    std::vector<SweepBlock> sweeps;

    bool operator==(const NetworkDocument&) const = default;

    const NeuronBlock* find_neuron(std::string_view name) const {
        for (const auto& n : neurons)
            if (n.name == name) return &n;
        return nullptr;
    }
    const SignalExpr* find_input(std::string_view name) const {
        for (const auto& [k, v] : inputs)
            if (k == name) return &v;
        return nullptr;
    }
    const SweepBlock* find_sweep(std::string_view name) const {
        for (const auto& s : sweeps)
            if (s.name == name) return &s;
        return nullptr;
    }
};

struct ParseDiagnostic {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    std::size_t line = 0;    // 1-based
    std::size_t column = 0;  // 1-based
    std::string message;
    std::string token;
};

class ParseError : public std::runtime_error {
public:
    explicit ParseError(std::vector<ParseDiagnostic> diags)
        : std::runtime_error(first_message(diags)), diagnostics(std::move(diags)) {}
    std::vector<ParseDiagnostic> diagnostics;

private:
    static std::string first_message(const std::vector<ParseDiagnostic>& diags) {
        if (diags.empty()) return "parse failed";
        const auto& d = diags.front();
        return "line " + std::to_string(d.line) + ":" + std::to_string(d.column) + ": " +
               d.message;
    }
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace netdef_detail {

inline bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
inline bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

inline bool is_identifier(std::string_view s) {
    if (s.empty() || !is_ident_start(s[0])) return false;
    for (char c : s)
        if (!is_ident_char(c)) return false;
    return true;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

/// One physical line with the comment stripped; keeps enough origin
/// information to point diagnostics at exact columns.
struct Line {
    std::size_t number = 0;     // 1-based
    std::string_view text;      // comment-stripped, untrimmed
    std::size_t indent = 0;     // column of first non-blank character (0-based)
};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    std::optional<NetworkDocument> run(std::vector<ParseDiagnostic>& diags) {
        split_lines();
        for (const Line& ln : lines_) parse_line(ln);
        finish_block();
        structural_checks();
        diags = diags_;
        if (!errors_) return doc_;
        return std::nullopt;
    }

private:
    enum class SectionKind { None, Inputs, Neuron, Wires, Sweep };

    void split_lines() {
        std::size_t line_no = 1, start = 0;
        for (std::size_t i = 0; i <= text_.size(); ++i) {
            if (i == text_.size() || text_[i] == '\n') {
                std::string_view raw = text_.substr(start, i - start);
                if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
                std::size_t hash = raw.find('#');
                if (hash != std::string_view::npos) raw = raw.substr(0, hash);
                if (!trim(raw).empty()) {
                    std::size_t ind = 0;
                    while (ind < raw.size() && (raw[ind] == ' ' || raw[ind] == '\t')) ++ind;
                    lines_.push_back({line_no, raw, ind});
                }
                start = i + 1;
                ++line_no;
            }
        }
    }

    void error(std::size_t line, std::size_t column, std::string message,
               std::string token = {}) {
        if (diags_.size() < 100)
            diags_.push_back({ParseDiagnostic::Severity::Error, line, column,
                              std::move(message), std::move(token)});
        errors_ = true;
    }

    void parse_line(const Line& ln) {
        std::string_view body = trim(ln.text);
        if (body.front() == '[') {
            finish_block();
            parse_section_header(ln, body);
            return;
        }
        switch (section_) {
        case SectionKind::None:
            error(ln.number, ln.indent + 1, "statement outside any section",
                  std::string(body.substr(0, body.find(' '))));
            break;
        case SectionKind::Inputs: parse_input_line(ln, body); break;
        case SectionKind::Neuron: parse_neuron_line(ln, body); break;
        case SectionKind::Wires: parse_wire_line(ln, body); break;
        case SectionKind::Sweep: parse_sweep_line(ln, body); break;
        }
    }

    void parse_section_header(const Line& ln, std::string_view body) {
        section_ = SectionKind::None;
        if (body.back() != ']') {
            error(ln.number, ln.indent + body.size(), "unterminated section header");
            return;
        }
        std::string_view inner = trim(body.substr(1, body.size() - 2));
        std::size_t space = inner.find_first_of(" \t");
        std::string_view head = space == std::string_view::npos ? inner : inner.substr(0, space);
        std::string_view rest =
            space == std::string_view::npos ? std::string_view{} : trim(inner.substr(space));

        if (head == "inputs") {
            if (!rest.empty()) {
                error(ln.number, ln.indent + 1, "[inputs] takes no name", std::string(rest));
                return;
            }
            section_ = SectionKind::Inputs;
        } else if (head == "wires") {
            if (!rest.empty()) {
                error(ln.number, ln.indent + 1, "[wires] takes no name", std::string(rest));
                return;
            }
            section_ = SectionKind::Wires;
        } else if (head == "neuron") {
            if (!is_identifier(rest)) {
                error(ln.number, ln.indent + 1, "expected [neuron NAME]", std::string(rest));
                return;
            }
            if (doc_.find_neuron(rest) != nullptr) {
                error(ln.number, ln.indent + 1,
                      "duplicate neuron name " + std::string(rest), std::string(rest));
                return;
            }
            section_ = SectionKind::Neuron;
            current_neuron_ = NeuronBlock{};
            current_neuron_->name = std::string(rest);
            neuron_lines_.push_back(ln.number);
        } else if (head == "sweep") {
            if (!is_identifier(rest)) {
                error(ln.number, ln.indent + 1, "expected [sweep NAME]", std::string(rest));
                return;
            }
            if (doc_.find_sweep(rest) != nullptr) {
                error(ln.number, ln.indent + 1,
                      "duplicate sweep name " + std::string(rest), std::string(rest));
                return;
            }
            section_ = SectionKind::Sweep;
            current_sweep_ = SweepBlock{};
            current_sweep_->name = std::string(rest);
        } else {
            error(ln.number, ln.indent + 2, "unknown section kind", std::string(head));
        }
    }

    void finish_block() {
        if (current_neuron_) {
            doc_.neurons.push_back(std::move(*current_neuron_));
            current_neuron_.reset();
        }
        if (current_sweep_) {
            doc_.sweeps.push_back(std::move(*current_sweep_));
            current_sweep_.reset();
        }
    }

    /// Splits `key = value`; empty return means a diagnostic was already made.
    std::optional<std::pair<std::string_view, std::string_view>>
    split_assignment(const Line& ln, std::string_view body) {
        std::size_t eq = body.find('=');
        if (eq == std::string_view::npos) {
            error(ln.number, ln.indent + 1, "expected key = value");
            return std::nullopt;
        }
        std::string_view key = trim(body.substr(0, eq));
        std::string_view value = trim(body.substr(eq + 1));
        if (!is_identifier(key)) {
            error(ln.number, ln.indent + 1, "key is not an identifier", std::string(key));
            return std::nullopt;
        }
        if (value.empty()) {
            error(ln.number, ln.indent + eq + 2, "missing value after =");
            return std::nullopt;
        }
        return std::make_pair(key, value);
    }

    /// Parses `NUMBER` or `step(t:v, t:v, ...)`.
    std::optional<SignalExpr> parse_signal(const Line& ln, std::string_view value) {
        SignalExpr sig;
        double v = 0.0;
        if (parse_double(value, v)) {
            if (v < 0.0) {
                error(ln.number, ln.indent + 1, "input levels must be nonnegative",
                      std::string(value));
                return std::nullopt;
            }
            sig.constant = v;
            return sig;
        }
        if (value.substr(0, 4) == "step") {
            std::string_view rest = trim(value.substr(4));
            if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') {
                error(ln.number, ln.indent + 1, "malformed step schedule", std::string(value));
                return std::nullopt;
            }
            std::string_view list = rest.substr(1, rest.size() - 2);
            sig.is_schedule = true;
            std::size_t pos = 0;
            while (true) {
                std::size_t comma = list.find(',', pos);
                std::string_view item = trim(list.substr(
                    pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
                std::size_t colon = item.find(':');
                double t = 0.0, level = 0.0;
                if (colon == std::string_view::npos ||
                    !parse_double(trim(item.substr(0, colon)), t) ||
                    !parse_double(trim(item.substr(colon + 1)), level)) {
                    error(ln.number, ln.indent + 1, "expected time:value in step schedule",
                          std::string(item));
                    return std::nullopt;
                }
                if (level < 0.0) {
                    error(ln.number, ln.indent + 1, "input levels must be nonnegative",
                          std::string(item));
                    return std::nullopt;
                }
                if (sig.steps.empty() ? t != 0.0 : t <= sig.steps.back().first) {
                    error(ln.number, ln.indent + 1,
                          "step times must start at 0 and strictly increase", std::string(item));
                    return std::nullopt;
                }
                sig.steps.emplace_back(t, level);
                if (comma == std::string_view::npos) break;
                pos = comma + 1;
            }
            return sig;
        }
        error(ln.number, ln.indent + 1, "expected a number or step(...)", std::string(value));
        return std::nullopt;
    }

    void parse_input_line(const Line& ln, std::string_view body) {
        auto kv = split_assignment(ln, body);
        if (!kv) return;
        auto [key, value] = *kv;
        if (doc_.find_input(key) != nullptr) {
            error(ln.number, ln.indent + 1, "duplicate input " + std::string(key),
                  std::string(key));
            return;
        }
        auto sig = parse_signal(ln, value);
        if (!sig) return;
        doc_.inputs.emplace_back(std::string(key), *sig);
    }

    void parse_neuron_line(const Line& ln, std::string_view body) {
        auto kv = split_assignment(ln, body);
        if (!kv) return;
        auto [key, value] = *kv;
        NeuronBlock& nb = *current_neuron_;

        InputChannel channel{};
        if (input_channel_from_name(key, channel)) {
            for (const auto& [k, v] : nb.channels) {
                if (k == key) {
                    error(ln.number, ln.indent + 1,
                          "channel " + std::string(key) + " assigned twice", std::string(key));
                    return;
                }
            }
            ChannelValue cv;
            if (is_identifier(value)) {
                cv.kind = ChannelValue::Kind::InputRef;
                cv.input_ref = std::string(value);
                channel_ref_lines_.push_back({nb.name, std::string(key), cv.input_ref,
                                              ln.number, ln.indent + 1});
            } else {
                auto sig = parse_signal(ln, value);
                if (!sig) return;
                cv.literal = *sig;
            }
            nb.channels.emplace_back(std::string(key), std::move(cv));
            return;
        }

        if (find_parameter_field(key) == nullptr) {
            error(ln.number, ln.indent + 1,
                  "unknown parameter " + std::string(key), std::string(key));
            return;
        }
        for (const auto& [k, v] : nb.params) {
            if (k == key) {
                error(ln.number, ln.indent + 1,
                      "parameter " + std::string(key) + " assigned twice", std::string(key));
                return;
            }
        }
        double v = 0.0;
        if (!parse_double(value, v)) {
            error(ln.number, ln.indent + 1, "expected a number", std::string(value));
            return;
        }
        nb.params.emplace_back(std::string(key), v);
    }

    void parse_wire_line(const Line& ln, std::string_view body) {
        // wire SRC.out -> DST.CHANNEL [gain FLOAT]
        auto fail = [&](std::string_view what) {
            error(ln.number, ln.indent + 1, std::string(what), std::string(body));
        };
        if (body.substr(0, 4) != "wire" || (body.size() > 4 && is_ident_char(body[4])))
            return fail("expected wire statement");
        std::string_view rest = trim(body.substr(4));

        std::size_t arrow = rest.find("->");
        if (arrow == std::string_view::npos) return fail("expected -> in wire statement");
        std::string_view lhs = trim(rest.substr(0, arrow));
        std::string_view rhs = trim(rest.substr(arrow + 2));

        std::size_t ldot = lhs.find('.');
        if (ldot == std::string_view::npos || !is_identifier(lhs.substr(0, ldot)) ||
            lhs.substr(ldot + 1) != "out")
            return fail("wire source must be NEURON.out");

        WireDecl w;
        w.source = std::string(lhs.substr(0, ldot));

        std::string_view target = rhs;
        std::size_t gain_pos = rhs.find(" gain");
        std::size_t tab_gain = rhs.find("\tgain");
        if (tab_gain != std::string_view::npos &&
            (gain_pos == std::string_view::npos || tab_gain < gain_pos))
            gain_pos = tab_gain;
        if (gain_pos != std::string_view::npos) {
            target = trim(rhs.substr(0, gain_pos));
            std::string_view gv = trim(rhs.substr(gain_pos + 5));
            if (!parse_double(gv, w.gain)) return fail("expected a number after gain");
        }

        std::size_t rdot = target.find('.');
        if (rdot == std::string_view::npos || !is_identifier(target.substr(0, rdot)))
            return fail("wire target must be NEURON.CHANNEL");
        InputChannel channel{};
        std::string_view chan_name = target.substr(rdot + 1);
        if (!input_channel_from_name(chan_name, channel))
            return fail("unknown channel in wire target");
        if (channel != InputChannel::IPTG && channel != InputChannel::aTc &&
            channel != InputChannel::IndT)
            return fail("wires may target only IPTG, aTc, or IndT");

        w.target = std::string(target.substr(0, rdot));
        w.channel = std::string(chan_name);
        wire_lines_.push_back(ln.number);
        doc_.wires.push_back(std::move(w));
    }

    void parse_sweep_line(const Line& ln, std::string_view body) {
        auto kv = split_assignment(ln, body);
        if (!kv) return;
        auto [key, value] = *kv;
        for (const auto& [k, v] : current_sweep_->entries) {
            if (k == key) {
                error(ln.number, ln.indent + 1,
                      "sweep key " + std::string(key) + " assigned twice", std::string(key));
                return;
            }
        }
        current_sweep_->entries.emplace_back(std::string(key), std::string(value));
    }

    void structural_checks() {
        if (doc_.neurons.empty() && !errors_) {
            error(lines_.empty() ? 1 : lines_.back().number, 1, "no neuron declared");
            return;
        }

        // Unresolved references.
        for (const auto& ref : channel_ref_lines_) {
            if (doc_.find_input(ref.input) == nullptr)
                error(ref.line, ref.column, "unknown input " + ref.input, ref.input);
        }
        for (std::size_t i = 0; i < doc_.wires.size(); ++i) {
            const WireDecl& w = doc_.wires[i];
            if (doc_.find_neuron(w.source) == nullptr)
                error(wire_lines_[i], 1, "unknown neuron " + w.source, w.source);
            if (doc_.find_neuron(w.target) == nullptr)
                error(wire_lines_[i], 1, "unknown neuron " + w.target, w.target);
            if (w.source == w.target)
                error(wire_lines_[i], 1, "wire may not loop a neuron onto itself", w.source);
        }
        if (errors_) return;

        // A channel may be driven by wires or by a clamp, never both.
        for (std::size_t i = 0; i < doc_.wires.size(); ++i) {
            const WireDecl& w = doc_.wires[i];
            const NeuronBlock* nb = doc_.find_neuron(w.target);
            for (const auto& [key, value] : nb->channels) {
                if (key == w.channel)
                    error(wire_lines_[i], 1,
                          "channel " + w.target + "." + w.channel +
                              " driven twice (clamp and wire)");
            }
        }

        // Feed-forward check: peel neurons with no incoming wires.
        std::set<std::string> remaining;
        for (const auto& n : doc_.neurons) remaining.insert(n.name);
        bool progress = true;
        while (progress) {
            progress = false;
            for (auto it = remaining.begin(); it != remaining.end();) {
                bool has_upstream = false;
                for (const auto& w : doc_.wires)
                    if (w.target == *it && remaining.count(w.source)) has_upstream = true;
                if (!has_upstream) {
                    it = remaining.erase(it);
                    progress = true;
                } else {
                    ++it;
                }
            }
        }
        if (!remaining.empty()) {
            for (std::size_t i = 0; i < doc_.wires.size(); ++i)
                if (remaining.count(doc_.wires[i].source)) {
                    error(wire_lines_[i], 1,
                          "wiring contains a cycle; only feed-forward networks are supported");
                    break;
                }
        }
    }

    struct ChannelRef {
        std::string neuron, channel, input;
        std::size_t line, column;
    };

    std::string_view text_;
    std::vector<Line> lines_;
    SectionKind section_ = SectionKind::None;
    std::optional<NeuronBlock> current_neuron_;
    std::optional<SweepBlock> current_sweep_;
    NetworkDocument doc_;
    std::vector<ParseDiagnostic> diags_;
    std::vector<ChannelRef> channel_ref_lines_;
    std::vector<std::size_t> wire_lines_;
    std::vector<std::size_t> neuron_lines_;
    bool errors_ = false;
};

} // namespace netdef_detail

/// Parses network-definition text. Returns the document or, with `diags`
/// given, reports all diagnostics there; without it the first error is
/// thrown as ParseError.
inline std::optional<NetworkDocument> parse_network(std::string_view text,
                                                    std::vector<ParseDiagnostic>& diags) {
    return netdef_detail::Parser(text).run(diags);
}

inline NetworkDocument parse_network(std::string_view text) {
    std::vector<ParseDiagnostic> diags;
    auto doc = parse_network(text, diags);
    if (!doc) throw ParseError(std::move(diags));
    return *doc;
}

// ---------------------------------------------------------------------------
// Canonical serialization: LF endings, sections in canonical order, keys in
// declaration order, floats in shortest round-trip form.
// ---------------------------------------------------------------------------

namespace netdef_detail {

inline void append_signal(std::string& out, const SignalExpr& sig) {
    if (!sig.is_schedule) {
        out += format_double(sig.constant);
        return;
    }
    out += "step(";
    for (std::size_t i = 0; i < sig.steps.size(); ++i) {
        if (i) out += ", ";
        out += format_double(sig.steps[i].first);
        out += ':';
        out += format_double(sig.steps[i].second);
    }
    out += ')';
}

} // namespace netdef_detail

inline std::string serialize_network(const NetworkDocument& doc) {
    std::string out;
    bool first_section = true;
    auto open_section = [&](std::string header) {
        if (!first_section) out += '\n';
        first_section = false;
        out += '[';
        out += header;
        out += "]\n";
    };

    if (!doc.inputs.empty()) {
        open_section("inputs");
        for (const auto& [name, sig] : doc.inputs) {
            out += name;
            out += " = ";
            netdef_detail::append_signal(out, sig);
            out += '\n';
        }
    }
    for (const auto& n : doc.neurons) {
        open_section("neuron " + n.name);
        for (const auto& [key, value] : n.params) {
            out += key;
            out += " = ";
            out += format_double(value);
            out += '\n';
        }
        for (const auto& [key, cv] : n.channels) {
            out += key;
            out += " = ";
            if (cv.kind == ChannelValue::Kind::InputRef) out += cv.input_ref;
            else netdef_detail::append_signal(out, cv.literal);
            out += '\n';
        }
    }
    if (!doc.wires.empty()) {
        open_section("wires");
        for (const auto& w : doc.wires) {
            out += "wire ";
            out += w.source;
            out += ".out -> ";
            out += w.target;
            out += '.';
            out += w.channel;
            if (w.gain != 1.0) {
                out += " gain ";
                out += format_double(w.gain);
            }
            out += '\n';
        }
    }
    for (const auto& s : doc.sweeps) {
        open_section("sweep " + s.name);
        for (const auto& [key, value] : s.entries) {
            out += key;
            out += " = ";
            out += value;
            out += '\n';
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lowering onto the simulator spec.
// ---------------------------------------------------------------------------

/// Builds the validated NetworkSpec the document describes: defaults filled,
/// overrides applied, channels clamped or wired. Throws SpecError on any
/// violated invariant (parameter ranges, unknown references, cycles).
inline NetworkSpec validate_network(const NetworkDocument& doc) {
    if (doc.neurons.empty()) throw SpecError("no neuron declared");
    NetworkSpec spec;
    for (const auto& nb : doc.neurons) {
        NeuronParameters p;
        for (const auto& [key, value] : nb.params) {
            const ParameterField* f = find_parameter_field(key);
            if (f == nullptr) throw SpecError("unknown parameter " + key);
            p.*(f->member) = value;
        }
        std::size_t idx;
        try {
            idx = spec.add_neuron(nb.name, p);
        } catch (const std::invalid_argument& e) {
            throw SpecError(nb.name + ": " + e.what());
        }
        for (const auto& [key, cv] : nb.channels) {
            InputChannel channel{};
            if (!input_channel_from_name(key, channel))
                throw SpecError("unknown channel " + key);
            if (cv.kind == ChannelValue::Kind::InputRef) {
                const SignalExpr* sig = doc.find_input(cv.input_ref);
                if (sig == nullptr) throw SpecError("unknown input " + cv.input_ref);
                spec.clamp(idx, channel, sig->to_schedule());
            } else {
                spec.clamp(idx, channel, cv.literal.to_schedule());
            }
        }
    }
    for (const auto& w : doc.wires) {
        std::size_t src = spec.neuron_index(w.source);
        std::size_t dst = spec.neuron_index(w.target);
        InputChannel channel{};
        if (!input_channel_from_name(w.channel, channel))
            throw SpecError("unknown channel " + w.channel);
        spec.wire(src, dst, channel, w.gain);
    }
    spec.validate();
    return spec;
}

/// Collects every channel clamp a named input drives, so sweeps can vary the
/// logical input rather than individual channels. Throws SpecError when the
/// input is unknown or dangling.
inline InputBinding input_binding(const NetworkDocument& doc, const NetworkSpec& spec,
                                  std::string_view input_name) {
    if (doc.find_input(input_name) == nullptr)
        throw SpecError("unknown input " + std::string(input_name));
    InputBinding binding;
    binding.name = input_name;
    for (const auto& nb : doc.neurons) {
        for (const auto& [key, cv] : nb.channels) {
            if (cv.kind != ChannelValue::Kind::InputRef || cv.input_ref != input_name)
                continue;
            InputChannel channel{};
            if (!input_channel_from_name(key, channel))
                throw SpecError("unknown channel " + key);
            binding.targets.emplace_back(spec.neuron_index(nb.name), channel);
        }
    }
    if (binding.targets.empty())
        throw SpecError("input " + std::string(input_name) + " drives no channel");
    return binding;
}

} // namespace grn

#include "fockjoin/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "fockjoin/dualrail.hpp"
#include "fockjoin/linear_optics.hpp"

namespace fockjoin {

namespace {

struct Token {
    std::string text;
    int column;
};

std::vector<Token> tokenize(std::string_view line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#')
            break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#')
            ++i;
        out.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    return out;
}

const std::map<std::string, OpKind, std::less<>>& keywords()
{
    static const std::map<std::string, OpKind, std::less<>> k{
        {"bs", OpKind::Bs},       {"ps", OpKind::Ps},         {"perm", OpKind::Perm},
        {"had", OpKind::Had},     {"cnot", OpKind::Cnot},     {"rcnot", OpKind::Rcnot},
        {"zflip", OpKind::Zflip}, {"project", OpKind::Project}, {"vacuum", OpKind::Vacuum},
        {"mark", OpKind::Mark},
    };
    return k;
}

std::optional<int> parse_int(const std::string& s)
{
    int v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        return std::nullopt;
    return v;
}

std::optional<double> parse_double(const std::string& s)
{
    double v = 0.0;
    const char* first = s.data();
    if (!s.empty() && s[0] == '+')
        ++first;
    const auto [p, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || !std::isfinite(v))
        return std::nullopt;
    return v;
}

std::string format_double(double v)
{
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

// Parses one instruction line; pushes diagnostics and returns nullopt on
// any problem.
class LineParser {
public:
    LineParser(int line, const std::vector<Token>& toks, int modes, std::vector<ParseDiagnostic>& diags)
        : line_(line), toks_(toks), modes_(modes), diags_(diags)
    {
    }

    std::optional<Instruction> parse(OpKind kind)
    {
        Instruction ins;
        ins.kind = kind;
        ins.line = line_;
        const std::size_t n = toks_.size() - 1;

        switch (kind) {
        case OpKind::Bs:
            if (!arity(n == 4, "bs i j theta phi")) return std::nullopt;
            if (!read_modes(ins, 1, 2) || !read_params(ins, 3, 2)) return std::nullopt;
            if (!distinct(ins, 1)) return std::nullopt;
            break;
        case OpKind::Ps:
            if (!arity(n == 2, "ps i phi")) return std::nullopt;
            if (!read_modes(ins, 1, 1) || !read_params(ins, 2, 1)) return std::nullopt;
            break;
        case OpKind::Perm: {
            if (!arity(static_cast<int>(n) == modes_, "perm p0 ... p" + std::to_string(modes_ - 1)))
                return std::nullopt;
            if (!read_modes(ins, 1, n)) return std::nullopt;
            auto sorted = ins.modes;
            std::sort(sorted.begin(), sorted.end());
            for (int i = 0; i < modes_; ++i) {
                if (sorted[static_cast<std::size_t>(i)] != i) {
                    error(toks_[1], "perm is not a permutation of 0.." + std::to_string(modes_ - 1));
                    return std::nullopt;
                }
            }
            break;
        }
        case OpKind::Had:
        case OpKind::Zflip:
            if (!arity(n == 2, to_string(kind) + " i j")) return std::nullopt;
            if (!read_modes(ins, 1, 2) || !distinct(ins, 1)) return std::nullopt;
            break;
        case OpKind::Cnot:
        case OpKind::Rcnot:
            if (!arity(n == 4 || n == 6 || n == 8, to_string(kind) + " c0 c1 t0 t1 [eta_re eta_im [etap_re etap_im]]"))
                return std::nullopt;
            if (!read_modes(ins, 1, 4) || !distinct(ins, 1) || !read_params(ins, 5, n - 4)) return std::nullopt;
            break;
        case OpKind::Project: {
            if (!arity(n >= 3 && n % 3 == 0, "project i re im [i re im ...]")) return std::nullopt;
            for (std::size_t k = 1; k < toks_.size(); k += 3)
                if (!read_modes(ins, k, 1) || !read_params(ins, k + 1, 2)) return std::nullopt;
            if (!distinct(ins, 1)) return std::nullopt;
            double norm = 0.0;
            for (std::size_t k = 0; k < ins.params.size(); k += 2)
                norm += ins.params[k] * ins.params[k] + ins.params[k + 1] * ins.params[k + 1];
            if (std::abs(norm - 1.0) > kNormTolerance) {
                error(toks_[0], "projector amplitudes are not normalized (sum |.|^2 = " + format_double(norm) + ")");
                return std::nullopt;
            }
            break;
        }
        case OpKind::Vacuum:
            if (!arity(n >= 1, "vacuum m [m ...]")) return std::nullopt;
            if (!read_modes(ins, 1, n) || !distinct(ins, 1)) return std::nullopt;
            break;
        case OpKind::Mark:
            if (!arity(n == 1, "mark NAME")) return std::nullopt;
            ins.name = toks_[1].text;
            break;
        }
        return ins;
    }

private:
    void error(const Token& t, std::string msg) { diags_.push_back({line_, t.column, std::move(msg), t.text}); }

    bool arity(bool ok, const std::string& usage)
    {
        if (!ok)
            error(toks_[0], "wrong number of arguments for '" + toks_[0].text + "' (usage: " + usage + ")");
        return ok;
    }

    bool read_modes(Instruction& ins, std::size_t first, std::size_t count)
    {
        for (std::size_t k = first; k < first + count; ++k) {
            const auto v = parse_int(toks_[k].text);
            if (!v) {
                error(toks_[k], "mode index is not an integer");
                return false;
            }
            if (*v < 0 || *v >= modes_) {
                error(toks_[k], "mode " + toks_[k].text + " out of range (modes " + std::to_string(modes_) + ")");
                return false;
            }
            ins.modes.push_back(*v);
        }
        return true;
    }

    bool read_params(Instruction& ins, std::size_t first, std::size_t count)
    {
        for (std::size_t k = first; k < first + count; ++k) {
            const auto v = parse_double(toks_[k].text);
            if (!v) {
                error(toks_[k], "not a number");
                return false;
            }
            ins.params.push_back(*v);
        }
        return true;
    }

    bool distinct(const Instruction& ins, std::size_t first_token)
    {
        auto sorted = ins.modes;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            error(toks_[first_token], "repeated mode in '" + toks_[0].text + "'");
            return false;
        }
        return true;
    }

    int line_;
    const std::vector<Token>& toks_;
    int modes_;
    std::vector<ParseDiagnostic>& diags_;
};

Complex eta_param(const Instruction& ins, std::size_t at)
{
    if (ins.params.size() < at + 2)
        return 1.0;
    return {ins.params[at], ins.params[at + 1]};
}

} // namespace

std::string to_string(OpKind k)
{
    switch (k) {
    case OpKind::Bs:      return "bs";
    case OpKind::Ps:      return "ps";
    case OpKind::Perm:    return "perm";
    case OpKind::Had:     return "had";
    case OpKind::Cnot:    return "cnot";
    case OpKind::Rcnot:   return "rcnot";
    case OpKind::Zflip:   return "zflip";
    case OpKind::Project: return "project";
    case OpKind::Vacuum:  return "vacuum";
    case OpKind::Mark:    return "mark";
    }
    return "?";
}

std::string to_string(const ParseDiagnostic& d)
{
    std::string s = "line " + std::to_string(d.line) + ", column " + std::to_string(d.column) + ": " + d.message;
    if (!d.token.empty())
        s += " ('" + d.token + "')";
    return s;
}

ParseResult parse_circuit(std::string_view text)
{
    ParseResult result;
    auto& diags = result.diagnostics;
    CircuitProgram prog;
    bool have_modes = false;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        pos = end + 1;
        ++line_no;

        const auto toks = tokenize(line);
        if (toks.empty())
            continue;

        if (toks[0].text == "modes") {
            if (have_modes) {
                diags.push_back({line_no, toks[0].column, "duplicate 'modes' declaration", toks[0].text});
                continue;
            }
            if (toks.size() != 2) {
                diags.push_back({line_no, toks[0].column, "wrong number of arguments for 'modes' (usage: modes N)",
                                 toks[0].text});
                continue;
            }
            const auto n = parse_int(toks[1].text);
            if (!n || *n < 1) {
                diags.push_back({line_no, toks[1].column, "mode count must be a positive integer", toks[1].text});
                continue;
            }
            prog.modes = *n;
            have_modes = true;
            continue;
        }

        const auto kw = keywords().find(toks[0].text);
        if (kw == keywords().end()) {
            diags.push_back({line_no, toks[0].column, "unknown keyword", toks[0].text});
            continue;
        }
        if (!have_modes) {
            diags.push_back({line_no, toks[0].column, "instruction before the 'modes' declaration", toks[0].text});
            continue;
        }
        if (auto ins = LineParser(line_no, toks, prog.modes, diags).parse(kw->second))
            prog.instructions.push_back(std::move(*ins));
    }

    if (!have_modes && diags.empty())
        diags.push_back({1, 1, "missing 'modes' declaration", ""});
    if (diags.empty())
        result.program = std::move(prog);
    return result;
}

std::string pretty_print(const CircuitProgram& p)
{
    std::ostringstream os;
    os << "modes " << p.modes << '\n';
    for (const auto& ins : p.instructions) {
        os << to_string(ins.kind);
        if (ins.kind == OpKind::Project) {
            for (std::size_t k = 0; k < ins.modes.size(); ++k)
                os << ' ' << ins.modes[k] << ' ' << format_double(ins.params[2 * k]) << ' '
                   << format_double(ins.params[2 * k + 1]);
        } else if (ins.kind == OpKind::Mark) {
            os << ' ' << ins.name;
        } else {
            for (int m : ins.modes) os << ' ' << m;
            for (double v : ins.params) os << ' ' << format_double(v);
        }
        os << '\n';
    }
    return os.str();
}

CircuitError::CircuitError(int instruction, int line, const std::string& message)
    : Error("instruction " + std::to_string(instruction) + (line > 0 ? " (line " + std::to_string(line) + ")" : "") +
            ": " + message),
      instruction_(instruction),
      line_(line)
{
}

RunResult run_circuit(const CircuitProgram& p, const FockState& input)
{
    if (input.modes() != p.modes)
        throw DimensionError("circuit declares " + std::to_string(p.modes) + " modes, input has " +
                             std::to_string(input.modes()));
    RunResult r;
    r.state = input;
    const int m = p.modes;

    for (std::size_t idx = 0; idx < p.instructions.size(); ++idx) {
        const Instruction& ins = p.instructions[idx];
        const auto& md = ins.modes;
        try {
            switch (ins.kind) {
            case OpKind::Bs:
                r.state = apply_unitary(r.state, beamsplitter(m, md[0], md[1], ins.params[0], ins.params[1]));
                break;
            case OpKind::Ps:
                r.state = apply_unitary(r.state, phase_shift(m, md[0], ins.params[0]));
                break;
            case OpKind::Perm:
                r.state = apply_unitary(r.state, permutation(md));
                break;
            case OpKind::Had:
                r.state = apply_unitary(r.state, hadamard_pair(m, md[0], md[1]));
                break;
            case OpKind::Cnot:
            case OpKind::Rcnot: {
                const CnotSpec g{{md[0], md[1]}, {md[2], md[3]}, eta_param(ins, 0), eta_param(ins, 2)};
                r.state = ins.kind == OpKind::Cnot ? apply_cnot(r.state, g) : apply_reversed_cnot(r.state, g);
                break;
            }
            case OpKind::Zflip:
                r.state = logical_phase_flip(r.state, {md[0], md[1]});
                break;
            case OpKind::Project: {
                std::vector<std::pair<int, Complex>> entries;
                for (std::size_t k = 0; k < md.size(); ++k)
                    entries.emplace_back(md[k], Complex(ins.params[2 * k], ins.params[2 * k + 1]));
                const auto res = apply_projector(r.state, ProjectorSpec::on_modes(m, entries));
                r.state = res.state;
                r.probability *= res.probability;
                r.log.push_back({static_cast<int>(idx), ins.line, "project", res.probability});
                break;
            }
            case OpKind::Vacuum: {
                const auto res = postselect_vacuum(r.state, md);
                r.state = res.state;
                r.probability *= res.probability;
                r.log.push_back({static_cast<int>(idx), ins.line, "vacuum", res.probability});
                break;
            }
            case OpKind::Mark:
                r.log.push_back({static_cast<int>(idx), ins.line, "mark " + ins.name, r.probability});
                break;
            }
        } catch (const Error& e) {
            throw CircuitError(static_cast<int>(idx), ins.line, to_string(ins.kind) + ": " + e.what());
        }
    }
    return r;
}

} // namespace fockjoin

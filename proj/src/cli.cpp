#include "fockjoin/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "fockjoin/circuit.hpp"
#include "fockjoin/dualrail.hpp"
#include "fockjoin/json_io.hpp"
#include "fockjoin/nogo.hpp"
#include "fockjoin/schemes.hpp"
#include "fockjoin/tpes.hpp"

namespace fockjoin {

namespace {

// Bad input documents and bad flag values are usage errors; everything the
// physics layer throws is a scheme error.
class UsageError : public Error {
public:
    using Error::Error;
};

struct SchemeArgs {
    std::string input;
    std::string variant = "projective";
    std::string branch = "plus";
    bool feed_forward = false;
    std::uint64_t seed = 0;
    std::string report;
};

struct TpesArgs {
    std::string pol = "phi-";
    std::string path = "phi-";
    bool via_joining = false;
    std::string out;
};

struct TeleportArgs {
    std::string alpha = "1", beta = "0", gamma = "1", delta = "0";
    std::optional<int> outcome;
    bool sample = false;
    std::uint64_t seed = 0;
    std::string resource_pol = "phi-";
    std::string resource_path = "phi-";
    std::string report;
};

struct NogoArgs {
    int modes = 4;
    long trials = 10000;
    int restarts = 0;
    int iterations = 500;
    bool control = false;
    std::uint64_t seed = 0;
    std::string out;
};

struct RunArgs {
    std::string circuit;
    std::string input;
    std::string out;
};

struct DemoArgs {
    std::string out;
};

void emit(const Json& j, const std::string& path, std::ostream& out)
{
    const std::string text = dump_json(j);
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw UsageError("cannot write " + path);
    f << text;
}

BranchSelect branch_select(const SchemeArgs& a)
{
    if (a.branch == "plus") return BranchSelect::plus();
    if (a.branch == "minus") return BranchSelect::minus();
    if (a.branch == "sample") return BranchSelect::sample(a.seed);
    throw UsageError("--branch must be plus, minus or sample");
}

struct LoadedState {
    FockState state;
    std::string digest;
};

LoadedState load_state(const std::string& path)
{
    try {
        const std::string text = read_text_file(path);
        return {state_from_json(parse_json(text)), sha256_hex(text)};
    } catch (const FormatError& e) {
        throw UsageError(e.what());
    } catch (const OccupationError& e) {
        throw UsageError(e.what());
    }
}

BellKind bell_arg(const std::string& s)
{
    try {
        return parse_bell_kind(s);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

// "x" or "x,y" for x + i y.
Complex complex_arg(const std::string& s, const char* name)
{
    try {
        std::size_t used = 0;
        const auto comma = s.find(',');
        const std::string re = s.substr(0, comma);
        const double x = std::stod(re, &used);
        if (used != re.size()) throw std::invalid_argument(s);
        double y = 0.0;
        if (comma != std::string::npos) {
            const std::string im = s.substr(comma + 1);
            y = std::stod(im, &used);
            if (used != im.size()) throw std::invalid_argument(s);
        }
        return {x, y};
    } catch (const std::exception&) {
        throw UsageError(std::string("--") + name + " expects 're' or 're,im', got '" + s + "'");
    }
}

int do_join(const SchemeArgs& a, std::ostream& out)
{
    const LoadedState in = load_state(a.input);
    const TwoQubitInput s = TwoQubitInput::from_state(in.state);
    JoinOptions opt;
    opt.feed_forward = a.feed_forward;
    SchemeReport r;
    if (a.variant == "projective")
        r = join_projective(s, branch_select(a), opt);
    else if (a.variant == "deterministic")
        r = join_deterministic(s, opt);
    else
        throw UsageError("--variant must be projective or deterministic");
    Json j = report_to_json(r);
    j["scheme"] = "join-" + a.variant;
    stamp_report(j, a.seed, in.digest);
    emit(j, a.report, out);
    return kExitOk;
}

int do_split(const SchemeArgs& a, std::ostream& out)
{
    const LoadedState in = load_state(a.input);
    const Ququart q = Ququart::from_state(in.state);
    SchemeReport r;
    if (a.variant == "projective")
        r = split_projective(q, branch_select(a), a.feed_forward);
    else if (a.variant == "deterministic")
        r = split_deterministic(q);
    else
        throw UsageError("--variant must be projective or deterministic");
    Json j = report_to_json(r);
    j["scheme"] = "split-" + a.variant;
    stamp_report(j, a.seed, in.digest);
    emit(j, a.report, out);
    return kExitOk;
}

int do_tpes(const TpesArgs& a, std::ostream& out)
{
    const BellKind pol = bell_arg(a.pol);
    const BellKind path = bell_arg(a.path);
    const FockState s = a.via_joining ? tpes_via_joining(pol, path) : build_tpes(pol, path);
    Json j{{"polarization", to_string(pol, Dof::Polarization)},
           {"path", to_string(path, Dof::Path)},
           {"via_joining", a.via_joining},
           {"state", state_to_json(s)},
           {"photon1_schmidt_rank", schmidt_rank(s, Bipartition::from_left(12, {0, 1, 2, 3}))}};
    stamp_report(j, 0, sha256_hex(a.pol + "|" + a.path + "|" + (a.via_joining ? "joining" : "direct")));
    emit(j, a.out, out);
    return kExitOk;
}

int do_teleport(const TeleportArgs& a, std::ostream& out)
{
    if (a.outcome && a.sample)
        throw UsageError("--outcome and --sample are exclusive");
    const Complex alpha = complex_arg(a.alpha, "alpha");
    const Complex beta = complex_arg(a.beta, "beta");
    const Complex gamma = complex_arg(a.gamma, "gamma");
    const Complex delta = complex_arg(a.delta, "delta");
    const Resource res{bell_arg(a.resource_pol), bell_arg(a.resource_path)};

    OutcomeSelect sel = OutcomeSelect::sample(a.seed);
    if (a.outcome) {
        if (*a.outcome < 0 || *a.outcome >= 16)
            throw UsageError("--outcome must be in [0, 16)");
        sel = OutcomeSelect::fixed(BellOutcome::from_index(*a.outcome));
    } else if (!a.sample) {
        sel = OutcomeSelect::fixed(BellOutcome{BellKind::PhiMinus, BellKind::PhiMinus});
    }
    const TeleportReport r = teleport_join(alpha, beta, gamma, delta, sel, res);
    Json j = teleport_to_json(r);
    j["scheme"] = "teleport-join";
    stamp_report(j, a.seed,
                 sha256_hex(a.alpha + "|" + a.beta + "|" + a.gamma + "|" + a.delta + "|" + a.resource_pol + "|" +
                            a.resource_path));
    emit(j, a.report, out);
    return kExitOk;
}

int do_nogo(const NogoArgs& a, std::ostream& out)
{
    if (a.modes < 4)
        throw UsageError("--modes must be at least 4");
    if (a.trials < 1)
        throw UsageError("--trials must be positive");
    Json j = certificate_to_json(a.control ? rank_scan_control(a.modes, a.trials, a.seed)
                                           : rank_scan(a.modes, a.trials, a.seed));
    j["kind"] = a.control ? "control-scan" : "rank-scan";
    const SymbolicDeterminant det = symbolic_m_determinant();
    j["symbolic_determinant_zero"] = det.is_zero();
    if (a.restarts > 0) {
        const NogoCertificate adv = adversarial_search(a.modes, a.restarts, a.iterations, a.seed);
        j["adversarial"] = certificate_to_json(adv);
        if (adv.verdict == Verdict::CounterexampleFound)
            j["verdict"] = to_string(Verdict::CounterexampleFound);
    }
    stamp_report(j, a.seed,
                 sha256_hex("modes=" + std::to_string(a.modes) + "|trials=" + std::to_string(a.trials) +
                            "|restarts=" + std::to_string(a.restarts) + "|iterations=" + std::to_string(a.iterations) +
                            (a.control ? "|control" : "")));
    emit(j, a.out, out);
    return kExitOk;
}

int do_run(const RunArgs& a, std::ostream& out, std::ostream& err)
{
    std::string text;
    try {
        text = read_text_file(a.circuit);
    } catch (const FormatError& e) {
        throw UsageError(e.what());
    }
    const ParseResult parsed = parse_circuit(text);
    if (!parsed.ok()) {
        for (const auto& d : parsed.diagnostics)
            err << a.circuit << ": " << to_string(d) << '\n';
        return kExitUsage;
    }
    const LoadedState in = load_state(a.input);
    const RunResult r = run_circuit(*parsed.program, in.state);

    Json log = Json::array();
    for (const auto& e : r.log)
        log.push_back({{"instruction", e.instruction}, {"line", e.line}, {"what", e.what}, {"probability", e.probability}});
    Json j{{"state", state_to_json(r.state)}, {"probability", r.probability}, {"log", std::move(log)}};
    stamp_report(j, 0, sha256_hex(text + "\n--\n" + in.digest));
    emit(j, a.out, out);
    return kExitOk;
}

int do_cnot_demo(const DemoArgs& a, std::ostream& out)
{
    const ModeUnitary net = build_postselected_cnot_network();
    Json table = Json::array();
    for (const auto& row : postselected_truth_table(net))
        table.push_back({{"control_in", row.control_in},
                         {"target_in", row.target_in},
                         {"control_out", row.control_out},
                         {"target_out", row.target_out},
                         {"probability", row.probability},
                         {"fidelity", row.fidelity}});
    const VacuumFailureReport v = vacuum_failure_demo(net);
    Json legs = Json::array();
    for (const auto& leg : v.vacuum_legs) {
        Json patterns = Json::array();
        for (const auto& [occ, w] : leg.patterns)
            patterns.push_back({{"occ", occ}, {"weight", w}});
        legs.push_back({{"label", leg.label},
                        {"input", leg.input},
                        {"kept_weight", leg.kept_weight},
                        {"extra_weight", leg.extra_weight},
                        {"lost_weight", leg.lost_weight},
                        {"effective_eta", {{"re", leg.effective_eta.real()}, {"im", leg.effective_eta.imag()}}},
                        {"patterns", std::move(patterns)}});
    }
    Json j{{"network", unitary_to_json(net)},
           {"truth_table", std::move(table)},
           {"vacuum_failure",
            {{"logical_probability", v.logical_probability},
             {"consistent_with_eta_identity", v.consistent_with_eta_identity},
             {"legs", std::move(legs)}}}};
    stamp_report(j, 0, sha256_hex("cnot-demo"));
    emit(j, a.out, out);
    return kExitOk;
}

void add_scheme_options(CLI::App* sub, SchemeArgs& a, const char* input_help)
{
    sub->add_option("--input", a.input, input_help)->required();
    sub->add_option("--variant", a.variant, "projective | deterministic")
        ->check(CLI::IsMember({"projective", "deterministic"}));
    sub->add_option("--branch", a.branch, "plus | minus | sample (projective only)")
        ->check(CLI::IsMember({"plus", "minus", "sample"}));
    sub->add_flag("--feed-forward", a.feed_forward, "Correct the minus branch");
    sub->add_option("--seed", a.seed, "Seed for --branch sample");
    sub->add_option("--report", a.report, "Write the report here instead of stdout");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Photonic quantum-state joining and splitting simulator", "fockjoin"};
    app.set_version_flag("--version", std::string(FOCKJOIN_VERSION));
    app.require_subcommand(1);

    SchemeArgs join_args, split_args;
    TpesArgs tpes_args;
    TeleportArgs tele_args;
    NogoArgs nogo_args;
    RunArgs run_args;
    DemoArgs demo_args;

    auto* join = app.add_subcommand("join", "Join two dual-rail qubits into one ququart photon");
    add_scheme_options(join, join_args, "Two-qubit state JSON (4 modes)");
    auto* split = app.add_subcommand("split", "Split a ququart photon into two dual-rail qubits");
    add_scheme_options(split, split_args, "Ququart state JSON (4 modes)");

    auto* tpes = app.add_subcommand("tpes", "Build a three-photon doubly entangled state");
    tpes->add_option("--pol", tpes_args.pol, "Polarization link Bell state (psi+, psi-, phi+, phi-)");
    tpes->add_option("--path", tpes_args.path, "Path link Bell state (psi+, psi-, phi+, phi-)");
    tpes->add_flag("--via-joining", tpes_args.via_joining, "Prepare it by joining two Bell pairs");
    tpes->add_option("--out", tpes_args.out, "Write JSON here instead of stdout");

    auto* tele = app.add_subcommand("teleport-join", "Join two qubits by teleportation through a TPES");
    tele->add_option("--alpha", tele_args.alpha, "Photon-4 H amplitude ('re' or 're,im')");
    tele->add_option("--beta", tele_args.beta, "Photon-4 V amplitude");
    tele->add_option("--gamma", tele_args.gamma, "Photon-5 u amplitude");
    tele->add_option("--delta", tele_args.delta, "Photon-5 d amplitude");
    tele->add_option("--outcome", tele_args.outcome, "Force Bell outcome K = 4*pol + path (0..15)");
    tele->add_flag("--sample", tele_args.sample, "Sample the Bell outcome");
    tele->add_option("--seed", tele_args.seed, "Seed for --sample");
    tele->add_option("--resource-pol", tele_args.resource_pol, "Resource polarization link");
    tele->add_option("--resource-path", tele_args.resource_path, "Resource path link");
    tele->add_option("--report", tele_args.report, "Write the report here instead of stdout");

    auto* nogo = app.add_subcommand("nogo-scan", "Rank scan of the post-projection two-photon modes");
    nogo->add_option("--modes", nogo_args.modes, "Number of modes m >= 4");
    nogo->add_option("--trials", nogo_args.trials, "Random (u, phi) draws");
    nogo->add_option("--restarts", nogo_args.restarts, "Nelder-Mead restarts (0 = skip)");
    nogo->add_option("--iterations", nogo_args.iterations, "Nelder-Mead iterations per restart");
    nogo->add_flag("--control", nogo_args.control, "Scan random unconstrained rows instead");
    nogo->add_option("--seed", nogo_args.seed, "Base seed");
    nogo->add_option("--out", nogo_args.out, "Write the certificate here instead of stdout");

    auto* run = app.add_subcommand("run", "Run a circuit script on a state");
    run->add_option("--circuit", run_args.circuit, "Circuit file (.pc)")->required();
    run->add_option("--input", run_args.input, "Input state JSON")->required();
    run->add_option("--out", run_args.out, "Write the result here instead of stdout");

    auto* demo = app.add_subcommand("cnot-demo", "Post-selected CNOT truth table and vacuum-input failure");
    demo->add_option("--out", demo_args.out, "Write JSON here instead of stdout");

    std::vector<std::string> argv_store{"fockjoin"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (join->parsed()) return do_join(join_args, out);
        if (split->parsed()) return do_split(split_args, out);
        if (tpes->parsed()) return do_tpes(tpes_args, out);
        if (tele->parsed()) return do_teleport(tele_args, out);
        if (nogo->parsed()) return do_nogo(nogo_args, out);
        if (run->parsed()) return do_run(run_args, out, err);
        if (demo->parsed()) return do_cnot_demo(demo_args, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitScheme;
    }
    return kExitUsage;
}

} // namespace fockjoin

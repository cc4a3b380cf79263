#include "fockjoin/json_io.hpp"

#include <array>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "fockjoin/errors.hpp"

namespace fockjoin {

namespace {

const Json& require(const Json& j, const char* key, const char* where)
{
    if (!j.is_object() || !j.contains(key))
        throw FormatError(std::string(where) + ": missing \"" + key + "\"");
    return j.at(key);
}

double number(const Json& j, const char* what)
{
    if (!j.is_number())
        throw FormatError(std::string(what) + " must be a number");
    return j.get<double>();
}

Json state_or_null(const FockState& s) { return s.modes() == 0 ? Json(nullptr) : state_to_json(s); }

} // namespace

Json state_to_json(const FockState& s)
{
    Json terms = Json::array();
    for (const auto& [occ, amp] : s.terms())
        terms.push_back({{"occ", occ}, {"re", amp.real()}, {"im", amp.imag()}});
    return {{"modes", s.modes()}, {"terms", std::move(terms)}};
}

FockState state_from_json(const Json& j)
{
    const Json& modes = require(j, "modes", "state");
    if (!modes.is_number_integer() || modes.get<long long>() < 0)
        throw FormatError("state: \"modes\" must be a non-negative integer");
    const int m = modes.get<int>();
    const Json& terms = require(j, "terms", "state");
    if (!terms.is_array())
        throw FormatError("state: \"terms\" must be an array");

    std::vector<Term> parsed;
    for (const Json& t : terms) {
        const Json& occ = require(t, "occ", "state term");
        if (!occ.is_array())
            throw FormatError("state term: \"occ\" must be an array");
        Occupation o;
        for (const Json& n : occ) {
            if (!n.is_number_integer())
                throw FormatError("state term: occupations must be integers");
            o.push_back(n.get<int>());
        }
        parsed.push_back({std::move(o), Complex(number(require(t, "re", "state term"), "re"),
                                                number(require(t, "im", "state term"), "im"))});
    }
    if (parsed.empty())
        return FockState(m);
    return make_state(m, parsed);
}

Json unitary_to_json(const ModeUnitary& u)
{
    Json re = Json::array();
    Json im = Json::array();
    for (int i = 0; i < u.dim(); ++i) {
        Json r = Json::array();
        Json c = Json::array();
        for (int k = 0; k < u.dim(); ++k) {
            r.push_back(u(i, k).real());
            c.push_back(u(i, k).imag());
        }
        re.push_back(std::move(r));
        im.push_back(std::move(c));
    }
    return {{"dim", u.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ModeUnitary unitary_from_json(const Json& j)
{
    const Json& dim = require(j, "dim", "unitary");
    if (!dim.is_number_integer() || dim.get<int>() < 1)
        throw FormatError("unitary: \"dim\" must be a positive integer");
    const int m = dim.get<int>();
    const Json& re = require(j, "re", "unitary");
    const Json& im = require(j, "im", "unitary");
    auto square = [m](const Json& a) {
        if (!a.is_array() || static_cast<int>(a.size()) != m)
            return false;
        for (const Json& row : a)
            if (!row.is_array() || static_cast<int>(row.size()) != m) return false;
        return true;
    };
    if (!square(re) || !square(im))
        throw FormatError("unitary: \"re\" and \"im\" must be " + std::to_string(m) + "x" + std::to_string(m));
    Eigen::MatrixXcd u(m, m);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k)
            u(i, k) = Complex(number(re[i][k], "re"), number(im[i][k], "im"));
    return ModeUnitary::from_matrix(std::move(u));
}

Json report_to_json(const SchemeReport& r)
{
    return {
        {"success_probability", r.success_probability},
        {"branch_probability", r.branch_probability},
        {"branch", r.branch},
        {"feed_forward_applied", r.feed_forward_applied},
        {"fidelity", r.fidelity_to_expected},
        {"output", state_or_null(r.output)},
        {"expected", state_or_null(r.expected)},
    };
}

Json certificate_to_json(const NogoCertificate& c)
{
    return {
        {"modes", c.modes},
        {"trials", c.trials},
        {"max_sigma_min", c.max_sigma_min},
        {"argmax_seed", c.argmax_seed},
        {"optimizer_iterations", c.optimizer_iterations},
        {"threshold", c.threshold},
        {"verdict", to_string(c.verdict)},
    };
}

Json teleport_to_json(const TeleportReport& r)
{
    Json j = report_to_json(r.scheme);
    j["outcome"] = {{"index", r.outcome.index()},
                    {"polarization", to_string(r.outcome.polarization, Dof::Polarization)},
                    {"path", to_string(r.outcome.path, Dof::Path)}};
    j["correction"] = {{"polarization", to_string(r.correction.polarization)},
                       {"path", to_string(r.correction.path)}};
    return j;
}

std::string sha256_hex(std::string_view data)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 digest failed");
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i)
        os << std::setw(2) << static_cast<int>(md[i]);
    return os.str();
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Json parse_json(std::string_view text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void stamp_report(Json& report, std::uint64_t seed, std::string_view input_digest)
{
    report["tool"] = {{"name", "fockjoin"}, {"version", FOCKJOIN_VERSION}};
    report["seed"] = seed;
    report["input_sha256"] = std::string(input_digest);
}

} // namespace fockjoin

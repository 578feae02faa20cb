// rodvol: command-line front end for rod complement classification, nested
// filling traces, continued fractions and volume bounds.
//
// Exit codes: 0 computed (possibly with applicability flags), 2 input error,
// 3 internal invariant violation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <openssl/sha.h>

#include "CLI11.hpp"
#include "rodvol/rodvol.hpp"

namespace {

using rodvol::ojson;

constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

std::string sha256_hex(const std::string& data)
{
    unsigned char md[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), md);
    std::string hex;
    char buf[3];
    for (unsigned char b : md) {
        std::snprintf(buf, sizeof buf, "%02x", b);
        hex += buf;
    }
    return "sha256:" + hex;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw rodvol::Error(rodvol::ErrorCode::Malformed, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ojson report(const std::string& command, const std::string& input, ojson result)
{
    return ojson{{"command", command}, {"input_digest", sha256_hex(input)}, {"result", std::move(result)}};
}

void emit(const ojson& rep, bool text, const std::string& human)
{
    if (text)
        std::cout << human;
    else
        std::cout << rep.dump(2) << "\n";
}

rodvol::ContinuedFraction expand(const rodvol::Rational& x, const std::string& algo)
{
    if (algo == "euclid")
        return rodvol::euclidean_cf(x);
    if (algo == "nicf")
        return rodvol::nicf(x);
    const auto r = rodvol::minimal_cf(x);
    if (r.status == rodvol::SearchStatus::Found)
        return *r.cf;
    if (r.status == rodvol::SearchStatus::TooLarge)
        return rodvol::nicf(x);
    throw rodvol::Error(rodvol::ErrorCode::Precondition, "term bound too small for a minimal expansion");
}

std::string trace_text(const std::vector<rodvol::IntVector>& tr)
{
    std::string s;
    for (std::size_t i = 0; i < tr.size(); ++i)
        s += (i ? " -> " : "") + rodvol::to_string(tr[i]);
    return s + "\n";
}

std::size_t rod_count(const rodvol::AnyConfig& cfg)
{
    return rodvol::directions_of(cfg).size();
}

int run_classify(const std::string& path, bool text)
{
    const std::string input = read_file(path);
    const auto cfg = rodvol::parse_config(input);
    const auto g = rodvol::classify(cfg);
    ojson res = rodvol::to_json(g);
    res["rank"] = rodvol::direction_rank(cfg);
    res["rods"] = rod_count(cfg);
    emit(report("classify", input, res), text, std::string(rodvol::to_string(g.kind)) + " (" + g.reason + ")\n");
    return 0;
}

int run_bounds(const std::string& path, bool optimize, bool orthogonal, std::optional<std::size_t> rod, bool text)
{
    const std::string input = read_file(path);
    const auto cfg = rodvol::parse_config(input);
    const auto dirs = rodvol::directions_of(cfg);
    const auto g = rodvol::classify(cfg);

    std::optional<std::size_t> chosen;
    if (!optimize) {
        if (rod) {
            if (*rod >= dirs.size())
                throw rodvol::Error(rodvol::ErrorCode::OutOfRange, "--rod index out of range");
            chosen = rod;
        } else {
            chosen = 0;
            for (std::size_t i = 0; i < dirs.size(); ++i)
                if (dirs[i] == rodvol::PrimitiveVector{0, 0, 1}) {
                    chosen = i;
                    break;
                }
        }
    }
    const rodvol::VolumeBounds general = rodvol::general_bounds(dirs, g, chosen);

    ojson res = ojson::object();
    res["classification"] = rodvol::to_json(g);
    res["general"] = rodvol::to_json(general);
    ojson notes = rodvol::notes_json(general);
    std::string human = std::string("classification: ") + rodvol::to_string(g.kind) + "\n" +
                        "general: " + rodvol::format_real(general.lower) + " <= Vol <= " +
                        rodvol::format_real(general.upper) + "  [" + general.lower_method_str() + ", " +
                        general.upper_method_str() + "]\n";

    const auto* stacked = std::get_if<rodvol::StackedConfig>(&cfg);
    if (orthogonal && !stacked)
        throw rodvol::Error(rodvol::ErrorCode::Precondition, "--orthogonal needs a horizontal/vertical configuration");
    std::optional<rodvol::OrthogonalResult> orth_opt;
    if (stacked) {
        try {
            orth_opt = rodvol::orthogonal_analysis(*stacked);
        } catch (const rodvol::Error& e) {
            if (!e.is_input_error())
                throw;
            res["orthogonal"] = nullptr;
            notes.push_back(std::string("orthogonal bounds inapplicable: ") + e.what());
        }
    }
    if (orth_opt) {
        const rodvol::OrthogonalResult& orth = *orth_opt;
        ojson cfs = ojson::array();
        for (const auto& cf : orth.cfs)
            cfs.push_back(cf.str());
        res["orthogonal"] = rodvol::to_json(orth.bounds);
        res["orthogonal_cfs"] = cfs;
        res["orthogonal_swapped"] = orth.swapped;
        if (orth.parent)
            res["parent"] = rodvol::to_json(*orth.parent);
        for (const auto& n : rodvol::notes_json(orth.bounds))
            notes.push_back(n);
        const rodvol::VolumeBounds both = rodvol::combine(general, orth.bounds);
        res["combined"] = rodvol::to_json(both);
        res["upper_ratio"] = rodvol::real_json(general.upper / orth.bounds.upper);
        human += "orthogonal: " + rodvol::format_real(orth.bounds.lower) + " <= Vol <= " +
                 rodvol::format_real(orth.bounds.upper) + "  [" + orth.bounds.lower_method_str() + ", " +
                 orth.bounds.upper_method_str() + "]\n";
    }
    res["notes"] = notes;
    emit(report("bounds", input, res), text, human);
    return 0;
}

int run_parent(const std::string& path, bool text)
{
    const std::string input = read_file(path);
    const auto cfg = rodvol::parse_config(input);
    const auto* stacked = std::get_if<rodvol::StackedConfig>(&cfg);
    if (!stacked)
        throw rodvol::Error(rodvol::ErrorCode::Precondition, "parent needs a horizontal/vertical configuration");
    std::vector<rodvol::ContinuedFraction> cfs;
    for (const auto& h : stacked->horizontal)
        cfs.push_back(rodvol::preferred_cf(h.slope()));
    const auto pm = rodvol::parent_manifold(*stacked, cfs);
    ojson res = rodvol::to_json(pm);
    emit(report("parent", input, res), text,
         "octahedra: " + std::to_string(pm.octahedron_count) + ", volume " + pm.volume_units.str() + " v_oct\n");
    return 0;
}

int run_cf(const std::string& arg, const std::string& algo, bool text)
{
    const rodvol::Rational x = rodvol::parse_rational(arg);
    const auto cf = expand(x, algo);
    ojson res = rodvol::to_json(cf);
    res["value"] = x.str();
    res["algo"] = algo;
    emit(report("cf", arg, res), text, cf.str() + "\n");
    return 0;
}

int run_trace(const std::string& arg, const std::string& algo, bool text)
{
    rodvol::ContinuedFraction cf;
    if (!arg.empty() && arg.front() == '[')
        cf = rodvol::parse_cf(arg);
    else
        cf = expand(rodvol::parse_rational(arg), algo);
    const auto tr = rodvol::nested_trace(cf);
    ojson vecs = ojson::array();
    for (const auto& v : tr)
        vecs.push_back(rodvol::to_json(v));
    ojson res{{"cf", cf.str()},
              {"core", rodvol::to_json(rodvol::core_direction(cf))},
              {"trace", vecs},
              {"final", rodvol::to_json(rodvol::PrimitiveVector(tr.back()))},
              {"value", rodvol::eval_cf(cf).str()}};
    emit(report("trace", arg, res), text, trace_text(tr));
    return 0;
}

int run_table(const std::string& name, long long from, long long to, bool csv, const std::string& out_dir)
{
    if (from > 0 && to > 0 && from > to)
        throw rodvol::Error(rodvol::ErrorCode::OutOfRange, "--from must not exceed --to");
    rodvol::Table t;
    if (name == "remark33") {
        t = rodvol::remark33_table();
    } else if (name == "cor_bad_upper") {
        t = rodvol::cor_bad_upper_table(from > 0 ? from : 1, to > 0 ? to : 20);
    } else if (name == "cor_inf_vol") {
        t = rodvol::cor_inf_vol_table(from > 0 ? from : 6, to > 0 ? to : 8);
    } else {
        throw rodvol::Error(rodvol::ErrorCode::Malformed, "unknown table " + name);
    }
    const std::string invocation = name + " " + std::to_string(from) + " " + std::to_string(to);
    const ojson rep = report("table", invocation, t.to_json());
    const std::string csv_text = t.to_csv();
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream(std::filesystem::path(out_dir) / (name + ".csv")) << csv_text;
        std::ofstream(std::filesystem::path(out_dir) / (name + ".json")) << rep.dump(2) << "\n";
    }
    if (csv)
        std::cout << csv_text;
    else
        std::cout << rep.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"rodvol: rod complements in the 3-torus, nested Dehn filling and volume bounds"};
    app.require_subcommand(1);
    app.fallthrough();
    bool text = false;
    app.add_flag("--text", text, "human-readable output instead of JSON");

    std::string path;
    auto* classify = app.add_subcommand("classify", "geometric type of a rod configuration");
    classify->add_option("config", path, "configuration JSON file")->required();

    bool optimize = false, orthogonal = false;
    std::optional<std::size_t> rod;
    auto* bounds = app.add_subcommand("bounds", "volume bounds for a rod configuration");
    bounds->add_option("config", path, "configuration JSON file")->required();
    bounds->add_flag("--optimize", optimize, "minimize the general upper bound over the normalized rod");
    bounds->add_flag("--orthogonal", orthogonal, "also compute the stacked-rod bounds");
    bounds->add_option("--rod", rod, "index of the rod normalized to (0,0,1)");

    auto* parent = app.add_subcommand("parent", "standard parent manifold of a stacked configuration");
    parent->add_option("config", path, "configuration JSON file")->required();

    std::string value, algo = "minimal";
    auto* cf = app.add_subcommand("cf", "continued fraction expansion of p/q");
    cf->add_option("rational", value, "p/q")->required();
    cf->add_option("--algo", algo, "euclid | nicf | minimal")->check(CLI::IsMember({"euclid", "nicf", "minimal"}));

    std::string trace_algo = "euclid";
    auto* trace = app.add_subcommand("trace", "direction vectors through a nested annular filling");
    trace->add_option("input", value, "p/q or [c1;c2,...]")->required();
    trace->add_option("--algo", trace_algo, "expansion used for a rational input")
        ->check(CLI::IsMember({"euclid", "nicf", "minimal"}));

    std::string table_name, out_dir;
    long long from = 0, to = 0;
    bool csv = false;
    auto* table = app.add_subcommand("table", "reproducibility tables");
    table->add_option("name", table_name, "remark33 | cor_bad_upper | cor_inf_vol")
        ->required()
        ->check(CLI::IsMember({"remark33", "cor_bad_upper", "cor_inf_vol"}));
    table->add_option("--from", from, "first n or k");
    table->add_option("--to", to, "last n or k");
    table->add_flag("--csv", csv, "print CSV instead of JSON");
    table->add_option("--out-dir", out_dir, "also write <name>.csv and <name>.json here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInput;
    }

    try {
        if (*classify)
            return run_classify(path, text);
        if (*bounds)
            return run_bounds(path, optimize, orthogonal, rod, text);
        if (*parent)
            return run_parent(path, text);
        if (*cf)
            return run_cf(value, algo, text);
        if (*trace)
            return run_trace(value, trace_algo, text);
        if (*table)
            return run_table(table_name, from, to, csv, out_dir);
    } catch (const rodvol::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.is_input_error() ? kExitInput : kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}

#ifndef METAB_CLI_HPP
#define METAB_CLI_HPP

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <metab/cases.hpp>
#include <metab/constants.hpp>
#include <metab/known_series.hpp>
#include <metab/parse.hpp>
#include <metab/series.hpp>

// Job descriptions and the four commands of the metab tool. Each command writes its report to
// `out`, diagnostics to `err`, and returns the process exit code.
namespace metab::cli
{

enum ExitCode : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_usage = 2,
    exit_oracle_mismatch = 3,
    exit_certification = 4,
};

enum class Format { Text, Json };

struct JobSpec {
    std::string command;
    std::optional<std::size_t> rank;
    std::vector<unsigned> partition;
    unsigned max_degree = 6;
    std::string case_name;
    Format format = Format::Text;
    std::string gens_file;
    std::string ring_gens_file;
    std::string space = "full";
    bool basis = false;
    std::string reference_file;
    std::string candidate_file;
};

class UsageError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

using json = nlohmann::ordered_json;

inline std::vector<unsigned> parse_partition(const std::string &text)
{
    std::vector<unsigned> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || item.size() > 6) {
            throw UsageError("bad partition entry '" + item + "' in '" + text + "'");
        }
        parts.push_back(static_cast<unsigned>(std::stoul(item)));
    }
    if (parts.empty()) {
        throw UsageError("empty partition");
    }
    return parts;
}

inline Derivation derivation_of(const JobSpec &job)
{
    if (job.partition.empty()) {
        throw UsageError("--partition is required");
    }
    try {
        if (job.rank) {
            return Derivation::from_partition(*job.rank, job.partition);
        }
        return Derivation::from_partition(job.partition);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

inline Space space_of(const std::string &s)
{
    for (Space sp : {Space::Full, Space::Commutator, Space::PolyUV, Space::PolyUVOmega}) {
        if (to_string(sp) == s) {
            return sp;
        }
    }
    throw UsageError("unknown space '" + s + "' (full, commutator, polyUV, polyUV-omega)");
}

inline std::string read_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline NiceRational read_series(const std::string &path)
{
    try {
        return nice_rational_from_json(nlohmann::json::parse(read_file(path)));
    } catch (const nlohmann::json::exception &e) {
        throw UsageError(path + ": " + e.what());
    } catch (const std::invalid_argument &e) {
        throw UsageError(path + ": " + e.what());
    }
}

inline std::string join(const std::vector<std::string> &xs, const std::string &sep)
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        s += (i ? sep : "") + xs[i];
    }
    return s;
}

template <class T>
std::string join_numbers(const std::vector<T> &xs)
{
    std::vector<std::string> s;
    for (const auto &x : xs) {
        std::ostringstream os;
        os << x;
        s.push_back(os.str());
    }
    return join(s, ",");
}

inline json big_json(const BigInt &c)
{
    if (c.fits_slong_p()) {
        return c.get_si();
    }
    return c.get_str();
}

inline json big_array(const std::vector<BigInt> &xs)
{
    json a = json::array();
    for (const auto &x : xs) {
        a.push_back(big_json(x));
    }
    return a;
}

inline std::string partition_string(const std::vector<unsigned> &p)
{
    return "delta(" + join_numbers(p) + ")";
}

class Stopwatch
{
public:
    [[nodiscard]] double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
    [[nodiscard]] std::string text() const
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", seconds());
        return buf;
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline void write_json(std::ostream &out, json j, const Stopwatch &sw)
{
    j["elapsed"] = std::stod(sw.text());
    out << j.dump(2) << '\n';
}

inline std::optional<known::SeriesCase> published_case(const std::vector<unsigned> &partition)
{
    for (auto &c : known::all_cases()) {
        if (c.partition == partition) {
            return c;
        }
    }
    return std::nullopt;
}

// Constants dimensions of a GL2-module through Schur extraction of its bigraded series.
inline std::vector<BigInt> schur_route(const NiceRational &f, const std::vector<unsigned> &partition, unsigned bound)
{
    return constants_series(schur_extract(expand(substitute_gl2(f, partition), bound))).at_ones();
}

inline int run_hilbert(const JobSpec &job, std::ostream &out)
{
    const Stopwatch sw;
    const auto delta = derivation_of(job);
    const std::size_t d = delta.rank();
    const unsigned N = job.max_degree;
    const auto free = hseries_free_metabelian(d);
    const auto free_gl2 = substitute_gl2(free, job.partition);
    const auto free_dims = expand(free, N).at_ones();
    const auto constants = schur_route(free, job.partition, N);
    const auto commutator = schur_route(hseries_commutator_ideal(d), job.partition, N);
    const auto polynomial = schur_route(hseries_polynomial(d, 2), job.partition, N);
    const auto published = published_case(job.partition);

    json j;
    j["command"] = "hilbert";
    j["rank"] = d;
    j["partition"] = job.partition;
    j["max_degree"] = N;
    j["free_algebra"] = {{"series", to_json(free)}, {"coefficients", big_array(free_dims)}};
    j["free_algebra_gl2"] = to_json(free_gl2);
    j["constants"] = big_array(constants);
    j["commutator_constants"] = big_array(commutator);
    j["polynomial_constants"] = big_array(polynomial);
    std::optional<bool> algebra_match;
    std::optional<bool> polynomial_match;
    if (published) {
        algebra_match = expand(published->algebra, N).at_ones() == constants;
        polynomial_match = expand(published->polynomial, N).at_ones() == polynomial;
        j["published"] = {{"case", published->name},
                          {"constants", to_json(published->algebra)},
                          {"polynomial_constants", to_json(published->polynomial)},
                          {"constants_match", *algebra_match},
                          {"polynomial_constants_match", *polynomial_match}};
    }
    if (job.format == Format::Json) {
        write_json(out, j, sw);
        return exit_ok;
    }
    out << "rank " << d << ", " << partition_string(job.partition) << ", degrees 0.." << N << "\n";
    out << "H(F_d, z)            = " << free.str() << "\n";
    out << "H_GL2(F_d)           = " << free_gl2.str() << "\n";
    out << "free algebra         : " << join_numbers(free_dims) << "\n";
    out << "constants            : " << join_numbers(constants) << "\n";
    out << "commutator constants : " << join_numbers(commutator) << "\n";
    out << "K[U,V] constants     : " << join_numbers(polynomial) << "\n";
    if (published) {
        out << "published " << published->name << ": constants " << (*algebra_match ? "match" : "DIFFER")
            << ", K[U,V] constants " << (*polynomial_match ? "match" : "DIFFER") << "\n";
    }
    out << "elapsed " << sw.text() << " s\n";
    return exit_ok;
}

inline int run_kernel(const JobSpec &job, std::ostream &out, std::ostream &err)
{
    const Stopwatch sw;
    const auto delta = derivation_of(job);
    const Space space = space_of(job.space);
    const unsigned N = job.max_degree;
    std::optional<std::vector<BigInt>> reference;
    if (!job.reference_file.empty()) {
        reference = expand(read_series(job.reference_file), N).at_ones();
    }

    json degrees = json::array();
    std::vector<std::size_t> dims;
    std::vector<std::vector<std::string>> bases;
    for (unsigned n = 0; n <= N; ++n) {
        const auto slice = kernel_slice(delta, n, space);
        dims.push_back(slice.dimension());
        json entry{{"n", n}, {"kernel_dim", slice.dimension()}};
        if (job.basis) {
            std::vector<std::string> b;
            for (const auto &e : slice.elements) {
                b.push_back(to_string(e));
            }
            for (const auto &p : slice.polynomials) {
                b.push_back(uv::to_string(p));
            }
            entry["basis"] = b;
            bases.push_back(std::move(b));
        }
        degrees.push_back(std::move(entry));
    }
    std::optional<unsigned> mismatch;
    if (reference) {
        for (unsigned n = 0; n <= N && !mismatch; ++n) {
            if ((*reference)[n] != static_cast<long>(dims[n])) {
                mismatch = n;
            }
        }
    }

    if (job.format == Format::Json) {
        json j;
        j["command"] = "kernel";
        j["rank"] = delta.rank();
        j["partition"] = job.partition;
        j["space"] = to_string(space);
        j["max_degree"] = N;
        j["degrees"] = degrees;
        if (reference) {
            j["reference"] = {{"coefficients", big_array(*reference)}, {"match", !mismatch}};
            if (mismatch) {
                j["reference"]["first_mismatch"] = *mismatch;
            }
        }
        write_json(out, j, sw);
    } else {
        out << "rank " << delta.rank() << ", " << partition_string(job.partition) << ", space " << to_string(space)
            << "\n";
        out << "kernel dims: " << join_numbers(dims) << "\n";
        for (std::size_t n = 0; n < bases.size(); ++n) {
            out << "degree " << n << ":\n";
            for (const auto &b : bases[n]) {
                out << "  " << b << "\n";
            }
        }
        if (reference) {
            out << "reference  : " << join_numbers(*reference) << (mismatch ? "  MISMATCH" : "  match") << "\n";
        }
        out << "elapsed " << sw.text() << " s\n";
    }
    if (mismatch) {
        err << "kernel dimension " << dims[*mismatch] << " in degree " << *mismatch << " differs from reference "
            << (*reference)[*mismatch].get_str() << "\n";
        return exit_oracle_mismatch;
    }
    return exit_ok;
}

inline VerificationReport custom_report(const JobSpec &job)
{
    const auto delta = derivation_of(job);
    const std::size_t d = delta.rank();
    std::vector<Named<MetabelianElement>> mods;
    std::vector<Named<PolyUV>> rings;
    try {
        if (!job.gens_file.empty()) {
            std::istringstream in(read_file(job.gens_file));
            for (const auto &l : read_expression_lines(in, "c")) {
                mods.push_back({l.name, parse_element(l.text, d)});
            }
        }
        if (!job.ring_gens_file.empty()) {
            std::istringstream in(read_file(job.ring_gens_file));
            for (const auto &l : read_expression_lines(in, "f")) {
                rings.push_back({l.name, parse_polyuv(l.text, d)});
            }
        }
    } catch (const UsageError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    for (const auto &m : mods) {
        if (!m.value.in_commutator_ideal() || !m.value.homogeneous_degree()) {
            throw UsageError("module generator " + m.name + " must be a nonzero homogeneous element of F_d'");
        }
    }
    for (const auto &r : rings) {
        if (!r.value.homogeneous_degree()) {
            throw UsageError("ring generator " + r.name + " must be a nonzero homogeneous polynomial");
        }
    }
    return verify_generators("custom", delta, mods, rings, job.max_degree);
}

inline json degrees_json(const std::vector<DegreeCheck> &ds)
{
    json a = json::array();
    for (const auto &dc : ds) {
        a.push_back({{"n", dc.n}, {"kernel_dim", dc.kernel_dim}, {"span_dim", dc.span_dim}, {"match", dc.match}});
    }
    return a;
}

inline int run_verify(const JobSpec &job, std::ostream &out, std::ostream &err)
{
    const Stopwatch sw;
    VerificationReport rep;
    if (!job.case_name.empty()) {
        if (!job.gens_file.empty() || !job.ring_gens_file.empty()) {
            throw UsageError("--case cannot be combined with --gens/--ring-gens");
        }
        const auto &names = cases::names();
        if (std::find(names.begin(), names.end(), job.case_name) == names.end()) {
            throw UsageError("unknown case '" + job.case_name + "' (" + join(names, ", ") + ")");
        }
        rep = cases::run(job.case_name, job.max_degree);
    } else if (!job.gens_file.empty() || !job.ring_gens_file.empty()) {
        rep = custom_report(job);
    } else {
        throw UsageError("verify needs --case or --gens/--ring-gens");
    }
    const auto failure = rep.first_failure();

    if (job.format == Format::Json) {
        json j;
        j["case"] = rep.case_name;
        j["degrees"] = degrees_json(rep.degrees);
        j["ring_degrees"] = degrees_json(rep.ring_degrees);
        json rels = json::array();
        for (const auto &r : rep.relations) {
            rels.push_back({{"name", r.name}, {"holds", r.holds}});
        }
        j["relations"] = rels;
        j["ok"] = !failure;
        write_json(out, j, sw);
    } else {
        out << "case " << rep.case_name << ", degrees 0.." << job.max_degree << "\n";
        auto table = [&](const char *title, const std::vector<DegreeCheck> &ds) {
            if (ds.empty()) {
                return;
            }
            out << title << "\n   n  kernel    span\n";
            for (const auto &dc : ds) {
                out << std::setw(4) << dc.n << std::setw(8) << dc.kernel_dim << std::setw(8) << dc.span_dim
                    << (dc.match ? "" : "  MISMATCH") << "\n";
            }
        };
        table("module span vs (F_d')^delta", rep.degrees);
        table("subalgebra span vs K[U_d,V_d]^delta", rep.ring_degrees);
        for (const auto &r : rep.relations) {
            out << (r.holds ? "  ok    " : "  FAIL  ") << r.name << "\n";
        }
        out << (failure ? "NOT CERTIFIED" : "CERTIFIED") << "\n";
        out << "elapsed " << sw.text() << " s\n";
    }
    if (failure) {
        err << "certification failed: " << *failure << "\n";
        return exit_certification;
    }
    return exit_ok;
}

inline int run_check_series(const JobSpec &job, std::ostream &out, std::ostream &err)
{
    const Stopwatch sw;
    if (job.candidate_file.empty() || job.reference_file.empty()) {
        throw UsageError("check-series needs a candidate and a reference series file");
    }
    const auto f = read_series(job.candidate_file);
    const auto H = read_series(job.reference_file);
    if (f.vars() != gl2_vars() || H.vars() != gl2_vars()) {
        throw UsageError("check-series: both series must be in the variables t1, t2, z");
    }
    const auto res = consistency_check(f, H, job.max_degree);
    if (job.format == Format::Json) {
        json j;
        j["command"] = "check-series";
        j["max_degree"] = job.max_degree;
        j["consistent"] = res.ok;
        if (res.ok) {
            j["first_mismatch"] = nullptr;
        } else {
            j["first_mismatch"] = {{"n", res.n},
                                   {"t1", res.a},
                                   {"t2", res.b},
                                   {"expected", big_json(res.expected)},
                                   {"actual", big_json(res.actual)}};
        }
        write_json(out, j, sw);
    } else {
        out << "candidate: " << f.str() << "\nreference: " << H.str() << "\n";
        out << (res.ok ? "PASS" : "FAIL") << " up to z^" << job.max_degree << ": " << res.describe() << "\n";
        out << "elapsed " << sw.text() << " s\n";
    }
    if (!res.ok) {
        err << res.describe() << "\n";
        return exit_oracle_mismatch;
    }
    return exit_ok;
}

inline int run(const JobSpec &job, std::ostream &out, std::ostream &err)
{
    try {
        if (job.command == "hilbert") {
            return run_hilbert(job, out);
        }
        if (job.command == "kernel") {
            return run_kernel(job, out, err);
        }
        if (job.command == "verify") {
            return run_verify(job, out, err);
        }
        if (job.command == "check-series") {
            return run_check_series(job, out, err);
        }
        throw UsageError("unknown command '" + job.command + "'");
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
}

} // namespace metab::cli

#endif

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include <metab/cli.hpp>

namespace
{

void common_options(CLI::App *sub, metab::cli::JobSpec &job, std::string &partition, std::string &format,
                    std::string &out)
{
    sub->add_option("--rank", job.rank, "number of generators d")->check(CLI::Range(1, 64));
    sub->add_option("--partition", partition, "Jordan cells p1,p2,... (cell sizes p_i + 1)");
    sub->add_option("--max-degree", job.max_degree, "highest degree N")->check(CLI::Range(0, 64));
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", out, "write the report to a file");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Constants of Weitzenboeck derivations of free metabelian associative algebras"};
    app.require_subcommand(1);

    metab::cli::JobSpec job;
    std::string partition;
    std::string format = "text";
    std::string out_path;

    auto *hilbert = app.add_subcommand("hilbert", "Hilbert series of F_d and of its constants");
    common_options(hilbert, job, partition, format, out_path);

    auto *kernel = app.add_subcommand("kernel", "kernel dimensions of the derivation, degree by degree");
    common_options(kernel, job, partition, format, out_path);
    kernel->add_option("--space", job.space, "full, commutator, polyUV or polyUV-omega");
    kernel->add_flag("--basis", job.basis, "print a basis of each slice");
    kernel->add_option("--reference", job.reference_file, "series JSON to compare the dimensions with");

    auto *verify = app.add_subcommand("verify", "certify generators and relations");
    common_options(verify, job, partition, format, out_path);
    verify->add_option("--case", job.case_name, "d2-block2, d3-block21 or d3-block3");
    verify->add_option("--gens", job.gens_file, "module generators, one element per line");
    verify->add_option("--ring-gens", job.ring_gens_file, "algebra generators in U, V, one per line");

    auto *check = app.add_subcommand("check-series", "consistency identity between two bigraded series");
    common_options(check, job, partition, format, out_path);
    check->add_option("candidate", job.candidate_file, "candidate series f (JSON)")->required();
    check->add_option("reference", job.reference_file, "reference series H (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return metab::cli::exit_usage;
    }

    job.command = app.get_subcommands().front()->get_name();
    job.format = format == "json" ? metab::cli::Format::Json : metab::cli::Format::Text;
    try {
        if (!partition.empty()) {
            job.partition = metab::cli::parse_partition(partition);
        }
    } catch (const metab::cli::UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return metab::cli::exit_usage;
    }

    if (out_path.empty()) {
        return metab::cli::run(job, std::cout, std::cerr);
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return metab::cli::exit_usage;
    }
    return metab::cli::run(job, out, std::cerr);
}

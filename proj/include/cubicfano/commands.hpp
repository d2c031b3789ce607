#pragma once

// Subcommand implementations behind the cubicfano executable. Each returns a
// structured result; rendering to text or JSON is separate so tests can
// inspect the numbers directly.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubicfano/cubic_form.hpp"
#include "cubicfano/integer.hpp"
#include "cubicfano/realizations.hpp"

namespace cubicfano::cli {

/// Bad flags, unreadable files, invalid cubics. Maps to exit code 1.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class CubicSource { none, file, named, random };
enum class OutputFormat { table, json };

struct RunConfig {
    std::string subcommand;
    std::uint32_t p = 0;
    int dim = -1;
    CubicSource source = CubicSource::none;
    std::string named;
    std::string file;
    std::uint64_t seed = 0;
    OutputFormat format = OutputFormat::table;
    int order = 2;
    unsigned threads = 1;

    // euler / real
    Integer chi = 0;
    Integer sing = 0;
    Integer chi_r = 0;
    Integer chi_c = 0;
    realize::Parity parity = realize::Parity::even;
    Integer chi_r_sing = 0;

    // symbolic
    std::string suite = "all";
};

/// Resolve the cubic a geometric subcommand works on. Throws InputError.
geometry::CubicForm load_cubic(const RunConfig &cfg);
/// Short identifier such as `fermat(2)`, `random(2, seed=42)` or the file path.
std::string cubic_id(const RunConfig &cfg);

struct Term {
    std::string name;
    std::string value;
};

struct VerificationReport {
    std::string relation;
    std::string cubic;
    std::string field;
    int dim = 0;
    std::string lhs;
    std::string rhs;
    std::vector<Term> breakdown;
    std::vector<std::string> notes;
    bool pass = false;
    double seconds = 0;
};

VerificationReport cmd_lines(const RunConfig &cfg);
/// Hilb^2 form and Sym^2 form of the Y-F(Y) counting relation.
std::vector<VerificationReport> cmd_verify(const RunConfig &cfg);

struct HodgeSummary {
    int dim = 0;
    std::string cubic_table;
    std::string fano_table;
    std::string cubic_json;
    std::string fano_json;
    realize::Polynomial psi_cubic;
    realize::Polynomial psi_fano;
    std::vector<std::int64_t> fano_betti;
    std::int64_t chi_cubic = 0;
    std::int64_t chi_fano_hodge = 0;
    Integer chi_fano_formula = 0;
    std::optional<realize::IndecomposabilityReport> indecomposability;
};

HodgeSummary cmd_hodge(const RunConfig &cfg);
Integer cmd_euler(const RunConfig &cfg);
Integer cmd_real(const RunConfig &cfg);

/// Identity suites: `rearrangement`, `projective`, `ex-sing`, `inverse`, or `all`.
std::vector<VerificationReport> cmd_symbolic(const RunConfig &cfg);

struct ZetaTable {
    std::string cubic;
    std::uint64_t q = 0;
    int dim = 0;
    std::vector<Integer> point_counts;  // N_1..N_order
    std::vector<Integer> sym_counts;    // #Sym^m Y(F_q), m = 1..order
    /// Independent counts for comparison, keyed by m (missing entries were not checked).
    std::vector<std::optional<Integer>> oracle;
    std::vector<std::string> oracle_kind;
    bool pass = true;
};

ZetaTable cmd_zeta(const RunConfig &cfg);

std::string render(const VerificationReport &r, OutputFormat fmt);
std::string render(const std::vector<VerificationReport> &rs, OutputFormat fmt);
std::string render(const HodgeSummary &h, OutputFormat fmt);
std::string render(const ZetaTable &z, OutputFormat fmt);

/// Runs a subcommand end to end, writing to stdout/stderr. Returns the exit
/// code: 0 pass, 1 usage or input error, 2 verification failure.
int run(const RunConfig &cfg);

} // namespace cubicfano::cli

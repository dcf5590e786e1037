// schurlock: command-line front end for the folded-family and Schur
// curvature checks.

#include "schurlock/equivariant_schur.hpp"
#include "schurlock/family_io.hpp"
#include "schurlock/folded_family.hpp"
#include "schurlock/golden_reduction.hpp"
#include "schurlock/lockin.hpp"
#include "schurlock/report.hpp"
#include "schurlock/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace schurlock;
using ojson = nlohmann::ordered_json;

namespace {

struct GlobalOptions {
    std::string format = "table";
    std::uint64_t seed = 20240601;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_golden_token(const std::string& s) {
    return s == "phi^-2" || s == "qstar" || s == "q*" || s == "golden";
}

std::string fmt_double(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// One named value, rendered in whichever of the exact/decimal forms apply.
struct ValueRow {
    std::string name;
    std::string exact;
    std::string golden;  // only for values in Q(sqrt5)
    std::string decimal;
};

void print_rows(const std::vector<ValueRow>& rows, const std::string& values, const std::string& format,
                const ojson& header) {
    const bool exact = values != "decimal";
    const bool decimal = values != "exact";
    if (format == "json") {
        ojson doc = header;
        ojson arr = ojson::array();
        for (const auto& r : rows) {
            ojson j;
            j["name"] = r.name;
            if (exact) {
                j["exact"] = r.exact;
                if (!r.golden.empty()) j["golden_basis"] = r.golden;
            }
            if (decimal) j["decimal"] = r.decimal;
            arr.push_back(std::move(j));
        }
        doc["values"] = std::move(arr);
        std::cout << doc.dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        std::cout << "name";
        if (exact) std::cout << ",exact,golden_basis";
        if (decimal) std::cout << ",decimal";
        std::cout << "\n";
        for (const auto& r : rows) {
            std::cout << r.name;
            if (exact) std::cout << ',' << r.exact << ',' << r.golden;
            if (decimal) std::cout << ',' << r.decimal;
            std::cout << "\n";
        }
        return;
    }
    for (auto it = header.begin(); it != header.end(); ++it) std::cout << it.key() << ": " << it.value().dump() << "\n";
    for (const auto& r : rows) {
        std::cout << r.name << " =";
        if (exact) {
            std::cout << ' ' << r.exact;
            if (!r.golden.empty()) std::cout << "  =  " << r.golden;
        }
        if (decimal) std::cout << (exact ? "  ~  " : " ") << r.decimal;
        std::cout << "\n";
    }
}

int cmd_moments(int N, const std::string& q_text, const std::string& values, int digits, const GlobalOptions& g) {
    if (values != "exact" && values != "decimal" && values != "both")
        throw UsageError("--values must be exact, decimal or both");
    std::vector<ValueRow> rows;
    ojson header;
    header["N"] = N;
    header["q"] = q_text;
    if (is_golden_token(q_text)) {
        auto s = sums_at_qstar(N);
        auto m = moments_from_sums(s);
        auto d = theta_derivatives(m);
        auto row = [&](const char* name, const Q5& v) {
            rows.push_back({name, v.to_string(), to_golden_basis(v).to_string(), q5_to_decimal(v, digits)});
        };
        row("S0", s.S0);
        row("S1", s.S1);
        row("S2", s.S2);
        row("S3", s.S3);
        row("I1", m.I1);
        row("I2", m.I2);
        row("I3", m.I3);
        row("Var", m.Var);
        row("I1prime", d.I1prime);
        row("I2prime", d.I2prime);
    } else {
        BigRational q;
        try {
            q = BigRational::parse(q_text);
        } catch (const std::exception& e) {
            throw UsageError(std::string("--q: ") + e.what());
        }
        if (q.sign() <= 0 || q >= BigRational(1)) throw UsageError("--q must lie in (0,1), got " + q_text);
        header["q"] = q.to_string();
        auto s = sums_closed(N, q);
        auto m = moments_from_sums(s);
        auto d = theta_derivatives(m);
        auto row = [&](const char* name, const BigRational& v) {
            rows.push_back({name, v.to_string(), "", to_decimal(v, digits)});
        };
        row("S0", s.S0);
        row("S1", s.S1);
        row("S2", s.S2);
        row("S3", s.S3);
        row("I1", m.I1);
        row("I2", m.I2);
        row("I3", m.I3);
        row("Var", m.Var);
        row("I1prime", d.I1prime);
        row("I2prime", d.I2prime);
    }
    print_rows(rows, values, g.format, header);
    return 0;
}

int cmd_golden_table(unsigned max_m, const GlobalOptions& g) {
    auto rows = reduction_table(max_m);
    if (g.format == "json") {
        ojson arr = ojson::array();
        for (const auto& r : rows) arr.push_back({{"m", r.m}, {"a_m", r.a.str()}, {"b_m", r.b.str()}});
        std::cout << arr.dump(2) << "\n";
        return 0;
    }
    std::cout << "m,a_m,b_m,reduction\n";
    for (const auto& r : rows) {
        std::ostringstream expr;
        if (r.a == 0) {
            expr << r.b;
        } else {
            if (r.a != 1) expr << r.a;
            expr << "q*";
            if (r.b < 0) expr << " - " << BigInt(-r.b);
            else if (r.b > 0) expr << " + " << r.b;
        }
        std::cout << r.m << ',' << r.a << ',' << r.b << ',' << expr.str() << "\n";
    }
    return 0;
}

int cmd_lambda(int N, int digits, const GlobalOptions& g) {
    auto L = lambda_N(N);
    ojson header;
    header["N"] = N;
    std::vector<ValueRow> rows{{"Lambda", L.lambda.to_string(), to_golden_basis(L.lambda).to_string(),
                                q5_to_decimal(L.lambda, digits)}};
    print_rows(rows, "both", g.format, header);
    return 0;
}

int cmd_schur(const std::string& path, double theta_min, double theta_max, int points, bool fit,
              const GlobalOptions& g) {
    if (points < 3) throw UsageError("--points must be >= 3");
    if (!(theta_max < 0.0) || !(theta_min < theta_max))
        throw UsageError("need theta-min < theta-max < 0 (q in (0,1))");
    HessianFamily fam = load_family(path);
    auto grid = linspace(theta_min, theta_max, points);

    ReportDocument rep{"schur", {}};
    ConvexityScanReport scan;
    try {
        scan = kappa_convexity_scan(fam, grid);
    } catch (const EliminationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    rep.check("kappa-convexity", "relative second differences of kappa_Schur over the grid", scan.passed, ">= -1e-8",
              fmt_double(scan.min_relative_second_difference), Provenance::derived,
              "convexity of kappa_Schur in theta = ln q");

    std::optional<QuadLawFit<double>> law;
    if (fit) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < grid.size(); ++i) pts.emplace_back(std::exp(grid[i]), scan.kappa[i]);
        law = quadratic_law_fit(pts, fam.N);
        double worst = 0.0;
        for (double r : law->residuals) worst = std::max(worst, std::abs(r));
        rep.info("quadratic-law-fit", "A, B from the first two grid points; max |residual| over the rest",
                 "residuals 0 if kappa follows A I1^2 + B Var",
                 "A=" + fmt_double(law->A) + ", B=" + fmt_double(law->B) + ", max|r|=" + fmt_double(worst),
                 Provenance::derived, "quadratic folded law");
    }

    if (g.format == "json") {
        ojson doc;
        ojson rows = ojson::array();
        for (std::size_t i = 0; i < grid.size(); ++i)
            rows.push_back({{"theta", grid[i]}, {"q", std::exp(grid[i])}, {"kappa", scan.kappa[i]}});
        doc["grid"] = std::move(rows);
        if (law) {
            doc["fit"] = {{"A", law->A}, {"B", law->B}, {"residuals", law->residuals}};
        }
        doc["report"] = rep.to_json();
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "theta,q,kappa\n";
        for (std::size_t i = 0; i < grid.size(); ++i)
            std::cout << fmt_double(grid[i]) << ',' << fmt_double(std::exp(grid[i])) << ',' << fmt_double(scan.kappa[i])
                      << "\n";
        std::cout << "\n" << rep.render(g.format);
    }
    return rep.exit_code();
}

int cmd_stationarity(int N, const std::string& m_text, const std::string& b_text, const std::string& synthesis,
                     int grid_points, const GlobalOptions& g) {
    BigRational m, B;
    try {
        m = BigRational::parse(m_text);
        B = BigRational::parse(b_text);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    if (m.sign() <= 0) throw UsageError("--m-rho-sq must be positive");
    if (N < 2) throw UsageError("--N must be >= 2");
    QuadLawCoeffs<Q5> c;
    if (synthesis == "consistent") c = synthesize_consistent_AB(B, N, m);
    else if (synthesis == "stationary") c = synthesize_stationary_AB(B, N, m);
    else throw UsageError("--synthesis must be consistent or stationary");

    auto r = stationarity_check(c);
    auto scan = uniqueness_scan(convert_coeffs<double>(c), linspace(std::log(0.05), std::log(0.95), grid_points));

    ReportDocument rep{"stationarity", {}};
    rep.info("A", "synthesized A (" + synthesis + ")", "", c.A.to_string() + " ~ " + q5_to_decimal(c.A, 12),
             Provenance::derived, "");
    rep.info("B", "free B", "", c.B.to_string(), Provenance::derived, "");
    rep.check("bracket", "B Lambda + 2A - 2B - 8/m^2", r.bracket_residual.is_zero(), "0",
              r.bracket_residual.to_string() + " ~ " + q5_to_decimal(r.bracket_residual, 12), Provenance::trivial,
              "bracket identity at the golden point");
    rep.check("fprime-at-qstar", "F_red'(theta*)", r.stationary, "0",
              r.f_prime_at_star.to_string() + " ~ " + q5_to_decimal(r.f_prime_at_star, 12), Provenance::published,
              "stationarity of F_red at q*");
    rep.check("factored-form", "F_red'(theta*) - (1/N) bracket I1 I1'", r.factorization_holds, "0",
              r.factorization_gap.to_string() + " ~ " + q5_to_decimal(r.factorization_gap, 12), Provenance::published,
              "factored form of F_red'(theta*)");
    std::string act = std::to_string(scan.sign_changes) + " sign change(s)";
    for (const auto& b : scan.brackets)
        act += " [" + fmt_double(std::exp(b.first)) + ", " + fmt_double(std::exp(b.second)) + "]";
    rep.check("uniqueness-scan", "sign changes of F_red' on q in [0.05, 0.95]",
              scan.uniqueness_holds && scan.sign_changes == 1, "1 sign change bracketing q*", act,
              Provenance::published, "uniqueness of the golden stationary point");
    std::cout << rep.render(g.format);
    return rep.exit_code();
}

int cmd_fit_ab(const std::string& path, int N, const GlobalOptions& g) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open points file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> raw;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw UsageError("points file: expected 'q,kappa' rows, got '" + line + "'");
        std::string a = line.substr(0, comma), b = line.substr(comma + 1);
        if (raw.empty() && (a.find_first_of("qQ") != std::string::npos)) continue;  // header
        raw.emplace_back(a, b);
    }
    if (raw.size() < 2) throw UsageError("points file: need at least 2 rows");

    bool exact = true;
    std::vector<std::pair<BigRational, BigRational>> qpts;
    for (const auto& [a, b] : raw) {
        try {
            qpts.emplace_back(BigRational::parse(a), BigRational::parse(b));
        } catch (const std::exception&) {
            exact = false;
            break;
        }
    }
    ojson doc;
    doc["N"] = N;
    doc["exact"] = exact;
    ReportDocument rep{"fit-ab", {}};
    if (exact) {
        auto fit = quadratic_law_fit(qpts, N);
        doc["A"] = fit.A.to_string();
        doc["B"] = fit.B.to_string();
        ojson res = ojson::array();
        for (std::size_t i = 0; i < fit.residuals.size(); ++i)
            res.push_back({{"q", qpts[i + 2].first.to_string()}, {"residual", fit.residuals[i].to_string()}});
        doc["residuals"] = res;
    } else {
        std::vector<std::pair<double, double>> pts;
        for (const auto& [a, b] : raw) pts.emplace_back(std::stod(a), std::stod(b));
        auto fit = quadratic_law_fit(pts, N);
        doc["A"] = fit.A;
        doc["B"] = fit.B;
        ojson res = ojson::array();
        for (std::size_t i = 0; i < fit.residuals.size(); ++i)
            res.push_back({{"q", pts[i + 2].first}, {"residual", fit.residuals[i]}});
        doc["residuals"] = res;
    }
    if (g.format == "json") {
        std::cout << doc.dump(2) << "\n";
    } else if (g.format == "csv") {
        std::cout << "quantity,value\nA," << doc["A"].dump() << "\nB," << doc["B"].dump() << "\n";
        for (const auto& r : doc["residuals"]) std::cout << "residual@" << r["q"].dump() << ',' << r["residual"].dump() << "\n";
    } else {
        std::cout << "N = " << N << (exact ? " (exact rational fit)" : " (floating-point fit)") << "\n";
        std::cout << "A = " << doc["A"].dump() << "\nB = " << doc["B"].dump() << "\n";
        for (const auto& r : doc["residuals"])
            std::cout << "residual at q=" << r["q"].dump() << ": " << r["residual"].dump() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and numerical checks for Schur curvature of dihedral folded exponential families"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_option("--format", g.format, "Output layout")->check(CLI::IsMember({"table", "csv", "json"}));
    app.add_option("--seed", g.seed, "Seed for random trials");

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("--suite", suite, "Suite name")->check(CLI::IsMember(verify::suite_names()));

    int N = 12;
    std::string q_text;
    std::string values = "both";
    int digits = 15;
    auto* mom = app.add_subcommand("moments", "Folded sums, moments and theta-derivatives at (N, q)");
    mom->add_option("--N", N, "Dihedral order")->required()->check(CLI::PositiveNumber);
    mom->add_option("--q", q_text, "Rational q in (0,1), or phi^-2 for the golden point")->required();
    mom->add_option("--values", values, "exact, decimal or both")->check(CLI::IsMember({"exact", "decimal", "both"}));
    mom->add_option("--digits", digits, "Decimal places")->check(CLI::PositiveNumber);

    unsigned max_m = 12;
    auto* table = app.add_subcommand("golden-table", "Reduction q*^m = a_m q* + b_m (CSV)");
    table->add_option("--max-m", max_m, "Largest power")->required();

    int lambda_digits = 10;
    auto* lam = app.add_subcommand("lambda", "Lambda(N) = I2'/I1' at q*");
    lam->add_option("--N", N, "Dihedral order (>= 2)")->required()->check(CLI::Range(2, 1 << 20));
    lam->add_option("--digits", lambda_digits, "Decimal places")->check(CLI::PositiveNumber);

    std::string family_path;
    double theta_min = std::log(0.05), theta_max = std::log(0.95);
    int points = 101;
    bool fit = false;
    auto* schur = app.add_subcommand("schur", "kappa_Schur over a theta grid for a Hessian family file");
    schur->add_option("--family", family_path, "Hessian family JSON")->required()->check(CLI::ExistingFile);
    schur->add_option("--theta-min", theta_min, "Lower theta");
    schur->add_option("--theta-max", theta_max, "Upper theta (< 0)");
    schur->add_option("--points", points, "Grid points");
    schur->add_flag("--fit", fit, "Fit the quadratic folded law and report residuals");

    std::string m_text = "2", b_text;
    std::string synthesis = "consistent";
    int grid_points = 2001;
    auto* stat = app.add_subcommand("stationarity", "Synthesize A from B and check stationarity at q*");
    stat->add_option("--N", N, "Dihedral order")->check(CLI::Range(2, 1 << 20));
    stat->add_option("--m-rho-sq", m_text, "Projector-metric radius (rational)");
    stat->add_option("--B", b_text, "Free coefficient B (rational)")->required();
    stat->add_option("--synthesis", synthesis, "consistent (zero bracket) or stationary (zero derivative)")
        ->check(CLI::IsMember({"consistent", "stationary"}));
    stat->add_option("--grid-points", grid_points, "theta grid points for the sign-change scan")
        ->check(CLI::Range(3, 1000000));

    std::string points_path;
    auto* fitab = app.add_subcommand("fit-ab", "Two-point identification of (A, B) from q,kappa rows");
    fitab->add_option("--points", points_path, "CSV file of q,kappa rows")->required()->check(CLI::ExistingFile);
    fitab->add_option("--N", N, "Dihedral order")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*verify) {
            auto rep = verify::run_suite(suite, g.seed);
            std::cout << rep.render(g.format);
            return rep.exit_code();
        }
        if (*mom) return cmd_moments(N, q_text, values, digits, g);
        if (*table) return cmd_golden_table(max_m, g);
        if (*lam) return cmd_lambda(N, lambda_digits, g);
        if (*schur) return cmd_schur(family_path, theta_min, theta_max, points, fit, g);
        if (*stat) return cmd_stationarity(N, m_text, b_text, synthesis, grid_points, g);
        if (*fitab) return cmd_fit_ab(points_path, N, g);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#ifndef SCHURLOCK_FAMILY_IO_HPP
#define SCHURLOCK_FAMILY_IO_HPP

#include "schurlock/equivariant_schur.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace schurlock {

// Hessian family documents:
//
//   {"N": 6, "m_rho_sq": 2, "u": [..N numbers..],
//    "C0": <matrix>, "terms": [{"s": 1.0, "C": <matrix>}, ...]}
//
// where <matrix> is a row-major dense matrix (array of N rows, or a flat
// array of N*N numbers) or {"circulant": [g0, ..., g_{N-1}]}.

namespace detail {

inline std::optional<Matrix> parse_matrix(const nlohmann::json& j, int N, const std::string& name,
                                          std::vector<std::string>& issues) {
    if (j.is_object()) {
        if (!j.contains("circulant")) {
            issues.push_back(name + ": object form requires a \"circulant\" key");
            return std::nullopt;
        }
        const auto& g = j.at("circulant");
        if (!g.is_array() || static_cast<int>(g.size()) != N) {
            issues.push_back(name + ": circulant generator must have " + std::to_string(N) + " entries");
            return std::nullopt;
        }
        std::vector<double> gen;
        for (const auto& v : g) {
            if (!v.is_number()) {
                issues.push_back(name + ": circulant generator has a non-numeric entry");
                return std::nullopt;
            }
            gen.push_back(v.get<double>());
        }
        return Circulant(std::move(gen)).matrix();
    }
    if (!j.is_array()) {
        issues.push_back(name + ": expected a matrix or {\"circulant\": [...]}");
        return std::nullopt;
    }
    Matrix M(N, N);
    if (static_cast<int>(j.size()) == N && !j.empty() && j.front().is_array()) {
        for (int i = 0; i < N; ++i) {
            const auto& row = j[static_cast<std::size_t>(i)];
            if (!row.is_array() || static_cast<int>(row.size()) != N) {
                issues.push_back(name + ": row " + std::to_string(i) + " must have " + std::to_string(N) + " entries");
                return std::nullopt;
            }
            for (int k = 0; k < N; ++k) {
                if (!row[static_cast<std::size_t>(k)].is_number()) {
                    issues.push_back(name + ": non-numeric entry");
                    return std::nullopt;
                }
                M(i, k) = row[static_cast<std::size_t>(k)].get<double>();
            }
        }
        return M;
    }
    if (static_cast<int>(j.size()) == N * N) {
        for (int idx = 0; idx < N * N; ++idx) {
            if (!j[static_cast<std::size_t>(idx)].is_number()) {
                issues.push_back(name + ": non-numeric entry");
                return std::nullopt;
            }
            M(idx / N, idx % N) = j[static_cast<std::size_t>(idx)].get<double>();
        }
        return M;
    }
    issues.push_back(name + ": dense matrix must be " + std::to_string(N) + "x" + std::to_string(N));
    return std::nullopt;
}

}  // namespace detail

/// Parses and validates a family document. All problems found are
/// collected into one ValidationError rather than stopping at the first.
inline HessianFamily parse_family(const nlohmann::json& doc, const Tolerances& tol = {}, bool validate = true) {
    std::vector<std::string> issues;
    auto fail = [&](std::string what) {
        issues.push_back(std::move(what));
        std::string msg = "invalid Hessian family:";
        for (const auto& s : issues) msg += "\n  " + s;
        throw ValidationError(msg, issues);
    };
    if (!doc.is_object()) fail("document must be a JSON object");
    if (!doc.contains("N") || !doc.at("N").is_number_integer()) fail("missing integer field \"N\"");
    const int N = doc.at("N").get<int>();
    if (N < 3) fail("N must be >= 3, got " + std::to_string(N));

    double m_rho_sq = 1.0;
    if (!doc.contains("m_rho_sq") || !doc.at("m_rho_sq").is_number()) {
        issues.push_back("missing numeric field \"m_rho_sq\"");
    } else {
        m_rho_sq = doc.at("m_rho_sq").get<double>();
        if (!(m_rho_sq > 0.0)) issues.push_back("m_rho_sq must be positive");
    }

    Vector u;
    if (!doc.contains("u") || !doc.at("u").is_array() || static_cast<int>(doc.at("u").size()) != N) {
        issues.push_back("field \"u\" must be an array of " + std::to_string(N) + " numbers");
    } else {
        u.resize(N);
        for (int i = 0; i < N; ++i) {
            const auto& v = doc.at("u")[static_cast<std::size_t>(i)];
            if (!v.is_number()) {
                issues.push_back("field \"u\" has a non-numeric entry");
                u.resize(0);
                break;
            }
            u(i) = v.get<double>();
        }
    }

    HessianFamily fam;
    fam.N = N;
    if (!doc.contains("C0")) {
        issues.push_back("missing field \"C0\"");
    } else if (auto m = detail::parse_matrix(doc.at("C0"), N, "C0", issues)) {
        fam.C0 = *m;
    }
    if (doc.contains("terms")) {
        const auto& terms = doc.at("terms");
        if (!terms.is_array()) {
            issues.push_back("field \"terms\" must be an array");
        } else {
            for (std::size_t i = 0; i < terms.size(); ++i) {
                const auto& t = terms[i];
                std::string name = "terms[" + std::to_string(i) + "]";
                if (!t.is_object() || !t.contains("s") || !t.at("s").is_number() || !t.contains("C")) {
                    issues.push_back(name + ": expected {\"s\": number, \"C\": matrix}");
                    continue;
                }
                if (auto m = detail::parse_matrix(t.at("C"), N, name, issues))
                    fam.terms.push_back({t.at("s").get<double>(), *m});
            }
        }
    }

    if (u.size() == N && m_rho_sq > 0.0) {
        try {
            fam.split = build_split(N, m_rho_sq, u);
        } catch (const std::invalid_argument& e) {
            issues.push_back(std::string("u: ") + e.what());
        }
    }
    if (validate && fam.C0.size() != 0 && fam.split.N == N) {
        for (auto& s : family_issues(fam, tol)) issues.push_back(std::move(s));
    }
    if (!issues.empty()) {
        std::string msg = "invalid Hessian family:";
        for (const auto& s : issues) msg += "\n  " + s;
        throw ValidationError(msg, std::move(issues));
    }
    return fam;
}

inline HessianFamily load_family(const std::string& path, const Tolerances& tol = {}, bool validate = true) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open Hessian family file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("invalid Hessian family: ") + e.what(), {e.what()});
    }
    return parse_family(doc, tol, validate);
}

inline nlohmann::json family_to_json(const HessianFamily& fam) {
    auto dense = [](const Matrix& M) {
        nlohmann::json rows = nlohmann::json::array();
        for (Eigen::Index i = 0; i < M.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (Eigen::Index k = 0; k < M.cols(); ++k) row.push_back(M(i, k));
            rows.push_back(row);
        }
        return rows;
    };
    nlohmann::json doc;
    doc["N"] = fam.N;
    doc["m_rho_sq"] = fam.split.m_rho_sq;
    doc["u"] = std::vector<double>(fam.split.u.data(), fam.split.u.data() + fam.split.u.size());
    doc["C0"] = dense(fam.C0);
    doc["terms"] = nlohmann::json::array();
    for (const auto& t : fam.terms) doc["terms"].push_back({{"s", t.s}, {"C", dense(t.C)}});
    return doc;
}

}  // namespace schurlock

#endif  // SCHURLOCK_FAMILY_IO_HPP

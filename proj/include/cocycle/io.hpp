#pragma once

#include <json.hpp>

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cocycle/algebra.hpp"
#include "cocycle/forms.hpp"
#include "cocycle/verify.hpp"

namespace cocycle {

inline constexpr const char* tool_version = "cocycle 0.1.0";

inline std::string fnv1a64_digest(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out = "fnv1a64:";
    for (int shift = 60; shift >= 0; shift -= 4) out.push_back(hex[(h >> shift) & 15]);
    return out;
}

namespace detail {

inline nlohmann::json field_to_json(const FieldSpec& fs) {
    nlohmann::json j;
    if (fs.kind == field_kind::rationals) {
        j["kind"] = "Q";
    } else {
        j["kind"] = "Fp";
        j["p"] = fs.p;
    }
    return j;
}

inline const nlohmann::json& need(const nlohmann::json& j, const char* key) {
    auto it = j.find(key);
    require(it != j.end(), errc::parse_error, std::string("missing key \"") + key + "\"");
    return *it;
}

inline std::size_t need_index(const nlohmann::json& j, const char* what) {
    require(j.is_number_unsigned(), errc::parse_error,
            std::string(what) + " must be a nonnegative integer");
    return j.get<std::size_t>();
}

inline FieldSpec field_from_json(const nlohmann::json& j) {
    require(j.is_object(), errc::parse_error, "field must be an object");
    const auto& kind = need(j, "kind");
    require(kind.is_string(), errc::parse_error, "field kind must be a string");
    std::string k = kind.get<std::string>();
    if (k == "Q") return FieldSpec::rationals();
    require(k == "Fp", errc::parse_error, "field kind must be \"Q\" or \"Fp\"");
    std::uint64_t p = need(j, "p").is_number_unsigned() ? need(j, "p").get<std::uint64_t>() : 0;
    require(p >= 2, errc::parse_error, "field p must be an integer >= 2");
    return FieldSpec::prime(p);
}

inline nlohmann::json parse_json(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(errc::parse_error, std::string("byte ") + std::to_string(e.byte) + ": " + e.what());
    }
}

}  // namespace detail

// Field-agnostic carrier between JSON text and a realized Algebra.
struct BracketEntry {
    std::size_t i = 0;
    std::size_t j = 0;
    std::vector<std::pair<std::size_t, std::string>> terms;
};

struct AlgebraDocument {
    FieldSpec field;
    std::size_t dim = 0;
    std::vector<std::string> basis_names;
    std::vector<BracketEntry> brackets;
    bool lie = false;
    bool assoc_comm = false;
    std::optional<std::size_t> unit;
};

template <class F>
AlgebraDocument document_of(const Algebra<F>& A) {
    require(A.finalized(), errc::precondition_failed, "serialize needs a finalized algebra");
    require(A.flags.lie || A.flags.assoc_comm, errc::precondition_failed,
            "serialize needs a validated algebra");
    AlgebraDocument doc;
    doc.field = A.field.spec();
    doc.dim = A.dim;
    doc.basis_names = A.basis_names;
    doc.lie = A.flags.lie;
    doc.assoc_comm = A.flags.assoc_comm;
    doc.unit = A.flags.unit;
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = doc.lie ? i + 1 : i; j < A.dim; ++j) {
            const auto& terms = A.product(i, j);
            if (terms.empty()) continue;
            BracketEntry e{i, j, {}};
            for (auto& [k, c] : terms) e.terms.emplace_back(k, A.field.str(c));
            doc.brackets.push_back(std::move(e));
        }
    return doc;
}

inline std::string render_algebra_document(const AlgebraDocument& doc) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["field"] = detail::field_to_json(doc.field);
    j["dim"] = doc.dim;
    j["basis_names"] = doc.basis_names;
    auto brackets = nlohmann::json::array();
    for (auto& e : doc.brackets) {
        nlohmann::json b;
        b["i"] = e.i;
        b["j"] = e.j;
        auto terms = nlohmann::json::array();
        for (auto& [k, c] : e.terms) terms.push_back(nlohmann::json::array({k, c}));
        b["terms"] = std::move(terms);
        brackets.push_back(std::move(b));
    }
    j["brackets"] = std::move(brackets);
    j["flags"] = {{"lie", doc.lie},
                  {"assoc_comm", doc.assoc_comm},
                  {"unit", doc.unit ? nlohmann::json(*doc.unit) : nlohmann::json(nullptr)}};
    return j.dump(1) + "\n";
}

template <class F>
std::string serialize_algebra(const Algebra<F>& A) {
    return render_algebra_document(document_of(A));
}

inline AlgebraDocument parse_algebra_document(const std::string& text) {
    nlohmann::json j = detail::parse_json(text);
    require(j.is_object(), errc::parse_error, "document must be a JSON object");
    require(detail::need(j, "schema_version") == 1, errc::parse_error,
            "unsupported schema_version");

    AlgebraDocument doc;
    doc.field = detail::field_from_json(detail::need(j, "field"));
    doc.dim = detail::need_index(detail::need(j, "dim"), "dim");

    const auto& names = detail::need(j, "basis_names");
    require(names.is_array() && names.size() == doc.dim, errc::parse_error,
            "basis_names must list exactly dim strings");
    for (auto& n : names) {
        require(n.is_string(), errc::parse_error, "basis names must be strings");
        doc.basis_names.push_back(n.get<std::string>());
    }

    const auto& flags = detail::need(j, "flags");
    require(flags.is_object(), errc::parse_error, "flags must be an object");
    const auto& lie = detail::need(flags, "lie");
    const auto& ac = detail::need(flags, "assoc_comm");
    require(lie.is_boolean() && ac.is_boolean(), errc::parse_error,
            "flags lie and assoc_comm must be booleans");
    doc.lie = lie.get<bool>();
    doc.assoc_comm = ac.get<bool>();
    const auto& unit = detail::need(flags, "unit");
    if (!unit.is_null()) {
        doc.unit = detail::need_index(unit, "flags unit");
        require(*doc.unit < doc.dim, errc::parse_error, "flags unit out of range");
    }

    const auto& brackets = detail::need(j, "brackets");
    require(brackets.is_array(), errc::parse_error, "brackets must be an array");
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto& b : brackets) {
        require(b.is_object(), errc::parse_error, "bracket entries must be objects");
        BracketEntry e;
        e.i = detail::need_index(detail::need(b, "i"), "bracket i");
        e.j = detail::need_index(detail::need(b, "j"), "bracket j");
        require(e.i < doc.dim && e.j < doc.dim, errc::parse_error, "bracket index out of range");
        require(doc.lie ? e.i < e.j : e.i <= e.j, errc::parse_error,
                doc.lie ? "Lie tables list pairs with i < j" : "tables list pairs with i <= j");
        require(seen.insert({e.i, e.j}).second, errc::parse_error, "duplicate bracket pair");
        const auto& terms = detail::need(b, "terms");
        require(terms.is_array(), errc::parse_error, "bracket terms must be an array");
        for (auto& t : terms) {
            require(t.is_array() && t.size() == 2, errc::parse_error,
                    "terms are [index, coefficient] pairs");
            std::size_t k = detail::need_index(t[0], "term index");
            require(k < doc.dim, errc::parse_error, "term index out of range");
            require(t[1].is_string(), errc::parse_error, "coefficients must be strings");
            e.terms.emplace_back(k, t[1].get<std::string>());
        }
        doc.brackets.push_back(std::move(e));
    }
    return doc;
}

// Realizes a parsed document over the matching field and re-derives the flags.
// Claimed properties that fail to verify are rejected with a witness.
template <class F>
Algebra<F> algebra_from_document(F f, const AlgebraDocument& doc) {
    require(f.spec() == doc.field, errc::field_mismatch,
            "document field " + doc.field.str() + " does not match " + f.spec().str());
    Algebra<F> A(f);
    A.dim = doc.dim;
    A.basis_names = doc.basis_names;
    A.mode = doc.lie ? completion::antisymmetric : completion::symmetric;
    for (auto& e : doc.brackets) {
        SparseVec<F> terms;
        for (auto& [k, c] : e.terms) {
            auto v = f.parse(c);
            if (!f.is_zero(v)) terms.emplace_back(k, v);
        }
        if (!terms.empty()) A.set_product(e.i, e.j, terms);
    }
    A.finalize();

    ValidationReport rep = validate(A);
    if (doc.lie)
        require(rep.lie(), errc::validation_error,
                "document claims a Lie table: " + rep.lie_witness);
    if (doc.assoc_comm)
        require(rep.assoc_comm(), errc::validation_error,
                "document claims a commutative associative table: " + rep.assoc_comm_witness);
    if (doc.unit)
        require(rep.unit_index == doc.unit, errc::validation_error,
                "document claims unit index " + std::to_string(*doc.unit) +
                    " but validation found " +
                    (rep.unit_index ? std::to_string(*rep.unit_index) : std::string("none")));
    // Verified claims become the flags; properties never claimed stay unclaimed,
    // so serialize(parse(text)) reproduces a canonical text byte for byte.
    A.flags.lie = doc.lie;
    A.flags.assoc_comm = doc.assoc_comm;
    A.flags.unit = doc.unit;
    return A;
}

template <class F>
Algebra<F> parse_algebra(F f, const std::string& text) {
    return algebra_from_document(f, parse_algebra_document(text));
}

// Check reports, rendered deterministically: no timestamps, fixed version tag.
struct NamedDigest {
    std::string name;
    std::string digest;
};

inline nlohmann::json report_to_json(const CheckReport& rep) {
    nlohmann::json j;
    j["check"] = rep.check;
    j["inputs"] = rep.inputs;
    j["verdict"] = verdict_name(rep.verdict);
    auto rows = nlohmann::json::array();
    for (auto& r : rep.rows) {
        nlohmann::json row;
        row["quantity"] = r.quantity;
        row["measured"] = r.measured;
        row["expected"] = r.expected;
        row["source"] = provenance_name(r.source);
        row["ok"] = r.ok;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j;
}

inline std::string serialize_reports(const std::vector<CheckReport>& reports,
                                     const std::vector<NamedDigest>& inputs) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["tool_version"] = tool_version;
    auto in = nlohmann::json::array();
    for (auto& d : inputs) in.push_back({{"name", d.name}, {"digest", d.digest}});
    j["inputs"] = std::move(in);
    auto rep = nlohmann::json::array();
    for (auto& r : reports) rep.push_back(report_to_json(r));
    j["reports"] = std::move(rep);
    return j.dump(1) + "\n";
}

template <class F>
std::string serialize_form_space(const FormSpace<F>& S, const F& f, bool with_basis,
                                 const std::string& input_digest) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["tool_version"] = tool_version;
    j["input_digest"] = input_digest;
    j["field"] = detail::field_to_json(f.spec());
    j["kind"] = form_space_kind_name(S.kind);
    j["ambient_dim"] = S.ambient_dim;
    j["dim"] = S.dim();
    if (with_basis) {
        auto basis = nlohmann::json::array();
        for (auto& b : S.basis) {
            auto rows = nlohmann::json::array();
            for (std::size_t r = 0; r < b.phi.rows; ++r) {
                auto row = nlohmann::json::array();
                for (std::size_t c = 0; c < b.phi.cols; ++c) row.push_back(f.str(b.phi.at(r, c)));
                rows.push_back(std::move(row));
            }
            basis.push_back(std::move(rows));
        }
        j["basis"] = std::move(basis);
    }
    return j.dump(1) + "\n";
}

// Spaces of linear maps (antiderivations, derivations) share one layout; the
// same document feeds derivation sets back into the tensor subcommand.
template <class F>
std::string serialize_map_space(const LinearMapSpace<F>& S, const F& f, const std::string& kind,
                                bool with_basis, const std::string& input_digest) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["tool_version"] = tool_version;
    j["input_digest"] = input_digest;
    j["field"] = detail::field_to_json(f.spec());
    j["kind"] = kind;
    j["source_dim"] = S.source_dim;
    j["target_dim"] = S.target_dim;
    j["dim"] = S.basis.size();
    if (with_basis) {
        auto basis = nlohmann::json::array();
        for (auto& m : S.basis) {
            auto rows = nlohmann::json::array();
            for (std::size_t r = 0; r < m.rows; ++r) {
                auto row = nlohmann::json::array();
                for (std::size_t c = 0; c < m.cols; ++c) row.push_back(f.str(m.at(r, c)));
                rows.push_back(std::move(row));
            }
            basis.push_back(std::move(rows));
        }
        j["basis"] = std::move(basis);
    }
    return j.dump(1) + "\n";
}

struct MapSpaceDocument {
    FieldSpec field;
    std::size_t source_dim = 0;
    std::size_t target_dim = 0;
    std::vector<std::vector<std::vector<std::string>>> basis;  // maps, rows, entries
};

inline MapSpaceDocument parse_map_space_document(const std::string& text) {
    nlohmann::json j = detail::parse_json(text);
    require(j.is_object(), errc::parse_error, "document must be a JSON object");
    require(detail::need(j, "schema_version") == 1, errc::parse_error,
            "unsupported schema_version");
    MapSpaceDocument doc;
    doc.field = detail::field_from_json(detail::need(j, "field"));
    doc.source_dim = detail::need_index(detail::need(j, "source_dim"), "source_dim");
    doc.target_dim = detail::need_index(detail::need(j, "target_dim"), "target_dim");
    const auto& basis = detail::need(j, "basis");
    require(basis.is_array(), errc::parse_error, "basis must be an array of matrices");
    for (auto& m : basis) {
        require(m.is_array() && m.size() == doc.target_dim, errc::parse_error,
                "each map needs target_dim rows");
        std::vector<std::vector<std::string>> rows;
        for (auto& r : m) {
            require(r.is_array() && r.size() == doc.source_dim, errc::parse_error,
                    "each row needs source_dim entries");
            std::vector<std::string> row;
            for (auto& c : r) {
                require(c.is_string(), errc::parse_error, "coefficients must be strings");
                row.push_back(c.get<std::string>());
            }
            rows.push_back(std::move(row));
        }
        doc.basis.push_back(std::move(rows));
    }
    return doc;
}

template <class F>
std::vector<Matrix<F>> maps_from_document(F f, const MapSpaceDocument& doc) {
    require(f.spec() == doc.field, errc::field_mismatch,
            "document field " + doc.field.str() + " does not match " + f.spec().str());
    std::vector<Matrix<F>> out;
    for (auto& m : doc.basis) {
        Matrix<F> mat(f, doc.target_dim, doc.source_dim);
        for (std::size_t r = 0; r < doc.target_dim; ++r)
            for (std::size_t c = 0; c < doc.source_dim; ++c) mat.at(r, c) = f.parse(m[r][c]);
        out.push_back(std::move(mat));
    }
    return out;
}

}  // namespace cocycle

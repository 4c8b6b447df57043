#include "egzlab/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace egz::io {

namespace {

std::vector<std::int64_t> index_list_from_json(const Modulus& m, const json& arr) {
    if (!arr.is_array()) throw std::invalid_argument("expected an array of coordinate arrays");
    std::vector<std::int64_t> out;
    out.reserve(arr.size());
    for (const auto& coords : arr) out.push_back(index_of(m, coords));
    return out;
}

json index_list_to_json(const Modulus& m, const std::vector<std::int64_t>& indices) {
    json arr = json::array();
    for (auto idx : indices) arr.push_back(coords_of(m, idx));
    return arr;
}

Modulus modulus_from_json(const json& j) {
    return Modulus(j.at("p").get<std::int64_t>(), j.at("n").get<int>());
}

}  // namespace

json coords_of(const Modulus& m, std::int64_t index) {
    std::vector<std::uint32_t> coords(static_cast<std::size_t>(m.n()));
    mixed_radix_decode(m.p(), m.n(), index, coords);
    json arr = json::array();
    for (auto c : coords) arr.push_back(c);
    return arr;
}

std::int64_t index_of(const Modulus& m, const json& coords) {
    if (!coords.is_array() || static_cast<int>(coords.size()) != m.n())
        throw std::invalid_argument("coordinate array must have length n");
    std::vector<std::uint32_t> digits;
    digits.reserve(coords.size());
    for (const auto& c : coords) {
        if (!c.is_number_integer())
            throw std::invalid_argument("coordinates must be integers");
        const auto v = c.get<std::int64_t>();
        if (v < 0 || v >= m.p())
            throw std::invalid_argument("coordinate out of range [0, p)");
        digits.push_back(static_cast<std::uint32_t>(v));
    }
    return mixed_radix_encode(m.p(), m.n(), digits);
}

json point_set_to_json(const PointSet& a) {
    json j;
    j["schema"] = 1;
    j["p"] = a.modulus().p();
    j["n"] = a.modulus().n();
    j["elements"] = index_list_to_json(a.modulus(), a.indices());
    return j;
}

PointSet point_set_from_json(const json& j) {
    const Modulus m = modulus_from_json(j);
    return PointSet(m, index_list_from_json(m, j.at("elements")));
}

json collection_to_json(const SumFreeCollection& c) {
    json j;
    j["schema"] = 1;
    j["p"] = c.mod.p();
    j["n"] = c.mod.n();
    j["k"] = c.k;
    json rows = json::array();
    for (const auto& tuple : c.tuples) rows.push_back(index_list_to_json(c.mod, tuple));
    j["tuples"] = rows;
    return j;
}

SumFreeCollection collection_from_json(const json& j) {
    const Modulus m = modulus_from_json(j);
    const int k = j.at("k").get<int>();
    const auto& rows = j.at("tuples");
    if (!rows.is_array()) throw std::invalid_argument("tuples must be an array");
    std::vector<std::vector<std::int64_t>> tuples;
    tuples.reserve(rows.size());
    for (const auto& row : rows) tuples.push_back(index_list_from_json(m, row));
    return SumFreeCollection(m, k, std::move(tuples));
}

json flags_to_json(const CertificateFlags& f) {
    json j;
    j["precondition_ok"] = f.precondition_ok;
    j["strip_ok"] = f.strip_ok;
    j["collection_ok"] = f.collection_ok;
    j["classes_ok"] = f.classes_ok;
    j["hypothesis_ok"] = f.hypothesis_ok;
    j["distinct_count_ok"] = f.distinct_count_ok;
    j["pair_sums_ok"] = f.pair_sums_ok;
    j["floor_ok"] = f.floor_ok;
    j["subcollection_sumfree_ok"] = f.subcollection_sumfree_ok;
    j["collection_bound_ok"] = f.collection_bound_ok;
    j["subcollection_bound_ok"] = f.subcollection_bound_ok;
    j["numeric_consistent"] = f.numeric_consistent;
    return j;
}

CertificateFlags flags_from_json(const json& j) {
    CertificateFlags f;
    f.precondition_ok = j.at("precondition_ok").get<bool>();
    f.strip_ok = j.at("strip_ok").get<bool>();
    f.collection_ok = j.at("collection_ok").get<bool>();
    f.classes_ok = j.at("classes_ok").get<bool>();
    f.hypothesis_ok = j.at("hypothesis_ok").get<bool>();
    f.distinct_count_ok = j.at("distinct_count_ok").get<bool>();
    f.pair_sums_ok = j.at("pair_sums_ok").get<bool>();
    f.floor_ok = j.at("floor_ok").get<bool>();
    f.subcollection_sumfree_ok = j.at("subcollection_sumfree_ok").get<bool>();
    f.collection_bound_ok = j.at("collection_bound_ok").get<bool>();
    f.subcollection_bound_ok = j.at("subcollection_bound_ok").get<bool>();
    f.numeric_consistent = j.at("numeric_consistent").get<bool>();
    return f;
}

json certificate_to_json(const Certificate& cert) {
    const Modulus& m = cert.mod;
    json j;
    j["schema"] = cert.schema;
    j["p"] = m.p();
    j["n"] = m.n();
    j["input"] = index_list_to_json(m, cert.input_set);
    j["l_value"] = cert.l_value;
    j["l_overridden"] = cert.l_overridden;
    json trace = json::array();
    for (const auto& step : cert.trace) {
        json s;
        s["pattern"] = step.pattern.to_string();
        s["stopped"] = step.stopped;
        s["deleted"] = index_list_to_json(m, step.deleted);
        trace.push_back(std::move(s));
    }
    j["trace"] = trace;
    j["lambda"] = cert.lambda.to_string();
    j["a_prime"] = index_list_to_json(m, cert.a_prime);
    json mc = json::array();
    for (const auto& c : cert.m_cycles) mc.push_back(index_list_to_json(m, c));
    j["m_cycles"] = mc;
    json xc = json::array();
    for (const auto& cls : cert.x_classes) xc.push_back(index_list_to_json(m, cls));
    j["x_classes"] = xc;
    json mp = json::array();
    for (const auto& c : cert.mprime_cycles) mp.push_back(index_list_to_json(m, c));
    j["mprime_cycles"] = mp;
    j["extendable_counts"] = cert.extendable_counts;
    j["gamma_value"] = cert.gamma_value;
    j["collection_bound"] = cert.collection_bound;
    j["subcollection_cap"] = cert.subcollection_cap;
    j["caro_wei_floor"] = cert.caro_wei_floor_value;
    j["flags"] = flags_to_json(cert.flags);
    j["valid"] = cert.valid;
    return j;
}

Certificate certificate_from_json(const json& j) {
    Certificate cert;
    cert.schema = j.value("schema", 0);
    cert.mod = modulus_from_json(j);
    const Modulus& m = cert.mod;
    cert.input_set = index_list_from_json(m, j.at("input"));
    cert.l_value = j.at("l_value").get<std::int64_t>();
    cert.l_overridden = j.at("l_overridden").get<bool>();
    for (const auto& s : j.at("trace")) {
        StripStep step;
        step.pattern = MultiplicityPattern::parse(s.at("pattern").get<std::string>());
        step.stopped = s.at("stopped").get<bool>();
        step.deleted = index_list_from_json(m, s.at("deleted"));
        cert.trace.push_back(std::move(step));
    }
    cert.lambda = MultiplicityPattern::parse(j.at("lambda").get<std::string>());
    cert.a_prime = index_list_from_json(m, j.at("a_prime"));
    for (const auto& c : j.at("m_cycles")) cert.m_cycles.push_back(index_list_from_json(m, c));
    for (const auto& cls : j.at("x_classes"))
        cert.x_classes.push_back(index_list_from_json(m, cls));
    for (const auto& c : j.at("mprime_cycles"))
        cert.mprime_cycles.push_back(index_list_from_json(m, c));
    cert.extendable_counts = j.at("extendable_counts").get<std::vector<std::int64_t>>();
    cert.gamma_value = j.at("gamma_value").get<double>();
    cert.collection_bound = j.at("collection_bound").get<double>();
    cert.subcollection_cap = j.at("subcollection_cap").get<double>();
    cert.caro_wei_floor_value = j.at("caro_wei_floor").get<std::size_t>();
    cert.flags = flags_from_json(j.at("flags"));
    cert.valid = j.at("valid").get<bool>();
    return cert;
}

json verdict_to_json(const SumFreeVerdict& v) {
    json j;
    j["ok"] = v.ok;
    j["exhaustive"] = v.exhaustive;
    j["checked"] = v.checked;
    j["witness"] = v.witness;
    j["witness_diagonal"] = v.witness_diagonal;
    return j;
}

json theorem7_to_json(const Theorem7Verdict& v) {
    json j;
    j["ok"] = v.ok;
    j["exhaustive"] = v.exhaustive;
    j["checked"] = v.checked;
    j["column_failure"] = v.column_failure;
    j["column"] = v.column;
    j["diagonal_failure"] = v.diagonal_failure;
    j["distinct_failure"] = v.distinct_failure;
    j["witness"] = v.witness;
    return j;
}

json bound_report_to_json(const BoundReport& r) {
    json j;
    j["p"] = r.p;
    j["k"] = r.k;
    j["t_star"] = r.t_star;
    j["gamma_value"] = r.gamma_value;
    j["tolerance"] = r.tolerance;
    j["grid_checked"] = r.grid_checked;
    return j;
}

json theorem_bounds_to_json(const TheoremBound& b) {
    json j;
    j["p"] = b.p;
    j["n"] = b.n;
    j["c_p"] = b.c_p;
    j["main_bound"] = b.main_bound;
    j["weak_bound"] = b.weak_bound;
    j["egz_bound"] = b.egz_bound;
    return j;
}

json reference_values_to_json(const ReferenceValues& r) {
    json j;
    j["p"] = r.p;
    j["n"] = r.n;
    j["edel_value"] = r.edel_value;
    j["edel_rate"] = r.edel_rate;
    j["gamma_p3"] = r.gamma_p3;
    j["gamma_p"] = r.gamma_p;
    j["sqrt_gamma_p_times_p"] = r.sqrt_gamma_p_times_p;
    j["ratio"] = r.ratio;
    j["sqrt_below_gamma_p3"] = r.sqrt_below_gamma_p3;
    j["ratio_in_range"] = r.ratio_in_range;
    return j;
}

json search_result_to_json(const SearchResult& r, const CyclicGroup& g) {
    // CyclicGroup allows composite m, so decode digits directly.
    auto coords = [&](std::int64_t index) {
        std::vector<std::uint32_t> digits(static_cast<std::size_t>(g.n()));
        mixed_radix_decode(g.m(), g.n(), index, digits);
        json arr = json::array();
        for (auto d : digits) arr.push_back(d);
        return arr;
    };
    json j;
    j["value"] = r.value;
    j["exhaustive"] = r.exhaustive;
    j["nodes_expanded"] = r.nodes_expanded;
    json set = json::array();
    for (auto idx : r.witness_set) set.push_back(coords(idx));
    j["witness_set"] = set;
    json mult = json::array();
    for (const auto& [idx, count] : r.witness_multiset) {
        json entry;
        entry["element"] = coords(idx);
        entry["count"] = count;
        mult.push_back(std::move(entry));
    }
    j["witness_multiset"] = mult;
    return j;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json load_json(const std::filesystem::path& path) { return json::parse(read_text(path)); }

void atomic_write_text(const std::filesystem::path& path, const std::string& text) {
    namespace fs = std::filesystem;
    fs::path dir = path.parent_path();
    if (!dir.empty()) fs::create_directories(dir);
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << text;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

}  // namespace egz::io

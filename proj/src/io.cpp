#include "htensor/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace htensor {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw Error(Errc::ParseError, where + ": " + what);
}

json parse_text(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail("json", e.what());
    }
}

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) fail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, std::string("missing \"") + key + "\"");
    return *it;
}

int require_int(const json& obj, const char* key, const std::string& where) {
    const json& v = require(obj, key, where);
    if (!v.is_number_integer()) fail(where + "." + key, "expected an integer");
    return v.get<int>();
}

double require_number(const json& v, const std::string& where) {
    if (!v.is_number()) fail(where, "expected a number");
    return v.get<double>();
}

Eigen::MatrixXd read_square(const json& v, int d, const std::string& where) {
    if (!v.is_array() || static_cast<int>(v.size()) != d) fail(where, "expected " + std::to_string(d) + " rows");
    Eigen::MatrixXd out(d, d);
    for (int r = 0; r < d; ++r) {
        const std::string row_where = where + "[" + std::to_string(r) + "]";
        if (!v[r].is_array() || static_cast<int>(v[r].size()) != d) {
            fail(row_where, "expected " + std::to_string(d) + " columns");
        }
        for (int c = 0; c < d; ++c) out(r, c) = require_number(v[r][c], row_where + "[" + std::to_string(c) + "]");
    }
    return out;
}

std::string round_trip(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

DenseTensor parse_tensor(std::string_view text) {
    const json doc = parse_text(text);
    const int m = require_int(doc, "order", "tensor");
    const int n = require_int(doc, "dim", "tensor");
    if (m < 2) fail("tensor.order", "must be >= 2");
    if (n < 1) fail("tensor.dim", "must be >= 1");
    bool symmetrize = false;
    if (doc.contains("symmetrize")) {
        if (!doc["symmetrize"].is_boolean()) fail("tensor.symmetrize", "expected true or false");
        symmetrize = doc["symmetrize"].get<bool>();
    }
    const json& list = require(doc, "entries", "tensor");
    if (!list.is_array()) fail("tensor.entries", "expected an array");

    std::vector<Entry> entries;
    entries.reserve(list.size());
    for (std::size_t k = 0; k < list.size(); ++k) {
        const std::string where = "entries[" + std::to_string(k) + "]";
        const json& e = list[k];
        const json& idx = require(e, "idx", where);
        if (!idx.is_array() || static_cast<int>(idx.size()) != m) {
            fail(where + ".idx", "expected " + std::to_string(m) + " indices");
        }
        Entry entry;
        for (const auto& i : idx) {
            if (!i.is_number_integer()) fail(where + ".idx", "indices must be integers");
            entry.idx.push_back(i.get<int>());
        }
        const json& val = require(e, "val", where);
        const bool diagonal = std::all_of(entry.idx.begin(), entry.idx.end(), [&](int i) { return i == entry.idx[0]; });
        if (val.is_array()) {
            if (val.size() != 2) fail(where + ".val", "complex values are [re, im]");
            const double re = require_number(val[0], where + ".val[0]");
            const double im = require_number(val[1], where + ".val[1]");
            if (diagonal && im != 0.0) {
                throw Error(Errc::ComplexDiagonal, where + ": diagonal entry has imaginary part " + round_trip(im));
            }
            entry.value = im == 0.0 ? re : std::hypot(re, im);
        } else {
            entry.value = require_number(val, where + ".val");
        }
        if (!std::isfinite(entry.value)) throw Error(Errc::NonFiniteValue, where + ": value is not finite");
        entries.push_back(std::move(entry));
    }

    if (!symmetrize) return build_tensor(m, n, entries);

    std::map<Index, std::pair<double, std::size_t>> expanded;
    for (std::size_t k = 0; k < entries.size(); ++k) {
        for (int i : entries[k].idx) {
            if (i < 1 || i > n) {
                throw Error(Errc::IndexOutOfRange, "entries[" + std::to_string(k) + "]: index " + std::to_string(i));
            }
        }
        Index perm = entries[k].idx;
        std::sort(perm.begin(), perm.end());
        do {
            auto [it, fresh] = expanded.try_emplace(perm, entries[k].value, k);
            if (!fresh && it->second.first != entries[k].value) {
                fail("entries[" + std::to_string(k) + "]",
                     "conflicts with entries[" + std::to_string(it->second.second) + "] after symmetrizing");
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    std::vector<Entry> flat;
    flat.reserve(expanded.size());
    for (auto& [idx, v] : expanded) flat.push_back({idx, v.first});
    return build_tensor(m, n, flat);
}

DenseTensor load_tensor(const std::string& path) { return parse_tensor(read_file(path)); }

std::string tensor_to_json(const DenseTensor& t) {
    json doc;
    doc["order"] = t.order();
    doc["dim"] = t.dim();
    doc["entries"] = json::array();
    std::vector<int> idx(t.order());
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t.flat(k) == 0.0) continue;
        t.unravel(k, idx);
        std::vector<int> one_based(idx);
        for (auto& i : one_based) ++i;
        doc["entries"].push_back({{"idx", one_based}, {"val", t.flat(k)}});
    }
    return doc.dump(1) + "\n";
}

SpinState parse_state(std::string_view text) {
    const json doc = parse_text(text);
    SpinState s;
    s.m = require_int(doc, "m", "state");
    if (s.m < 1) fail("state.m", "must be >= 1");
    if (s.m > kMaxSpinOrder) throw Error(Errc::OrderTooLarge, "state.m = " + std::to_string(s.m));
    const int d = s.m + 1;
    const Eigen::MatrixXd re = read_square(require(doc, "rho_re", "state"), d, "rho_re");
    Eigen::MatrixXd im = Eigen::MatrixXd::Zero(d, d);
    if (doc.contains("rho_im")) im = read_square(doc["rho_im"], d, "rho_im");
    s.rho = re.cast<std::complex<double>>() + std::complex<double>(0, 1) * im.cast<std::complex<double>>();
    validate_state(s);
    return s;
}

MixtureSpec parse_mixture(std::string_view text) {
    const json doc = parse_text(text);
    MixtureSpec spec;
    spec.m = require_int(doc, "m", "mixture");
    const json& comps = require(doc, "components", "mixture");
    if (!comps.is_array() || comps.empty()) fail("mixture.components", "expected a nonempty array");
    for (std::size_t k = 0; k < comps.size(); ++k) {
        const std::string where = "components[" + std::to_string(k) + "]";
        spec.weights.push_back(require_number(require(comps[k], "w", where), where + ".w"));
        spec.dirs.push_back({require_number(require(comps[k], "theta", where), where + ".theta"),
                             require_number(require(comps[k], "phi", where), where + ".phi")});
    }
    return spec;
}

std::string state_to_json(const SpinState& state) {
    const int d = static_cast<int>(state.rho.rows());
    json re = json::array(), im = json::array();
    for (int r = 0; r < d; ++r) {
        json rr = json::array(), ii = json::array();
        for (int c = 0; c < d; ++c) {
            rr.push_back(state.rho(r, c).real());
            ii.push_back(state.rho(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    json doc{{"m", state.m}, {"rho_re", re}, {"rho_im", im}};
    return doc.dump(1) + "\n";
}

SpinState load_spin_input(const std::string& path) {
    const std::string text = read_file(path);
    const json doc = parse_text(text);
    if (doc.is_object() && doc.contains("components")) {
        const MixtureSpec spec = parse_mixture(text);
        return classical_mixture(spec.m, spec.weights, spec.dirs);
    }
    return parse_state(text);
}

}  // namespace htensor

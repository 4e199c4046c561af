#include "metricgroup/serialize.hpp"

#include <sstream>

#include "metricgroup/errors.hpp"

namespace mg {

namespace {

long long json_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw Error(std::string("expected an integer for ") + what);
    return j.get<long long>();
}

QmodZ json_rational(const Json& j, const char* what) {
    if (!j.is_string()) throw Error(std::string("expected a \"num/den\" string for ") + what);
    return QmodZ::parse(j.get<std::string>());
}

Vec json_coords(const Json& j, const char* what) {
    if (!j.is_array()) throw Error(std::string("expected a coordinate array for ") + what);
    Vec v;
    for (const Json& e : j) v.push_back(json_int(e, what));
    return v;
}

} // namespace

FinAbGroup parse_group_literal(const std::string& s) {
    std::vector<long long> factors;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        size_t used = 0;
        long long d = 0;
        try {
            d = std::stoll(tok, &used);
        } catch (const std::exception&) {
            throw Error("bad group literal: " + s);
        }
        if (used != tok.size() || d < 1) throw Error("bad group literal: " + s);
        if (d > 1) factors.push_back(d);
    }
    if (s.empty()) throw Error("empty group literal");
    return FinAbGroup(std::move(factors));
}

Json group_to_json(const FinAbGroup& g) {
    Json j = Json::array();
    for (long long d : g.factors) j.push_back(d);
    return j;
}

FinAbGroup group_from_json(const Json& j) {
    if (!j.is_array()) throw Error("group must be an array of factors");
    std::vector<long long> factors;
    for (const Json& e : j) factors.push_back(json_int(e, "group factor"));
    return FinAbGroup(std::move(factors));
}

Json form_to_json(const QuadraticForm& q) {
    Json j;
    j["group"] = group_to_json(q.group);
    Json diag = Json::array();
    for (const QmodZ& v : q.diag) diag.push_back(v.str());
    j["diag"] = std::move(diag);
    Json cross = Json::array();
    for (const auto& row : q.cross) {
        Json r = Json::array();
        for (const QmodZ& v : row) r.push_back(v.str());
        cross.push_back(std::move(r));
    }
    j["cross"] = std::move(cross);
    return j;
}

QuadraticForm form_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("group") || !j.contains("diag") || !j.contains("cross"))
        throw Error("form needs group, diag and cross fields");
    FinAbGroup g = group_from_json(j["group"]);
    size_t k = g.ngens();
    if (!j["diag"].is_array() || j["diag"].size() != k) throw Error("form diag size mismatch");
    std::vector<QmodZ> diag;
    for (const Json& e : j["diag"]) diag.push_back(json_rational(e, "diag entry"));
    if (!j["cross"].is_array() || j["cross"].size() != k) throw Error("form cross size mismatch");
    std::vector<std::vector<QmodZ>> cross;
    for (const Json& row : j["cross"]) {
        if (!row.is_array() || row.size() != k) throw Error("form cross size mismatch");
        std::vector<QmodZ> r;
        for (const Json& e : row) r.push_back(json_rational(e, "cross entry"));
        cross.push_back(std::move(r));
    }
    return make_form(std::move(g), std::move(diag), std::move(cross));
}

Json lattice_to_json(const EvenLattice& l) {
    Json j;
    j["name"] = l.name;
    Json gram = Json::array();
    for (long i = 0; i < l.gram.rows; i++) {
        Json row = Json::array();
        for (long k = 0; k < l.gram.cols; k++)
            row.push_back(l.gram.at(i, k).convert_to<long long>());
        gram.push_back(std::move(row));
    }
    j["gram"] = std::move(gram);
    return j;
}

EvenLattice lattice_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("gram")) throw Error("lattice needs a gram field");
    std::string name = j.contains("name") ? j["name"].get<std::string>() : "lattice";
    const Json& gram = j["gram"];
    if (!gram.is_array() || gram.empty()) throw Error("gram must be a nonempty matrix");
    long n = long(gram.size());
    IntMat m(n, n);
    for (long i = 0; i < n; i++) {
        const Json& row = gram[size_t(i)];
        if (!row.is_array() || long(row.size()) != n) throw Error("gram must be square");
        for (long k = 0; k < n; k++) m.at(i, k) = json_int(row[size_t(k)], "gram entry");
    }
    return make_lattice(std::move(name), std::move(m));
}

Json triple_to_json(const GlueTriple& t) {
    Json j;
    j["G"] = group_to_json(t.G);
    j["Gamma"] = group_to_json(t.q.group);
    j["q"] = form_to_json(t.q);
    Json images = Json::array();
    for (const Vec& im : t.i.images) {
        Json coords = Json::array();
        for (long long c : im) coords.push_back(c);
        images.push_back(std::move(coords));
    }
    j["i"] = std::move(images);
    return j;
}

GlueTriple triple_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("G") || !j.contains("q") || !j.contains("i"))
        throw Error("triple needs G, q and i fields");
    FinAbGroup g = group_from_json(j["G"]);
    QuadraticForm q = form_from_json(j["q"]);
    if (j.contains("Gamma") && group_from_json(j["Gamma"]) != q.group)
        throw Error("Gamma field disagrees with the form's group");
    if (!j["i"].is_array() || j["i"].size() != g.ngens())
        throw Error("i needs one image per generator of G");
    std::vector<Vec> images;
    for (const Json& e : j["i"]) {
        Vec v = json_coords(e, "embedding image");
        if (v.size() != q.group.ngens()) throw Error("embedding image has wrong length");
        images.push_back(q.group.reduce(std::move(v)));
    }
    GroupHom i{g, q.group, std::move(images)};
    return GlueTriple{std::move(g), std::move(q), std::move(i)};
}

Json cocycle_to_json(const Cocycle3& w) {
    Json j;
    j["group"] = group_to_json(w.group);
    Json values = Json::array();
    long long n = w.group.order();
    for (long long x = 0; x < n; x++)
        for (long long y = 0; y < n; y++)
            for (long long z = 0; z < n; z++) {
                const QmodZ& v = w.at(x, y, z);
                if (v.is_zero()) continue;
                values.push_back(Json::array({x, y, z, v.str()}));
            }
    j["values"] = std::move(values);
    return j;
}

Cocycle3 cocycle_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("group")) throw Error("cocycle needs a group field");
    FinAbGroup g = group_from_json(j["group"]);
    long long n = g.order();
    std::vector<QmodZ> vals(size_t(n * n * n), QmodZ(0, 1));
    std::vector<bool> seen(vals.size(), false);
    if (j.contains("values")) {
        if (!j["values"].is_array()) throw Error("cocycle values must be an array");
        for (const Json& e : j["values"]) {
            if (!e.is_array() || e.size() != 4) throw Error("cocycle entry must be [x,y,z,\"a/b\"]");
            long long x = json_int(e[0], "cocycle index");
            long long y = json_int(e[1], "cocycle index");
            long long z = json_int(e[2], "cocycle index");
            if (x < 0 || x >= n || y < 0 || y >= n || z < 0 || z >= n)
                throw Error("cocycle entry index out of range");
            size_t slot = size_t((x * n + y) * n + z);
            if (seen[slot]) throw Error("duplicate cocycle entry");
            seen[slot] = true;
            vals[slot] = json_rational(e[3], "cocycle value");
        }
    }
    return Cocycle3(std::move(g), std::move(vals));
}

} // namespace mg

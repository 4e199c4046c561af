#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "metricgroup/moddata.hpp"
#include "metricgroup/serialize.hpp"

namespace py = pybind11;
using namespace mg;

namespace {

// arbitrary-precision Int to exact Python int
py::object py_int(const Int& v) {
    return py::reinterpret_steal<py::object>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}

py::list int_rows(const IntMat& m) {
    py::list rows;
    for (long i = 0; i < m.rows; i++) {
        py::list row;
        for (long j = 0; j < m.cols; j++) row.append(py_int(m.at(i, j)));
        rows.append(row);
    }
    return rows;
}

IntMat rows_to_mat(const std::vector<std::vector<long long>>& rows) {
    long n = long(rows.size());
    long c = n ? long(rows[0].size()) : 0;
    IntMat m(n, c);
    for (long i = 0; i < n; i++) {
        if (long(rows[size_t(i)].size()) != c) throw Error("ragged matrix rows");
        for (long j = 0; j < c; j++) m.at(i, j) = rows[size_t(i)][size_t(j)];
    }
    return m;
}

std::string rat_str(const Rat& r) {
    std::ostringstream o;
    o << r;
    return o.str();
}

std::vector<Rat> parse_rats(const std::vector<std::string>& v) {
    std::vector<Rat> out;
    out.reserve(v.size());
    for (const std::string& s : v) out.emplace_back(s);
    return out;
}

RealizeBounds make_bounds(long long max_k, long max_rank1, long max_big, long max_e8) {
    RealizeBounds b;
    b.max_k = max_k;
    b.max_rank1 = max_rank1;
    b.max_big = max_big;
    b.max_e8 = max_e8;
    return b;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact computations with metric groups, glue triples and even lattices";

    auto base_exc = py::register_exception<Error>(m, "MetricGroupError");
    py::register_exception<TooLarge>(m, "TooLargeError", base_exc.ptr());
    py::register_exception<RealizationNotFound>(m, "RealizationNotFoundError", base_exc.ptr());

    py::class_<QmodZ>(m, "QmodZ", "exact rational in Q/Z, reduced to [0, 1)")
        .def(py::init<long long, long long>(), py::arg("num"), py::arg("den"))
        .def(py::init([](const std::string& s) { return QmodZ::parse(s); }))
        .def_property_readonly("num", &QmodZ::num)
        .def_property_readonly("den", &QmodZ::den)
        .def("order", &QmodZ::order)
        .def("to_double", &QmodZ::to_double)
        .def("times", &QmodZ::times)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def(py::self != py::self)
        .def(py::self < py::self)
        .def("__hash__", [](const QmodZ& v) { return std::hash<QmodZ>()(v); })
        .def("__str__", &QmodZ::str)
        .def("__repr__", [](const QmodZ& v) { return "QmodZ(" + v.str() + ")"; });

    py::class_<FinAbGroup>(m, "Group", "finite abelian group in invariant factors")
        .def(py::init<std::vector<long long>>(), py::arg("factors") = std::vector<long long>{})
        .def_readonly("factors", &FinAbGroup::factors)
        .def("order", &FinAbGroup::order)
        .def("exponent", &FinAbGroup::exponent)
        .def("ngens", &FinAbGroup::ngens)
        .def("zero", &FinAbGroup::zero)
        .def("gen", &FinAbGroup::gen)
        .def("element", &FinAbGroup::element)
        .def("index_of", &FinAbGroup::index_of)
        .def("add", &FinAbGroup::add)
        .def("neg", &FinAbGroup::neg)
        .def("smul", &FinAbGroup::smul)
        .def("elem_order", &FinAbGroup::elem_order)
        .def(py::self == py::self)
        .def(py::self != py::self)
        .def("__repr__", [](const FinAbGroup& g) {
            std::string s = "Group([";
            for (size_t i = 0; i < g.factors.size(); i++)
                s += (i ? ", " : "") + std::to_string(g.factors[i]);
            return s + "])";
        });

    py::class_<Subgroup>(m, "Subgroup")
        .def_readonly("parent", &Subgroup::parent)
        .def_readonly("gens", &Subgroup::gens)
        .def_readonly("elems", &Subgroup::elems)
        .def("order", &Subgroup::order)
        .def("contains_index", &Subgroup::contains_index);

    py::class_<GroupHom>(m, "Hom")
        .def(py::init<FinAbGroup, FinAbGroup, std::vector<Vec>>(), py::arg("src"),
             py::arg("dst"), py::arg("images"))
        .def_readonly("src", &GroupHom::src)
        .def_readonly("dst", &GroupHom::dst)
        .def_readonly("images", &GroupHom::images)
        .def("apply", &GroupHom::apply)
        .def("well_defined", &GroupHom::well_defined)
        .def("is_injective", &GroupHom::is_injective)
        .def("is_surjective", &GroupHom::is_surjective);

    py::class_<QuadraticForm>(m, "Form", "finite quadratic form q: A -> Q/Z")
        .def_readonly("group", &QuadraticForm::group)
        .def_readonly("diag", &QuadraticForm::diag)
        .def("q", &QuadraticForm::q)
        .def("b", &QuadraticForm::b)
        .def(py::self == py::self)
        .def(py::self != py::self)
        .def("to_json", [](const QuadraticForm& f) { return form_to_json(f).dump(); })
        .def_static("from_json",
                    [](const std::string& s) { return form_from_json(Json::parse(s)); })
        .def("__repr__",
             [](const QuadraticForm& f) { return "Form.from_json('" + form_to_json(f).dump() + "')"; });

    py::class_<EvenLattice>(m, "Lattice", "positive definite even lattice")
        .def_readonly("name", &EvenLattice::name)
        .def("rank", &EvenLattice::rank)
        .def("det", [](const EvenLattice& l) { return py_int(l.det()); })
        .def_property_readonly("gram", [](const EvenLattice& l) { return int_rows(l.gram); })
        .def("to_json", [](const EvenLattice& l) { return lattice_to_json(l).dump(); })
        .def_static("from_json",
                    [](const std::string& s) { return lattice_from_json(Json::parse(s)); })
        .def("__repr__", [](const EvenLattice& l) {
            return "Lattice(" + l.name + ", rank " + std::to_string(l.rank()) + ")";
        });

    py::class_<DiscriminantForm>(m, "DiscForm", "discriminant form with generator lifts")
        .def_readonly("form", &DiscriminantForm::form)
        .def_property_readonly("lifts",
                               [](const DiscriminantForm& d) {
                                   std::vector<std::vector<std::string>> out;
                                   for (const auto& lift : d.lifts) {
                                       std::vector<std::string> row;
                                       for (const Rat& r : lift) row.push_back(rat_str(r));
                                       out.push_back(row);
                                   }
                                   return out;
                               })
        .def("class_of", [](const DiscriminantForm& d, const std::vector<std::string>& w) {
            return d.class_of(parse_rats(w));
        });

    py::class_<GlueTriple>(m, "Triple", "glue triple (Gamma, q, i) over a base group G")
        .def(py::init<FinAbGroup, QuadraticForm, GroupHom>(), py::arg("G"), py::arg("q"),
             py::arg("i"))
        .def_readonly("G", &GlueTriple::G)
        .def_readonly("q", &GlueTriple::q)
        .def_readonly("i", &GlueTriple::i)
        .def_property_readonly("gamma", [](const GlueTriple& t) { return t.gamma(); })
        .def("to_json", [](const GlueTriple& t) { return triple_to_json(t).dump(); })
        .def_static("from_json",
                    [](const std::string& s) { return triple_from_json(Json::parse(s)); })
        .def("__repr__", [](const GlueTriple& t) {
            return "Triple.from_json('" + triple_to_json(t).dump() + "')";
        });

    py::class_<QGroupTable>(m, "QGroupTable")
        .def_readonly("classes", &QGroupTable::classes)
        .def_readonly("table", &QGroupTable::table)
        .def_readonly("identity", &QGroupTable::identity)
        .def_readonly("inverse_map", &QGroupTable::inverse_map);

    py::class_<TripleRealization>(m, "TripleRealization")
        .def_readonly("E", &TripleRealization::E)
        .def_readonly("L", &TripleRealization::L)
        .def_property_readonly("coset_reps", [](const TripleRealization& r) {
            std::vector<std::vector<std::string>> out;
            for (const auto& rep : r.coset_reps) {
                std::vector<std::string> row;
                for (const Rat& x : rep) row.push_back(rat_str(x));
                out.push_back(row);
            }
            return out;
        });

    py::class_<Cocycle3>(m, "Cocycle", "normalized 3-cochain with values in Q/Z")
        .def_readonly("group", &Cocycle3::group)
        .def("__call__", &Cocycle3::operator())
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def("to_json", [](const Cocycle3& w) { return cocycle_to_json(w).dump(); })
        .def_static("from_json",
                    [](const std::string& s) { return cocycle_from_json(Json::parse(s)); });

    py::class_<GolayCode>(m, "GolayCode")
        .def_readonly("words", &GolayCode::words)
        .def("contains", &GolayCode::contains);

    py::class_<PointedModularData>(m, "ModularData", "S, T and charge of a pointed category")
        .def_readonly("group", &PointedModularData::group)
        .def_readonly("q", &PointedModularData::q)
        .def_readonly("S", &PointedModularData::S)
        .def_readonly("T", &PointedModularData::T)
        .def_readonly("charge", &PointedModularData::charge);

    // groups
    m.def("parse_group_literal", &parse_group_literal, py::arg("literal"),
          "\"2,4\" -> Group([2, 4]); \"1\" is the trivial group");
    m.def("abelian_group_types", &abelian_group_types, py::arg("order"));
    m.def("exterior_cube", &exterior_cube);
    m.def("dual_pairing", &dual_pairing);
    m.def("generated_subgroup", &generated_subgroup);
    m.def("enumerate_subgroups", &enumerate_subgroups, py::arg("g"),
          py::arg("max_order") = 4096);

    // forms
    m.def("make_form",
          [](const FinAbGroup& g, const std::vector<std::string>& diag,
             const std::vector<std::vector<std::string>>& cross) {
              std::vector<QmodZ> d;
              for (const std::string& s : diag) d.push_back(QmodZ::parse(s));
              std::vector<std::vector<QmodZ>> c;
              for (const auto& row : cross) {
                  std::vector<QmodZ> r;
                  for (const std::string& s : row) r.push_back(QmodZ::parse(s));
                  c.push_back(r);
              }
              return make_form(g, d, c);
          },
          py::arg("group"), py::arg("diag"), py::arg("cross"),
          "build a form from \"a/b\" strings for q(e_i) and b(e_i, e_j)");
    m.def("zero_form", &zero_form);
    m.def("negate", &negate);
    m.def("direct_sum", &direct_sum);
    m.def("standard_u", &standard_u, py::arg("k"));
    m.def("standard_v", &standard_v, py::arg("k"));
    m.def("cyclic_q", &cyclic_q, py::arg("n"), py::arg("v"));
    m.def("radical", &radical);
    m.def("is_nondegenerate", &is_nondegenerate);
    m.def("gauss_milgram_signature", &gauss_milgram_signature);
    m.def("is_isotropic", &is_isotropic);
    m.def("isotropic_subgroups", &isotropic_subgroups);
    m.def("lagrangian_subgroups", &lagrangian_subgroups);
    m.def("orthogonal_complement", &orthogonal_complement);
    m.def("induced_form",
          [](const QuadraticForm& f, const Subgroup& h) { return induced_form(f, h).form; });
    m.def("form_equivalence", &form_equivalence);
    m.def("form_automorphisms", &form_automorphisms);
    m.def("enumerate_forms", &enumerate_forms);
    m.def("enumerate_forms_up_to_equivalence", &enumerate_forms_up_to_equivalence,
          py::arg("g"), py::arg("nondegenerate_only"));
    m.def("value_multiset", &value_multiset);

    // lattices
    m.def("make_lattice",
          [](const std::string& name, const std::vector<std::vector<long long>>& gram) {
              return make_lattice(name, rows_to_mat(gram));
          },
          py::arg("name"), py::arg("gram"));
    m.def("is_even", &is_even);
    m.def("is_unimodular", &is_unimodular);
    m.def("direct_sum_lattice", &direct_sum_lattice);
    m.def("discriminant_form", &discriminant_form);
    m.def("rank1_lattice", &rank1_lattice, py::arg("k"));
    m.def("root_A1", &root_A1);
    m.def("root_A", &root_A, py::arg("n"));
    m.def("root_D", &root_D, py::arg("n"));
    m.def("root_E7", &root_E7);
    m.def("root_E8", &root_E8);
    m.def("build_spin16", &build_spin16);
    m.def("spin16_kernel", &spin16_kernel);
    m.def("e8_quarter_kernel", &e8_quarter_kernel);
    m.def("build_golay", &build_golay);
    m.def("build_golay_flm", &build_golay_flm);
    m.def("weight_enumerator", &weight_enumerator);
    m.def("build_niemeier_a1_24", &build_niemeier_a1_24);
    m.def("overlattice", &overlattice, py::arg("l"), py::arg("d"), py::arg("h"),
          py::arg("name") = "");
    m.def("realize_form",
          [](const QuadraticForm& q, std::optional<long long> sig, long long max_k,
             long max_rank1, long max_big, long max_e8) {
              long long s = sig ? *sig : gauss_milgram_signature(q);
              return realize_form(q, s, make_bounds(max_k, max_rank1, max_big, max_e8));
          },
          py::arg("q"), py::arg("sig") = std::nullopt, py::arg("max_k") = 8,
          py::arg("max_rank1") = 3, py::arg("max_big") = 2, py::arg("max_e8") = 2,
          "positive definite even lattice realizing q; sig defaults to Gauss-Milgram");
    m.def("catalog_names", [] {
        std::vector<std::string> names;
        for (const auto& [name, l] : lattice_catalog()) names.push_back(name);
        return names;
    });
    m.def("catalog_lattice", &catalog_lattice, py::arg("name"));

    // glue triples
    m.def("validate_triple", [](const GlueTriple& t) {
        TripleCheck c = validate(t);
        return py::make_tuple(c.ok, c.why);
    });
    m.def("identity_triple", &identity_triple);
    m.def("product", &product);
    m.def("inverse", &inverse);
    m.def("equivalent", &equivalent, py::arg("a"), py::arg("b"), py::arg("max_order") = 4096);
    m.def("enumerate_Q", &enumerate_Q, py::arg("g"), py::arg("max_group_order") = 4);
    m.def("realize_triple",
          [](const GlueTriple& t, long long max_k, long max_rank1, long max_big, long max_e8) {
              return realize_triple(t, make_bounds(max_k, max_rank1, max_big, max_e8));
          },
          py::arg("t"), py::arg("max_k") = 8, py::arg("max_rank1") = 3, py::arg("max_big") = 2,
          py::arg("max_e8") = 2);

    // cocycles
    m.def("zero_cocycle", &zero_cocycle);
    m.def("standard_cyclic_cocycle", &standard_cyclic_cocycle, py::arg("n"), py::arg("a"));
    m.def("volume_cocycle_z2cube", &volume_cocycle_z2cube);
    m.def("is_cocycle", &is_cocycle);
    m.def("first_cocycle_violation", &first_cocycle_violation);
    m.def("is_coboundary", [](const Cocycle3& w) { return is_coboundary(w).has_value(); });
    m.def("phi_star", &phi_star);
    m.def("phi_star_image", &phi_star_image);
    m.def("is_pointed_class", &is_pointed_class);
    m.def("cocycle_from_form",
          [](const QuadraticForm& q) { return abelian_cocycle_from_form(q).omega; },
          "the 3-cocycle part of the abelian cocycle attached to a form");
    m.def("restrict_to_cyclic", &restrict_to_cyclic);
    m.def("cyclic_class_order", &cyclic_class_order);
    m.def("maximal_cyclic_subgroups", &maximal_cyclic_subgroups);
    m.def("fsexp_from_cocycle", &fsexp_from_cocycle);
    m.def("fsexp_pointed", &fsexp_pointed);
    m.def("dihedral_class_order", &dihedral_class_order, py::arg("m"));

    // modular data
    m.def("build_modular_data", &build_modular_data);
    m.def("t_order", &t_order);
    m.def("verify_conjugate_pair", &verify_conjugate_pair);

    // serialization bridges for whole-report tooling
    m.def("group_to_json", [](const FinAbGroup& g) { return group_to_json(g).dump(); });
    m.def("group_from_json",
          [](const std::string& s) { return group_from_json(Json::parse(s)); });
}

#pragma once

#include <string>

#include "json.hpp"
#include "metricgroup/cocycles.hpp"
#include "metricgroup/lattices.hpp"
#include "metricgroup/triples.hpp"

namespace mg {

// ordered_json keeps insertion order, so identical inputs serialize to
// identical bytes
using Json = nlohmann::ordered_json;

// "2,4" -> Z2 x Z4; factors of 1 are dropped, so "1" is the trivial group
FinAbGroup parse_group_literal(const std::string& s);

Json group_to_json(const FinAbGroup& g);
FinAbGroup group_from_json(const Json& j);

// {"group": [d1,...], "diag": ["a/b",...], "cross": [["a/b",...],...]}
Json form_to_json(const QuadraticForm& q);
QuadraticForm form_from_json(const Json& j);

// {"name": "...", "gram": [[...]]}
Json lattice_to_json(const EvenLattice& l);
EvenLattice lattice_from_json(const Json& j);

// {"G": [..], "Gamma": [..], "q": <form>, "i": [[coords],...]}
Json triple_to_json(const GlueTriple& t);
GlueTriple triple_from_json(const Json& j);

// {"group": [..], "values": [[x,y,z,"a/b"],...]} sparse over element indices
Json cocycle_to_json(const Cocycle3& w);
Cocycle3 cocycle_from_json(const Json& j);

} // namespace mg

#ifndef PROPHECKE_JSON_IO_HPP
#define PROPHECKE_JSON_IO_HPP

#include <json.hpp>

#include "prophecke/modules.hpp"

namespace prophecke {

using Json = nlohmann::ordered_json;

Json datum_to_json(const RootDatum& d);

// {"lambda": [...], "u": "s1 s2 s1"} with the finite part as a reduced word.
Json welt_to_json(const AffineWeyl& aw, const WElt& w);
// {"t": [...], "lambda": [...], "u": "word"}
Json tilde_to_json(const ExtendedGroup& g, const TildeElt& w);

// {"mode": "generic"|"charp", "terms": [{"w": ..., "c": "..."}]} with terms
// in the canonical order (length, Omega class, then lex).
Json hecke_to_json(const HeckeGen& alg, const HEltGen& a);
Json hecke_to_json(const HeckeP& alg, const HEltP& a);

Json classification_to_json(const ExtendedGroup& g, const GF& field,
                            const std::vector<ClassifiedModule>& mods);

// Cocycle cache honoring PROP_HECKE_CACHE_DIR: writes the table on first use
// and validates it afterwards; returns false (without touching the group) on
// mismatch.
bool sync_cocycle_cache(const ExtendedGroup& g, const std::string& dir);

// Small CLI parsing helpers.
Coord parse_coord(const std::string& text, int rank);      // "1,0,2"
Facet parse_facet(const std::string& text, const RootDatum& d);  // "", "1,2", "x0"

}  // namespace prophecke

#endif

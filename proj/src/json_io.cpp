#include "prophecke/json_io.hpp"

#include <filesystem>
#include <fstream>

namespace prophecke {

namespace {

Json coord_to_json(const Coord& c, int rank) {
  Json a = Json::array();
  for (int i = 0; i < rank; ++i) a.push_back(c[i]);
  return a;
}

std::string finite_word(const RootDatum& d, int u) {
  std::string s;
  for (int i : d.weyl().word(u)) {
    if (!s.empty()) s += " ";
    s += "s" + std::to_string(i + 1);
  }
  return s;
}

}  // namespace

Json datum_to_json(const RootDatum& d) {
  Json j;
  j["label"] = d.label();
  j["rank"] = d.rank();
  j["q"] = d.q();
  Json cartan = Json::array();
  for (int i = 0; i < d.nsimple(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < d.nsimple(); ++k) row.push_back(d.cartan(i, k));
    cartan.push_back(row);
  }
  j["cartan"] = cartan;
  Json roots = Json::array(), coroots = Json::array();
  for (int i = 0; i < d.npos(); ++i) {
    roots.push_back(coord_to_json(d.pos_root(i), d.rank()));
    coroots.push_back(coord_to_json(d.pos_coroot(i), d.rank()));
  }
  j["roots"] = roots;
  j["coroots"] = coroots;
  return j;
}

Json welt_to_json(const AffineWeyl& aw, const WElt& w) {
  Json j;
  j["lambda"] = coord_to_json(w.lam, aw.datum().rank());
  j["u"] = finite_word(aw.datum(), w.u);
  return j;
}

Json tilde_to_json(const ExtendedGroup& g, const TildeElt& w) {
  Json j;
  j["t"] = coord_to_json(w.t, g.datum().rank());
  j["lambda"] = coord_to_json(w.lam, g.datum().rank());
  j["u"] = finite_word(g.datum(), w.u);
  return j;
}

namespace {

template <class Alg, class Elt>
Json hecke_json_impl(const Alg& alg, const Elt& a, const char* mode) {
  Json j;
  j["mode"] = mode;
  std::vector<TildeElt> keys;
  for (const auto& [w, c] : a) keys.push_back(w);
  std::sort(keys.begin(), keys.end(), [&](const TildeElt& x, const TildeElt& y) {
    return alg.grp().canonical_less(x, y);
  });
  Json terms = Json::array();
  for (const TildeElt& w : keys) {
    Json t;
    t["w"] = tilde_to_json(alg.grp(), w);
    t["c"] = alg.coeff_str(a.at(w));
    terms.push_back(t);
  }
  j["terms"] = terms;
  return j;
}

}  // namespace

Json hecke_to_json(const HeckeGen& alg, const HEltGen& a) {
  return hecke_json_impl(alg, a, "generic");
}

Json hecke_to_json(const HeckeP& alg, const HEltP& a) {
  return hecke_json_impl(alg, a, "charp");
}

Json classification_to_json(const ExtendedGroup& g, const GF& field,
                            const std::vector<ClassifiedModule>& mods) {
  Json out = Json::array();
  for (const ClassifiedModule& m : mods) {
    Json j;
    Json orbit;
    orbit["xi"] = coord_to_json(m.orbit_rep.xi.a, g.datum().rank());
    Json vals = Json::array();
    for (int8_t v : m.orbit_rep.val) vals.push_back(static_cast<int>(v));
    orbit["values"] = vals;
    Json sig = Json::array();
    for (Fel v : m.sigma.gen_val) sig.push_back(field.to_string(v));
    orbit["sigma"] = sig;
    j["orbit"] = orbit;
    j["dim"] = m.module->dim();
    Json zc;
    Json zgen = Json::array();
    for (const auto& [lam, v] : m.z_character) {
      Json e;
      e["lambda"] = coord_to_json(lam, g.datum().rank());
      e["value"] = field.to_string(v);
      zgen.push_back(e);
    }
    zc["length_zero"] = zgen;
    zc["positive_length"] = "0";
    j["zcharacter"] = zc;
    j["supersingular"] = m.supersingular;
    j["irreducible"] = m.irreducible;
    out.push_back(j);
  }
  return out;
}

bool sync_cocycle_cache(const ExtendedGroup& g, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  fs::path file = fs::path(dir) / ("cocycle_" + g.datum().label() + "_q" +
                                   std::to_string(g.datum().q()) + ".json");
  const WeylGroup& w = g.datum().weyl();
  Json table = Json::array();
  for (int a = 0; a < w.size(); ++a)
    for (int b = 0; b < w.size(); ++b)
      table.push_back(coord_to_json(g.cocycle(a, b), g.datum().rank()));
  if (fs::exists(file)) {
    try {
      std::ifstream in(file);
      Json stored;
      in >> stored;
      return stored == table;
    } catch (const std::exception&) {
      return false;
    }
  }
  std::ofstream out(file);
  out << table.dump() << "\n";
  return true;
}

Coord parse_coord(const std::string& text, int rank) {
  Coord c{};
  if (text.empty()) return c;
  size_t pos = 0;
  for (int i = 0; i < rank; ++i) {
    size_t comma = text.find(',', pos);
    std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                  : comma - pos);
    c[i] = std::stoi(tok);
    if (comma == std::string::npos) {
      if (i + 1 < rank && i > 0)
        throw std::invalid_argument("expected " + std::to_string(rank) + " coordinates");
      break;
    }
    pos = comma + 1;
  }
  return c;
}

Facet parse_facet(const std::string& text, const RootDatum& d) {
  if (text.empty()) return d.chamber_facet();
  if (text == "x0" || text == "all") return d.vertex_facet();
  Facet f{0};
  size_t pos = 0;
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                  : comma - pos);
    int i = std::stoi(tok);
    if (i < 1 || i > d.nsimple())
      throw std::invalid_argument("facet index out of range: " + tok);
    f.mask |= (1u << (i - 1));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return f;
}

}  // namespace prophecke

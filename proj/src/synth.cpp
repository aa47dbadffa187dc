#include "plagdet/synth.hpp"

#include <array>
#include <cstdio>

#include "plagdet/rng.hpp"

namespace plagdet {
namespace {

using Words = std::vector<std::string_view>;

struct Topic {
  std::string_view name;
  Words nouns, verbs, adjs;
};

const std::vector<Topic> &topics() {
  static const std::vector<Topic> t = {
      {"farming",
       {"farmer", "orchard", "harvest", "tractor", "barley", "granary", "meadow", "irrigation", "fertilizer",
        "seedling", "vineyard", "drought", "soil", "plow", "greenhouse", "livestock", "crop", "cooperative",
        "silo", "pesticide", "barn", "furrow"},
       {"planted", "harvested", "irrigated", "fertilized", "cultivated", "grazed", "stored", "rotated"},
       {"fertile", "barren", "organic", "seasonal", "rural", "abundant"}},
      {"astronomy",
       {"telescope", "observatory", "galaxy", "comet", "orbit", "planet", "asteroid", "eclipse", "astronomer",
        "satellite", "spectrum", "horizon", "constellation", "supernova", "crater", "probe"},
       {"detected", "observed", "measured", "tracked", "photographed", "mapped", "calibrated"},
       {"distant", "faint", "bright", "vast", "celestial", "stellar"}},
      {"medicine",
       {"patient", "clinic", "surgeon", "vaccine", "symptom", "diagnosis", "therapy", "nurse", "infection",
        "hospital", "dose", "fever", "recovery", "pharmacy", "wound", "trial"},
       {"treated", "prescribed", "diagnosed", "examined", "vaccinated", "monitored", "discharged"},
       {"chronic", "acute", "clinical", "sterile", "fragile"}},
      {"finance",
       {"investor", "bank", "loan", "portfolio", "dividend", "bond", "budget", "deficit", "merger", "auditor",
        "ledger", "pension", "currency", "revenue", "shareholder", "mortgage"},
       {"invested", "borrowed", "audited", "acquired", "merged", "lent"},
       {"profitable", "volatile", "fiscal", "solvent", "quarterly"}},
      {"music",
       {"orchestra", "composer", "melody", "rhythm", "conductor", "concert", "violin", "choir", "symphony",
        "rehearsal", "audience", "guitar", "lyric", "album", "studio", "drummer"},
       {"performed", "composed", "rehearsed", "recorded", "conducted", "improvised"},
       {"melodic", "harmonic", "lively", "acoustic", "classical"}},
      {"sea",
       {"sailor", "harbor", "vessel", "captain", "anchor", "voyage", "lighthouse", "coastline", "tide", "cargo",
        "fisherman", "reef", "hull", "compass", "storm", "crew"},
       {"sailed", "navigated", "anchored", "loaded", "rescued", "charted"},
       {"coastal", "maritime", "stormy", "calm", "salty"}},
      {"architecture",
       {"architect", "facade", "cathedral", "bridge", "tower", "foundation", "blueprint", "column", "arch",
        "courtyard", "mason", "beam", "dome", "window", "staircase", "scaffold"},
       {"designed", "constructed", "restored", "demolished", "reinforced", "inspected"},
       {"ornate", "sturdy", "modern", "towering", "ancient"}},
      {"education",
       {"student", "teacher", "classroom", "curriculum", "lecture", "exam", "scholarship", "library", "textbook",
        "campus", "tutor", "semester", "diploma", "principal", "homework", "graduate"},
       {"taught", "graded", "enrolled", "studied", "lectured", "graduated"},
       {"academic", "diligent", "rigorous", "elementary", "gifted"}},
      {"cooking",
       {"chef", "kitchen", "recipe", "oven", "sauce", "spice", "bakery", "dough", "pastry", "flavor",
        "ingredient", "dessert", "skillet", "broth", "herb", "menu"},
       {"baked", "seasoned", "simmered", "chopped", "tasted", "garnished"},
       {"delicious", "spicy", "savory", "crisp", "tender"}},
      {"railways",
       {"locomotive", "railway", "station", "passenger", "carriage", "timetable", "signal", "platform",
        "tunnel", "junction", "freight", "ticket", "engineer", "track", "viaduct"},
       {"departed", "arrived", "shunted", "electrified", "scheduled", "delayed"},
       {"punctual", "crowded", "express", "suburban", "narrow"}},
      {"geology",
       {"geologist", "volcano", "glacier", "sediment", "fossil", "mineral", "canyon", "earthquake", "boulder",
        "quarry", "fault", "lava", "cave", "erosion", "layer", "crystal"},
       {"excavated", "sampled", "surveyed", "eroded", "drilled", "classified"},
       {"volcanic", "porous", "jagged", "molten", "dense"}},
      {"software",
       {"programmer", "server", "database", "algorithm", "compiler", "interface", "module", "bug", "network",
        "protocol", "cache", "keyboard", "prototype", "release", "framework", "terminal"},
       {"debugged", "compiled", "deployed", "optimized", "refactored", "tested"},
       {"digital", "robust", "efficient", "scalable", "obsolete"}},
  };
  return t;
}

const Words kSharedNouns = {"committee", "council", "project", "report", "survey", "plan", "region", "community",
                            "official", "expert", "program", "problem", "result", "method", "effort", "meeting"};
const Words kSharedVerbs = {"increased", "reduced", "improved", "expanded", "reviewed", "announced",
                            "approved", "funded", "praised", "criticized"};
const Words kIntransitive = {"grew", "declined", "recovered", "stabilized"};
const Words kAdverbs = {"quickly", "slowly", "carefully", "recently"};
const Words kSharedAdjs = {"significant", "major", "new", "large", "small", "important", "local", "early"};
const Words kSurnames = {"Smith", "Garcia", "Novak", "Tanaka", "Okafor", "Larsen", "Moreau", "Rossi",
                         "Kowalski", "Haddad", "Fischer", "Silva", "Petrov", "Nakamura", "Oduya", "Brennan",
                         "Lindqvist", "Mendez", "Ahmadi", "Walsh", "Costa", "Keller", "Duarte", "Ferreira"};
const Words kFirstNames = {"Maria", "John", "Elena", "David", "Priya", "Thomas", "Sofia", "Kenji", "Anna",
                           "Omar", "Laura", "Pablo", "Grace", "Ivan", "Nadia", "Henry", "Clara", "Lucas",
                           "Fatima", "Oliver", "Ingrid", "Samuel", "Yuki", "Rosa"};
const Words kPlaces = {"Lisbon", "Oslo", "Kyoto", "Nairobi", "Lima", "Vienna", "Dublin", "Santiago",
                       "Montreal", "Prague", "Helsinki", "Auckland", "Valencia", "Geneva", "Seoul", "Cairo",
                       "Toronto", "Warsaw", "Melbourne", "Bogota"};
const Words kMonths = {"January", "February", "March", "April", "May", "June", "July", "August",
                       "September", "October", "November", "December"};

class Writer {
 public:
  Writer(Rng &rng, const Topic &topic) : rng_(rng), topic_(&topic) {}
  void set_topic(const Topic &t) { topic_ = &t; }

  std::string pick(const Words &w) { return std::string(w[rng_.below(w.size())]); }
  std::string noun() { return pick(topic_->nouns); }
  std::string nouns() { return pluralize(noun()); }
  std::string verb() { return pick(topic_->verbs); }
  std::string adj() { return rng_.chance(0.25) ? pick(kSharedAdjs) : pick(topic_->adjs); }
  std::string person() { return pick(kFirstNames) + " " + pick(kSurnames); }
  std::string place() { return pick(kPlaces); }
  std::string year() { return std::to_string(rng_.between(1950, 2023)); }
  std::string month() { return pick(kMonths); }
  std::string number() {
    if (rng_.chance(0.2)) return std::to_string(rng_.between(1, 99)) + "." + std::to_string(rng_.between(1, 9));
    return std::to_string(rng_.between(2, 950));
  }
  static std::string article(const std::string &next) {
    return std::string_view("aeiou").find(next[0]) != std::string_view::npos ? "an" : "a";
  }

  std::string adjunct() {
    switch (rng_.below(7)) {
      case 0: return " in " + place();
      case 1: return " on " + month() + " " + std::to_string(rng_.between(1, 28));
      case 2: return " with the " + adj() + " " + noun();
      case 3: return " near the " + noun();
      case 4: return " for the " + pick(kSharedNouns);
      default: return "";
    }
  }

  std::string sentence() {
    std::string s;
    switch (rng_.below(10)) {
      case 0: s = "The " + adj() + " " + noun() + " " + verb() + " the " + noun() + adjunct() + "."; break;
      case 1: s = person() + " " + verb() + " " + number() + " " + nouns() + adjunct() + "."; break;
      case 2: {
        std::string a = adj();
        s = "In " + place() + ", the " + noun() + " " + verb() + " " + article(a) + " " + a + " " + noun() + ".";
        break;
      }
      case 3:
        s = "The " + noun() + " " + pick(kIntransitive) + " " + pick(kAdverbs) + " after the " + adj() + " " +
            noun() + " " + verb() + " the " + noun() + ".";
        break;
      case 4:
        s = "During " + month() + " " + year() + ", " + person() + " " + verb() + " the " + noun() + " and the " +
            noun() + ".";
        break;
      case 5: s = person() + " said the " + noun() + " was " + adj() + " and " + adj() + "."; break;
      case 6:
        s = "The " + pick(kSharedAdjs) + " " + pick(kSharedNouns) + " " + pick(kSharedVerbs) + " the " + noun() +
            " of the " + noun() + adjunct() + ".";
        break;
      case 7:
        s = "The " + noun() + " " + verb() + " " + number() + " " + adj() + " " + nouns() + " for the " +
            pick(kSharedNouns) + ".";
        break;
      case 8:
        s = person() + " and the " + pick(kSharedNouns) + " " + pick(kSharedVerbs) + " the " + adj() + " " +
            noun() + " in " + year() + ".";
        break;
      default: {
        std::string a = adj();
        std::string art = article(a);
        art[0] = 'A';
        s = art + " " + a + " " + noun() + " " + verb() + " the " + noun() + " near the " + adj() + " " + noun() + ".";
      }
    }
    return s;
  }

 private:
  Rng &rng_;
  const Topic *topic_;
};

}  // namespace

std::string pluralize(std::string_view noun) {
  std::string s(noun);
  auto ends = [&](std::string_view suf) { return s.size() >= suf.size() && s.ends_with(suf); };
  if (ends("s") || ends("x") || ends("ch") || ends("sh")) return s + "es";
  if (ends("y") && s.size() >= 2 && std::string_view("aeiou").find(s[s.size() - 2]) == std::string_view::npos)
    return s.substr(0, s.size() - 1) + "ies";
  return s + "s";
}

std::vector<SynthTopic> synth_topics() {
  std::vector<SynthTopic> out;
  for (const auto &t : topics()) {
    SynthTopic st{std::string(t.name), {}};
    for (const Words *w : {&t.nouns, &t.verbs, &t.adjs})
      for (auto x : *w) st.words.emplace_back(x);
    out.push_back(std::move(st));
  }
  SynthTopic shared{"shared", {}};
  for (const Words *w : {&kSharedNouns, &kSharedVerbs, &kIntransitive, &kAdverbs, &kSharedAdjs})
    for (auto x : *w) shared.words.emplace_back(x);
  out.push_back(std::move(shared));
  return out;
}

Corpus synthesize_corpus(std::size_t n_docs, std::uint64_t seed) {
  Rng rng(seed);
  const auto &all = topics();
  Corpus corpus;
  for (std::size_t d = 0; d < n_docs; ++d) {
    const Topic &main = all[rng.below(all.size())];
    Writer w(rng, main);
    std::size_t n = rng.between(10, 24);
    std::string text;
    for (std::size_t i = 0; i < n; ++i) {
      w.set_topic(rng.chance(0.15) ? all[rng.below(all.size())] : main);
      std::string s;
      do s = w.sentence();
      while (s.size() >= 140);
      if (i > 0) text += (i % 6 == 0 && rng.chance(0.5)) ? "\n\n" : " ";
      text += s;
    }
    char id[32];
    std::snprintf(id, sizeof id, "seed-%05zu", d);
    corpus.add(Document{id, std::move(text), {{"topic", std::string(main.name)}}});
  }
  return corpus;
}

}  // namespace plagdet

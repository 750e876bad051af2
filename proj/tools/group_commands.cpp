#include "cli.hpp"

#include "sqrlat/error.hpp"
#include "sqrlat/grouplab.hpp"

#include <memory>

namespace sqrlat::cli {

namespace {

// Ideal lattices O_K for a field, numeric row bases otherwise.
LatticePair lattice_pair(const FieldArgs& field, int precision, const std::string& upper, const std::string& lower) {
  if (field.given()) {
    FieldPtr K = build_field(field, precision);
    Lattice L = Lattice::from_ideal(FractionalIdeal::unit(K));
    return {L, L};
  }
  return {Lattice::numeric(parse_rows(upper)), Lattice::numeric(parse_rows(lower))};
}

}  // namespace

void add_group_commands(Registry& reg) {
  const Globals& g = reg.globals();

  {
    auto field = std::make_shared<FieldArgs>();
    CLI::App* sub = reg.add("relation", "exact six-factor relation between T and V from a unit = 1 mod 5", [field, &g] {
      FieldPtr K = build_field(*field, g.precision);
      FieldElement beta = relation_beta(*K);
      const bool found = verify_relation(beta);
      Outcome out;
      out.result["relation_found"] = found;
      out.result["beta"] = beta.str();
      out.result["unit"] = (K->one() + K->from_int(5) * beta).str();
      json factors = json::array();
      for (const auto& m : relation_factors(beta)) factors.push_back(m.str());
      out.result["factors"] = factors;
      out.verified = found;
      return out;
    });
    field->attach(sub);
  }

  {
    struct Args {
      FieldArgs field;
      std::string upper = "1,0;0,1";
      std::string lower = "1,0;0,1";
      std::string x0 = "0,1";
      long k_max = 100;
      double dist_tol = 1e-2;
    };
    auto a = std::make_shared<Args>();
    CLI::App* sub = reg.add("commutators", "commutators [T^x0, V^y_k] approaching the identity", [a, &g] {
      LatticePair pair = lattice_pair(a->field, g.precision, a->upper, a->lower);
      if (a->k_max < 1) throw Error(ErrorKind::invalid_input, "bad_k_max", "--k-max must be >= 1");
      auto seq = commutator_sequence(pair, parse_longs(a->x0), a->k_max);
      Outcome out;
      json steps = json::array();
      for (const auto& s : seq) steps.push_back({{"k", s.k}, {"coords", s.coords}, {"y", s.y}, {"dist", s.dist}});
      out.result["steps"] = steps;
      out.result["final_dist"] = seq.back().dist;
      out.verified = seq.back().dist < a->dist_tol;
      out.result["verified"] = out.verified;
      return out;
    });
    a->field.attach(sub);
    option(sub, "--upper", a->upper, "rows of the T-lattice basis, ; between rows", kParameters);
    option(sub, "--lower", a->lower, "rows of the V-lattice basis", kParameters);
    option(sub, "--x0", a->x0, "x0 in upper-lattice coordinates", kParameters);
    option(sub, "--k-max", a->k_max, "number of steps", kTruncation);
    option(sub, "--dist-tol", a->dist_tol, "required distance from +-1 at k_max", kTolerances);
  }

  {
    struct Args {
      FieldArgs field;
      double lambda = 0;
      bool relation_box = false;
      long bound = 2;
      int depth = 8;
      std::string expect;
    };
    auto a = std::make_shared<Args>();
    CLI::App* sub = reg.add("probe", "search alternating T/V words for a relation", [a, &g] {
      ProbeBox box;
      if (a->relation_box) {
        box = relation_box(relation_beta(*build_field(a->field, g.precision)));
      } else if (a->lambda != 0) {
        if (a->field.given())
          throw Error(ErrorKind::invalid_input, "conflicting_lattices", "give either --lambda or a field");
        Lattice L = Lattice::numeric({{a->lambda}});
        box = coordinate_box({L, L}, a->bound);
      } else {
        Lattice L = Lattice::from_ideal(FractionalIdeal::unit(build_field(a->field, g.precision)));
        box = coordinate_box({L, L}, a->bound);
      }
      ProbeResult r = free_product_probe(box, a->depth);
      Outcome out;
      out.result["relation"] = r.relation.has_value();
      out.result["depth"] = r.depth;
      out.result["words_checked"] = r.words_checked;
      out.result["generators"] = box.upper.size() + box.lower.size();
      out.result["word"] = r.relation ? json(word_string(box, *r.relation)) : json(nullptr);
      if (a->expect == "free") out.verified = !r.relation;
      if (a->expect == "relation") out.verified = r.relation.has_value();
      return out;
    });
    a->field.attach(sub);
    option(sub, "--lambda", a->lambda, "use the lattices lambda Z on both sides", kParameters);
    sub->add_flag("--relation-box", a->relation_box, "generators from the six relation exponents on 2 O_K")
        ->group(kParameters);
    option(sub, "--bound", a->bound, "coordinate box for the generators", kTruncation);
    option(sub, "--depth", a->depth, "longest word in syllables", kTruncation);
    option(sub, "--expect", a->expect, "free or relation; a mismatch exits with 1", kTolerances)
        ->check(CLI::IsMember({"", "free", "relation"}));
  }
}

}  // namespace sqrlat::cli

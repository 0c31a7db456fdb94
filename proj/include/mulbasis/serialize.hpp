#pragma once

#include <json.hpp>

#include "mulbasis/certificates.hpp"
#include "mulbasis/productsets.hpp"
#include "mulbasis/reduction.hpp"
#include "mulbasis/report.hpp"
#include "mulbasis/spherelab.hpp"

namespace mulbasis {

using Json = nlohmann::ordered_json;

// Integral values print as integers, everything else as the shortest double.
Json number(double x);
std::string format_number(double x);

Json to_json(const TernaryVector& v);
Json to_json(const std::vector<TernaryVector>& vs);
Json to_json(const Factorization& f);
Json to_json(const CoverWitness& w);
Json to_json(const BasisSolution& s);
Json to_json(const MbpRecord& r);
Json to_json(const APSpec& ap);
Json to_json(const ReducedPair& p);
Json to_json(const MarkingSet& m);
Json to_json(const MarkingSets& m);
Json to_json(const LowerBoundCertificate& c);
Json to_json(const Lemma2Check& c);
Json to_json(const CaseCensusRow& r);
Json to_json(const SphereBasisSolution& s);
Json to_json(const RemarkReport& r);
Json to_json(const Lemma5Report& r);
Json to_json(const InequalityReport& r);
Json to_json(const std::vector<InequalityReport>& rs);
Json to_json(const ComponentSummary& c);
Json to_json(const EndToEndResult& r);

ReducedPair reduced_pair_from_json(const Json& j);
MarkingSet marking_set_from_json(const Json& j);

}  // namespace mulbasis

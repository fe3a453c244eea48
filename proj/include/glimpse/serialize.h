#ifndef GLIMPSE_SERIALIZE_H_
#define GLIMPSE_SERIALIZE_H_

#include "glimpse/composer.h"
#include "glimpse/eval.h"
#include "glimpse/rsa.h"
#include "glimpse/segmenter.h"
#include "json.hpp"

// JSON forms of the result types. Output key order is fixed, so equal values
// serialize to identical bytes.
namespace glimpse {

using Json = nlohmann::ordered_json;

// {doc_ids, cand_ids, speaker: rows, listener: columns, uniqueness,
//  speaker_argmax, config_echo, warnings[, trace]}
Json to_json(const RsaResult& result);
RsaResult rsa_result_from_json(const Json& j);

Json to_json(const CandidateSet& cands);
Json to_json(const MdsSummary& mds, const CandidateSet& cands);
Json to_json(const SummaryBundle& bundle, const CandidateSet& cands,
             const SubmissionGroup& group);
Json to_json(const EvalReport& report);

// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

}  // namespace glimpse

#endif  // GLIMPSE_SERIALIZE_H_

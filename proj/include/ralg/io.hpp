#pragma once

#include <stdexcept>
#include <string>

#include "ralg/algebra.hpp"
#include "ralg/constructions.hpp"
#include "ralg/decision.hpp"
#include "ralg/reduction.hpp"

namespace ralg {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Algebra text format, one statement per line, '#' starts a comment:
///   algebra <name>
///   universe <n>
///   op <symbol> <arity>
///   table <symbol> <n^arity integers>
FiniteAlgebra parse_algebra(const std::string& text);
FiniteAlgebra parse_algebra_file(const std::string& path);
std::string serialize_algebra(const FiniteAlgebra& alg);

/// Partition format:
///   partition <k>
///   block <elements...>     (k lines)
CongruencePartition parse_partition(const std::string& text, int universe);
CongruencePartition parse_partition_file(const std::string& path, int universe);
std::string serialize_partition(const CongruencePartition& part);

/// Map format: a single line `map <n integers>`.
HomomorphismMap parse_map(const std::string& text, int source_size, int target_size);
HomomorphismMap parse_map_file(const std::string& path, int source_size,
                               int target_size);
std::string serialize_map(const HomomorphismMap& map);

/// Sequence format:
///   seq <comma-separated integers>
///   rule <name>             (optional)
SequencePrefix parse_sequence(const std::string& text);
SequencePrefix parse_sequence_file(const std::string& path);
std::string serialize_sequence(const SequencePrefix& seq);

/// Verdict lines: `verdict <status>`, then per-element `cert` lines, a
/// `witness` line, or a `depth` line. Words print as dot-joined symbol
/// names ("id" when empty); terms print as x0 / sym(...) trees.
std::string format_status(RamseyStatus status);
std::string format_verdict(const RamseyVerdict& verdict, const Signature& sig);
std::string format_rule_search(const RuleSearchResult& result, const Signature& sig);
std::string format_word(const Word& word, const Signature& sig);

/// Comma-joined elements, "-" for the empty set.
std::string format_element_set(const ElementSet& set);

std::string read_text_file(const std::string& path);

}  // namespace ralg

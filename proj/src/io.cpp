#include "ralg/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace ralg {

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        Line line{number, {}};
        std::string tok;
        while (ls >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

long long parse_int(const Line& line, const std::string& tok) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line.number, "expected an integer, got '" + tok + "'");
    }
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

FiniteAlgebra parse_algebra(const std::string& text) {
    std::string name;
    int universe = -1;
    std::vector<OpSymbol> symbols;
    std::map<std::string, std::vector<Element>> tables;
    std::map<std::string, int> table_line;

    for (const Line& line : tokenize(text)) {
        const std::string& head = line.tokens.front();
        if (head == "algebra") {
            if (line.tokens.size() != 2)
                throw ParseError(line.number, "algebra takes one name");
            name = line.tokens[1];
        } else if (head == "universe") {
            if (line.tokens.size() != 2)
                throw ParseError(line.number, "universe takes one size");
            const long long n = parse_int(line, line.tokens[1]);
            if (n < 1) throw ParseError(line.number, "universe size must be >= 1");
            universe = static_cast<int>(n);
        } else if (head == "op") {
            if (line.tokens.size() != 3)
                throw ParseError(line.number, "op takes a symbol and an arity");
            const long long arity = parse_int(line, line.tokens[2]);
            if (arity < 1) throw ParseError(line.number, "arity must be >= 1");
            for (const auto& s : symbols)
                if (s.name == line.tokens[1])
                    throw ParseError(line.number,
                                     "duplicate symbol '" + line.tokens[1] + "'");
            symbols.push_back({line.tokens[1], static_cast<int>(arity)});
        } else if (head == "table") {
            if (line.tokens.size() < 2)
                throw ParseError(line.number, "table needs a symbol");
            const std::string& sym = line.tokens[1];
            if (tables.count(sym))
                throw ParseError(line.number, "duplicate table for '" + sym + "'");
            std::vector<Element> entries;
            for (std::size_t i = 2; i < line.tokens.size(); ++i)
                entries.push_back(parse_int(line, line.tokens[i]));
            tables[sym] = std::move(entries);
            table_line[sym] = line.number;
        } else {
            throw ParseError(line.number, "unknown directive '" + head + "'");
        }
    }

    if (universe < 0) throw ParseError(0, "missing universe directive");
    std::vector<std::vector<Element>> ordered;
    for (const auto& s : symbols) {
        const auto it = tables.find(s.name);
        if (it == tables.end())
            throw ParseError(0, "missing table for '" + s.name + "'");
        const std::size_t want = FiniteAlgebra::table_length(universe, s.arity);
        if (it->second.size() != want)
            throw ParseError(table_line[s.name],
                             "table for '" + s.name + "' has " +
                                 std::to_string(it->second.size()) +
                                 " entries, expected " + std::to_string(want));
        for (Element v : it->second)
            if (v < 0 || v >= universe)
                throw ParseError(table_line[s.name],
                                 "entry " + std::to_string(v) + " out of range");
        ordered.push_back(it->second);
        tables.erase(it);
    }
    if (!tables.empty())
        throw ParseError(table_line[tables.begin()->first],
                         "table for undeclared symbol '" + tables.begin()->first + "'");
    return FiniteAlgebra(Signature(std::move(symbols)), universe,
                         std::move(ordered), name);
}

FiniteAlgebra parse_algebra_file(const std::string& path) {
    return parse_algebra(read_text_file(path));
}

std::string serialize_algebra(const FiniteAlgebra& alg) {
    std::ostringstream out;
    if (!alg.name().empty()) out << "algebra " << alg.name() << "\n";
    out << "universe " << alg.size() << "\n";
    for (std::size_t op = 0; op < alg.signature().size(); ++op)
        out << "op " << alg.signature()[op].name << " "
            << alg.signature()[op].arity << "\n";
    for (std::size_t op = 0; op < alg.signature().size(); ++op) {
        out << "table " << alg.signature()[op].name;
        for (Element v : alg.table(op)) out << " " << v;
        out << "\n";
    }
    return out.str();
}

CongruencePartition parse_partition(const std::string& text, int universe) {
    const auto lines = tokenize(text);
    if (lines.empty()) throw ParseError(0, "empty partition");
    std::size_t at = 0;
    const Line& head = lines[at++];
    if (head.tokens[0] != "partition" || head.tokens.size() != 2)
        throw ParseError(head.number, "expected 'partition <k>'");
    const long long k = parse_int(head, head.tokens[1]);
    std::vector<std::vector<Element>> blocks;
    for (long long i = 0; i < k; ++i) {
        if (at >= lines.size())
            throw ParseError(head.number, "expected " + std::to_string(k) + " blocks");
        const Line& line = lines[at++];
        if (line.tokens[0] != "block")
            throw ParseError(line.number, "expected 'block <elements...>'");
        std::vector<Element> block;
        for (std::size_t t = 1; t < line.tokens.size(); ++t)
            block.push_back(parse_int(line, line.tokens[t]));
        blocks.push_back(std::move(block));
    }
    if (at != lines.size())
        throw ParseError(lines[at].number, "unexpected trailing line");
    return CongruencePartition(universe, std::move(blocks));
}

CongruencePartition parse_partition_file(const std::string& path, int universe) {
    return parse_partition(read_text_file(path), universe);
}

std::string serialize_partition(const CongruencePartition& part) {
    std::ostringstream out;
    out << "partition " << part.block_count() << "\n";
    for (const auto& block : part.blocks()) {
        out << "block";
        for (Element e : block) out << " " << e;
        out << "\n";
    }
    return out.str();
}

HomomorphismMap parse_map(const std::string& text, int source_size, int target_size) {
    const auto lines = tokenize(text);
    if (lines.size() != 1 || lines[0].tokens[0] != "map")
        throw ParseError(lines.empty() ? 0 : lines[0].number,
                         "expected a single 'map <integers>' line");
    HomomorphismMap map;
    map.source_size = source_size;
    map.target_size = target_size;
    for (std::size_t t = 1; t < lines[0].tokens.size(); ++t)
        map.map.push_back(parse_int(lines[0], lines[0].tokens[t]));
    if (static_cast<int>(map.map.size()) != source_size)
        throw ParseError(lines[0].number,
                         "map has " + std::to_string(map.map.size()) +
                             " entries, expected " + std::to_string(source_size));
    for (Element v : map.map)
        if (v < 0 || v >= target_size)
            throw ParseError(lines[0].number,
                             "map value " + std::to_string(v) + " out of range");
    return map;
}

HomomorphismMap parse_map_file(const std::string& path, int source_size,
                               int target_size) {
    return parse_map(read_text_file(path), source_size, target_size);
}

std::string serialize_map(const HomomorphismMap& map) {
    std::ostringstream out;
    out << "map";
    for (Element v : map.map) out << " " << v;
    out << "\n";
    return out.str();
}

SequencePrefix parse_sequence(const std::string& text) {
    std::optional<std::vector<Element>> elems;
    std::optional<std::string> rule;
    for (const Line& line : tokenize(text)) {
        if (line.tokens[0] == "seq") {
            if (line.tokens.size() != 2)
                throw ParseError(line.number, "expected 'seq <e1,e2,...>'");
            std::vector<Element> vals;
            std::istringstream items(line.tokens[1]);
            std::string item;
            while (std::getline(items, item, ','))
                vals.push_back(parse_int(line, item));
            if (vals.empty()) throw ParseError(line.number, "empty sequence");
            elems = std::move(vals);
        } else if (line.tokens[0] == "rule") {
            if (line.tokens.size() != 2)
                throw ParseError(line.number, "expected 'rule <name>'");
            rule = line.tokens[1];
        } else {
            throw ParseError(line.number,
                             "unknown directive '" + line.tokens[0] + "'");
        }
    }
    if (!elems) throw ParseError(0, "missing seq line");
    if (rule) return SequencePrefix(std::move(*elems), *rule);
    return SequencePrefix(std::move(*elems));
}

SequencePrefix parse_sequence_file(const std::string& path) {
    return parse_sequence(read_text_file(path));
}

std::string serialize_sequence(const SequencePrefix& seq) {
    std::ostringstream out;
    out << "seq ";
    for (std::size_t i = 0; i < seq.elements().size(); ++i) {
        if (i) out << ",";
        out << seq.elements()[i];
    }
    out << "\n";
    if (seq.rule_name()) out << "rule " << *seq.rule_name() << "\n";
    return out.str();
}

std::string format_status(RamseyStatus status) {
    switch (status) {
        case RamseyStatus::Ramsey: return "Ramsey";
        case RamseyStatus::NotRamsey: return "NotRamsey";
        case RamseyStatus::Unknown: return "Unknown";
    }
    return "Unknown";
}

std::string format_word(const Word& word, const Signature& sig) {
    if (word.empty()) return "id";
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) out += '.';
        out += sig[word[i]].name;
    }
    return out;
}

std::string format_element_set(const ElementSet& set) {
    if (set.empty()) return "-";
    std::string out;
    bool first = true;
    for (Element e : set) {
        if (!first) out += ',';
        out += std::to_string(e);
        first = false;
    }
    return out;
}

std::string format_verdict(const RamseyVerdict& verdict, const Signature& sig) {
    std::ostringstream out;
    out << "verdict " << format_status(verdict.status) << "\n";
    for (const auto& cert : verdict.certificates) {
        out << "cert " << cert.element << " ";
        if (const auto* term = std::get_if<OrderlyTerm>(&cert.route))
            out << term->to_string(sig);
        else
            out << format_word(std::get<Word>(cert.route), sig);
        out << " " << cert.target << "\n";
    }
    if (verdict.witness)
        out << "witness " << verdict.witness->element << " "
            << format_element_set(verdict.witness->generated) << "\n";
    if (verdict.exhausted_depth) out << "depth " << *verdict.exhausted_depth << "\n";
    return out.str();
}

std::string format_rule_search(const RuleSearchResult& result, const Signature& sig) {
    std::ostringstream out;
    out << "verdict " << format_status(result.status) << "\n";
    if (result.status == RamseyStatus::Ramsey)
        out << "cert " << result.start << " " << format_word(*result.word, sig)
            << " " << *result.target << "\n";
    else if (result.status == RamseyStatus::NotRamsey)
        out << "witness " << result.start << " declared-empty-fixed-point-set\n";
    else
        out << "depth " << result.explored_depth << "\n";
    return out.str();
}

}  // namespace ralg

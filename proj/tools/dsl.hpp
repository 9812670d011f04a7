#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradss/algebra.hpp"
#include "gradss/specseq.hpp"

namespace gradss::dsl {

/// Syntax and semantic errors, both carrying a 1-based source position.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, std::string rule, const std::string& message);

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& rule() const { return rule_; }

private:
    int line_;
    int column_;
    std::string rule_;
};

struct GenLine {
    std::string name;
    algebra::Kind kind = algebra::Kind::Polynomial;
    int height = 0;
    int n = 0;
    int m = 0;
    std::optional<int> weight;
    int line = 0;

    bool operator==(const GenLine& o) const
    {
        return name == o.name && kind == o.kind && height == o.height && n == o.n && m == o.m && weight == o.weight;
    }
};

struct Block {
    std::string name;
    std::vector<GenLine> gens;
    bool operator==(const Block&) const = default;
};

struct Factor {
    std::string name;
    std::optional<int> exponent;
    bool operator==(const Factor&) const = default;
};

struct Term {
    std::optional<long> coefficient;
    std::vector<Factor> factors; ///< empty for a bare scalar
    bool operator==(const Term&) const = default;
};

struct DiffLine {
    int r = 2;
    std::string source;
    std::vector<Term> image;
    int line = 0;

    bool operator==(const DiffLine& o) const { return r == o.r && source == o.source && image == o.image; }
};

struct FileAst {
    long prime = 0;
    long maxdeg = 0;
    std::vector<Block> blocks;
    std::vector<DiffLine> diffs;
    bool operator==(const FileAst&) const = default;
};

/// Grammar only; no semantic checks.
FileAst parse_ast(const std::string& text);
/// Canonical text; parse_ast(print(a)) == a.
std::string print(const FileAst& ast);

struct PresentationFile {
    FileAst ast;
    std::shared_ptr<const algebra::Presentation> presentation; ///< all blocks tensored, box = maxdeg
    std::vector<specseq::DifferentialSpec> differentials;
};

/// Parses and checks: prime, duplicate generators, parity, differential bidegrees.
PresentationFile parse(const std::string& text);
PresentationFile parse_file(const std::string& path);

} // namespace gradss::dsl

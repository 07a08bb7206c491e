#pragma once

#include <msch/presentation.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace msch::cli {

/// Syntax or name-resolution failure, with a 1-based position.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_, column_;
};

struct MonoidDef {
    std::string name;
    MonoidPresentation presentation;
    bool operator==(const MonoidDef&) const = default;
};

struct ChartDef {
    std::string name;
    std::string monoid;
    bool operator==(const ChartDef&) const = default;
};

struct OverlapDef {
    std::string first, second;  // chart names
    std::string monoid;
    MonoidHom from_first, from_second;
    bool operator==(const OverlapDef& o) const {
        return first == o.first && second == o.second && monoid == o.monoid &&
               from_first.images == o.from_first.images && from_second.images == o.from_second.images;
    }
};

struct SchemeDef {
    enum class Kind { Spec, Projective, Product, Glue };
    std::string name;
    Kind kind = Kind::Spec;
    std::string first, second;      // monoid for Spec, factors for Product
    std::size_t dimension = 0;       // P(n)
    std::vector<ChartDef> charts;    // Glue
    std::vector<OverlapDef> overlaps;
    bool operator==(const SchemeDef&) const = default;
};

/// Generator names with exponents; resolved against a stalk at run time.
using Word = std::vector<std::pair<std::string, Exponent>>;

struct TransitionDef {
    std::vector<Word> units;
    std::vector<std::size_t> perm;
    bool operator==(const TransitionDef&) const = default;
};

/// `bundle B on X rank n { transition i j = (w, ..) (p0 p1 ..); }`, chart
/// indices counting maximal points of X in ascending order.
struct BundleDef {
    std::string name;
    std::string scheme;
    std::size_t rank = 0;
    std::map<std::pair<std::size_t, std::size_t>, TransitionDef> transitions;
    bool operator==(const BundleDef&) const = default;
};

using Definition = std::variant<MonoidDef, SchemeDef, BundleDef>;

struct Task {
    std::string name;
    std::vector<std::string> args;
    bool operator==(const Task&) const = default;
    std::string to_string() const;
};

struct Manifest {
    std::vector<Definition> definitions;  // in input order
    std::vector<Task> tasks;
    bool operator==(const Manifest&) const = default;

    const MonoidDef* monoid(const std::string& name) const;
    const SchemeDef* scheme(const std::string& name) const;
    const BundleDef* bundle(const std::string& name) const;
};

/// Parses the manifest language. Names must be defined before use and
/// tasks are checked for arity and argument kinds.
Manifest parse(const std::string& text);

/// Text that parses back to an equal manifest.
std::string render(const Manifest& m);

/// Task names with their argument shapes, for usage messages.
const std::vector<std::string>& task_signatures();

} // namespace msch::cli

#include "randap/progressions.hpp"

#include <charconv>
#include <sstream>

namespace randap {

Domain Domain::interval(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("interval domain needs N >= 1");
  return Domain(DomainKind::Interval, n, std::nullopt, 1);
}

Domain Domain::cyclic(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("cyclic domain needs N >= 1");
  return Domain(DomainKind::Cyclic, n, std::nullopt, 1);
}

Domain Domain::vector_space(PrimeField field, Index n, const EnumerationBudget& budget) {
  const auto size = budgeted_pow(static_cast<std::uint64_t>(field.modulus()),
                                 static_cast<std::uint64_t>(n), budget, "vector domain");
  return Domain(DomainKind::Vector, size, field, n);
}

namespace {

std::uint64_t parse_unsigned(const std::string& text, const std::string& what) {
  std::uint64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first != last && *first == ' ') ++first;
  while (last != first && (last[-1] == ' ' || last[-1] == '\r' || last[-1] == '\t')) --last;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw std::invalid_argument("malformed " + what + " '" + text + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

Domain Domain::parse(const std::string& spec, const EnumerationBudget& budget) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("domain spec needs 'kind:size'");
  const auto kind = spec.substr(0, colon);
  const auto rest = spec.substr(colon + 1);
  if (kind == "interval") return interval(parse_unsigned(rest, "domain size"));
  if (kind == "cyclic") return cyclic(parse_unsigned(rest, "domain size"));
  if (kind == "vector") {
    const auto parts = split(rest, ',');
    if (parts.size() != 2) throw std::invalid_argument("vector domain spec is 'vector:p,n'");
    return vector_space(PrimeField(static_cast<std::int64_t>(parse_unsigned(parts[0], "p"))),
                        static_cast<Index>(parse_unsigned(parts[1], "n")), budget);
  }
  throw std::invalid_argument("unknown domain kind '" + kind + "'");
}

std::string Domain::describe() const {
  switch (kind_) {
    case DomainKind::Interval: return "interval:" + std::to_string(size_);
    case DomainKind::Cyclic: return "cyclic:" + std::to_string(size_);
    case DomainKind::Vector:
      return "vector:" + std::to_string(field_->modulus()) + "," + std::to_string(dimension_);
  }
  return {};
}

std::optional<std::uint64_t> Domain::shift(std::uint64_t x, std::uint64_t d,
                                           std::uint64_t step) const {
  switch (kind_) {
    case DomainKind::Interval: {
      const std::uint64_t target = x + step * (d + 1);
      if (target >= size_) return std::nullopt;
      return target;
    }
    case DomainKind::Cyclic:
      return (x + (step % size_) * d) % size_;
    case DomainKind::Vector: {
      const auto p = static_cast<std::uint64_t>(field_->modulus());
      const auto s = step % p;
      std::uint64_t out = 0, place = 1;
      for (Index i = 0; i < dimension_; ++i) {
        const std::uint64_t digit = (x % p + s * (d % p)) % p;
        out += digit * place;
        place *= p;
        x /= p;
        d /= p;
      }
      return out;
    }
  }
  return std::nullopt;
}

std::string Domain::element_text(std::uint64_t index) const {
  switch (kind_) {
    case DomainKind::Interval: return std::to_string(index + 1);
    case DomainKind::Cyclic: return std::to_string(index);
    case DomainKind::Vector: {
      const auto v = decode_index(*field_, dimension_, index);
      std::string text;
      for (Index i = 0; i < v.size(); ++i) {
        if (i > 0) text += ',';
        text += std::to_string(v[i]);
      }
      return text;
    }
  }
  return {};
}

std::uint64_t Domain::parse_element(const std::string& text) const {
  switch (kind_) {
    case DomainKind::Interval: {
      const auto x = parse_unsigned(text, "element");
      if (x < 1 || x > size_) {
        throw std::invalid_argument("element " + std::to_string(x) + " outside [1, " +
                                    std::to_string(size_) + "]");
      }
      return x - 1;
    }
    case DomainKind::Cyclic: {
      const auto x = parse_unsigned(text, "element");
      if (x >= size_) {
        throw std::invalid_argument("element " + std::to_string(x) + " outside Z_" +
                                    std::to_string(size_));
      }
      return x;
    }
    case DomainKind::Vector: {
      const auto parts = split(text, ',');
      if (static_cast<Index>(parts.size()) != dimension_) {
        throw std::invalid_argument("expected " + std::to_string(dimension_) +
                                    " comma-separated residues, got '" + text + "'");
      }
      const auto p = static_cast<std::uint64_t>(field_->modulus());
      std::uint64_t code = 0;
      for (const auto& part : parts) {
        const auto r = parse_unsigned(part, "residue");
        if (r >= p) throw std::invalid_argument("residue " + std::to_string(r) + " not below p");
        code = code * p + r;
      }
      return code;
    }
  }
  return 0;
}

// --- sets -------------------------------------------------------------------------------

DenseSet::DenseSet(Domain domain, std::span<const std::uint64_t> indices) : DenseSet(std::move(domain)) {
  for (auto i : indices) insert(i);
}

DenseSet DenseSet::full(Domain domain) {
  DenseSet s(std::move(domain));
  for (std::uint64_t i = 0; i < s.domain().size(); ++i) s.insert(i);
  return s;
}

void DenseSet::insert(std::uint64_t index) {
  if (index >= domain_.size()) throw std::out_of_range("set element index out of range");
  if (!members_[index]) {
    members_[index] = true;
    ++cardinality_;
  }
}

Rational DenseSet::exact_density() const {
  return Rational(static_cast<std::int64_t>(cardinality_), static_cast<std::int64_t>(domain_.size()));
}

std::vector<std::uint64_t> DenseSet::indices() const {
  std::vector<std::uint64_t> out;
  out.reserve(cardinality_);
  for (std::uint64_t i = 0; i < domain_.size(); ++i) {
    if (members_[i]) out.push_back(i);
  }
  return out;
}

// --- counting ---------------------------------------------------------------------------

namespace {

std::uint64_t progressions_with_difference(const DenseSet& a, const std::vector<std::uint64_t>& starts,
                                           std::uint64_t d, unsigned k) {
  const auto& domain = a.domain();
  std::uint64_t count = 0;
  for (auto x : starts) {
    bool ok = true;
    for (unsigned j = 1; j < k && ok; ++j) {
      const auto y = domain.shift(x, d, j);
      ok = y && a.contains(*y);
    }
    count += ok;
  }
  return count;
}

}  // namespace

ProgressionCount count_progressions(const DenseSet& a, const DifferenceSet& s, unsigned k) {
  if (!(a.domain() == s.domain())) throw std::invalid_argument("set and difference set domains differ");
  if (k == 0) throw std::invalid_argument("progression length must be positive");
  const auto starts = a.indices();
  ProgressionCount out{0, 0};
  for (auto d : s.indices()) {
    const auto c = progressions_with_difference(a, starts, d, k);
    (a.domain().is_zero_difference(d) ? out.trivial : out.nontrivial) += c;
  }
  return out;
}

DualFunction::DualFunction(Domain domain, unsigned arity, std::vector<std::uint64_t> counts)
    : domain_(std::move(domain)), arity_(arity), counts_(std::move(counts)) {
  if (counts_.size() != domain_.size()) throw std::invalid_argument("dual function length mismatch");
}

Rational DualFunction::value(std::uint64_t d) const {
  return Rational(static_cast<std::int64_t>(counts_[d]), static_cast<std::int64_t>(domain_.size()));
}

Eigen::VectorXd DualFunction::values() const {
  Eigen::VectorXd out(static_cast<Index>(counts_.size()));
  const double size = static_cast<double>(domain_.size());
  for (std::size_t d = 0; d < counts_.size(); ++d) {
    out[static_cast<Index>(d)] = static_cast<double>(counts_[d]) / size;
  }
  return out;
}

DualFunction dual(const DenseSet& a, unsigned arity) {
  if (arity == 0) throw std::invalid_argument("dual function arity must be positive");
  const auto starts = a.indices();
  std::vector<std::uint64_t> counts(a.domain().size());
  for (std::uint64_t d = 0; d < counts.size(); ++d) {
    counts[d] = progressions_with_difference(a, starts, d, arity);
  }
  return DualFunction(a.domain(), arity, std::move(counts));
}

Rational inner_with_indicator(const DualFunction& f, const DifferenceSet& s) {
  if (!(f.domain() == s.domain())) throw std::invalid_argument("dual function and S domains differ");
  std::int64_t total = 0;
  for (auto d : s.indices()) total += static_cast<std::int64_t>(f.count(d));
  const auto size = static_cast<std::int64_t>(f.domain().size());
  return Rational(total, size * size);
}

VarnavidesAverage varnavides_average(const DenseSet& a) {
  const auto f = dual3(a);
  const auto size = static_cast<std::int64_t>(a.domain().size());
  std::int64_t all = 0, nonzero = 0;
  for (std::uint64_t d = 0; d < a.domain().size(); ++d) {
    all += static_cast<std::int64_t>(f.count(d));
    if (!a.domain().is_zero_difference(d)) nonzero += static_cast<std::int64_t>(f.count(d));
  }
  const bool has_zero = a.domain().kind() != DomainKind::Interval;
  const std::int64_t nonzero_differences = has_zero ? size - 1 : size;
  return {Rational(all, size * size),
          nonzero_differences == 0 ? Rational(0) : Rational(nonzero, size * nonzero_differences)};
}

// --- files ------------------------------------------------------------------------------

DenseSet read_set(std::istream& in, const Domain& domain) {
  DenseSet set(domain);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      set.insert(domain.parse_element(line.substr(first)));
    } catch (const std::invalid_argument& e) {
      throw SetParseError(number, e.what());
    }
  }
  return set;
}

void write_set(std::ostream& out, const DenseSet& set) {
  out << "# domain " << set.domain().describe() << "\n";
  for (auto i : set.indices()) out << set.domain().element_text(i) << "\n";
}

}  // namespace randap

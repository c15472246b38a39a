#include <algorithm>
#include <cctype>
#include <sstream>

#include "linrank/constraint.hpp"

namespace linrank {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what), line_(line),
      column_(column) {}

namespace {

enum class Section { None, Single, Guard, Update };

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line = 0;
    std::size_t base_column = 0;  // 1-based column of text[0]

    std::size_t column() const { return base_column + pos; }
    bool done() {
        skip_blanks();
        return pos >= text.size();
    }
    char peek() {
        skip_blanks();
        return pos < text.size() ? text[pos] : '\0';
    }
    void skip_blanks() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, column(), msg); }
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

Rational read_number(Cursor& cur) {
    std::size_t start = cur.pos;
    while (cur.pos < cur.text.size() && std::isdigit(static_cast<unsigned char>(cur.text[cur.pos])))
        ++cur.pos;
    if (cur.pos < cur.text.size() && cur.text[cur.pos] == '.') {
        cur.fail("decimal numbers are not allowed; write p/q");
    }
    if (cur.pos < cur.text.size() && cur.text[cur.pos] == '/') {
        ++cur.pos;
        std::size_t den_start = cur.pos;
        while (cur.pos < cur.text.size() && std::isdigit(static_cast<unsigned char>(cur.text[cur.pos])))
            ++cur.pos;
        if (den_start == cur.pos)
            cur.fail("expected denominator after '/'");
        if (cur.pos < cur.text.size() && cur.text[cur.pos] == '.')
            cur.fail("decimal numbers are not allowed; write p/q");
    }
    std::string_view lit = cur.text.substr(start, cur.pos - start);
    try {
        return Rational::parse(lit);
    } catch (const ArithmeticError&) {
        cur.pos = start;
        cur.fail("zero denominator in '" + std::string(lit) + "'");
    }
}

class ConstraintParser {
public:
    ConstraintParser(const VarSpace& space, Section section, Cursor cur)
        : space_(space), section_(section), cur_(cur) {}

    LinConstraint parse() {
        const std::size_t n = space_.n();
        QVector lhs_coeffs(2 * n), rhs_coeffs(2 * n);
        Rational lhs_const, rhs_const;
        parse_side(lhs_coeffs, lhs_const);
        Rel rel = parse_rel();
        parse_side(rhs_coeffs, rhs_const);
        if (!cur_.done())
            cur_.fail(std::string("unexpected '") + cur_.peek() + "'");
        return LinConstraint{lhs_coeffs - rhs_coeffs, rel, rhs_const - lhs_const};
    }

private:
    void parse_side(QVector& coeffs, Rational& constant) {
        bool first = true;
        while (true) {
            char c = cur_.peek();
            int sign = 1;
            if (c == '+' || c == '-') {
                sign = c == '-' ? -1 : 1;
                ++cur_.pos;
            } else if (!first) {
                return;
            }
            parse_term(sign, coeffs, constant);
            first = false;
        }
    }

    void parse_term(int sign, QVector& coeffs, Rational& constant) {
        char c = cur_.peek();
        Rational k(sign);
        bool have_number = false;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            k *= read_number(cur_);
            have_number = true;
            c = cur_.peek();
            if (c == '*') {
                ++cur_.pos;
                c = cur_.peek();
                if (!ident_start(c))
                    cur_.fail("expected a variable after '*'");
            }
        }
        if (ident_start(c)) {
            std::size_t col = cur_.column();
            std::size_t start = cur_.pos;
            while (cur_.pos < cur_.text.size() && ident_char(cur_.text[cur_.pos]))
                ++cur_.pos;
            std::string name(cur_.text.substr(start, cur_.pos - start));
            bool primed = cur_.pos < cur_.text.size() && cur_.text[cur_.pos] == '\'';
            if (primed)
                ++cur_.pos;
            auto idx = space_.index_of(name);
            if (!idx)
                throw ParseError(cur_.line, col, "undeclared variable '" + name + "'");
            if (primed && section_ == Section::Guard)
                throw ParseError(cur_.line, col, "primed variable '" + name + "' in a guard section");
            coeffs[*idx + (primed ? space_.n() : 0)] += k;
            return;
        }
        if (!have_number)
            cur_.fail(c == '\0' ? "unexpected end of constraint" : std::string("unexpected '") + c + "'");
        constant += k;
    }

    Rel parse_rel() {
        char c = cur_.peek();
        std::size_t p = cur_.pos;
        auto next = [&] { return p + 1 < cur_.text.size() ? cur_.text[p + 1] : '\0'; };
        if (c == '<' || c == '>') {
            if (next() != '=')
                cur_.fail("strict inequalities are not accepted in loop descriptions");
            cur_.pos += 2;
            return c == '<' ? Rel::Le : Rel::Ge;
        }
        if (c == '=') {
            cur_.pos += next() == '=' ? 2 : 1;
            return Rel::Eq;
        }
        cur_.fail(c == '\0' ? "missing relation (<=, =, >=)" : std::string("expected a relation, found '") + c + "'");
    }

    const VarSpace& space_;
    Section section_;
    Cursor cur_;
};

std::string_view trim(std::string_view s, std::size_t& offset) {
    std::size_t b = 0;
    while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    std::size_t e = s.size();
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    offset += b;
    return s.substr(b, e - b);
}

} // namespace

LoopModel parse_loop(std::string_view text) {
    std::optional<VarSpace> space;
    Section section = Section::None;
    bool seen_single = false, seen_guard = false, seen_update = false;
    std::vector<LinConstraint> single_rows, guard_rows, update_rows;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        std::size_t offset = 0;
        std::string_view body = trim(line, offset);

        if (!body.empty()) {
            // Section header?
            std::size_t name_end = 0;
            while (name_end < body.size() && ident_char(body[name_end]))
                ++name_end;
            std::string_view keyword = body.substr(0, name_end);
            bool header = name_end < body.size() && body[name_end] == ':' &&
                          (keyword == "vars" || keyword == "single" || keyword == "guard" || keyword == "update");
            if (!space && !(header && keyword == "vars"))
                throw ParseError(line_no, offset + 1, "expected 'vars:' declaration first");
            if (header) {
                std::size_t content_offset = offset + name_end + 1;
                body = body.substr(name_end + 1);
                body = trim(body, content_offset);
                offset = content_offset;
                if (keyword == "vars") {
                    if (space)
                        throw ParseError(line_no, 1, "'vars:' declared twice");
                    std::vector<std::string> names;
                    std::istringstream is{std::string(body)};
                    for (std::string name; is >> name;) {
                        if (!ident_start(name[0]) ||
                            !std::all_of(name.begin(), name.end(), [](char ch) { return ident_char(ch); }))
                            throw ParseError(line_no, offset + 1, "invalid variable name '" + name + "'");
                        names.push_back(name);
                    }
                    if (names.empty())
                        throw ParseError(line_no, offset + 1, "'vars:' declares no variables");
                    try {
                        space.emplace(std::move(names));
                    } catch (const std::invalid_argument& e) {
                        throw ParseError(line_no, offset + 1, e.what());
                    }
                    body = {};
                } else if (keyword == "single") {
                    if (seen_single || seen_guard || seen_update)
                        throw ParseError(line_no, 1, "'single:' cannot be combined with other sections");
                    seen_single = true;
                    section = Section::Single;
                } else if (keyword == "guard") {
                    if (seen_single || seen_guard || seen_update)
                        throw ParseError(line_no, 1, "'guard:' must appear once, before 'update:'");
                    seen_guard = true;
                    section = Section::Guard;
                } else {
                    if (!seen_guard || seen_update)
                        throw ParseError(line_no, 1, "'update:' must follow a 'guard:' section");
                    seen_update = true;
                    section = Section::Update;
                }
            } else if (section == Section::None) {
                throw ParseError(line_no, offset + 1, "constraint outside of a section");
            }

            // Comma-separated constraints.
            std::size_t piece_start = 0;
            while (!body.empty() && piece_start <= body.size()) {
                std::size_t comma = body.find(',', piece_start);
                if (comma == std::string_view::npos)
                    comma = body.size();
                std::size_t piece_offset = offset + piece_start;
                std::string_view piece = trim(body.substr(piece_start, comma - piece_start), piece_offset);
                if (piece.empty()) {
                    if (comma < body.size())
                        throw ParseError(line_no, piece_offset + 1, "empty constraint");
                } else {
                    ConstraintParser parser(*space, section, Cursor{piece, 0, line_no, piece_offset + 1});
                    LinConstraint row = parser.parse();
                    (section == Section::Single ? single_rows : section == Section::Guard ? guard_rows : update_rows)
                        .push_back(std::move(row));
                }
                piece_start = comma + 1;
            }
        }
        if (end == text.size())
            break;
        start = end + 1;
    }

    if (!space)
        throw ParseError(line_no, 1, "empty loop description: missing 'vars:'");
    if (!seen_single && !seen_guard)
        throw ParseError(line_no, 1, "missing 'single:' or 'guard:' section");
    if (seen_guard && !seen_update)
        throw ParseError(line_no, 1, "'guard:' section without 'update:' section");

    auto cols = space->columns();
    if (seen_single)
        return LoopModel::single(*space, ConstraintSystem(cols, std::move(single_rows)));
    return LoopModel::guarded(*space, ConstraintSystem(cols, std::move(guard_rows)),
                              ConstraintSystem(cols, std::move(update_rows)));
}

std::string format_constraint(const LinConstraint& row, const std::vector<std::string>& names) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < row.coeffs.size(); ++i) {
        const Rational& k = row.coeffs[i];
        if (k.is_zero())
            continue;
        Rational mag = k.abs();
        if (first)
            os << (k.sign() < 0 ? "-" : "");
        else
            os << (k.sign() < 0 ? " - " : " + ");
        if (mag != Rational(1))
            os << mag << '*';
        os << names.at(i);
        first = false;
    }
    if (first)
        os << '0';
    os << ' ' << to_string(row.rel) << ' ' << row.rhs;
    return os.str();
}

std::string serialize_loop(const LoopModel& l) {
    std::ostringstream os;
    os << "vars:";
    for (const auto& n : l.space.names())
        os << ' ' << n;
    os << '\n';
    auto cols = l.space.columns();
    auto section = [&](const char* name, const ConstraintSystem& c) {
        os << name << ":\n";
        for (const auto& row : c.rows())
            os << "  " << format_constraint(row, cols) << '\n';
    };
    if (const auto* s = std::get_if<SingleLoop>(&l.body)) {
        section("single", s->c);
    } else {
        section("guard", l.guarded().guard);
        section("update", l.guarded().update);
    }
    return os.str();
}

} // namespace linrank

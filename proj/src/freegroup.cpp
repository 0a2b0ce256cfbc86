#include "knotconc/freegroup.hpp"

#include "knotconc/errors.hpp"

#include <algorithm>
#include <cctype>

namespace knotconc {

// ------------------------------------------------------------ words

FreeWord::FreeWord(int rank, std::vector<Letter> letters) : rank_(rank), letters_(std::move(letters))
{
    if (rank_ < 1)
        throw InputError("free group rank must be positive");
    for (const auto& l : letters_)
        if (l.gen < 1 || l.gen > rank_ || (l.exp != 1 && l.exp != -1))
            throw InputError("letter x" + std::to_string(l.gen) + " outside rank " + std::to_string(rank_));
    reduce();
}

FreeWord FreeWord::generator(int rank, int gen, int exp) { return FreeWord(rank, {{gen, exp}}); }

void FreeWord::reduce()
{
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (const auto& l : letters_) {
        if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
            out.pop_back();
        else
            out.push_back(l);
    }
    letters_ = std::move(out);
}

FreeWord FreeWord::inverse() const
{
    std::vector<Letter> r;
    r.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
        r.push_back({it->gen, -it->exp});
    return FreeWord(rank_, std::move(r));
}

FreeWord FreeWord::pow(int e) const
{
    FreeWord base = e < 0 ? inverse() : *this;
    FreeWord out(rank_);
    for (int i = 0; i < std::abs(e); ++i)
        out = out * base;
    return out;
}

FreeWord operator*(const FreeWord& a, const FreeWord& b)
{
    std::vector<FreeWord::Letter> l = a.letters_;
    l.insert(l.end(), b.letters_.begin(), b.letters_.end());
    return FreeWord(std::max(a.rank_, b.rank_), std::move(l));
}

std::string FreeWord::str() const
{
    if (letters_.empty())
        return "1";
    std::string s;
    for (const auto& l : letters_) {
        if (!s.empty())
            s += ' ';
        s += "x" + std::to_string(l.gen);
        if (l.exp < 0)
            s += "^-1";
    }
    return s;
}

FreeWord commutator(const FreeWord& u, const FreeWord& v) { return u * v * u.inverse() * v.inverse(); }

namespace {

class WordParser {
public:
    WordParser(const std::string& s, int rank) : s_(s), rank_(rank) {}

    FreeWord parse()
    {
        FreeWord w = word();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return w;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw InputError("word \"" + s_ + "\" at position " + std::to_string(pos_) + ": " + msg);
    }

    void skip()
    {
        while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '*' ||
                                    s_[pos_] == '.'))
            ++pos_;
    }

    bool at_factor()
    {
        skip();
        return pos_ < s_.size() && (s_[pos_] == 'x' || s_[pos_] == '[' || s_[pos_] == '(' || s_[pos_] == '1');
    }

    FreeWord word()
    {
        FreeWord w(rank_);
        while (at_factor())
            w = w * factor();
        return w;
    }

    int integer()
    {
        skip();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+'))
            ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        std::string tok = s_.substr(start, pos_ - start);
        if (tok.empty() || tok == "-" || tok == "+" || tok.size() > 9)
            fail("expected an integer");
        return std::stoi(tok);
    }

    FreeWord factor()
    {
        skip();
        FreeWord base(rank_);
        char c = s_[pos_];
        if (c == 'x') {
            ++pos_;
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (start == pos_ || pos_ - start > 6)
                fail("generator needs an index, as in x1");
            int g = std::stoi(s_.substr(start, pos_ - start));
            if (g < 1 || g > rank_)
                fail("generator x" + std::to_string(g) + " outside rank " + std::to_string(rank_));
            base = FreeWord::generator(rank_, g);
        } else if (c == '1') {
            ++pos_;
        } else if (c == '(') {
            ++pos_;
            base = word();
            expect(')');
        } else {
            ++pos_;
            FreeWord u = word();
            expect(',');
            FreeWord v = word();
            expect(']');
            base = commutator(u, v);
        }
        skip();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            base = base.pow(integer());
        }
        return base;
    }

    void expect(char c)
    {
        skip();
        if (pos_ >= s_.size() || s_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    const std::string& s_;
    int rank_;
    std::size_t pos_ = 0;
};

} // namespace

FreeWord FreeWord::parse(const std::string& text, int rank)
{
    if (rank < 1)
        throw InputError("free group rank must be positive");
    return WordParser(text, rank).parse();
}

FreeWord bing_substitute(const FreeWord& w)
{
    const int rank = 2 * w.rank();
    std::vector<FreeWord::Letter> out;
    for (const auto& l : w.letters()) {
        int a = 2 * l.gen - 1, b = 2 * l.gen;
        if (l.exp < 0)
            std::swap(a, b);   // [a, b]^-1 = [b, a]
        out.insert(out.end(), {{a, 1}, {b, 1}, {a, -1}, {b, -1}});
    }
    return FreeWord(rank, std::move(out));
}

FreeWord bing_curve(int n)
{
    if (n < 1)
        throw InputError("bing_curve: n must be at least 1");
    if (n > kMaxDerivedDepth)
        throw ResourceError("bing_curve: n = " + std::to_string(n) + " exceeds the cap " +
                            std::to_string(kMaxDerivedDepth));
    FreeWord w = commutator(FreeWord::generator(2, 1), FreeWord::generator(2, 2));
    for (int k = 1; k < n; ++k)
        w = bing_substitute(w);
    return w;
}

// ------------------------------------------------------------ wreath model

WreathElement WreathElement::identity(int rank, int level)
{
    WreathElement e;
    e.rank_ = rank;
    e.level_ = level;
    if (level == 0)
        e.abel_.assign(static_cast<std::size_t>(rank), 0);
    else
        e.quot_ = std::make_shared<const WreathElement>(identity(rank, level - 1));
    return e;
}

WreathElement WreathElement::generator(int rank, int level, int gen)
{
    WreathElement e = identity(rank, level);
    std::vector<long> v(static_cast<std::size_t>(rank), 0);
    v[static_cast<std::size_t>(gen - 1)] = 1;
    if (level == 0) {
        e.abel_ = std::move(v);
    } else {
        e.quot_ = std::make_shared<const WreathElement>(generator(rank, level - 1, gen));
        e.tail_.push_back({identity(rank, level - 1), std::move(v)});
    }
    return e;
}

bool WreathElement::is_identity() const
{
    if (level_ == 0)
        return std::all_of(abel_.begin(), abel_.end(), [](long x) { return x == 0; });
    return tail_.empty() && quot_->is_identity();
}

std::size_t WreathElement::support_size() const
{
    if (level_ == 0)
        return 0;
    return tail_.size() + quot_->support_size();
}

int WreathElement::compare(const WreathElement& a, const WreathElement& b)
{
    if (a.level_ != b.level_)
        return a.level_ < b.level_ ? -1 : 1;
    if (a.level_ == 0)
        return a.abel_ == b.abel_ ? 0 : (a.abel_ < b.abel_ ? -1 : 1);
    if (a.quot_ != b.quot_) {
        if (int c = compare(*a.quot_, *b.quot_))
            return c;
    }
    std::size_t n = std::min(a.tail_.size(), b.tail_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (int c = compare(a.tail_[i].key, b.tail_[i].key))
            return c;
        if (a.tail_[i].value != b.tail_[i].value)
            return a.tail_[i].value < b.tail_[i].value ? -1 : 1;
    }
    if (a.tail_.size() != b.tail_.size())
        return a.tail_.size() < b.tail_.size() ? -1 : 1;
    return 0;
}

std::vector<WreathTail> WreathElement::shifted(const std::vector<WreathTail>& t) const
{
    // *this is the level k - 1 element g; keys x map to g x
    std::vector<WreathTail> out;
    out.reserve(t.size());
    for (const auto& e : t)
        out.push_back({*this * e.key, e.value});
    std::sort(out.begin(), out.end(), [](const WreathTail& a, const WreathTail& b) { return a.key < b.key; });
    return out;
}

namespace {

std::vector<WreathTail> merge_tails(const std::vector<WreathTail>& a, const std::vector<WreathTail>& b, long sign_b)
{
    std::vector<WreathTail> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    auto push_b = [&](const WreathTail& e) {
        WreathTail n = e;
        for (auto& x : n.value)
            x *= sign_b;
        out.push_back(std::move(n));
    };
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].key < b[j].key)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].key < a[i].key) {
            push_b(b[j++]);
        } else {
            WreathTail n = a[i];
            bool zero = true;
            for (std::size_t k = 0; k < n.value.size(); ++k) {
                n.value[k] += sign_b * b[j].value[k];
                zero = zero && n.value[k] == 0;
            }
            if (!zero)
                out.push_back(std::move(n));
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

WreathElement operator*(const WreathElement& a, const WreathElement& b)
{
    WreathElement r;
    r.rank_ = a.rank_;
    r.level_ = a.level_;
    if (a.level_ == 0) {
        r.abel_ = a.abel_;
        for (std::size_t i = 0; i < r.abel_.size(); ++i)
            r.abel_[i] += b.abel_[i];
        return r;
    }
    r.quot_ = std::make_shared<const WreathElement>(*a.quot_ * *b.quot_);
    if (b.tail_.empty())
        r.tail_ = a.tail_;
    else
        r.tail_ = merge_tails(a.tail_, a.quot_->shifted(b.tail_), 1);
    return r;
}

WreathElement WreathElement::inverse() const
{
    WreathElement r;
    r.rank_ = rank_;
    r.level_ = level_;
    if (level_ == 0) {
        r.abel_ = abel_;
        for (auto& x : r.abel_)
            x = -x;
        return r;
    }
    auto gi = std::make_shared<const WreathElement>(quot_->inverse());
    r.quot_ = gi;
    r.tail_ = merge_tails({}, gi->shifted(tail_), -1);
    return r;
}

WreathElement magnus_embed(const FreeWord& w, int n, std::size_t support_cap)
{
    if (n < 0)
        throw InputError("magnus_embed: level must be nonnegative");
    if (n > kMaxDerivedDepth)
        throw ResourceError("magnus_embed: level " + std::to_string(n) + " exceeds the cap " +
                            std::to_string(kMaxDerivedDepth));
    const int m = w.rank();
    std::vector<WreathElement> gens, invs;
    for (int g = 1; g <= m; ++g) {
        gens.push_back(WreathElement::generator(m, n, g));
        invs.push_back(gens.back().inverse());
    }
    WreathElement acc = WreathElement::identity(m, n);
    for (const auto& l : w.letters()) {
        const auto idx = static_cast<std::size_t>(l.gen - 1);
        acc = acc * (l.exp > 0 ? gens[idx] : invs[idx]);
        if (acc.support_size() > support_cap)
            throw ResourceError("magnus_embed: support exceeds cap " + std::to_string(support_cap));
    }
    return acc;
}

DepthResult derived_depth(const FreeWord& w, int n_max, std::size_t support_cap)
{
    if (n_max < 1)
        throw InputError("derived_depth: n_max must be at least 1");
    if (n_max > kMaxDerivedDepth)
        throw ResourceError("derived_depth: n_max = " + std::to_string(n_max) + " exceeds the cap " +
                            std::to_string(kMaxDerivedDepth));
    for (int k = 1; k <= n_max; ++k) {
        // w lies in F^(k) iff its image in F/F^(k) is trivial
        WreathElement img = [&] {
            try {
                return magnus_embed(w, k - 1, support_cap);
            } catch (const ResourceError& e) {
                throw ResourceError(std::string(e.what()) + "; certified depth >= " + std::to_string(k - 1));
            }
        }();
        if (!img.is_identity())
            return {k - 1, false};
    }
    return {n_max, true};
}

} // namespace knotconc

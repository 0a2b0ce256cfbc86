#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace knotconc {

/// A freely reduced word in the free group on x1..xm.
class FreeWord {
public:
    struct Letter {
        int gen;   // 1-based
        int exp;   // +1 or -1
        friend bool operator==(const Letter&, const Letter&) = default;
    };

    explicit FreeWord(int rank = 1) : rank_(rank) {}
    FreeWord(int rank, std::vector<Letter> letters);

    static FreeWord generator(int rank, int gen, int exp = 1);
    /// Parses e.g. "x1 x2^-1", "[[x1,x2],[x3,x4]]", "(x1 x2)^3", "1".
    /// Throws InputError on syntax errors or generators above rank.
    static FreeWord parse(const std::string& text, int rank);

    int rank() const { return rank_; }
    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool is_identity() const { return letters_.empty(); }

    FreeWord inverse() const;
    FreeWord pow(int e) const;
    friend FreeWord operator*(const FreeWord& a, const FreeWord& b);
    friend bool operator==(const FreeWord& a, const FreeWord& b) = default;

    std::string str() const;

private:
    void reduce();

    int rank_;
    std::vector<Letter> letters_;
};

/// [u, v] = u v u^-1 v^-1
FreeWord commutator(const FreeWord& u, const FreeWord& v);

/// Substitutes x_i -> [x_{2i-1}, x_{2i}] in w, doubling the rank.
FreeWord bing_substitute(const FreeWord& w);

/// [x1, x2] doubled n - 1 times; rank 2^n. Throws ResourceError for n > 5.
FreeWord bing_curve(int n);

struct WreathTail;

/// Element of the iterated Magnus model of F/F^(level + 1).
///
/// Level 0 is the abelianization Z^m. Level k > 0 is a pair (q, a) with q at
/// level k - 1 and a a finitely supported map from level k - 1 elements to
/// Z^m; (g, a)(h, b) = (g h, a + g.b) where (g.b)(x) = b(g^-1 x).
class WreathElement {
public:
    static WreathElement identity(int rank, int level);
    static WreathElement generator(int rank, int level, int gen);

    int level() const { return level_; }
    int rank() const { return rank_; }
    /// Abelianization vector (level 0 only).
    const std::vector<long>& exponents() const { return abel_; }
    const WreathElement& quotient() const { return *quot_; }
    const std::vector<WreathTail>& tail() const { return tail_; }
    bool is_identity() const;
    /// Total number of tail entries across all levels.
    std::size_t support_size() const;

    WreathElement inverse() const;
    friend WreathElement operator*(const WreathElement& a, const WreathElement& b);

    friend bool operator==(const WreathElement& a, const WreathElement& b) { return compare(a, b) == 0; }
    friend bool operator<(const WreathElement& a, const WreathElement& b) { return compare(a, b) < 0; }

private:
    static int compare(const WreathElement& a, const WreathElement& b);
    // left action of this (a level k element viewed in F/F^(k+1)) on tail keys
    std::vector<WreathTail> shifted(const std::vector<WreathTail>& t) const;

    int level_ = 0;
    int rank_ = 0;
    std::vector<long> abel_;
    std::shared_ptr<const WreathElement> quot_;
    std::vector<WreathTail> tail_;   // sorted by key, no zero values
};

struct WreathTail {
    WreathElement key;
    std::vector<long> value;
};

inline constexpr int kMaxDerivedDepth = 5;
inline constexpr std::size_t kDefaultSupportCap = 2'000'000;

/// Image of w in the model of F/F^(n + 1). Throws ResourceError for n > 5 or
/// when the support exceeds support_cap.
WreathElement magnus_embed(const FreeWord& w, int n, std::size_t support_cap = kDefaultSupportCap);

struct DepthResult {
    int depth = 0;
    bool at_least = false;   // w lies in F^(n_max); exact depth not determined

    std::string str() const { return at_least ? ">= " + std::to_string(depth) : std::to_string(depth); }
    friend bool operator==(const DepthResult&, const DepthResult&) = default;
};

/// Largest n <= n_max with w in F^(n). Throws ResourceError for n_max > 5 or
/// on support overflow; the message carries the depth certified so far.
DepthResult derived_depth(const FreeWord& w, int n_max, std::size_t support_cap = kDefaultSupportCap);

} // namespace knotconc

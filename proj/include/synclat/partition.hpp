#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace synclat {

/// Set partition of cells 0..n-1 in restricted-growth form: label[0] = 0 and
/// each new label is one more than the largest label seen so far. Classes are
/// therefore ordered by their smallest member.
class Partition {
public:
    Partition() = default;

    /// Canonicalizes an arbitrary labelling.
    explicit Partition(const std::vector<int>& labels) : labels_(labels.size()) {
        std::vector<std::pair<int, int>> seen;
        int next = 0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            auto it = std::find_if(seen.begin(), seen.end(), [&](auto& p) { return p.first == labels[i]; });
            if (it == seen.end()) {
                seen.emplace_back(labels[i], next);
                labels_[i] = next++;
            } else {
                labels_[i] = it->second;
            }
        }
        count_ = next;
    }

    static Partition singletons(std::size_t n) {
        std::vector<int> l(n);
        std::iota(l.begin(), l.end(), 0);
        return Partition(l);
    }
    static Partition one_class(std::size_t n) { return Partition(std::vector<int>(n, 0)); }

    static Partition from_classes(std::size_t n, const std::vector<std::vector<std::size_t>>& classes) {
        std::vector<int> l(n, -1);
        for (std::size_t k = 0; k < classes.size(); ++k)
            for (auto c : classes[k]) {
                if (c >= n) throw std::invalid_argument("partition: cell out of range");
                if (l[c] != -1) throw std::invalid_argument("partition: cell listed twice");
                l[c] = static_cast<int>(k);
            }
        for (auto x : l)
            if (x == -1) throw std::invalid_argument("partition: every cell must appear exactly once");
        return Partition(l);
    }

    std::size_t size() const { return labels_.size(); }
    std::size_t num_classes() const { return static_cast<std::size_t>(count_); }
    int label(std::size_t cell) const { return labels_[cell]; }
    const std::vector<int>& labels() const { return labels_; }
    bool same_class(std::size_t i, std::size_t j) const { return labels_[i] == labels_[j]; }

    std::vector<std::vector<std::size_t>> classes() const {
        std::vector<std::vector<std::size_t>> cls(num_classes());
        for (std::size_t i = 0; i < labels_.size(); ++i) cls[labels_[i]].push_back(i);
        return cls;
    }

    /// True when every class of *this lies inside a class of `coarser`.
    /// Equivalently the polydiagonal of `coarser` is contained in ours.
    bool refines(const Partition& coarser) const {
        if (coarser.size() != size()) throw std::invalid_argument("partition size mismatch");
        std::vector<int> image(num_classes(), -1);
        for (std::size_t i = 0; i < size(); ++i) {
            int& im = image[labels_[i]];
            if (im == -1)
                im = coarser.labels_[i];
            else if (im != coarser.labels_[i])
                return false;
        }
        return true;
    }

    /// Partition obtained by merging classes a and b.
    Partition merged(int a, int b) const {
        std::vector<int> l = labels_;
        for (auto& x : l)
            if (x == b) x = a;
        return Partition(l);
    }

    /// "{1,2,3}{4,5}" with 1-indexed cells.
    std::string to_string() const {
        std::string s;
        for (const auto& cls : classes()) {
            s += '{';
            for (std::size_t k = 0; k < cls.size(); ++k) {
                if (k) s += ',';
                s += std::to_string(cls[k] + 1);
            }
            s += '}';
        }
        return s;
    }

    /// Cycle notation "(123)(45)"; singletons omitted, all-singletons is "P".
    /// Cells are comma-separated inside a cycle once n exceeds 9.
    std::string cycle_label() const {
        std::string s;
        const bool commas = size() > 9;
        for (const auto& cls : classes()) {
            if (cls.size() < 2) continue;
            s += '(';
            for (std::size_t k = 0; k < cls.size(); ++k) {
                if (k && commas) s += ',';
                s += std::to_string(cls[k] + 1);
            }
            s += ')';
        }
        return s.empty() ? "P" : s;
    }

    static Partition parse(const std::string& text, std::size_t n) {
        std::vector<std::vector<std::size_t>> classes;
        std::size_t i = 0;
        auto skip_ws = [&] {
            while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        };
        skip_ws();
        while (i < text.size()) {
            if (text[i] != '{') throw std::invalid_argument("partition: expected '{' in \"" + text + "\"");
            ++i;
            std::vector<std::size_t> cls;
            for (;;) {
                skip_ws();
                std::size_t start = i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                if (start == i) throw std::invalid_argument("partition: expected cell number in \"" + text + "\"");
                std::size_t cell = std::stoul(text.substr(start, i - start));
                if (cell < 1 || cell > n) throw std::invalid_argument("partition: cell out of range in \"" + text + "\"");
                cls.push_back(cell - 1);
                skip_ws();
                if (i < text.size() && text[i] == ',') {
                    ++i;
                    continue;
                }
                if (i < text.size() && text[i] == '}') {
                    ++i;
                    break;
                }
                throw std::invalid_argument("partition: malformed \"" + text + "\"");
            }
            classes.push_back(std::move(cls));
            skip_ws();
        }
        return from_classes(n, classes);
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.labels_ == b.labels_; }
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
    friend bool operator<(const Partition& a, const Partition& b) { return a.labels_ < b.labels_; }

private:
    std::vector<int> labels_;
    int count_ = 0;
};

/// Finest partition coarser than both: the transitive closure of the union
/// of the two equivalence relations.
inline Partition merge_closure(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) throw std::invalid_argument("merge_closure: size mismatch");
    const std::size_t n = a.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite_by = [&](const Partition& p) {
        std::vector<std::size_t> first(p.num_classes(), n);
        for (std::size_t i = 0; i < n; ++i) {
            auto& f = first[p.label(i)];
            if (f == n)
                f = i;
            else
                parent[find(i)] = find(f);
        }
    };
    unite_by(a);
    unite_by(b);
    std::vector<int> l(n);
    for (std::size_t i = 0; i < n; ++i) l[i] = static_cast<int>(find(i));
    return Partition(l);
}

/// Lazily walks all set partitions of n cells in lexicographic
/// restricted-growth order, optionally only those with a given class count.
class PartitionStream {
public:
    explicit PartitionStream(std::size_t n, std::optional<std::size_t> classes = std::nullopt)
        : n_(n), want_(classes), rgs_(n, 0), maxes_(n, 0) {
        if (n == 0) throw std::invalid_argument("enumerate_partitions: n must be >= 1");
        done_ = false;
        if (want_ && (*want_ == 0 || *want_ > n_)) done_ = true;
        if (!done_ && !matches()) advance();
    }

    bool done() const { return done_; }
    Partition current() const { return Partition(rgs_); }

    void next() { advance(); }

private:
    bool matches() const { return !want_ || static_cast<std::size_t>(maxes_[n_ - 1] + 1) == *want_; }

    bool step() {
        for (std::size_t i = n_; i-- > 1;) {
            if (rgs_[i] <= maxes_[i - 1]) {
                ++rgs_[i];
                maxes_[i] = std::max(maxes_[i - 1], rgs_[i]);
                for (std::size_t j = i + 1; j < n_; ++j) {
                    rgs_[j] = 0;
                    maxes_[j] = maxes_[j - 1];
                }
                return true;
            }
        }
        return false;
    }

    void advance() {
        while (step()) {
            if (matches()) return;
        }
        done_ = true;
    }

    std::size_t n_;
    std::optional<std::size_t> want_;
    std::vector<int> rgs_;
    std::vector<int> maxes_;
    bool done_ = true;
};

inline std::vector<Partition> enumerate_partitions(std::size_t n, std::optional<std::size_t> classes = std::nullopt) {
    std::vector<Partition> out;
    for (PartitionStream s(n, classes); !s.done(); s.next()) out.push_back(s.current());
    return out;
}

}  // namespace synclat
